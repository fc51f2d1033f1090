"""Linear recurrence sequences and exponential polynomials: exact term
generation, minimal order, degeneracy analysis, and zero-set scans with
certified arithmetic progressions.

Degeneracy analysis stays inside exact rational arithmetic: the ratios of
the characteristic roots are the roots of the resultant R(x) =
Res_y(f(y), f(x*y)), so root-of-unity ratios are detected as cyclotomic
factors of R.  The group order D of those ratios splits the index set into
residue classes; a class whose decomposed subsequence starts with enough
consecutive zeros is certified as an identically-zero arithmetic
progression (an order-r relation with nonzero trailing coefficient and r
consecutive zeros forces all later and earlier terms to vanish).

Exponential polynomials carry q*zeta^a bases, where the same analysis runs
directly on the base scalars instead of through resultants.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from . import polyring
from .bounds import compare_count, evaluate_bound
from .cyclotomic import CyclotomicNumber, cyclotomic_polynomial
from .numutil import euler_phi
from .scalars import MonomialScalar, group_order_D, ratio_order


class LinearRecurrence:
    """u_{n+m} = a_1 u_{n+m-1} + ... + a_m u_n with rational data, a_m != 0.

    Initial terms must not all vanish; decomposed residue subsequences are
    allowed to (allow_zero), since an identically-zero subsequence is
    exactly what the progression certification looks for.
    """

    __slots__ = ("coeffs", "initial")

    def __init__(self, coeffs, initial, allow_zero=False):
        coeffs = tuple(Fraction(a) for a in coeffs)
        initial = tuple(Fraction(u) for u in initial)
        if not coeffs:
            raise ValueError("order must be at least 1")
        if len(initial) != len(coeffs):
            raise ValueError("need exactly as many initial terms as coefficients")
        if coeffs[-1] == 0:
            raise ValueError("the trailing coefficient a_m must be nonzero")
        if not allow_zero and all(u == 0 for u in initial):
            raise ValueError("initial terms must not all vanish")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initial", initial)

    def __setattr__(self, name, value):
        raise AttributeError("LinearRecurrence is immutable")

    @property
    def order(self):
        return len(self.coeffs)

    def terms(self, count):
        """First `count` terms, exactly."""
        if count < 0:
            raise ValueError("count must be non-negative")
        m = self.order
        out = list(self.initial[:count])
        while len(out) < count:
            nxt = sum(self.coeffs[i] * out[-1 - i] for i in range(m))
            out.append(nxt)
        return out

    def backward_terms(self, count):
        """count terms before u_0, most recent last: u_{-count}, ..., u_{-1}.
        Possible because a_m != 0."""
        m = self.order
        window = list(self.initial)
        out = []
        for _ in range(count):
            prev = (
                window[m - 1]
                - sum(self.coeffs[i - 1] * window[m - 1 - i] for i in range(1, m))
            ) / self.coeffs[m - 1]
            out.append(prev)
            window = [prev] + window[:-1]
        out.reverse()
        return out

    def characteristic_polynomial(self):
        """x^m - a_1 x^(m-1) - ... - a_m, ascending coefficients."""
        m = self.order
        coeffs = [Fraction(0)] * (m + 1)
        coeffs[m] = Fraction(1)
        for i in range(1, m + 1):
            coeffs[m - i] = -self.coeffs[i - 1]
        return polyring.normalize(coeffs)

    def is_zero_sequence(self):
        return all(u == 0 for u in self.initial)

    def __repr__(self):
        return f"LinearRecurrence(coeffs={self.coeffs}, initial={self.initial})"


def lrs_terms(recurrence, count):
    return recurrence.terms(count)


def minimal_order(recurrence):
    """Least order of any linear relation the sequence satisfies: the rank
    of the m x m Hankel matrix of u_0, ..., u_{2m-2}."""
    m = recurrence.order
    u = recurrence.terms(2 * m - 1)
    hankel = [[u[i + j] for j in range(m)] for i in range(m)]
    return polyring.matrix_rank(hankel)


def ratio_polynomial(f):
    """R(x) = Res_y(f(y), f(x*y)), whose roots are exactly the ratios of
    the roots of f.  Requires deg f >= 1 and f(0) != 0."""
    f = polyring.normalize(f)
    if polyring.degree(f) < 1:
        raise ValueError("need a polynomial of degree at least 1")
    if f[0] == 0:
        raise ValueError("zero roots are excluded (constant term must be nonzero)")
    deg = polyring.degree(f)
    samples = []
    for x0 in range(1, deg * deg + 2):
        substituted = polyring.normalize(
            [c * Fraction(x0) ** j for j, c in enumerate(f)]
        )
        samples.append((Fraction(x0), polyring.sylvester_resultant(f, substituted)))
    return polyring.lagrange_interpolate(samples)


def degeneracy_order(f):
    """Order D of the group of roots of unity among the root ratios of f,
    found as cyclotomic factors of the ratio resultant.  The search covers
    all k with phi(k) <= (deg f)^2, i.e. k <= 2 (deg f)^4 + 2."""
    f = polyring.normalize(f)
    if polyring.degree(f) < 1:
        raise ValueError("need a polynomial of degree at least 1")
    if f[0] == 0:
        raise ValueError("zero roots are excluded (constant term must be nonzero)")
    squarefree = polyring.squarefree_part(f)
    if polyring.degree(squarefree) == 1:
        return 1
    ratio = polyring.clear_denominators(ratio_polynomial(squarefree))
    deg = polyring.degree(f)
    phi_limit = deg * deg
    order = 1
    for k in range(2, 2 * deg**4 + 3):
        if euler_phi(k) > phi_limit:
            continue
        if polyring.int_poly_divides(cyclotomic_polynomial(k), ratio):
            order = math.lcm(order, k)
    return order


def residue_decompose(recurrence, step):
    """For each residue b mod `step`, an order-m recurrence satisfied by
    v_t = u_{b + t*step}; its characteristic polynomial has roots beta^step
    for the roots beta of the original one (computed as the characteristic
    polynomial of the step-th power of the companion matrix)."""
    if step < 1:
        raise ValueError("step must be >= 1")
    f = recurrence.characteristic_polynomial()
    m = recurrence.order
    companion = polyring.companion_matrix(f)
    power = polyring.mat_pow(companion, step)
    char = polyring.charpoly(power)
    assert char[0] != 0
    coeffs = [-char[m - i] for i in range(1, m + 1)]
    needed = recurrence.terms((m - 1) * step + step)
    out = []
    for b in range(step):
        initial = [needed[b + t * step] for t in range(m)]
        out.append(LinearRecurrence(coeffs, initial, allow_zero=True))
    return out


@dataclass(frozen=True)
class ZeroSetReport:
    """Zeros found in a scan window: isolated ones, certified arithmetic
    progressions (offset, difference), and the applicable count bounds."""

    isolated: tuple
    progressions: tuple
    n_max: int
    degeneracy_order: int
    simple: bool
    nondegenerate: bool
    bounds: tuple = ()  # (label, BoundValue)
    ledger: tuple = ()  # (criterion, count, ok)

    def all_zeros(self):
        """Every zero visible in the scan window."""
        members = set(self.isolated)
        for b, d in self.progressions:
            members.update(range(b, self.n_max + 1, d))
        return tuple(sorted(members))

    def to_json(self):
        return {
            "isolated": list(self.isolated),
            "progressions": [{"offset": b, "difference": d} for b, d in self.progressions],
            "n_max": self.n_max,
            "degeneracy_order": self.degeneracy_order,
            "simple": self.simple,
            "nondegenerate": self.nondegenerate,
            "bounds": [
                {"kind": label, **bound.to_json()} for label, bound in self.bounds
            ],
            "ledger": [
                {"criterion": crit, "count": count, "ok": ok}
                for crit, count, ok in self.ledger
            ],
        }


def _root_multiplicities(f):
    """(number of distinct roots, largest multiplicity) via Yun."""
    decomposition = polyring.squarefree_decomposition(f)
    k = sum(polyring.degree(factor) for factor, _ in decomposition)
    a = max(mult for _, mult in decomposition)
    return k, a


def _has_singleton_class(squarefree, step):
    """True when some root of the squarefree polynomial has no
    root-of-unity ratio to any other root: equivalent to its step-th power
    being a simple root of charpoly(companion^step)."""
    if step == 1:
        return polyring.degree(squarefree) >= 1
    companion = polyring.companion_matrix(squarefree)
    merged = polyring.charpoly(polyring.mat_pow(companion, step))
    return any(
        mult == 1 for _, mult in polyring.squarefree_decomposition(merged)
    )


def _bounds_ledger(bounds, ap_count, zero_count):
    ledger = []
    for label, bound in bounds:
        if label == "ap-count":
            ledger.append(
                (f"progressions<={bound.formula_id}", ap_count,
                 compare_count(ap_count, bound))
            )
        else:
            ledger.append(
                (f"zeros<={bound.formula_id}", zero_count,
                 compare_count(zero_count, bound))
            )
    return tuple(ledger)


def zero_set(recurrence, n_max):
    """Exact zero scan of u_0..u_{n_max} with residue-class certification.

    The degeneracy order D comes from the characteristic polynomial; for
    every residue class whose decomposed subsequence begins with order-many
    zeros, the whole progression is certified as zeros.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    values = recurrence.terms(n_max + 1)
    raw = [n for n, u in enumerate(values) if u == 0]

    f = recurrence.characteristic_polynomial()
    d_order = degeneracy_order(f)
    decomposed = residue_decompose(recurrence, d_order)
    progressions = []
    covered = set()
    for b, sub in enumerate(decomposed):
        if sub.is_zero_sequence():
            progressions.append((b, d_order))
            covered.update(range(b, n_max + 1, d_order))
    assert covered <= set(raw)
    isolated = tuple(n for n in raw if n not in covered)

    squarefree = polyring.squarefree_part(f)
    simple = polyring.degree(squarefree) == polyring.degree(f)
    nondegenerate = d_order == 1
    k, a = _root_multiplicities(f)
    m = recurrence.order

    bounds = [("ap-count", evaluate_bound("L2.1-general", {"m": m}))]
    if simple:
        bounds.append(("ap-count", evaluate_bound("L2.1-simple", {"m": m})))
    if nondegenerate:
        bounds.append(("zero-count", evaluate_bound("L2.2-poly", {"k": k, "a": a})))
        if simple:
            bounds.append(("zero-count", evaluate_bound("L2.1-simple", {"m": m})))
    if _has_singleton_class(squarefree, d_order):
        bounds.append(
            ("zero-count", evaluate_bound("L2.3", {"D": d_order, "k": k, "a": a}))
        )

    zero_total = len(raw)
    ledger = _bounds_ledger(bounds, len(progressions), zero_total)
    return ZeroSetReport(
        isolated=isolated,
        progressions=tuple(progressions),
        n_max=n_max,
        degeneracy_order=d_order,
        simple=simple,
        nondegenerate=nondegenerate,
        bounds=tuple(bounds),
        ledger=ledger,
    )


# --- exponential polynomials -------------------------------------------------


def _coerce_cyclo(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, MonomialScalar):
        return value.to_cyclotomic()
    return CyclotomicNumber.from_rational(Fraction(value))


class ExponentialPolynomial:
    """F(z) = sum_i f_i(z) * alpha_i^z with cyclotomic-coefficient
    polynomials f_i != 0 and pairwise distinct scalar bases alpha_i."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = []
        for poly, alpha in terms:
            if not isinstance(alpha, MonomialScalar):
                alpha = MonomialScalar.make(Fraction(alpha))
            coeffs = [_coerce_cyclo(c) for c in poly]
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
            if not coeffs:
                raise ValueError("term polynomials must be nonzero")
            clean.append((tuple(coeffs), alpha))
        if not clean:
            raise ValueError("need at least one term")
        alphas = [alpha for _, alpha in clean]
        if len(set(alphas)) != len(alphas):
            raise ValueError("the bases alpha_i must be pairwise distinct")
        object.__setattr__(self, "terms", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("ExponentialPolynomial is immutable")

    @property
    def k(self):
        return len(self.terms)

    @property
    def alphas(self):
        return tuple(alpha for _, alpha in self.terms)

    @property
    def max_poly_order(self):
        """a = max(deg f_i) + 1."""
        return max(len(poly) for poly, _ in self.terms)

    @property
    def order(self):
        """Order of the induced linear recurrence: sum (deg f_i + 1)."""
        return sum(len(poly) for poly, _ in self.terms)

    def is_simple(self):
        return all(len(poly) == 1 for poly, _ in self.terms)

    def evaluate(self, n):
        total = CyclotomicNumber.from_rational(0)
        for poly, alpha in self.terms:
            value = CyclotomicNumber.from_rational(0)
            for c in reversed(poly):
                value = value * n + c
            total = total + value * (alpha**n).to_cyclotomic()
        return total

    def values(self, n_max):
        """F(0), ..., F(n_max) with incrementally maintained powers."""
        powers = [MonomialScalar.one() for _ in self.terms]
        out = []
        for n in range(n_max + 1):
            total = CyclotomicNumber.from_rational(0)
            for (poly, alpha), power in zip(self.terms, powers):
                value = CyclotomicNumber.from_rational(0)
                for c in reversed(poly):
                    value = value * n + c
                total = total + value * power.to_cyclotomic()
            out.append(total)
            for i, (_, alpha) in enumerate(self.terms):
                powers[i] = powers[i] * alpha
        return out


def _exppoly_singleton_exists(alphas):
    k = len(alphas)
    for i in range(k):
        if all(ratio_order(alphas[i], alphas[j]) is None for j in range(k) if j != i):
            return True
    return False


def exppoly_zero_scan(F, n_max):
    """Exact zero scan of an exponential polynomial with residue-class
    progression certification (via the induced recurrence order)."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    values = F.values(n_max)
    raw = [n for n, v in enumerate(values) if v.is_zero()]

    alphas = F.alphas
    d_order = group_order_D(alphas)
    m = F.order
    progressions = []
    covered = set()
    for b in range(d_order):
        window_zero = True
        for t in range(m):
            n = b + t * d_order
            value = values[n] if n <= n_max else F.evaluate(n)
            if not value.is_zero():
                window_zero = False
                break
        if window_zero:
            progressions.append((b, d_order))
            covered.update(range(b, n_max + 1, d_order))
    assert covered <= set(raw)
    isolated = tuple(n for n in raw if n not in covered)

    simple = F.is_simple()
    nondegenerate = d_order == 1
    k = F.k
    a = F.max_poly_order

    bounds = [("ap-count", evaluate_bound("L2.1-general", {"m": m}))]
    if simple:
        bounds.append(("ap-count", evaluate_bound("L2.1-simple", {"m": m})))
    if nondegenerate:
        bounds.append(("zero-count", evaluate_bound("L2.2-poly", {"k": k, "a": a})))
        if simple:
            bounds.append(("zero-count", evaluate_bound("L2.1-simple", {"m": m})))
    if _exppoly_singleton_exists(alphas):
        bounds.append(
            ("zero-count", evaluate_bound("L2.3", {"D": d_order, "k": k, "a": a}))
        )

    ledger = _bounds_ledger(bounds, len(progressions), len(raw))
    return ZeroSetReport(
        isolated=isolated,
        progressions=tuple(progressions),
        n_max=n_max,
        degeneracy_order=d_order,
        simple=simple,
        nondegenerate=nondegenerate,
        bounds=tuple(bounds),
        ledger=ledger,
    )


def value_set(F, target, n_max):
    """All n <= n_max with F(n) = target (target != 0), as the zero scan of
    the extension of F by the constant term -target at base 1."""
    target = _coerce_cyclo(target)
    if target.is_zero():
        raise ValueError("target must be nonzero; use the zero scan directly")
    one = MonomialScalar.one()
    extended = []
    merged = False
    for poly, alpha in F.terms:
        if alpha == one:
            merged = True
            new_poly = (poly[0] - target,) + poly[1:]
            if all(c.is_zero() for c in new_poly):
                continue
            extended.append((new_poly, alpha))
        else:
            extended.append((poly, alpha))
    if not merged:
        extended.append(((-target,), one))
    if not extended:
        # F is identically equal to the target
        return ZeroSetReport(
            isolated=(),
            progressions=((0, 1),),
            n_max=n_max,
            degeneracy_order=1,
            simple=True,
            nondegenerate=True,
        )
    shifted = ExponentialPolynomial(extended)
    report = exppoly_zero_scan(shifted, n_max)

    extra = []
    ext_alphas = list(F.alphas) + [one]
    if _exppoly_singleton_exists(ext_alphas):
        d_ext = group_order_D(ext_alphas)
        extra.append(
            (
                "value-count",
                evaluate_bound(
                    "C2.4", {"D": d_ext, "k": F.k, "a": F.max_poly_order}
                ),
            )
        )
    if (
        group_order_D(F.alphas) == 1
        and all(not alpha.is_root_of_unity() for alpha in F.alphas)
        and F.is_simple()
    ):
        extra.append(
            ("value-count", evaluate_bound("C2.4-simple", {"m": F.order}))
        )
    if extra:
        hits = len(report.all_zeros())
        extra_ledger = tuple(
            (f"values<={bound.formula_id}", hits, compare_count(hits, bound))
            for _, bound in extra
        )
        report = replace(
            report,
            bounds=report.bounds + tuple(extra),
            ledger=report.ledger + extra_ledger,
        )
    return report
