"""Monomial dynamical systems and orbit-hypersurface intersection scans.

A monomial self-map of affine m-space is an m x m matrix of non-negative
integer exponents; iteration is matrix power.  Orbit coordinates of a point
with q*zeta^a entries never need to be materialized: a coordinate of the
n-th iterate is known through the exponent vector E = expvec @ S^n, its
prime factorization support, and a root-of-unity exponent.

Zero-testing of a hypersurface value G(Phi^(n)(w)) proceeds in stages:

1. terms with identical rational-part factorizations are merged, folding
   root-of-unity factors into the cyclotomic coefficients (catches exact
   cancellations without building any large integer);
2. if several terms survive, certified interval arithmetic tries to prove
   the largest term outweighs the sum of the rest (a proof of non-vanishing
   that works at any exponent size);
3. otherwise the value is materialized exactly, provided its size is under
   the configured cutoff; past the cutoff a resource error asks for the
   modular mode.

The modular mode maps zeta_N to an element of order N modulo primes
p = 1 (mod N) and evaluates with exponents reduced mod p-1: a nonzero
residue proves non-vanishing, while an all-primes-zero result is only a
zero candidate.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import iv

from .bounds import compare_count
from .cyclotomic import (
    CyclotomicNumber,
    interval_endpoints,
    interval_precision,
    modulus_interval,
)
from .errors import PrecisionError, ResourceLimitError, UnsuitablePrimeError
from .numutil import factorize, find_primes_congruent_one, is_prime
from .scalars import MonomialScalar, scalar_factorization

DEFAULT_EXACT_CUTOFF_BITS = 2_000_000
DEFAULT_PRIME_COUNT = 5
DEFAULT_PRIME_BITS = 62

_SEPARATION_LADDER = (64, 128, 256)


class MonomialMap:
    """Endomorphism of affine m-space whose i-th coordinate is the monomial
    prod_j X_j^(S[i][j])."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        rows = tuple(tuple(int(x) for x in row) for row in exponents)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("exponent matrix must be square and non-empty")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("exponent matrix entries must be non-negative")
        object.__setattr__(self, "exponents", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialMap is immutable")

    @property
    def dimension(self):
        return len(self.exponents)

    def degrees(self):
        """Total degree of each coordinate monomial (row sums)."""
        return tuple(sum(row) for row in self.exponents)

    def diagonal(self):
        """Diagonal exponents when the map is diagonal, else None."""
        m = self.dimension
        for i in range(m):
            for j in range(m):
                if i != j and self.exponents[i][j] != 0:
                    return None
        return tuple(self.exponents[i][i] for i in range(m))

    def power_matrix(self, n):
        return compose_power(self, n)

    def apply(self, point):
        """One evaluation step on a tuple of MonomialScalars."""
        if len(point) != self.dimension:
            raise ValueError("point dimension mismatch")
        out = []
        for row in self.exponents:
            acc = MonomialScalar.one()
            for w, e in zip(point, row):
                if e:
                    acc = acc * w**e
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"MonomialMap({list(map(list, self.exponents))})"


def _identity(m):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def _mat_mul(a, b):
    m = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(m)) for j in range(m))
        for i in range(m)
    )


def compose_power(mapping, n):
    """Exponent matrix of the n-th iterate (S^n by binary exponentiation;
    the identity for n = 0)."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    result = _identity(mapping.dimension)
    base = mapping.exponents
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return result


def _coerce_coefficient(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, MonomialScalar):
        return value.to_cyclotomic()
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class Hypersurface:
    """Zero set of a sparse polynomial, stored as (coefficient, exponent
    vector) terms with pairwise-distinct exponent vectors."""

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension, terms):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        clean = []
        seen = set()
        for coeff, expvec in terms:
            coeff = _coerce_coefficient(coeff)
            expvec = tuple(int(e) for e in expvec)
            if len(expvec) != dimension:
                raise ValueError("exponent vector length must match dimension")
            if any(e < 0 for e in expvec):
                raise ValueError("exponents must be non-negative")
            if coeff.is_zero():
                raise ValueError("terms must have nonzero coefficients")
            if expvec in seen:
                raise ValueError(f"duplicate exponent vector {expvec}")
            seen.add(expvec)
            clean.append((coeff, expvec))
        if not clean:
            raise ValueError("a hypersurface needs at least one term")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("Hypersurface is immutable")

    @property
    def n_monomials(self):
        return len(self.terms)

    def constant_term(self):
        zero = (0,) * self.dimension
        for coeff, expvec in self.terms:
            if expvec == zero:
                return coeff
        return None

    def total_degree(self):
        return max(sum(e) for _, e in self.terms)

    def __repr__(self):
        return f"Hypersurface(dim={self.dimension}, terms={self.n_monomials})"


class OrbitPoint:
    """The n-th iterate of a base point, carried in exponent form; the
    coordinates materialize lazily and only make sense at small scale."""

    __slots__ = ("mapping", "base", "n", "matrix", "_coords")

    def __init__(self, mapping, base, n):
        base = tuple(base)
        if len(base) != mapping.dimension:
            raise ValueError("point dimension mismatch")
        for w in base:
            if not isinstance(w, MonomialScalar):
                raise ValueError("orbit coordinates must be MonomialScalars")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", compose_power(mapping, n))
        object.__setattr__(self, "_coords", [None] * mapping.dimension)

    def __setattr__(self, name, value):
        raise AttributeError("OrbitPoint is immutable")

    def coordinate(self, i):
        if self._coords[i] is None:
            acc = MonomialScalar.one()
            for j, w in enumerate(self.base):
                e = self.matrix[i][j]
                if e:
                    acc = acc * w**e
            self._coords[i] = acc
        return self._coords[i]

    def coordinates(self):
        return tuple(self.coordinate(i) for i in range(self.mapping.dimension))


def orbit_point(mapping, point, n):
    """OrbitPoint for Phi^(n) at a tuple of nonzero scalar coordinates."""
    coords = []
    for w in point:
        if isinstance(w, MonomialScalar):
            coords.append(w)
        else:
            coords.append(MonomialScalar.make(Fraction(w)))
    return OrbitPoint(mapping, tuple(coords), n)


# --- exact evaluation --------------------------------------------------------


class _PointData:
    """Factored view of a point and hypersurface at a common conductor."""

    __slots__ = ("conductor", "factors", "zeta_exps", "coeffs", "expvecs")

    def __init__(self, G, point):
        n = 1
        for w in point:
            n = math.lcm(n, w.conductor)
        for coeff, _ in G.terms:
            n = math.lcm(n, coeff.conductor)
        self.conductor = n
        self.factors = [scalar_factorization(w) for w in point]
        self.zeta_exps = [w.zeta_exp * (n // w.conductor) for w in point]
        self.coeffs = [coeff.lift(n) for coeff, _ in G.terms]
        self.expvecs = [expvec for _, expvec in G.terms]


def _combined_terms(data, matrix):
    """Terms of G at the orbit point given by `matrix`, merged by the prime
    support of their rational parts.  Returns (coefficient, {prime: exp})
    pairs with nonzero coefficients."""
    n = data.conductor
    m = len(data.factors)
    groups = {}
    for coeff, expvec in zip(data.coeffs, data.expvecs):
        evec = [
            sum(expvec[i] * matrix[i][j] for i in range(m)) for j in range(m)
        ]
        primes = {}
        zexp = 0
        for j in range(m):
            e = evec[j]
            if e == 0:
                continue
            zexp += e * data.zeta_exps[j]
            for p, v in data.factors[j].items():
                acc = primes.get(p, 0) + e * v
                if acc:
                    primes[p] = acc
                else:
                    primes.pop(p, None)
        zexp %= n
        term_coeff = coeff
        if zexp:
            term_coeff = coeff * CyclotomicNumber.zeta(n, zexp)
        key = frozenset(primes.items())
        if key in groups:
            groups[key] = (groups[key][0] + term_coeff, primes)
        else:
            groups[key] = (term_coeff, primes)
    return [(c, pd) for c, pd in groups.values() if not c.is_zero()]


def _term_bits(primes):
    return sum(abs(e) * math.log2(p) for p, e in primes.items())


def _materialize_rational(primes):
    num = 1
    den = 1
    for p, e in primes.items():
        if e > 0:
            num *= p**e
        else:
            den *= p**-e
    return Fraction(num, den)


def _materialize_terms(terms):
    total = CyclotomicNumber.from_rational(0)
    for coeff, primes in terms:
        total = total + coeff * _materialize_rational(primes)
    return total


def _coeff_modulus(coeff, bits):
    if coeff.is_rational():
        q = abs(coeff.as_fraction())
        with interval_precision(bits):
            return iv.mpf(q.numerator) / q.denominator
    return modulus_interval(coeff, bits)


def _separation_proves_nonzero(terms, ladder=_SEPARATION_LADDER):
    """Try to certify that one term's modulus exceeds the sum of all the
    others; a success is an exact proof that the sum does not vanish."""
    for bits in ladder:
        with interval_precision(bits):
            mags = []
            for coeff, primes in terms:
                mag = _coeff_modulus(coeff, bits)
                for p, e in primes.items():
                    mag = mag * iv.mpf(p) ** e
                mags.append(interval_endpoints(mag))
            best = max(range(len(mags)), key=lambda i: mags[i][0])
            rest = iv.mpf(0)
            for i, (_, hi) in enumerate(mags):
                if i != best:
                    rest = rest + iv.mpf(hi)
            _, rest_hi = interval_endpoints(rest)
            if mags[best][0] > rest_hi:
                return True
    return False


def evaluate_exact(G, point):
    """Exact value of G at an OrbitPoint.

    Every term is assembled as (prod q_j^E_j) * zeta^(sum a_j E_j) with
    E = expvec @ S^n; the materialized size must stay under the exact
    evaluation cutoff, otherwise a resource error suggests modular mode.
    """
    return _evaluate_exact_data(
        _PointData(G, point.base), point.matrix, DEFAULT_EXACT_CUTOFF_BITS
    )


def _evaluate_exact_data(data, matrix, cutoff_bits):
    terms = _combined_terms(data, matrix)
    for _, primes in terms:
        if _term_bits(primes) > cutoff_bits:
            raise ResourceLimitError(
                "term exceeds the exact evaluation cutoff "
                f"({cutoff_bits} bits); use the modular mode"
            )
    return _materialize_terms(terms)


def _decide_zero(data, matrix, cutoff_bits):
    """Exact zero test of G at an orbit point, without materializing
    anything unless necessary."""
    terms = _combined_terms(data, matrix)
    if not terms:
        return True
    if len(terms) == 1:
        return False
    if _separation_proves_nonzero(terms):
        return False
    if all(_term_bits(primes) <= cutoff_bits for _, primes in terms):
        return _materialize_terms(terms).is_zero()
    raise ResourceLimitError(
        "zero test undecided above the exact evaluation cutoff; "
        "use the modular or hybrid mode"
    )


# --- modular evaluation ------------------------------------------------------


def _element_of_order(n, p):
    if n == 1:
        return 1
    cofactor = (p - 1) // n
    n_primes = list(factorize(n))
    t = 2
    while True:
        z = pow(t, cofactor, p)
        if z != 1 and all(pow(z, n // ell, p) != 1 for ell in n_primes):
            return z
        t += 1
        if t > 1000:
            raise UnsuitablePrimeError(f"no element of order {n} found mod {p}")


class ModularEvaluator:
    """Evaluation of G along an orbit modulo a fixed list of primes
    p = 1 (mod N), with exponent arithmetic mod p-1."""

    def __init__(self, mapping, G, point, primes):
        self.mapping = mapping
        self.data = _PointData(G, tuple(point))
        self.instance_ints = _instance_integers(self.data, point)
        self.primes = tuple(primes)
        if not self.primes:
            raise ValueError("at least one prime is required")
        self.contexts = [self._prepare(p) for p in self.primes]

    def _prepare(self, p):
        n = self.data.conductor
        if not is_prime(p):
            raise UnsuitablePrimeError(f"{p} is not prime")
        if (p - 1) % n:
            raise UnsuitablePrimeError(f"{p} is not 1 mod {n}")
        if n % p == 0:
            raise UnsuitablePrimeError(f"{p} divides the conductor")
        for value in self.instance_ints:
            if value % p == 0:
                raise UnsuitablePrimeError(
                    f"{p} divides an input numerator or denominator"
                )
        z = _element_of_order(n, p)
        zeta_pows = [1] * n
        for k in range(1, n):
            zeta_pows[k] = zeta_pows[k - 1] * z % p
        coeff_res = []
        for coeff in self.data.coeffs:
            acc = 0
            for k, c in enumerate(coeff.coeffs):
                if c == 0:
                    continue
                acc += c.numerator * pow(c.denominator, -1, p) % p * zeta_pows[k]
            coeff_res.append(acc % p)
        bases = []
        for w in self._point_fractions():
            bases.append(w.numerator % p * pow(w.denominator, -1, p) % p)
        return {
            "p": p,
            "zeta_pows": zeta_pows,
            "coeff_res": coeff_res,
            "bases": bases,
        }

    def _point_fractions(self):
        # rational parts of the coordinates, reconstructed from factors
        return [_materialize_rational(f) for f in self.data.factors]

    def _residue(self, ctx, matrix_mod):
        p = ctx["p"]
        n = self.data.conductor
        m = len(ctx["bases"])
        total = 0
        for coeff_res, expvec in zip(ctx["coeff_res"], self.data.expvecs):
            term = coeff_res
            zexp = 0
            for j in range(m):
                e = sum(expvec[i] * matrix_mod[i][j] for i in range(m)) % (p - 1)
                if e:
                    term = term * pow(ctx["bases"][j], e, p) % p
                zexp += e * self.data.zeta_exps[j]
            zexp %= n
            if zexp:
                term = term * ctx["zeta_pows"][zexp] % p
            total = (total + term) % p
        return total

    def evaluate(self, n):
        """Verdict for G(Phi^(n)(w)): 'nonzero' is sound, 'zero-candidate'
        is probabilistic."""
        for ctx in self.contexts:
            mod = ctx["p"] - 1
            matrix_mod = _mat_pow_mod(self.mapping.exponents, n, mod)
            if self._residue(ctx, matrix_mod) != 0:
                return "nonzero"
        return "zero-candidate"

    def scan(self, n_max):
        """Yield (n, verdict) for n = 0..n_max with incremental exponent
        matrices."""
        mats = [_identity(self.mapping.dimension) for _ in self.contexts]
        for n in range(n_max + 1):
            verdict = "zero-candidate"
            for ctx, mat in zip(self.contexts, mats):
                if self._residue(ctx, mat) != 0:
                    verdict = "nonzero"
                    break
            yield n, verdict
            for idx, ctx in enumerate(self.contexts):
                mod = ctx["p"] - 1
                mats[idx] = _mat_mul_mod(mats[idx], self.mapping.exponents, mod)


def _mat_mul_mod(a, b, mod):
    m = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(m)) % mod for j in range(m))
        for i in range(m)
    )


def _mat_pow_mod(base, n, mod):
    m = len(base)
    result = _identity(m)
    b = tuple(tuple(x % mod for x in row) for row in base)
    while n:
        if n & 1:
            result = _mat_mul_mod(result, b, mod)
        b = _mat_mul_mod(b, b, mod)
        n >>= 1
    return result


def _instance_integers(data, point):
    ints = set()
    for w in point:
        ints.add(w.num)
        ints.add(w.den)
    for coeff in data.coeffs:
        for c in coeff.coeffs:
            if c.numerator:
                ints.add(abs(c.numerator))
            ints.add(c.denominator)
    ints.discard(1)
    return sorted(ints)


def default_primes(mapping, G, point, count=DEFAULT_PRIME_COUNT, seed=0):
    """Deterministic suitable primes for a problem instance: 62-bit primes
    p = 1 (mod N) avoiding all input numerators and denominators."""
    data = _PointData(G, tuple(point))
    ints = _instance_integers(data, point)
    found = []
    candidates = find_primes_congruent_one(
        data.conductor, count * 4 + 16, seed=seed, bits=DEFAULT_PRIME_BITS
    )
    for p in candidates:
        if all(v % p for v in ints) and data.conductor % p:
            found.append(p)
            if len(found) == count:
                return found
    raise UnsuitablePrimeError("could not find enough suitable primes")


def evaluate_modular(G, mapping, point, n, primes):
    """Single-n modular verdict; see ModularEvaluator.evaluate."""
    point = tuple(
        w if isinstance(w, MonomialScalar) else MonomialScalar.make(Fraction(w))
        for w in point
    )
    return ModularEvaluator(mapping, G, point, primes).evaluate(n)


# --- intersection reports ----------------------------------------------------


@dataclass(frozen=True)
class Member:
    n: int
    tag: str  # "exact" | "modular-only"


@dataclass(frozen=True)
class IntersectionReport:
    """Which iterates land on the hypersurface, with verification tags and
    every applicable counting bound."""

    members: tuple
    n_max: int
    mode: str
    theorem_bounds: tuple = ()
    theorem_checks: tuple = ()
    ledger: tuple = ()
    dominant_threshold: Optional[int] = None
    superset_members: Optional[tuple] = None

    def member_values(self):
        return tuple(m.n for m in self.members)

    def to_json(self):
        out = {
            "members": [{"n": m.n, "tag": m.tag} for m in self.members],
            "n_max": self.n_max,
            "mode": self.mode,
            "theorem_bounds": [
                {"theorem": tid, **bound.to_json()}
                for tid, bound in self.theorem_bounds
            ],
            "theorem_checks": [check.to_json() for check in self.theorem_checks],
            "ledger": [
                {"criterion": crit, "count": count, "ok": ok}
                for crit, count, ok in self.ledger
            ],
            "dominant_threshold": self.dominant_threshold,
        }
        if self.superset_members is not None:
            out["superset_members"] = [
                {"n": m.n, "tag": m.tag} for m in self.superset_members
            ]
        return out


def _coerce_point(point):
    return tuple(
        w if isinstance(w, MonomialScalar) else MonomialScalar.make(Fraction(w))
        for w in point
    )


def intersection_set(
    mapping,
    G,
    point,
    n_max,
    mode="exact",
    primes=None,
    prime_count=DEFAULT_PRIME_COUNT,
    seed=0,
    exact_cutoff_bits=DEFAULT_EXACT_CUTOFF_BITS,
):
    """All n <= n_max with G(Phi^(n)(w)) = 0.

    Modes: 'exact' decides every n exactly; 'modular' keeps unconfirmed
    zero candidates (tagged modular-only); 'hybrid' screens with the
    modular pass and confirms candidates exactly when feasible.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if mode not in ("exact", "modular", "hybrid"):
        raise ValueError(f"unknown mode {mode!r}")
    point = _coerce_point(point)
    if G.dimension != mapping.dimension or len(point) != mapping.dimension:
        raise ValueError("map, hypersurface and point dimensions must agree")

    data = _PointData(G, point)
    members = []
    if mode == "exact":
        matrix = _identity(mapping.dimension)
        for n in range(n_max + 1):
            if _decide_zero(data, matrix, exact_cutoff_bits):
                members.append(Member(n, "exact"))
            matrix = _mat_mul(matrix, mapping.exponents)
    else:
        if primes is None:
            primes = default_primes(mapping, G, point, count=prime_count, seed=seed)
        if mode == "hybrid" and len(primes) < 3:
            raise ValueError("hybrid mode requires at least 3 primes")
        evaluator = ModularEvaluator(mapping, G, point, primes)
        for n, verdict in evaluator.scan(n_max):
            if verdict != "zero-candidate":
                continue
            if mode == "modular":
                members.append(Member(n, "modular-only"))
                continue
            try:
                matrix = compose_power(mapping, n)
                if _decide_zero(data, matrix, exact_cutoff_bits):
                    members.append(Member(n, "exact"))
            except ResourceLimitError:
                members.append(Member(n, "modular-only"))

    from .theorems import applicable_theorems

    checks = applicable_theorems(mapping, G, point)
    theorem_bounds = tuple(
        (c.theorem_id, c.bound) for c in checks if c.applicable
    )
    count = len(members)
    ledger = tuple(
        (f"members<=bound[{tid}]", count, compare_count(count, bound))
        for tid, bound in theorem_bounds
    )
    try:
        threshold = dominant_term_threshold(mapping, G, point)
    except (PrecisionError, ResourceLimitError):
        threshold = None
    return IntersectionReport(
        members=tuple(members),
        n_max=n_max,
        mode=mode,
        theorem_bounds=theorem_bounds,
        theorem_checks=tuple(checks),
        ledger=ledger,
        dominant_threshold=threshold,
    )


# --- synchronized orbits -----------------------------------------------------


def _coordinate_signature(factors, zeta_exps, matrix, conductor):
    """(prime dict, zeta exponent) for each coordinate of the iterate."""
    m = len(factors)
    out = []
    for i in range(m):
        primes = {}
        zexp = 0
        for j in range(m):
            e = matrix[i][j]
            if e == 0:
                continue
            zexp += e * zeta_exps[j]
            for p, v in factors[j].items():
                acc = primes.get(p, 0) + e * v
                if acc:
                    primes[p] = acc
                else:
                    primes.pop(p, None)
        out.append((frozenset(primes.items()), zexp % conductor))
    return out


def product_system(map_f, map_h):
    """Block-diagonal system running two maps side by side."""
    m = map_f.dimension
    size = 2 * m
    rows = []
    for i in range(m):
        rows.append(tuple(map_f.exponents[i]) + (0,) * m)
    for i in range(m):
        rows.append((0,) * m + tuple(map_h.exponents[i]))
    return MonomialMap(rows)


def coordinate_difference_hypersurface(m):
    """G = sum_i (X_i - Y_i) on the 2m-dimensional product space."""
    terms = []
    for i in range(m):
        e = [0] * (2 * m)
        e[i] = 1
        terms.append((CyclotomicNumber.from_rational(1), tuple(e)))
    for i in range(m):
        e = [0] * (2 * m)
        e[m + i] = 1
        terms.append((CyclotomicNumber.from_rational(-1), tuple(e)))
    return Hypersurface(2 * m, terms)


def synchronized_intersection(
    map_f,
    map_h,
    point_f,
    point_h,
    n_max,
    exact_cutoff_bits=DEFAULT_EXACT_CUTOFF_BITS,
):
    """All n <= n_max with F^(n)(w1) = H^(n)(w2), decided coordinate-wise
    on exact scalars; the report carries the product-system superset (the
    zero set of sum (X_i - Y_i)) flagged separately."""
    if map_f.dimension != map_h.dimension:
        raise ValueError("the two maps must have the same dimension")
    point_f = _coerce_point(point_f)
    point_h = _coerce_point(point_h)
    m = map_f.dimension
    if len(point_f) != m or len(point_h) != m:
        raise ValueError("point dimension mismatch")

    conductor = 1
    for w in (*point_f, *point_h):
        conductor = math.lcm(conductor, w.conductor)
    factors_f = [scalar_factorization(w) for w in point_f]
    factors_h = [scalar_factorization(w) for w in point_h]
    zexp_f = [w.zeta_exp * (conductor // w.conductor) for w in point_f]
    zexp_h = [w.zeta_exp * (conductor // w.conductor) for w in point_h]

    members = []
    mat_f = _identity(m)
    mat_h = _identity(m)
    for n in range(n_max + 1):
        sig_f = _coordinate_signature(factors_f, zexp_f, mat_f, conductor)
        sig_h = _coordinate_signature(factors_h, zexp_h, mat_h, conductor)
        if sig_f == sig_h:
            members.append(Member(n, "exact"))
        mat_f = _mat_mul(mat_f, map_f.exponents)
        mat_h = _mat_mul(mat_h, map_h.exponents)

    combined = product_system(map_f, map_h)
    G = coordinate_difference_hypersurface(m)
    product_point = point_f + point_h
    data = _PointData(G, product_point)
    superset = []
    matrix = _identity(2 * m)
    for n in range(n_max + 1):
        if _decide_zero(data, matrix, exact_cutoff_bits):
            superset.append(Member(n, "exact"))
        matrix = _mat_mul(matrix, combined.exponents)

    from .theorems import applicable_theorems

    checks = applicable_theorems(combined, G, product_point)
    theorem_bounds = tuple(
        (c.theorem_id, c.bound) for c in checks if c.applicable
    )
    count = len(members)
    ledger = tuple(
        (f"members<=bound[{tid}]", count, compare_count(count, bound))
        for tid, bound in theorem_bounds
    )
    return IntersectionReport(
        members=tuple(members),
        n_max=n_max,
        mode="exact",
        theorem_bounds=theorem_bounds,
        theorem_checks=tuple(checks),
        ledger=ledger,
        superset_members=tuple(superset),
    )


# --- dominant-term threshold -------------------------------------------------


def _univariate_entries(G):
    """For G = sum a_j X_j^(e_j): list of (coeff, var index or None, e).
    Returns None when G has a term in two or more variables or two terms
    sharing a variable."""
    entries = []
    used = set()
    for coeff, expvec in G.terms:
        support = [j for j, e in enumerate(expvec) if e]
        if len(support) > 1:
            return None
        if not support:
            entries.append((coeff, None, 0))
            continue
        j = support[0]
        if j in used:
            return None
        used.add(j)
        entries.append((coeff, j, expvec[j]))
    return entries


def dominant_term_threshold(mapping, G, point, max_precision=4096):
    """Least n0 such that the dominant coordinate term provably outweighs
    (m-1) * a * |w_i^(e_i d^n)| for all n >= n0, so no intersection occurs
    at or beyond n0.  Returns None when the shape or magnitude hypotheses
    fail; raises PrecisionError when interval precision runs out.
    """
    point = _coerce_point(point)
    diag = mapping.diagonal()
    if diag is None or len(set(diag)) != 1 or diag[0] < 2:
        return None
    d = diag[0]
    entries = _univariate_entries(G)
    if entries is None:
        return None
    m = mapping.dimension

    mags = [w.magnitude() for w in point]
    best = max(range(m), key=lambda j: mags[j])
    if any(mags[j] >= mags[best] for j in range(m) if j != best):
        return None
    j0 = best
    lead = next((en for en in entries if en[1] == j0), None)
    if lead is None or lead[2] < 1:
        return None
    e0 = lead[2]
    if any(e > e0 for _, j, e in entries if j != j0):
        return None
    others = [(coeff, mags[j] if j is not None else Fraction(1), e)
              for coeff, j, e in entries if j != j0]
    if not others:
        return 0

    q0 = mags[j0] ** e0
    qi = max(q ** e for _, q, e in others)
    ratio = q0 / qi
    if ratio < 1:
        return None

    bits = 64
    while bits <= max_precision:
        result = _threshold_with_precision(lead[0], others, m, d, q0, qi, ratio, bits)
        if result is not PrecisionError:
            return result
        bits *= 2
    raise PrecisionError(
        "could not certify the dominant-term inequality at the requested precision"
    )


def _iv_fraction_pow(base, exponent, bits):
    with interval_precision(bits):
        return (iv.mpf(base.numerator) / base.denominator) ** exponent


def _threshold_with_precision(lead_coeff, others, m, d, q0, qi, ratio, bits):
    """One precision rung: returns the threshold, None (hypotheses fail),
    or the PrecisionError sentinel to escalate."""
    with interval_precision(bits):
        lead_lo, lead_hi = interval_endpoints(_coeff_modulus(lead_coeff, bits))
        if lead_lo <= 0:
            return PrecisionError
        a_lo = a_hi = None
        for coeff, _, _ in others:
            lo, hi = interval_endpoints(_coeff_modulus(coeff, bits))
            a_lo = lo if a_lo is None else max(a_lo, lo)
            a_hi = hi if a_hi is None else max(a_hi, hi)

        previous_fails = True  # n = -1: vacuous
        n = 0
        cap = 500
        while n <= cap:
            exp = d**n
            lhs = iv.mpf(lead_lo) * _iv_fraction_pow(q0, exp, bits)
            rhs = (m - 1) * iv.mpf(a_hi) * _iv_fraction_pow(qi, exp, bits)
            lhs_lo, lhs_hi = interval_endpoints(lhs)
            rhs_lo, rhs_hi = interval_endpoints(rhs)
            if lhs_lo > rhs_hi:
                if previous_fails:
                    return n
                return PrecisionError
            # certified failure needs the other rounding direction
            lhs_opt = iv.mpf(lead_hi) * _iv_fraction_pow(q0, exp, bits)
            rhs_opt = (m - 1) * iv.mpf(a_lo) * _iv_fraction_pow(qi, exp, bits)
            _, lhs_opt_hi = interval_endpoints(lhs_opt)
            rhs_opt_lo, _ = interval_endpoints(rhs_opt)
            if lhs_opt_hi <= rhs_opt_lo:
                previous_fails = True
                if ratio == 1:
                    return None  # constant ratio, never dominates
                n += 1
                continue
            return PrecisionError
        return PrecisionError
