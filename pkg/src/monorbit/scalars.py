"""The multiplicative group of scalars q * zeta_N^a with q a positive
rational.

These are the coordinates of orbit points and the exponential bases used
throughout: the group is closed under products, quotients and integer
powers, membership of a quotient in the roots of unity is decidable by
comparing rational parts, and |q * zeta_N^a| = q exactly.  Negative
rationals are admitted by folding the sign into the root of unity
(-1 = zeta_2), doubling the conductor when necessary.

Multiplicative relation lattices are computed exactly: prime-exponent
matrices of the rational parts feed an integer-kernel computation, and the
root-of-unity exponents contribute congruence conditions which cut out a
sublattice.
"""

import math
import re as _re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cyclotomic import CyclotomicNumber
from .numutil import factorize, hnf_basis, kernel_of_columns


def _canonical_root(n, a):
    a %= n
    if a == 0:
        return 1, 0
    g = math.gcd(a, n)
    return n // g, a // g


class MonomialScalar:
    """A nonzero number q * zeta_N^a, stored in canonical form: q = num/den
    a positive rational in lowest terms, and the root of unity written with
    its exact order as conductor."""

    __slots__ = ("num", "den", "conductor", "zeta_exp")

    def __init__(self, num, den, conductor, zeta_exp):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "zeta_exp", zeta_exp)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialScalar is immutable")

    @classmethod
    def make(cls, rational, conductor=1, zeta_exp=0):
        """q * zeta_conductor^zeta_exp, folding the sign of q into the root
        of unity."""
        q = Fraction(rational)
        if q == 0:
            raise ValueError("monomial scalars are nonzero")
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        n, a = _canonical_root(conductor, zeta_exp)
        if q < 0:
            q = -q
            lcm = math.lcm(n, 2)
            a = a * (lcm // n) + lcm // 2
            n, a = _canonical_root(lcm, a)
        return cls(q.numerator, q.denominator, n, a)

    @classmethod
    def from_rational(cls, value):
        return cls.make(Fraction(value))

    @classmethod
    def one(cls):
        return cls(1, 1, 1, 0)

    @property
    def rational_part(self):
        return Fraction(self.num, self.den)

    def magnitude(self):
        """|q * zeta^a| = q, exactly."""
        return Fraction(self.num, self.den)

    def is_one(self):
        return self.num == 1 and self.den == 1 and self.conductor == 1

    def is_root_of_unity(self):
        return self.num == 1 and self.den == 1

    def is_rational_value(self):
        return self.conductor in (1, 2)

    def as_fraction(self):
        if self.conductor == 1:
            return Fraction(self.num, self.den)
        if self.conductor == 2:
            return -Fraction(self.num, self.den)
        raise ValueError("value is not rational")

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        q = Fraction(self.num * other.num, self.den * other.den)
        lcm = math.lcm(self.conductor, other.conductor)
        a = self.zeta_exp * (lcm // self.conductor) + other.zeta_exp * (
            lcm // other.conductor
        )
        n, a = _canonical_root(lcm, a)
        return MonomialScalar(q.numerator, q.denominator, n, a)

    __rmul__ = __mul__

    def inverse(self):
        n, a = _canonical_root(self.conductor, -self.zeta_exp)
        return MonomialScalar(self.den, self.num, n, a)

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        q = Fraction(self.num, self.den) ** exponent
        n, a = _canonical_root(self.conductor, self.zeta_exp * exponent)
        return MonomialScalar(q.numerator, q.denominator, n, a)

    def __neg__(self):
        return self * MonomialScalar.make(-1)

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.num == other.num
            and self.den == other.den
            and self.conductor == other.conductor
            and self.zeta_exp == other.zeta_exp
        )

    def __hash__(self):
        return hash((self.num, self.den, self.conductor, self.zeta_exp))

    def sort_key(self):
        return (Fraction(self.num, self.den), self.conductor, self.zeta_exp)

    def to_cyclotomic(self):
        root = CyclotomicNumber.zeta(self.conductor, self.zeta_exp)
        q = Fraction(self.num, self.den)
        return CyclotomicNumber(root.conductor, tuple(c * q for c in root.coeffs))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"MonomialScalar({format_scalar(self)!r})"


def _coerce_scalar(value):
    if isinstance(value, MonomialScalar):
        return value
    if isinstance(value, (int, Fraction)):
        if value == 0:
            raise ValueError("monomial scalars are nonzero")
        return MonomialScalar.from_rational(value)
    return NotImplemented


def format_scalar(x):
    q = Fraction(x.num, x.den)
    if x.conductor == 1:
        return str(q)
    return f"{q} * zeta({x.conductor})^{x.zeta_exp}"


_SCALAR_RE = _re.compile(
    r"^\s*(-?\d+(?:\s*/\s*\d+)?)\s*"
    r"(?:\*\s*zeta\(\s*(\d+)\s*\)(?:\^\s*(-?\d+))?)?\s*$"
)


def parse_scalar(text):
    """Parse 'p/q' or 'p/q * zeta(N)^a' into a MonomialScalar."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse scalar string {text!r}")
    q = Fraction(m.group(1).replace(" ", ""))
    if m.group(2) is None:
        return MonomialScalar.make(q)
    n = int(m.group(2))
    a = int(m.group(3)) if m.group(3) is not None else 1
    return MonomialScalar.make(q, n, a)


def ratio_order(u, v) -> Optional[int]:
    """Multiplicative order of u/v when that quotient is a root of unity,
    else None.  The quotient is a root of unity exactly when the rational
    parts agree."""
    r = u / v
    if not r.is_root_of_unity():
        return None
    return r.conductor


def group_order_D(values):
    """Order of the group of roots of unity generated by all root-of-unity
    quotients among the given scalars (1 when there are none)."""
    order = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            o = ratio_order(vals[i], vals[j])
            if o is not None:
                order = math.lcm(order, o)
    return order


@lru_cache(maxsize=8192)
def _signed_factorization(num, den):
    f = dict(factorize(num))
    for p, e in factorize(den).items():
        f[p] = f.get(p, 0) - e
    return tuple(sorted(f.items()))


def scalar_factorization(x):
    """{prime: exponent} of the rational part (negative exponents for the
    denominator)."""
    return dict(_signed_factorization(x.num, x.den))


def power_product(values, exponents):
    """Exact product of values[i] ** exponents[i]."""
    acc = MonomialScalar.one()
    for v, e in zip(values, exponents):
        if e:
            acc = acc * v**e
    return acc


@dataclass(frozen=True)
class RelationLattice:
    """Basis of the lattice of integer vectors k with prod values[i]^k[i]
    equal to 1 (coordinate-wise for tuple inputs)."""

    dimension: int
    basis: tuple

    def is_trivial(self):
        return not self.basis

    @property
    def rank(self):
        return len(self.basis)

    def verify(self, values):
        for vec in self.basis:
            if not power_product(values, vec).is_one():
                return False
        return True


def tuple_relation_lattice(tuples):
    """Relation lattice of a list of k-tuples of MonomialScalars: all
    integer vectors e with prod_t tuples[t]^e[t] = (1, ..., 1).

    Prime-exponent rows per coordinate feed an exact integer kernel; the
    root-of-unity exponents then carve out a congruence sublattice.
    """
    items = [tuple(t) for t in tuples]
    n = len(items)
    if n == 0:
        return []
    arity = len(items[0])
    if any(len(t) != arity for t in items):
        raise ValueError("all tuples must share the same arity")

    rows = []
    congruences = []
    for c in range(arity):
        column = [t[c] for t in items]
        factored = [scalar_factorization(s) for s in column]
        primes = sorted(set().union(*[f.keys() for f in factored]))
        for p in primes:
            rows.append([f.get(p, 0) for f in factored])
        n_c = 1
        for s in column:
            n_c = math.lcm(n_c, s.conductor)
        if n_c > 1:
            exps = [s.zeta_exp * (n_c // s.conductor) for s in column]
            congruences.append((exps, n_c))

    basis = kernel_of_columns(rows, n)
    if not basis or not congruences:
        return hnf_basis(basis) if basis else []

    s = len(basis)
    c_rows = []
    for idx, (exps, n_c) in enumerate(congruences):
        g = [sum(basis[j][t] * exps[t] for t in range(n)) % n_c for j in range(s)]
        slack = [0] * len(congruences)
        slack[idx] = n_c
        c_rows.append(g + slack)
    combos = kernel_of_columns(c_rows, s + len(congruences))
    final = []
    for u in combos:
        vec = tuple(
            sum(u[j] * basis[j][t] for j in range(s)) for t in range(n)
        )
        if any(vec):
            final.append(vec)
    return hnf_basis(final)


def multiplicative_relations(values):
    values = list(values)
    basis = tuple_relation_lattice([(v,) for v in values])
    return RelationLattice(dimension=len(values), basis=tuple(basis))


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    certificate: Optional[tuple]
    lattice: RelationLattice

    def __bool__(self):
        return self.independent


def is_multiplicatively_independent(values):
    """Decide multiplicative independence; a negative answer carries one
    nonzero relation vector, re-verified by exact arithmetic."""
    values = list(values)
    if not values:
        raise ValueError("need at least one value")
    lattice = multiplicative_relations(values)
    if lattice.is_trivial():
        return IndependenceResult(True, None, lattice)
    certificate = lattice.basis[0]
    if not power_product(values, certificate).is_one():
        raise AssertionError("relation certificate failed exact verification")
    return IndependenceResult(False, certificate, lattice)
