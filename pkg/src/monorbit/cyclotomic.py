"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

An element is stored as its coordinate vector in the power basis
1, zeta, ..., zeta^(phi(N)-1), fully reduced modulo the N-th cyclotomic
polynomial.  Coordinates are Fractions, so all arithmetic is exact and
zero-testing is decidable.  Mixed-conductor operations lift both operands
into Q(zeta_lcm) first; the representation at a fixed conductor is unique,
so equality is coefficient-wise.

Numeric embeddings send zeta_N to exp(2*pi*i/N) and are computed with
interval arithmetic, so every returned approximation carries a guaranteed
error bound.
"""

import math
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from mpmath import iv, mpf

from . import polyring
from .numutil import divisors, euler_phi


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """The n-th cyclotomic polynomial as an ascending tuple of integers."""
    if n < 1:
        raise ValueError("cyclotomic polynomial index must be >= 1")
    if n == 1:
        return (-1, 1)
    # Divide x^n - 1 by the cyclotomic polynomials of all proper divisors.
    poly = tuple([-1] + [0] * (n - 1) + [1])
    for d in divisors(n):
        if d == n:
            continue
        poly, rem = polyring.int_poly_divmod(poly, cyclotomic_polynomial(d))
        assert rem == ()
    return poly


@lru_cache(maxsize=None)
def _reduction_table(n):
    """x^k reduced modulo Phi_n for k = 0 .. max(n, 2*phi(n)-1) - 1.

    Entries are integer tuples of length phi(n); they serve both zeta-power
    lookups (k < n) and product folding (k <= 2*phi(n)-2).
    """
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    size = max(n, 2 * phi - 1)
    table = [(1,) + (0,) * (phi - 1)]
    current = list(table[0])
    for _ in range(1, size):
        carry = current[-1]
        current = [0] + current[:-1]
        if carry:
            for j in range(phi):
                current[j] -= carry * mod[j]
        table.append(tuple(current))
    return tuple(table)


class CyclotomicNumber:
    """An exact element of Q(zeta_N) in the reduced power basis."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor, coeffs):
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            raise ValueError(
                f"expected {euler_phi(conductor)} coordinates for conductor "
                f"{conductor}, got {len(coeffs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def from_rational(cls, value):
        return cls(1, (Fraction(value),))

    @classmethod
    def zeta(cls, n, power=1):
        """zeta_n ** power."""
        if n < 1:
            raise ValueError("conductor must be >= 1")
        table = _reduction_table(n)
        return cls(n, table[power % n])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def lift(self, conductor):
        """Re-express in Q(zeta_M) for a multiple M of the conductor."""
        n = self.conductor
        if conductor == n:
            return self
        if conductor % n:
            raise ValueError("can only lift to a multiple of the conductor")
        table = _reduction_table(conductor)
        step = conductor // n
        phi = euler_phi(conductor)
        out = [Fraction(0)] * phi
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = table[(k * step) % conductor]
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
        return CyclotomicNumber(conductor, out)

    def _pair(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return None, None
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber(
            a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CyclotomicNumber(
            a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        phi = euler_phi(n)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        out = list(conv[:phi]) + [Fraction(0)] * max(0, phi - len(conv))
        if phi > 1:
            table = _reduction_table(n)
            for k in range(phi, 2 * phi - 1):
                c = conv[k]
                if c == 0:
                    continue
                row = table[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(n, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber(
                self.conductor,
                (1 / self.coeffs[0],) + (Fraction(0),) * (len(self.coeffs) - 1),
            )
        mod = tuple(Fraction(c) for c in cyclotomic_polynomial(self.conductor))
        g, s, _ = polyring.xgcd(polyring.normalize(self.coeffs), mod)
        assert g == (Fraction(1),)
        inv = polyring.poly_mod(s, mod)
        phi = euler_phi(self.conductor)
        coeffs = tuple(inv[i] if i < len(inv) else Fraction(0) for i in range(phi))
        return CyclotomicNumber(self.conductor, coeffs)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.from_rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_rational():
            return f"CyclotomicNumber({self.coeffs[0]})"
        return f"CyclotomicNumber(conductor={self.conductor}, coeffs={self.coeffs})"

    def galois(self, k):
        """Apply zeta -> zeta^k, for k coprime to the conductor."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        table = _reduction_table(n)
        phi = euler_phi(n)
        out = [Fraction(0)] * phi
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = table[(j * k) % n]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
        return CyclotomicNumber(n, out)

    def conjugate(self):
        return self.galois(self.conductor - 1) if self.conductor > 2 else self

    def minimal_conductor(self):
        """Smallest divisor M of the conductor with the value in Q(zeta_M)."""
        n = self.conductor
        if self.is_rational():
            return 1
        units = [u for u in range(1, n + 1) if math.gcd(u, n) == 1]
        for m in divisors(n):
            if m == n:
                return n
            if all(self.galois(u) == self for u in units if (u - 1) % m == 0):
                return m
        return n

    def canonicalized(self):
        """Equal value re-expressed at its minimal conductor."""
        m = self.minimal_conductor()
        n = self.conductor
        if m == n:
            return self
        phi_m = euler_phi(m)
        table = _reduction_table(n)
        step = n // m
        columns = [table[(j * step) % n] for j in range(phi_m)]
        sol = _solve_exact(columns, self.coeffs)
        return CyclotomicNumber(m, sol)


def _coerce(value):
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    return NotImplemented


def _solve_exact(columns, target):
    """Solve sum_j c_j * columns[j] = target exactly (system is consistent)."""
    rows = len(target)
    cols = len(columns)
    aug = [
        [Fraction(columns[j][i]) for j in range(cols)] + [Fraction(target[i])]
        for i in range(rows)
    ]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    solution = [Fraction(0)] * cols
    for row_idx, c in enumerate(pivots):
        solution[c] = aug[row_idx][-1]
    return solution


@contextmanager
def interval_precision(bits):
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def interval_endpoints(x):
    """Lower and upper endpoints of an interval as plain real mpf values."""
    from mpmath import mp

    lo, hi = x._mpi_
    return mp.make_mpf(lo), mp.make_mpf(hi)


def _iv_fraction(value):
    value = Fraction(value)
    return iv.mpf(value.numerator) / value.denominator


def embed_interval(x, bits):
    """Interval enclosures of the real and imaginary parts of the standard
    embedding zeta_N -> exp(2*pi*i/N)."""
    n = x.conductor
    with interval_precision(bits):
        two_pi = 2 * iv.pi
        re = iv.mpf(0)
        im = iv.mpf(0)
        for k, c in enumerate(x.coeffs):
            if c == 0:
                continue
            ck = _iv_fraction(c)
            if k == 0:
                re += ck
                continue
            angle = two_pi * k / n
            re += ck * iv.cos(angle)
            im += ck * iv.sin(angle)
        return re, im


def modulus_interval(x, bits):
    """Interval enclosure of |x| under the standard embedding."""
    with interval_precision(bits):
        re, im = embed_interval(x, bits)
        return iv.sqrt(re * re + im * im)


class EmbeddedValue(NamedTuple):
    value: complex
    error: float


def embed_numeric(x, precision=53):
    """Complex approximation of x with a guaranteed error bound.

    `precision` is the number of working bits requested (>= 53); the error
    accounts both for interval width and for the final float rounding.
    """
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    from mpmath import mp

    re, im = embed_interval(x, precision + 30)
    re_lo, re_hi = interval_endpoints(re)
    im_lo, im_hi = interval_endpoints(im)
    with mp.workprec(precision + 60):
        mid_re = (re_lo + re_hi) / 2
        mid_im = (im_lo + im_hi) / 2
        value = complex(float(mid_re), float(mid_im))
        err = (re_hi - re_lo) / 2 + (im_hi - im_lo) / 2
        if mpf(value.real) != mid_re or mpf(value.imag) != mid_im:
            scale = max(abs(value.real), abs(value.imag), 1.0)
            err = err + mpf(scale) * mpf(2) ** -52
        err_float = float(err) if err > 0 else 0.0
        if err > 0 and mpf(err_float) < err:
            err_float = math.nextafter(err_float, math.inf)
    return EmbeddedValue(value, err_float)
