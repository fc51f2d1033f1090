from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monorbit.cyclotomic import (
    CyclotomicNumber,
    cyclotomic_polynomial,
    embed_numeric,
)
from monorbit.numutil import divisors, euler_phi


def _naive_int_poly_div(num, den):
    # independent long division for the oracle below
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i - len(den) + 1] = q
        for j, d in enumerate(den):
            num[i - len(den) + 1 + j] -= q * d
    assert all(c == 0 for c in num)
    return out


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)


def test_cyclotomic_polynomial_12_against_division_oracle():
    # divide x^12 - 1 by the cyclotomic polynomials of all proper divisors
    poly = [-1] + [0] * 11 + [1]
    for d in divisors(12):
        if d == 12:
            continue
        poly = _naive_int_poly_div(poly, cyclotomic_polynomial(d))
    assert tuple(poly) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 30])
def test_cyclotomic_polynomial_degree_and_content(n):
    from math import gcd

    poly = cyclotomic_polynomial(n)
    assert len(poly) - 1 == euler_phi(n)
    content = 0
    for c in poly:
        content = gcd(content, abs(c))
    assert content == 1
    assert poly[-1] == 1


def test_zeta_identities():
    z4 = CyclotomicNumber.zeta(4)
    assert (z4 + CyclotomicNumber.zeta(4, 3)).is_zero()
    z3 = CyclotomicNumber.zeta(3)
    assert (z3 * z3).coeffs == (Fraction(-1), Fraction(-1))
    two = CyclotomicNumber.from_rational(2)
    assert two.inverse() == CyclotomicNumber.from_rational(Fraction(1, 2))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.from_rational(0).inverse()


def test_cross_conductor_equality():
    # zeta_6^3 = -1 no matter where it is represented
    minus_one = CyclotomicNumber.zeta(6, 3)
    assert minus_one == CyclotomicNumber.from_rational(-1)
    assert CyclotomicNumber.zeta(6, 2) == CyclotomicNumber.zeta(3, 1)


_conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])
_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


@st.composite
def cyclo_numbers(draw):
    n = draw(_conductors)
    coeffs = [draw(_fractions) for _ in range(euler_phi(n))]
    return CyclotomicNumber(n, coeffs)


@given(cyclo_numbers())
@settings(max_examples=60, deadline=None)
def test_mul_inverse_round_trip(x):
    if x.is_zero():
        return
    assert x * x.inverse() == CyclotomicNumber.from_rational(1)


@given(cyclo_numbers(), cyclo_numbers())
@settings(max_examples=60, deadline=None)
def test_lifting_commutes_with_arithmetic(x, y):
    import math

    m = math.lcm(x.conductor, y.conductor)
    assert x.lift(m) + y.lift(m) == x + y
    assert x.lift(m) * y.lift(m) == x * y


@given(cyclo_numbers(), cyclo_numbers())
@settings(max_examples=40, deadline=None)
def test_galois_is_multiplicative(x, y):
    import math

    n = math.lcm(x.conductor, y.conductor, 12)
    k = 5  # coprime to any conductor dividing 12
    if math.gcd(k, n) != 1:
        return
    a, b = x.lift(n), y.lift(n)
    assert a.galois(k) * b.galois(k) == (a * b).galois(k)


def test_embed_rational_is_exact():
    out = embed_numeric(CyclotomicNumber.from_rational(2))
    assert out.value == 2 + 0j
    assert out.error == 0.0


def test_embed_zeta4_is_i():
    out = embed_numeric(CyclotomicNumber.zeta(4))
    assert abs(out.value - 1j) <= 2**-50
    assert out.error <= 2**-50


def test_embed_modulus_one_plus_zeta3():
    out = embed_numeric(CyclotomicNumber.from_rational(1) + CyclotomicNumber.zeta(3))
    assert abs(abs(out.value) - 1.0) <= 1e-12 + out.error


def test_embed_requires_53_bits():
    with pytest.raises(ValueError):
        embed_numeric(CyclotomicNumber.from_rational(1), precision=32)


@given(cyclo_numbers())
@settings(max_examples=40, deadline=None)
def test_embed_error_bound_is_honest(x):
    rough = embed_numeric(x, precision=53)
    sharp = embed_numeric(x, precision=200)
    assert abs(rough.value - sharp.value) <= rough.error + sharp.error


def test_minimal_conductor_descent():
    assert CyclotomicNumber.zeta(6).minimal_conductor() == 3
    assert (CyclotomicNumber.zeta(4) ** 2).minimal_conductor() == 1
    assert CyclotomicNumber.zeta(12).minimal_conductor() == 12
    z6 = CyclotomicNumber.zeta(6)
    canon = z6.canonicalized()
    assert canon.conductor == 3 and canon == z6
