import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monorbit.errors import FactorizationError
from monorbit.scalars import (
    MonomialScalar,
    format_scalar,
    group_order_D,
    is_multiplicatively_independent,
    multiplicative_relations,
    parse_scalar,
    power_product,
    ratio_order,
    tuple_relation_lattice,
)


def test_negative_folding(S):
    s = S("-3")
    assert (s.num, s.den, s.conductor, s.zeta_exp) == (3, 1, 2, 1)
    t = MonomialScalar.make(Fraction(-2), 3, 1)
    assert t.conductor == 6
    assert t.to_cyclotomic() == S("-2").to_cyclotomic() * S("1 * zeta(3)^1").to_cyclotomic()


def test_canonical_root_part(S):
    assert S("1 * zeta(6)^2") == S("1 * zeta(3)^1")
    assert S("5 * zeta(8)^6") == S("5 * zeta(4)^3")
    assert S("7 * zeta(9)^0") == S("7")


def test_zero_rejected():
    with pytest.raises(ValueError):
        MonomialScalar.make(0)


def test_parse_format_examples(S):
    assert format_scalar(S("1/2 * zeta(12)^5")) == "1/2 * zeta(12)^5"
    assert format_scalar(S("-3")) == "3 * zeta(2)^1"
    assert format_scalar(S("4/6")) == "2/3"
    with pytest.raises(ValueError):
        parse_scalar("two")


_rationals = st.fractions(min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12).filter(
    lambda q: q != 0
)
_scalars = st.builds(
    lambda q, n, a: MonomialScalar.make(q, n, a),
    _rationals,
    st.sampled_from([1, 2, 3, 4, 6, 8, 12]),
    st.integers(min_value=0, max_value=23),
)


@given(_scalars)
@settings(max_examples=80, deadline=None)
def test_serialization_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(_scalars, _scalars)
@settings(max_examples=80, deadline=None)
def test_group_laws(u, v):
    assert (u * v) / v == u
    assert (u * v).magnitude() == u.magnitude() * v.magnitude()
    assert u * u.inverse() == MonomialScalar.one()


@given(_scalars, st.integers(min_value=-6, max_value=6))
@settings(max_examples=60, deadline=None)
def test_power_consistency(u, k):
    expected = MonomialScalar.one()
    step = u if k >= 0 else u.inverse()
    for _ in range(abs(k)):
        expected = expected * step
    assert u**k == expected


def test_ratio_order_examples(S):
    assert ratio_order(S("2"), S("2 * zeta(4)^1")) == 4
    assert ratio_order(S("2"), S("3")) is None
    assert ratio_order(S("5 * zeta(6)^2"), S("5 * zeta(6)^5")) == 2
    assert ratio_order(S("7"), S("7")) == 1


@given(_scalars, st.sampled_from([1, 2, 3, 4, 6, 8, 12]), st.integers(0, 23))
@settings(max_examples=60, deadline=None)
def test_ratio_order_is_minimal(u, n, a):
    v = u * MonomialScalar.make(1, n, a)
    order = ratio_order(u, v)
    assert order is not None
    ratio = u / v
    assert (ratio**order).is_one()
    for d in range(1, order):
        if order % d == 0:
            assert not (ratio**d).is_one()


def test_group_order_examples(S):
    assert group_order_D([S("2"), S("3"), S("5")]) == 1
    assert group_order_D([S("2"), S("-2")]) == 2
    assert group_order_D([S("2"), S("2 * zeta(4)^1"), S("3"), S("-3")]) == 4


@given(st.lists(_scalars, min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_group_order_covers_all_ratios(values):
    d = group_order_D(values)
    for i in range(len(values)):
        for j in range(len(values)):
            order = ratio_order(values[i], values[j])
            if order is not None:
                assert d % order == 0


def test_relations_independent_pairs(S):
    assert multiplicative_relations([S("2"), S("3")]).is_trivial()
    assert multiplicative_relations([S("6"), S("10"), S("15")]).is_trivial()


def test_relations_dependent_example(S):
    lattice = multiplicative_relations([S("4"), S("8")])
    assert lattice.basis == ((3, -2),)
    assert lattice.verify([S("4"), S("8")])


def test_relations_prime_exponent_determinant_oracle():
    # (6, 10, 15) against primes (2, 3, 5): the exponent matrix determinant
    # is -2, so the kernel is trivial
    matrix = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    det = (
        matrix[0][0] * (matrix[1][1] * matrix[2][2] - matrix[1][2] * matrix[2][1])
        - matrix[0][1] * (matrix[1][0] * matrix[2][2] - matrix[1][2] * matrix[2][0])
        + matrix[0][2] * (matrix[1][0] * matrix[2][1] - matrix[1][1] * matrix[2][0])
    )
    assert det == -2


def test_independence_results(S):
    assert is_multiplicatively_independent([S("2"), S("3")]).independent
    dep = is_multiplicatively_independent([S("4"), S("8")])
    assert not dep.independent
    assert dep.certificate == (3, -2)

    mixed = is_multiplicatively_independent([S("2"), S("2 * zeta(4)^1")])
    assert not mixed.independent
    assert mixed.certificate == (4, -4)
    assert power_product([S("2"), S("2 * zeta(4)^1")], mixed.certificate).is_one()


def test_root_of_unity_congruence_lattice(S):
    # relations among (zeta_4, zeta_4) are exactly k1 + k2 = 0 (mod 4)
    lattice = multiplicative_relations([S("1 * zeta(4)^1"), S("1 * zeta(4)^1")])
    assert set(lattice.basis) == {(1, -1), (0, 4)}
    assert lattice.verify([S("1 * zeta(4)^1"), S("1 * zeta(4)^1")])


@given(
    st.lists(st.sampled_from([2, 3, 5, 6, 10]), min_size=1, max_size=3),
    st.lists(st.integers(-3, 3), min_size=1, max_size=3),
)
@settings(max_examples=50, deadline=None)
def test_planted_relation_is_found(bases, exponents):
    values = [MonomialScalar.make(b) for b in bases]
    exponents = exponents[: len(values)]
    while len(exponents) < len(values):
        exponents.append(0)
    if all(e == 0 for e in exponents):
        exponents[0] = 1
    product = power_product(values, exponents)
    extended = values + [product]
    result = is_multiplicatively_independent(extended)
    assert not result.independent
    assert power_product(extended, result.certificate).is_one()


def test_tuple_relations(S):
    # (2,3) and (4,9) are powers of each other coordinate-wise
    basis = tuple_relation_lattice([(S("2"), S("3")), (S("4"), S("9"))])
    assert basis == [(2, -1)]
    # (2,3) and (4,3): no single relation satisfies both coordinates
    assert tuple_relation_lattice([(S("2"), S("3")), (S("4"), S("3"))]) == []


def test_unfactorable_input_rejected(S):
    semiprime = 1000003 * 1000033
    with pytest.raises(FactorizationError):
        multiplicative_relations([S(str(semiprime)), S("2")])
