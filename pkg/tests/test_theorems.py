from fractions import Fraction

import pytest

from monorbit.dynamics import Hypersurface, MonomialMap
from monorbit.scalars import MonomialScalar
from monorbit.theorems import (
    applicable_theorems,
    field_degree,
    pairwise_ratio_independent,
)

SQUARING = MonomialMap([[2, 0], [0, 2]])
LINEAR_G = Hypersurface(2, [(1, (1, 0)), (-1, (0, 1)), (1, (0, 0))])


def _by_id(checks):
    return {c.theorem_id: c for c in checks}


def test_power_map_instance():
    checks = _by_id(applicable_theorems(SQUARING, LINEAR_G, (2, 3)))
    assert checks["3.1"].applicable
    assert checks["3.1"].bound.params == {"n": 3}
    assert checks["3.3"].applicable
    assert checks["3.7"].applicable  # degrees 2, nonzero constant term
    assert not checks["3.4"].applicable  # constant term is nonzero
    assert not checks["3.5"].applicable


def test_dependent_point_fails_independence_rules():
    w = (MonomialScalar.make(2), MonomialScalar.make(2, 4, 1))
    checks = _by_id(applicable_theorems(SQUARING, LINEAR_G, w))
    assert not checks["3.1"].applicable
    assert any("independent" in f for f in checks["3.1"].failures)
    # the degeneracy order is computed and reported even when 3.2 fails
    assert checks["3.2"].params["D"] == 4
    assert not checks["3.2"].applicable


def test_rule_32_applicable_with_degeneracy():
    mapping = MonomialMap([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    G = Hypersurface(3, [(1, (0, 0, 1)), (-1, (1, 0, 0))])
    w = (5, -5, 2)
    checks = _by_id(applicable_theorems(mapping, G, w))
    assert checks["3.2"].applicable
    assert checks["3.2"].params["D"] == 2
    assert checks["3.2"].params["j0"] == 2
    assert checks["3.2"].bound.params == {"n": 2, "D": 2}


def test_rule_32_shape_rejection():
    G = Hypersurface(2, [(1, (1, 1)), (1, (0, 0))])
    checks = _by_id(applicable_theorems(SQUARING, G, (2, 3)))
    assert not checks["3.2"].applicable
    assert any("single-variable" in f for f in checks["3.2"].failures)


def test_triangular_constant_instance():
    mapping = MonomialMap([[2, 1], [0, 3]])
    G = Hypersurface(2, [(1, (1, 0)), (-12, (0, 0))])
    checks = _by_id(applicable_theorems(mapping, G, (2, 3)))
    assert checks["3.7"].applicable
    assert not checks["3.1"].applicable
    assert not checks["3.3"].applicable


def test_rule_34():
    mapping = MonomialMap([[2, 0], [0, 3]])
    G = Hypersurface(2, [(1, (1, 1)), (-1, (2, 3))])
    checks = _by_id(applicable_theorems(mapping, G, (2, 3)))
    assert checks["3.4"].applicable
    assert checks["3.4"].params == {"n": 2, "m": 2, "d": 1}

    shared = Hypersurface(2, [(1, (1, 1)), (-1, (1, 3))])
    checks = _by_id(applicable_theorems(mapping, shared, (2, 3)))
    assert not checks["3.4"].applicable
    assert any("differ in every coordinate" in f for f in checks["3.4"].failures)


def test_rule_34_field_degree_with_roots_of_unity():
    mapping = MonomialMap([[2, 0], [0, 3]])
    G = Hypersurface(
        2,
        [
            (MonomialScalar.make(1, 4, 1).to_cyclotomic(), (1, 1)),
            (-1, (2, 3)),
        ],
    )
    checks = _by_id(applicable_theorems(mapping, G, (2, 3)))
    assert checks["3.4"].params["d"] == 2  # Q(zeta_4)


def test_rule_35():
    mapping = MonomialMap([[3, 0], [1, 1]])
    G = Hypersurface(2, [(1, (2, 0)), (1, (0, 1))])
    checks = _by_id(applicable_theorems(mapping, G, (2, 3)))
    assert checks["3.5"].applicable

    too_big = MonomialMap([[3, 0], [2, 2]])  # deg F_2 = 4 >= d = 3
    checks = _by_id(applicable_theorems(too_big, G, (2, 3)))
    assert not checks["3.5"].applicable

    wrong_degree = Hypersurface(2, [(1, (2, 0)), (1, (1, 2))])  # deg G = 3 > e
    checks = _by_id(applicable_theorems(mapping, wrong_degree, (2, 3)))
    assert not checks["3.5"].applicable
    assert any("total degree" in f for f in checks["3.5"].failures)


def test_rule_36():
    mapping = MonomialMap([[1, 1], [0, 1]])
    G = Hypersurface(2, [(1, (0, 1)), (-1, (1, 1))])
    checks = _by_id(applicable_theorems(mapping, G, (2, 3)))
    assert checks["3.6"].applicable

    two_pure = Hypersurface(2, [(1, (0, 1)), (-1, (0, 2)), (1, (1, 0))])
    checks = _by_id(applicable_theorems(mapping, two_pure, (2, 3)))
    assert not checks["3.6"].applicable
    assert any("exactly one monomial" in f for f in checks["3.6"].failures)

    fixed_last_missing = MonomialMap([[1, 1], [0, 2]])
    checks = _by_id(applicable_theorems(fixed_last_missing, G, (2, 3)))
    assert not checks["3.6"].applicable


def test_rule_37_needs_constant_term():
    G = Hypersurface(2, [(1, (1, 0)), (-1, (0, 1))])
    checks = _by_id(applicable_theorems(SQUARING, G, (2, 3)))
    assert not checks["3.7"].applicable
    assert any("constant term" in f for f in checks["3.7"].failures)


def test_dimension_one_fails_everything():
    mapping = MonomialMap([[2]])
    G = Hypersurface(1, [(1, (1,)), (1, (0,))])
    checks = applicable_theorems(mapping, G, (2,))
    assert all(not c.applicable for c in checks)
    assert all(any("dimension" in f for f in c.failures) for c in checks)


def test_pairwise_ratio_independence():
    a1 = (MonomialScalar.make(2), MonomialScalar.make(3))
    a2 = (MonomialScalar.make(4), MonomialScalar.make(9))
    ok, pair = pairwise_ratio_independent([a1, a2])
    assert ok and pair is None

    a3 = (MonomialScalar.make(4), MonomialScalar.make(3))
    ok, pair = pairwise_ratio_independent([a1, a3])
    assert not ok and pair == (0, 1)


def test_field_degree():
    G = Hypersurface(2, [(1, (1, 0)), (-1, (0, 1))])
    w = (MonomialScalar.make(2), MonomialScalar.make(3))
    assert field_degree(w, G) == 1
    w2 = (MonomialScalar.make(2), MonomialScalar.make(Fraction(1, 2), 4, 1))
    assert field_degree(w2, G) == 2
    # a zeta_6 coordinate generates the same field as zeta_3
    w3 = (MonomialScalar.make(2), MonomialScalar.make(1, 6, 1))
    assert field_degree(w3, G) == 2
