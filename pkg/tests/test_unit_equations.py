from fractions import Fraction
from itertools import product

import pytest

from monorbit.bounds import compare_count, evaluate_bound
from monorbit.errors import ResourceLimitError
from monorbit.scalars import MonomialScalar
from monorbit.unitequations import (
    SetPartition,
    SubgroupGamma,
    bell_number,
    compare_with_bounds,
    enumerate_solutions,
    proportionality_classes,
    set_partitions,
    suitable_partitions,
    weak_proportionality_classes,
)

POWERS_OF_TWO = SubgroupGamma(
    3, [("2", "1", "1"), ("1", "2", "1"), ("1", "1", "2")]
)


def test_gamma_rank():
    assert POWERS_OF_TWO.rank == 3
    redundant = SubgroupGamma(2, [("2", "2"), ("4", "4")])
    assert redundant.rank == 1
    torsion = SubgroupGamma(1, [("1 * zeta(4)^1",)])
    assert torsion.rank == 0


def test_gamma_element():
    x = POWERS_OF_TWO.element((1, 2, -1))
    assert [v.as_fraction() for v in x] == [2, 4, Fraction(1, 2)]


def test_enumerate_powers_of_two_family():
    solutions = enumerate_solutions(("1", "1", "-1"), POWERS_OF_TWO, 6)
    # oracle: exhaustive box walk with plain Fractions
    expected = set()
    for e in product(range(-6, 7), repeat=3):
        if Fraction(2) ** e[0] + Fraction(2) ** e[1] - Fraction(2) ** e[2] == 0:
            expected.add(e)
    assert {s.exponents for s in solutions} == expected
    assert expected == {(t, t, t + 1) for t in range(-6, 6)}
    assert len(solutions) == 12
    assert all(s.nondegenerate for s in solutions)


def test_enumerate_collinear_family():
    gamma = SubgroupGamma(2, [("2", "2")])
    solutions = enumerate_solutions(("1", "-1"), gamma, 3)
    assert len(solutions) == 7
    classes = proportionality_classes(solutions)
    assert len(classes) == 1
    assert [v.as_fraction() for v in classes[0].representative] == [1, 1]


def test_enumerate_positive_sum_empty():
    gamma = SubgroupGamma(2, [("2", "3"), ("5", "7")])
    assert enumerate_solutions(("1", "1"), gamma, 2) == []


def test_solutions_reverify_exactly():
    solutions = enumerate_solutions(("1", "1", "-1"), POWERS_OF_TWO, 4)
    coeffs = (Fraction(1), Fraction(1), Fraction(-1))
    for sol in solutions:
        values = [v.as_fraction() for v in sol.values]
        assert sum(a * x for a, x in zip(coeffs, values)) == 0
        # independent non-degeneracy recomputation over all proper subsets
        terms = [a * x for a, x in zip(coeffs, values)]
        degenerate = any(
            sum(terms[i] for i in range(3) if mask >> i & 1) == 0
            for mask in range(1, 7)
        )
        assert sol.nondegenerate == (not degenerate)


def test_enumeration_budget():
    gamma = SubgroupGamma(2, [("2", "3"), ("3", "5"), ("5", "7")])
    with pytest.raises(ResourceLimitError, match="budget"):
        enumerate_solutions(("1", "-1"), gamma, 30, budget=1000)


def test_arity_cap():
    k = 13
    gamma = SubgroupGamma(k, [tuple("2" for _ in range(k))])
    with pytest.raises(ValueError, match="cap"):
        enumerate_solutions(tuple("1" for _ in range(k)), gamma, 1)


def test_proportionality_representatives_idempotent():
    solutions = enumerate_solutions(("1", "1", "-1"), POWERS_OF_TWO, 5)
    for cls in proportionality_classes(solutions):
        rep = cls.representative
        renormalized = tuple(v / rep[0] for v in rep)
        assert renormalized == rep
    assert proportionality_classes([]) == []


# --- partitions ---------------------------------------------------------------


def _oracle_partitions(k):
    """Independent generator: assign each element a block label, canonical
    by first-occurrence order."""
    if k == 0:
        return [[]]
    out = []
    def rec(i, blocks):
        if i > k:
            out.append([tuple(b) for b in blocks])
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()
    rec(1, [])
    return out


@pytest.mark.parametrize("k,count", [(2, 1), (3, 1), (4, 4), (5, 11), (6, 41)])
def test_suitable_partition_counts(k, count):
    suitable = suitable_partitions(k)
    assert len(suitable) == count
    oracle = [
        p for p in _oracle_partitions(k) if all(len(b) >= 2 for b in p)
    ]
    assert len(oracle) == count


def test_suitable_partitions_k4_explicit():
    blocks = {p.blocks for p in suitable_partitions(4)}
    assert blocks == {
        ((1, 2, 3, 4),),
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    }


def test_suitable_partitions_validation():
    with pytest.raises(ValueError):
        suitable_partitions(1)


@pytest.mark.parametrize("k", range(1, 9))
def test_set_partition_counts_match_bell(k):
    assert len(set_partitions(k)) == bell_number(k)


def test_bell_numbers():
    assert [bell_number(k) for k in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_bell_bound_invariant():
    for k in range(2, 11):
        assert compare_count(bell_number(k), evaluate_bound("bell", {"k": k}))


def test_partition_refinement():
    p = SetPartition(4, [(1, 2), (3, 4)])
    whole = SetPartition(4, [(1, 2, 3, 4)])
    assert p.refines(whole)
    assert not whole.refines(p)
    assert p.refines(p)
    other = SetPartition(4, [(1, 3), (2, 4)])
    assert not other.refines(p)


def test_partition_validation():
    with pytest.raises(ValueError):
        SetPartition(3, [(1, 2)])
    with pytest.raises(ValueError):
        SetPartition(3, [(1, 2), (2, 3)])


# --- weak proportionality ------------------------------------------------------


def test_weak_proportionality_single_family():
    solutions = enumerate_solutions(("1", "1", "-1"), POWERS_OF_TWO, 6)
    report = weak_proportionality_classes(solutions, ("1", "1", "-1"))
    assert report.suitable_partition_count == 1
    assert report.closure_count == 1
    assert report.refined_total == 1
    assert len(report.per_partition) == 1


def test_weak_proportionality_empty():
    report = weak_proportionality_classes([], ("1", "-1"))
    assert report.closure_count == 0 and report.refined_total == 0


def test_weak_proportionality_blockwise_families():
    gamma = SubgroupGamma(
        4,
        [
            ("2", "1", "1", "1"),
            ("1", "2", "1", "1"),
            ("1", "1", "2", "1"),
            ("1", "1", "1", "2"),
        ],
    )
    coeffs = ("1", "-1", "1", "-1")
    solutions = enumerate_solutions(coeffs, gamma, 2)
    assert len(solutions) == 45
    assert all(not s.nondegenerate for s in solutions)
    report = weak_proportionality_classes(solutions, coeffs)
    counted = {tuple(map(tuple, p.blocks)): c for p, c in report.per_partition}
    assert counted == {((1, 2), (3, 4)): 1, ((1, 4), (2, 3)): 1}
    assert report.refined_total == 2
    assert report.closure_count == 1


def test_refinement_monotonicity_on_solutions():
    gamma = SubgroupGamma(
        4,
        [
            ("2", "1", "1", "1"),
            ("1", "2", "1", "1"),
            ("1", "1", "2", "1"),
            ("1", "1", "1", "2"),
        ],
    )
    coeffs = tuple(MonomialScalar.make(c) for c in (1, -1, 1, -1))
    solutions = enumerate_solutions(coeffs, gamma, 2)
    partitions = suitable_partitions(4)

    def solves(sol, part):
        values = [v.as_fraction() for v in sol.values]
        rats = [c.as_fraction() for c in coeffs]
        return all(
            sum(rats[i - 1] * values[i - 1] for i in block) == 0
            for block in part.blocks
        )

    for sol in solutions:
        for q in partitions:
            for p in partitions:
                if q.refines(p) and solves(sol, q):
                    assert solves(sol, p)


def test_compare_with_bounds_ledger():
    solutions = enumerate_solutions(("1", "1", "-1"), POWERS_OF_TWO, 6)
    report = weak_proportionality_classes(solutions, ("1", "1", "-1"))
    ledger = compare_with_bounds(solutions, report, 3, POWERS_OF_TWO.rank)
    assert ledger["ok"]
    names = {name for name, _ in ledger["bounds"]}
    assert names == {"L2.6", "C2.7"}
    # a fabricated count past the bound fails the comparison
    l26 = evaluate_bound("L2.6", {"k": 3, "r": 3})
    assert not compare_count(l26.exact + 1, l26)
