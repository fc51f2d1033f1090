"""Desk-scale enumeration of solutions of a_1 x_1 + ... + a_k x_k = 0 in a
finitely generated subgroup of (K*)^k, with the classification machinery
behind the counting bounds: non-degeneracy (no vanishing proper subsum),
proportionality classes, suitable set partitions (all blocks of size >= 2),
and weak proportionality (block-wise proportionality with respect to some
partition).

The group is given by generator tuples; enumeration walks an explicit
exponent box [-B, B]^r, so results are exhaustive for the box and every
reported solution re-verifies exactly.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bounds import compare_count, evaluate_bound
from .errors import ResourceLimitError
from .scalars import MonomialScalar, parse_scalar, tuple_relation_lattice

DEFAULT_ENUMERATION_BUDGET = 10**7
MAX_SUBSET_ARITY = 12


def _coerce_scalar(value):
    if isinstance(value, MonomialScalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    return MonomialScalar.make(Fraction(value))


class SubgroupGamma:
    """Finitely generated subgroup of (K*)^k given by generator tuples."""

    __slots__ = ("arity", "generators", "_rank")

    def __init__(self, arity, generators):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        gens = []
        for g in generators:
            g = tuple(_coerce_scalar(x) for x in g)
            if len(g) != arity:
                raise ValueError("generator tuples must have length k")
            gens.append(g)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "_rank", None)

    def __setattr__(self, name, value):
        raise AttributeError("SubgroupGamma is immutable")

    @property
    def rank(self):
        """Free rank: number of generators minus the rank of their
        relation lattice."""
        if self._rank is None:
            relations = tuple_relation_lattice(self.generators)
            object.__setattr__(
                self, "_rank", len(self.generators) - len(relations)
            )
        return self._rank

    def element(self, exponents):
        if len(exponents) != len(self.generators):
            raise ValueError("need one exponent per generator")
        out = [MonomialScalar.one()] * self.arity
        for g, e in zip(self.generators, exponents):
            if e:
                for c in range(self.arity):
                    out[c] = out[c] * g[c] ** e
        return tuple(out)


@dataclass(frozen=True)
class UnitSolution:
    exponents: tuple
    values: tuple
    nondegenerate: bool

    def to_json(self):
        return {
            "exponents": list(self.exponents),
            "values": [str(v) for v in self.values],
            "nondegenerate": self.nondegenerate,
        }


def _terms_rational(coeffs, values):
    """Term values a_i * x_i as Fractions when everything is rational,
    else None."""
    terms = []
    for a, x in zip(coeffs, values):
        if not (a.is_rational_value() and x.is_rational_value()):
            return None
        terms.append(a.as_fraction() * x.as_fraction())
    return terms


def _terms_cyclotomic(coeffs, values):
    return [
        a.to_cyclotomic() * x.to_cyclotomic() for a, x in zip(coeffs, values)
    ]


def _vanishes(terms):
    total = sum(terms[1:], start=terms[0])
    if isinstance(total, Fraction):
        return total == 0
    return total.is_zero()


def _is_nondegenerate(terms):
    """No proper nonempty subsum vanishes (the full sum is zero)."""
    k = len(terms)
    rational = isinstance(terms[0], Fraction)
    for mask in range(1, 2**k - 1):
        subset = [terms[i] for i in range(k) if mask >> i & 1]
        if rational:
            if sum(subset) == 0:
                return False
        else:
            total = subset[0]
            for t in subset[1:]:
                total = total + t
            if total.is_zero():
                return False
    return True


def enumerate_solutions(
    coeffs, gamma, box_radius, budget=DEFAULT_ENUMERATION_BUDGET
):
    """All solutions with exponent vectors in [-B, B]^r, each verified
    exactly and flagged for non-degeneracy by checking every proper subsum.
    """
    coeffs = tuple(_coerce_scalar(a) for a in coeffs)
    k = gamma.arity
    if len(coeffs) != k:
        raise ValueError("need one coefficient per coordinate")
    if box_radius < 0:
        raise ValueError("box radius must be non-negative")
    if k > MAX_SUBSET_ARITY:
        raise ValueError(
            f"arity {k} exceeds the subset-check cap {MAX_SUBSET_ARITY}"
        )
    r = len(gamma.generators)
    width = 2 * box_radius + 1
    cost = k**r * width**r
    if cost > budget:
        raise ResourceLimitError(
            f"enumeration cost {cost} exceeds the budget {budget}"
        )

    # g_t^e for e in [-B, B], per generator and coordinate
    powers = []
    for g in gamma.generators:
        row = {}
        for e in range(-box_radius, box_radius + 1):
            row[e] = tuple(x**e for x in g)
        powers.append(row)

    solutions = []

    def walk(index, exponents, partial):
        if index == r:
            terms = _terms_rational(coeffs, partial)
            if terms is None:
                terms = _terms_cyclotomic(coeffs, partial)
            if _vanishes(terms):
                solutions.append(
                    UnitSolution(
                        exponents=tuple(exponents),
                        values=tuple(partial),
                        nondegenerate=_is_nondegenerate(terms),
                    )
                )
            return
        for e in range(-box_radius, box_radius + 1):
            row = powers[index][e]
            nxt = tuple(p * q for p, q in zip(partial, row))
            walk(index + 1, exponents + [e], nxt)

    walk(0, [], tuple(MonomialScalar.one() for _ in range(k)))
    return solutions


def _normalized(values):
    first = values[0]
    return tuple(v / first for v in values)


@dataclass(frozen=True)
class ProportionalityClass:
    representative: tuple
    members: tuple  # indices into the solution list

    def to_json(self):
        return {
            "representative": [str(v) for v in self.representative],
            "members": list(self.members),
        }


def proportionality_classes(solutions):
    """Classes of x ~ c*x with representatives normalized by the first
    coordinate."""
    classes = {}
    for idx, sol in enumerate(solutions):
        key = _normalized(sol.values)
        classes.setdefault(key, []).append(idx)
    ordered = sorted(
        classes.items(), key=lambda kv: tuple(v.sort_key() for v in kv[0])
    )
    return [
        ProportionalityClass(representative=key, members=tuple(members))
        for key, members in ordered
    ]


# --- set partitions ----------------------------------------------------------


class SetPartition:
    """Partition of {1, ..., k} into disjoint nonempty blocks."""

    __slots__ = ("size", "blocks")

    def __init__(self, size, blocks):
        seen = set()
        norm = []
        for block in blocks:
            block = tuple(sorted(block))
            if not block:
                raise ValueError("blocks must be nonempty")
            for x in block:
                if x in seen or not 1 <= x <= size:
                    raise ValueError("blocks must partition {1, ..., k}")
                seen.add(x)
            norm.append(block)
        if len(seen) != size:
            raise ValueError("blocks must cover {1, ..., k}")
        norm.sort()
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "blocks", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    def is_suitable(self):
        return all(len(b) >= 2 for b in self.blocks)

    def refines(self, other):
        """Every block of self lies inside a block of other."""
        lookup = {}
        for bi, block in enumerate(other.blocks):
            for x in block:
                lookup[x] = bi
        return all(len({lookup[x] for x in block}) == 1 for block in self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.size == other.size
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.size, self.blocks))

    def __repr__(self):
        inner = "|".join("".join(map(str, b)) for b in self.blocks)
        return f"SetPartition({{{inner}}})"

    def to_json(self):
        return [list(b) for b in self.blocks]


def set_partitions(k):
    """All set partitions of {1, ..., k} (Bell(k) of them)."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def extend(element, blocks):
        if element > k:
            yield SetPartition(k, [tuple(b) for b in blocks])
            return
        for i in range(len(blocks)):
            blocks[i].append(element)
            yield from extend(element + 1, blocks)
            blocks[i].pop()
        blocks.append([element])
        yield from extend(element + 1, blocks)
        blocks.pop()

    return list(extend(1, []))


def suitable_partitions(k):
    """All set partitions of {1, ..., k} with every block of size >= 2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return [p for p in set_partitions(k) if p.is_suitable()]


@lru_cache(maxsize=None)
def bell_number(k):
    """Number of set partitions of a k-element set (Bell triangle)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


# --- weak proportionality ----------------------------------------------------


def _block_subsums_vanish(partition, coeffs, values):
    for block in partition.blocks:
        terms = [
            coeffs[i - 1].to_cyclotomic() * values[i - 1].to_cyclotomic()
            for i in block
        ]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        if not total.is_zero():
            return False
    return True


def _blockwise_key(partition, values):
    key = []
    for block in partition.blocks:
        first = values[block[0] - 1]
        key.append(tuple(values[i - 1] / first for i in block))
    return tuple(key)


@dataclass(frozen=True)
class WeakProportionalityReport:
    """Both readings of "up to weak proportionality": equivalence classes
    of the transitive closure of the block-proportionality relation, and
    the per-partition counts sum over solutions of no proper refinement."""

    closure_classes: tuple  # tuples of solution indices
    closure_count: int
    per_partition: tuple  # (SetPartition, class count within T(P))
    refined_total: int
    suitable_partition_count: int

    def to_json(self):
        return {
            "closure_classes": [list(c) for c in self.closure_classes],
            "closure_count": self.closure_count,
            "per_partition": [
                {"partition": p.to_json(), "classes": count}
                for p, count in self.per_partition
            ],
            "refined_total": self.refined_total,
            "suitable_partition_count": self.suitable_partition_count,
        }


def weak_proportionality_classes(solutions, coeffs):
    """Classify solutions of one equation instance up to weak
    proportionality.

    For each solution, the suitable partitions under which it solves the
    refined block system are computed; two solutions are directly related
    when some common partition makes them block-wise proportional.  The
    report carries (i) the transitive closure classes of that relation and
    (ii) the per-partition class counts, where each partition only counts
    solutions that solve no proper refinement of it.
    """
    coeffs = tuple(_coerce_scalar(a) for a in coeffs)
    if not solutions:
        return WeakProportionalityReport((), 0, (), 0, 0)
    k = len(coeffs)
    partitions = suitable_partitions(k) if k >= 2 else []

    solves = []
    for sol in solutions:
        mask = set()
        for pi, part in enumerate(partitions):
            if _block_subsums_vanish(part, coeffs, sol.values):
                mask.add(pi)
        solves.append(mask)

    # union-find over direct block-proportionality links
    parent = list(range(len(solutions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for pi, part in enumerate(partitions):
        groups = {}
        for idx, sol in enumerate(solutions):
            if pi not in solves[idx]:
                continue
            groups.setdefault(_blockwise_key(part, sol.values), []).append(idx)
        for members in groups.values():
            for other in members[1:]:
                union(members[0], other)

    classes = {}
    for idx in range(len(solutions)):
        classes.setdefault(find(idx), []).append(idx)
    closure_classes = tuple(
        tuple(sorted(members)) for _, members in sorted(classes.items())
    )

    per_partition = []
    refined_total = 0
    for pi, part in enumerate(partitions):
        refiners = [
            qi
            for qi, q in enumerate(partitions)
            if qi != pi and q.refines(part)
        ]
        keys = set()
        for idx, sol in enumerate(solutions):
            if pi not in solves[idx]:
                continue
            if any(qi in solves[idx] for qi in refiners):
                continue
            keys.add(_blockwise_key(part, sol.values))
        if keys:
            per_partition.append((part, len(keys)))
            refined_total += len(keys)

    return WeakProportionalityReport(
        closure_classes=closure_classes,
        closure_count=len(closure_classes),
        per_partition=tuple(per_partition),
        refined_total=refined_total,
        suitable_partition_count=len(partitions),
    )


def compare_with_bounds(solutions, weak_report, k, r):
    """Ledger comparing observed class counts against the unit-equation
    bounds for the same (k, r)."""
    nondeg = [s for s in solutions if s.nondegenerate]
    nondeg_classes = len(proportionality_classes(nondeg))
    l26 = evaluate_bound("L2.6", {"k": k, "r": r})
    c27 = evaluate_bound("C2.7", {"k": k, "r": r})
    entries = (
        ("nondegenerate-classes<L2.6", nondeg_classes, compare_count(nondeg_classes, l26)),
        ("weak-closure-classes<C2.7", weak_report.closure_count,
         compare_count(weak_report.closure_count, c27)),
        ("weak-refined-total<C2.7", weak_report.refined_total,
         compare_count(weak_report.refined_total, c27)),
    )
    return {
        "entries": entries,
        "bounds": (("L2.6", l26), ("C2.7", c27)),
        "ok": all(ok for _, _, ok in entries),
    }
