"""Hypothesis checkers for the uniform intersection-bound rules 3.1-3.7.

Each rule pairs a shape condition on the map and hypersurface with an
arithmetic condition on the point (multiplicative independence, or
root-of-unity structure), and yields a counting bound from the catalog
when everything holds.  Checks are decided exactly in the q*zeta^a scalar
domain; failures are reported by name, never raised.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import BoundValue, evaluate_bound
from .numutil import euler_phi
from .scalars import (
    MonomialScalar,
    group_order_D,
    is_multiplicatively_independent,
    multiplicative_relations,
    ratio_order,
)

THEOREM_IDS = ("3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7")


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    applicable: bool
    failures: tuple
    params: dict
    bound: Optional[BoundValue] = None

    def to_json(self):
        out = {
            "theorem": self.theorem_id,
            "applicable": self.applicable,
            "failures": list(self.failures),
            "params": dict(self.params),
        }
        if self.bound is not None:
            out["bound"] = self.bound.to_json()
        return out


def _univariate_term_map(G):
    """Variable index -> (coeff, exponent) when every monomial involves at
    most one variable and no variable repeats; None otherwise.  A constant
    term is keyed by None."""
    out = {}
    for coeff, expvec in G.terms:
        support = [j for j, e in enumerate(expvec) if e]
        if len(support) > 1:
            return None
        key = support[0] if support else None
        if key in out:
            return None
        out[key] = (coeff, expvec[support[0]] if support else 0)
    return out


def field_degree(point, G):
    """Degree of the smallest cyclotomic field containing the point
    coordinates and the hypersurface coefficients (1 for rational data)."""
    conductor = 1
    for w in point:
        conductor = math.lcm(conductor, w.conductor)
    for coeff, _ in G.terms:
        conductor = math.lcm(conductor, coeff.minimal_conductor())
    return euler_phi(conductor)


def pairwise_ratio_independent(tuples):
    """The hypothesis of the polynomial-exponential counting rule: for each
    pair of exponent-base tuples, the only integer vector z with
    alpha_i^z = alpha_j^z is zero.  Returns (ok, failing pair or None)."""
    items = [tuple(t) for t in tuples]
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            ratios = [a / b for a, b in zip(items[i], items[j])]
            if not multiplicative_relations(ratios).is_trivial():
                return False, (i, j)
    return True, None


class _Instance:
    """Shared lazily-computed facts about one (map, hypersurface, point)."""

    def __init__(self, mapping, G, point):
        self.mapping = mapping
        self.G = G
        self.point = tuple(point)
        self.m = mapping.dimension
        self.diag = mapping.diagonal()
        self._indep = None

    @property
    def independent(self):
        if self._indep is None:
            self._indep = is_multiplicatively_independent(self.point)
        return self._indep


def _common(inst, failures):
    if inst.m < 2:
        failures.append("dimension >= 2")


def _require_independent(inst, failures):
    if not inst.independent.independent:
        failures.append("multiplicatively independent coordinates")


def _check_3_1(inst):
    failures = []
    _common(inst, failures)
    if inst.diag is None or len(set(inst.diag)) != 1 or inst.diag[0] < 2:
        failures.append("map is a power map with a single exponent d >= 2")
    _require_independent(inst, failures)
    n = inst.G.n_monomials
    params = {"n": n}
    if failures:
        return TheoremCheck("3.1", False, tuple(failures), params)
    return TheoremCheck(
        "3.1", True, (), params, evaluate_bound("T3.1", params)
    )


def _check_3_2(inst):
    failures = []
    _common(inst, failures)
    if inst.diag is None or len(set(inst.diag)) != 1 or inst.diag[0] < 2:
        failures.append("map is a power map with a single exponent d >= 2")
    terms = _univariate_term_map(inst.G)
    if terms is None:
        failures.append("hypersurface is a sum of single-variable monomials")
        return TheoremCheck("3.2", False, tuple(failures), {"n": inst.G.n_monomials})
    j0 = None
    for j, (coeff, e) in terms.items():
        if j is None or e == 0:
            continue
        w = inst.point[j]
        if w.is_root_of_unity():
            continue
        if all(
            ratio_order(inst.point[other], w) is None
            for other in range(inst.m)
            if other != j
        ):
            j0 = j
            break
    if j0 is None:
        failures.append(
            "a dominant index j0 with w_j0 not a root of unity and no "
            "root-of-unity ratio w_j/w_j0"
        )
    d_order = group_order_D(inst.point)
    params = {"n": inst.G.n_monomials, "D": d_order}
    if j0 is not None:
        params["j0"] = j0
    if failures:
        return TheoremCheck("3.2", False, tuple(failures), params)
    bound = evaluate_bound("T3.2", {"n": params["n"], "D": d_order})
    return TheoremCheck("3.2", True, (), params, bound)


def _check_3_3(inst):
    failures = []
    _common(inst, failures)
    if inst.diag is None or any(d < 2 for d in inst.diag):
        failures.append("map is diagonal with every exponent >= 2")
    _require_independent(inst, failures)
    params = {"n": inst.G.n_monomials, "m": inst.m}
    if failures:
        return TheoremCheck("3.3", False, tuple(failures), params)
    return TheoremCheck("3.3", True, (), params, evaluate_bound("T3.3", params))


def _check_3_4(inst):
    failures = []
    _common(inst, failures)
    if inst.diag is None or max(inst.diag) < 2:
        failures.append("map is diagonal with some exponent >= 2")
    if inst.G.constant_term() is not None:
        failures.append("zero constant term")
    expvecs = [e for _, e in inst.G.terms]
    for i in range(len(expvecs)):
        for j in range(i + 1, len(expvecs)):
            if any(a == b for a, b in zip(expvecs[i], expvecs[j])):
                failures.append(
                    "any two monomials differ in every coordinate exponent"
                )
                break
        else:
            continue
        break
    _require_independent(inst, failures)
    n = inst.G.n_monomials
    d = field_degree(inst.point, inst.G)
    params = {"n": n, "m": inst.m, "d": d}
    if failures:
        return TheoremCheck("3.4", False, tuple(failures), params)
    return TheoremCheck("3.4", True, (), params, evaluate_bound("T3.4", params))


def _check_3_5(inst):
    failures = []
    _common(inst, failures)
    s = inst.mapping.exponents
    ok_shape = (
        inst.m >= 2
        and s[0][0] >= 2
        and all(s[0][j] == 0 for j in range(1, inst.m))
    )
    if ok_shape:
        d = s[0][0]
        for i in range(1, inst.m):
            if s[i][i] < 1 or sum(s[i]) >= d:
                ok_shape = False
                break
    if not ok_shape:
        failures.append(
            "first coordinate is X1^d with d >= 2 and deg F_i < d, s_ii >= 1 "
            "for the others"
        )
    lead = None
    for coeff, expvec in inst.G.terms:
        if expvec[0] >= 1 and all(e == 0 for e in expvec[1:]):
            lead = (coeff, expvec[0])
            break
    if lead is None:
        failures.append("a monomial a*X1^e with e >= 1")
    elif inst.G.total_degree() != lead[1]:
        failures.append("total degree of G equals e")
    _require_independent(inst, failures)
    params = {"n": inst.G.n_monomials, "m": inst.m}
    if failures:
        return TheoremCheck("3.5", False, tuple(failures), params)
    return TheoremCheck("3.5", True, (), params, evaluate_bound("T3.5", params))


def _check_3_6(inst):
    failures = []
    _common(inst, failures)
    s = inst.mapping.exponents
    m = inst.m
    ok_shape = m >= 2
    if ok_shape:
        for i in range(m - 1):
            if any(s[i][j] != 0 for j in range(i)):
                ok_shape = False
                break
            si = s[i][i]
            upper = any(s[i][j] >= 1 for j in range(i + 1, m))
            if not (si > 1 or (si >= 1 and upper)):
                ok_shape = False
                break
        last = tuple(0 for _ in range(m - 1)) + (1,)
        if tuple(s[m - 1]) != last:
            ok_shape = False
    if not ok_shape:
        failures.append(
            "triangular monomial shape with expanding leading blocks and "
            "last coordinate fixed"
        )
    pure_last = [
        (coeff, expvec)
        for coeff, expvec in inst.G.terms
        if expvec[m - 1] >= 1 and all(e == 0 for e in expvec[: m - 1])
    ]
    if len(pure_last) != 1:
        failures.append("exactly one monomial of the form c*Xm^em with em >= 1")
    if not any(
        any(expvec[j] >= 1 for j in range(m - 1)) for _, expvec in inst.G.terms
    ):
        failures.append("a monomial divisible by some X_j with j < m")
    if inst.G.constant_term() is not None:
        failures.append("zero constant term")
    _require_independent(inst, failures)
    params = {"n": inst.G.n_monomials, "m": inst.m}
    if failures:
        return TheoremCheck("3.6", False, tuple(failures), params)
    return TheoremCheck("3.6", True, (), params, evaluate_bound("T3.6", params))


def _check_3_7(inst):
    failures = []
    _common(inst, failures)
    if any(deg < 2 for deg in inst.mapping.degrees()):
        failures.append("every coordinate monomial has total degree >= 2")
    if inst.G.constant_term() is None:
        failures.append("nonzero constant term")
    _require_independent(inst, failures)
    params = {"n": inst.G.n_monomials, "m": inst.m}
    if failures:
        return TheoremCheck("3.7", False, tuple(failures), params)
    return TheoremCheck("3.7", True, (), params, evaluate_bound("T3.7", params))


_CHECKS = {
    "3.1": _check_3_1,
    "3.2": _check_3_2,
    "3.3": _check_3_3,
    "3.4": _check_3_4,
    "3.5": _check_3_5,
    "3.6": _check_3_6,
    "3.7": _check_3_7,
}


def applicable_theorems(mapping, G, point):
    """Run every rule's hypothesis check against an instance; each result
    lists the failed conditions by name and carries the bound when the rule
    applies."""
    point = tuple(
        w if isinstance(w, MonomialScalar) else MonomialScalar.make(w)
        for w in point
    )
    inst = _Instance(mapping, G, point)
    return [_CHECKS[tid](inst) for tid in THEOREM_IDS]
