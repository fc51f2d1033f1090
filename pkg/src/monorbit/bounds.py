"""Catalog of the explicit counting-bound formulas, evaluated exactly.

Bounds here grow like (8k^a)^(8k^(6a)) and worse, so the canonical carrier
is the natural logarithm held as a certified interval (mpf endpoints with
outward rounding).  The doubly-exponential formula additionally stores its
iterated logarithm, and moderate-size bounds are materialized as exact
integers.  Comparisons against observed counts only report count < bound
when that is provable.

Formula identifiers are the catalog ids used by the CLI (`monorbit
bound-calc`); the parameter names follow the quantities they bound:
m/k/a/D/r/d/omega/n are all positive integers (r, omega may be zero).
"""

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mpmath import iv, mp

from .cyclotomic import interval_precision, interval_endpoints

EXACT_MATERIALIZATION_BITS = 10**6

_LOG2 = math.log2


def _ln(value):
    """Certified interval for ln(value), value an integer or Fraction > 0;
    raises the working precision locally so the conversion is exact."""
    fr = Fraction(value)
    bits = max(fr.numerator.bit_length(), fr.denominator.bit_length())
    with interval_precision(max(iv.prec, bits + 64)):
        return iv.log(iv.mpf(fr.numerator) / fr.denominator)


def _ln_mul(multiplier, base):
    """Certified interval for multiplier * ln(base) with an exact (possibly
    huge) integer multiplier."""
    if multiplier == 0:
        return iv.mpf(0)
    with interval_precision(max(iv.prec, multiplier.bit_length() + 64)):
        return iv.mpf(multiplier) * _ln(base)


@dataclass(frozen=True)
class BoundValue:
    """A possibly astronomically large bound in logarithmic form.

    log_lo/log_hi bracket the natural log; `log_natural` is the upward
    endpoint.  `exact` is present only when the bound is an integer of at
    most EXACT_MATERIALIZATION_BITS bits.
    """

    formula_id: str
    params: dict = field(compare=False)
    log_lo: object = field(repr=False, compare=False)
    log_hi: object = field(repr=False, compare=False)
    loglog_lo: object = field(default=None, repr=False, compare=False)
    loglog_hi: object = field(default=None, repr=False, compare=False)
    exact: Optional[int] = field(default=None, compare=False)

    @property
    def log_natural(self):
        return self.log_hi

    @property
    def log10_upper(self):
        with interval_precision(96):
            quot = iv.mpf(self.log_hi) / iv.log(iv.mpf(10))
            _, hi = interval_endpoints(quot)
        return hi

    def admits_count(self, count):
        """True iff count < bound is provable (log comparison, outward
        rounding)."""
        if count < 0:
            raise ValueError("counts are non-negative")
        if count == 0:
            return True
        with interval_precision(max(96, count.bit_length() + 16)):
            ln_count = iv.log(iv.mpf(count))
            _, ln_hi = interval_endpoints(ln_count)
        return ln_hi < self.log_lo

    def dominates(self, other):
        """True iff self >= other is provable from the stored intervals."""
        return self.log_lo >= other.log_hi

    def to_json(self):
        out = {
            "formula": self.formula_id,
            "params": dict(self.params),
            "log10": _mpf_to_jsonable(self.log10_upper),
        }
        if self.exact is not None:
            limit = sys.get_int_max_str_digits()
            try:
                sys.set_int_max_str_digits(max(limit, 400000))
                out["exact"] = str(self.exact)
            finally:
                sys.set_int_max_str_digits(limit)
        return out


def _mpf_to_jsonable(x):
    try:
        f = float(x)
    except (OverflowError, ValueError):
        return str(x)
    if math.isinf(f) or math.isnan(f):
        return str(x)
    return f


def compare_count(count, bound):
    """count < bound under outward rounding; zero counts always pass."""
    return bound.admits_count(count)


def _require(params, spec):
    clean = {}
    for name, minimum in spec:
        if name not in params:
            raise ValueError(f"missing parameter {name!r}")
        value = params[name]
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"parameter {name!r} must be an integer")
        if value < minimum:
            raise ValueError(f"parameter {name!r} must be >= {minimum}")
        clean[name] = value
    extra = set(params) - {name for name, _ in spec}
    if extra:
        raise ValueError(f"unknown parameter {sorted(extra)[0]!r}")
    return clean


def _gate_int(value):
    """Exact integer when the Fraction is integral and small enough."""
    value = Fraction(value)
    if value.denominator != 1:
        return None
    if value.numerator.bit_length() > EXACT_MATERIALIZATION_BITS:
        return None
    return value.numerator


# --- formula evaluators ------------------------------------------------------
# Each returns (log interval, exact int | Fraction | None, loglog pair | None).


def _f_l21_general(p):
    m = p["m"]
    return iv.exp(iv.mpf(70 * m)), None, (70 * m, 70 * m)


def _simple_count(m):
    e = 4 * m**5
    log = _ln_mul(e, 8 * m)
    exact = (8 * m) ** e if e * _LOG2(8 * m) <= EXACT_MATERIALIZATION_BITS else None
    return log, exact


def _f_l21_simple(p):
    return (*_simple_count(p["m"]), None)


def _poly_count(k, a):
    e = 8 * k ** (6 * a)
    base = 8 * k**a
    log = _ln_mul(e, base)
    exact = base**e if e * _LOG2(base) <= EXACT_MATERIALIZATION_BITS else None
    return log, exact


def _f_l22(p):
    return (*_poly_count(p["k"], p["a"]), None)


def _f_l23(p):
    log, exact = _poly_count(p["k"], p["a"])
    d = p["D"]
    return log + _ln(d), None if exact is None else d * exact, None


def _f_dubickas(p):
    d, m = p["d"], p["m"]
    coeff = iv.mpf(105314) / 100000 + iv.sqrt(iv.mpf(6 * d))
    return coeff * iv.sqrt(iv.mpf(m) * _ln(d * m)), None, None


def _f_c24(p):
    log, exact = _poly_count(p["k"] + 1, p["a"])
    d = p["D"]
    return log + _ln(d), None if exact is None else d * exact, None


def _f_c24_simple(p):
    return (*_simple_count(p["m"] + 1), None)


def _padic_count(p, exponent):
    base = 4 * (p["d"] + p["omega"])
    log = _ln(p["D"]) + _ln_mul(exponent, base) + _ln(p["m"] - 1)
    exact = _gate_int(p["D"] * base**exponent * (p["m"] - 1))
    return log, exact, None


def _f_l25(p):
    return _padic_count(p, 2 * (p["d"] + 1))


def _f_l25_galois(p):
    return _padic_count(p, p["d"] + 2)


def _f_l26(p):
    k, r = p["k"], p["r"]
    e = 4 * (k - 1) ** 4 * (k + r)
    log = _ln_mul(e, 8 * k)
    exact = (8 * k) ** e if e * _LOG2(8 * k) <= EXACT_MATERIALIZATION_BITS else None
    return log, exact, None


def _half_power_log(k):
    return _ln_mul(k, Fraction(k, 2))


def _f_c27(p):
    k, r = p["k"], p["r"]
    e = 4 * (k - 1) ** 4 * (k + r)
    log = _half_power_log(k) + _ln_mul(e, 8 * k)
    exact = None
    if k * _LOG2(max(k, 2)) + e * _LOG2(8 * k) <= EXACT_MATERIALIZATION_BITS:
        exact = _gate_int(Fraction(k**k, 2**k) * (8 * k) ** e)
    return log, exact, None


def _f_bell(p):
    k = p["k"]
    inner = iv.mpf(792 * k) / 1000 / iv.log(iv.mpf(k + 1))
    return iv.mpf(k) * iv.log(inner), None, None


def _schsch_count(k, b, d):
    log = _half_power_log(k) + _ln_mul(35 * b**3, 2) + _ln_mul(6 * b**2, d)
    exact = None
    bits = k * _LOG2(max(k, 2)) + 35 * b**3 + 6 * b**2 * _LOG2(max(d, 2))
    if bits <= EXACT_MATERIALIZATION_BITS:
        exact = _gate_int(
            Fraction(k**k, 2**k) * 2 ** (35 * b**3) * d ** (6 * b**2)
        )
    return log, exact


def _f_l28(p):
    k, m, d = p["k"], p["m"], p["d"]
    log, exact = _schsch_count(k, max(m, k), d)
    return log, exact, None


def _f_t31(p):
    return (*_simple_count(p["n"]), None)


def _f_t32(p):
    n, d = p["n"], p["D"]
    e = 8 * n**6
    log = _ln(d) + _ln_mul(e, 8 * n)
    exact = None
    if e * _LOG2(8 * n) <= EXACT_MATERIALIZATION_BITS:
        exact = d * (8 * n) ** e
    return log, exact, None


def _f_t33(p):
    n, m = p["n"], p["m"]
    e = 4 * n * (n - 1) ** 4 * (m + 1)
    log = _half_power_log(n) + _ln_mul(e, 8 * n)
    exact = None
    if n * _LOG2(max(n, 2)) + e * _LOG2(8 * n) <= EXACT_MATERIALIZATION_BITS:
        exact = _gate_int(Fraction(n**n, 2**n) * (8 * n) ** e)
    return log, exact, None


def _f_t34(p):
    n, m, d = p["n"], p["m"], p["d"]
    log, exact = _schsch_count(n, max(m, n), d)
    return log, exact, None


FORMULAS = {
    "L2.1-general": ((("m", 1),), _f_l21_general),
    "L2.1-simple": ((("m", 1),), _f_l21_simple),
    "L2.2-poly": ((("k", 1), ("a", 1)), _f_l22),
    "L2.3": ((("D", 1), ("k", 1), ("a", 1)), _f_l23),
    "Eq2.3-dubickas": ((("d", 1), ("m", 2)), _f_dubickas),
    "C2.4": ((("D", 1), ("k", 1), ("a", 1)), _f_c24),
    "C2.4-simple": ((("m", 1),), _f_c24_simple),
    "L2.5": ((("D", 1), ("d", 1), ("omega", 0), ("m", 2)), _f_l25),
    "L2.5-galois": ((("D", 1), ("d", 1), ("omega", 0), ("m", 2)), _f_l25_galois),
    "L2.6": ((("k", 1), ("r", 0)), _f_l26),
    "C2.7": ((("k", 1), ("r", 0)), _f_c27),
    "bell": ((("k", 1),), _f_bell),
    "L2.8": ((("k", 1), ("m", 1), ("d", 1)), _f_l28),
    "T3.1": ((("n", 1),), _f_t31),
    "T3.2": ((("D", 1), ("n", 1)), _f_t32),
    "T3.3": ((("n", 1), ("m", 1)), _f_t33),
    "T3.4": ((("n", 1), ("m", 1), ("d", 1)), _f_t34),
    "T3.5": ((("n", 1), ("m", 1)), _f_t33),
    "T3.6": ((("n", 1), ("m", 1)), _f_t33),
    "T3.7": ((("n", 1), ("m", 1)), _f_t33),
}


def evaluate_bound(formula_id, params):
    """Evaluate a catalog formula to a BoundValue.

    Unknown formula ids and missing/invalid parameters raise ValueError
    naming the offender.
    """
    if formula_id not in FORMULAS:
        raise ValueError(f"unknown formula id {formula_id!r}")
    spec, fn = FORMULAS[formula_id]
    clean = _require(params, spec)
    with interval_precision(96):
        log_iv, exact, loglog = fn(clean)
        log_lo, log_hi = interval_endpoints(log_iv)
    if exact is not None:
        exact = _gate_int(exact)
    loglog_lo = loglog_hi = None
    if loglog is not None:
        with mp.workprec(96):
            loglog_lo, loglog_hi = mp.mpf(loglog[0]), mp.mpf(loglog[1])
    return BoundValue(
        formula_id=formula_id,
        params=clean,
        log_lo=log_lo,
        log_hi=log_hi,
        loglog_lo=loglog_lo,
        loglog_hi=loglog_hi,
        exact=exact,
    )
