"""Command-line front door: JSON problem files in, deterministic JSON
reports out.

Problem files carry a "kind" matching the subcommand; every field is
validated before dispatch and unknown fields are rejected, with errors
naming the JSON path.  Reports are byte-identical across runs for equal
inputs and seed (wall-clock timings are only included on request).

Exit codes: 0 success; 2 when a hypothesis scan found no applicable
counting rule (reported, not fatal); 1 on any error.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .bounds import FORMULAS, evaluate_bound
from .cyclotomic import CyclotomicNumber
from .dynamics import (
    Hypersurface,
    MonomialMap,
    intersection_set,
    synchronized_intersection,
)
from .errors import MonorbitError
from .recurrences import (
    ExponentialPolynomial,
    LinearRecurrence,
    exppoly_zero_scan,
    value_set,
    zero_set,
)
from .scalars import is_multiplicatively_independent, parse_scalar
from .unitequations import (
    SubgroupGamma,
    compare_with_bounds,
    enumerate_solutions,
    proportionality_classes,
    weak_proportionality_classes,
)

KINDS = (
    "orbit-intersect",
    "sync-orbits",
    "lrs-zeros",
    "exppoly-zeros",
    "value-set",
    "indep-check",
    "unit-solve",
    "bound-calc",
)


class SchemaError(ValueError):
    def __init__(self, path, message):
        super().__init__(f"at {path}: {message}")
        self.path = path


def _expect_type(value, types, path, name):
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(path, f"expected {name}")
    return value


def _expect_int(value, path, minimum=None):
    _expect_type(value, int, path, "an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(path, f"expected an integer >= {minimum}")
    return value


def _expect_list(value, path):
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array")
    return value


def _expect_str(value, path):
    if not isinstance(value, str):
        raise SchemaError(path, "expected a string")
    return value


def _reject_unknown(obj, allowed, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown field")


def _parse_rational(value, path):
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, f"bad rational: {exc}") from None
    raise SchemaError(path, "expected an integer or 'p/q' string")


def _parse_scalar(value, path):
    _expect_str(value, path)
    try:
        return parse_scalar(value)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _parse_coefficient(value, path):
    if isinstance(value, str):
        return _parse_scalar(value, path).to_cyclotomic()
    if isinstance(value, dict):
        _reject_unknown(value, {"conductor", "coeffs"}, path)
        conductor = _expect_int(value.get("conductor"), f"{path}.conductor", 1)
        coeffs = _expect_list(value.get("coeffs"), f"{path}.coeffs")
        parsed = [
            _parse_rational(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)
        ]
        try:
            return CyclotomicNumber(conductor, parsed)
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None
    raise SchemaError(path, "expected a scalar string or {conductor, coeffs}")


def _parse_matrix(value, path):
    rows = _expect_list(value, path)
    out = []
    for i, row in enumerate(rows):
        row = _expect_list(row, f"{path}[{i}]")
        out.append(
            [_expect_int(x, f"{path}[{i}][{j}]", 0) for j, x in enumerate(row)]
        )
    try:
        return MonomialMap(out)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _parse_point(value, path):
    items = _expect_list(value, path)
    return tuple(_parse_scalar(x, f"{path}[{i}]") for i, x in enumerate(items))


def _parse_hypersurface(value, dimension, path):
    items = _expect_list(value, path)
    terms = []
    for i, term in enumerate(items):
        tpath = f"{path}[{i}]"
        _reject_unknown(term, {"coeff", "exps"}, tpath)
        coeff = _parse_coefficient(term.get("coeff"), f"{tpath}.coeff")
        exps = _expect_list(term.get("exps"), f"{tpath}.exps")
        expvec = [
            _expect_int(e, f"{tpath}.exps[{j}]", 0) for j, e in enumerate(exps)
        ]
        terms.append((coeff, expvec))
    try:
        return Hypersurface(dimension, terms)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _parse_exppoly(value, path):
    items = _expect_list(value, path)
    terms = []
    for i, term in enumerate(items):
        tpath = f"{path}[{i}]"
        _reject_unknown(term, {"poly", "alpha"}, tpath)
        poly = _expect_list(term.get("poly"), f"{tpath}.poly")
        coeffs = [
            _parse_coefficient(c, f"{tpath}.poly[{j}]")
            if isinstance(c, (str, dict))
            else _parse_rational(c, f"{tpath}.poly[{j}]")
            for j, c in enumerate(poly)
        ]
        alpha = _parse_scalar(term.get("alpha"), f"{tpath}.alpha")
        terms.append((coeffs, alpha))
    try:
        return ExponentialPolynomial(terms)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


# --- dispatch ----------------------------------------------------------------


def _run_orbit_intersect(problem):
    mapping = _parse_matrix(problem["map"], "$.map")
    point = _parse_point(problem["point"], "$.point")
    surface = _parse_hypersurface(
        problem["hypersurface"], mapping.dimension, "$.hypersurface"
    )
    report = intersection_set(
        mapping,
        surface,
        point,
        problem.get("n_max", 20),
        mode=problem.get("mode", "exact"),
        prime_count=problem.get("primes", 5),
        seed=problem.get("seed", 0),
    )
    code = 0 if report.theorem_bounds else 2
    return report.to_json(), code


def _run_sync_orbits(problem):
    map_f = _parse_matrix(problem["map_f"], "$.map_f")
    map_h = _parse_matrix(problem["map_h"], "$.map_h")
    report = synchronized_intersection(
        map_f,
        map_h,
        _parse_point(problem["point1"], "$.point1"),
        _parse_point(problem["point2"], "$.point2"),
        problem.get("n_max", 20),
    )
    code = 0 if report.theorem_bounds else 2
    return report.to_json(), code


def _run_lrs_zeros(problem):
    coeffs = [
        _parse_rational(c, f"$.coeffs[{i}]")
        for i, c in enumerate(_expect_list(problem["coeffs"], "$.coeffs"))
    ]
    init = [
        _parse_rational(c, f"$.init[{i}]")
        for i, c in enumerate(_expect_list(problem["init"], "$.init"))
    ]
    try:
        recurrence = LinearRecurrence(coeffs, init)
    except ValueError as exc:
        raise SchemaError("$.coeffs", str(exc)) from None
    return zero_set(recurrence, problem.get("n_max", 100)).to_json(), 0


def _run_exppoly_zeros(problem):
    poly = _parse_exppoly(problem["terms"], "$.terms")
    return exppoly_zero_scan(poly, problem.get("n_max", 100)).to_json(), 0


def _run_value_set(problem):
    poly = _parse_exppoly(problem["terms"], "$.terms")
    target = _parse_coefficient(problem["mu"], "$.mu")
    try:
        report = value_set(poly, target, problem.get("n_max", 100))
    except ValueError as exc:
        raise SchemaError("$.mu", str(exc)) from None
    return report.to_json(), 0


def _run_indep_check(problem):
    values = _parse_point(problem["values"], "$.values")
    result = is_multiplicatively_independent(values)
    return {
        "independent": result.independent,
        "certificate": list(result.certificate) if result.certificate else None,
        "relation_basis": [list(v) for v in result.lattice.basis],
    }, 0


def _run_unit_solve(problem):
    coeffs = _parse_point(problem["coeffs"], "$.coeffs")
    gens = _expect_list(problem["generators"], "$.generators")
    generators = [
        _parse_point(g, f"$.generators[{i}]") for i, g in enumerate(gens)
    ]
    box = _expect_int(problem.get("box", 3), "$.box", 0)
    try:
        gamma = SubgroupGamma(len(coeffs), generators)
        solutions = enumerate_solutions(coeffs, gamma, box)
    except ValueError as exc:
        raise SchemaError("$.generators", str(exc)) from None
    classes = proportionality_classes(solutions)
    weak = weak_proportionality_classes(solutions, coeffs)
    ledger = compare_with_bounds(solutions, weak, gamma.arity, gamma.rank)
    return {
        "box": box,
        "rank": gamma.rank,
        "solutions": [s.to_json() for s in solutions],
        "proportionality_classes": [c.to_json() for c in classes],
        "weak": weak.to_json(),
        "ledger": {
            "entries": [
                {"criterion": crit, "count": count, "ok": ok}
                for crit, count, ok in ledger["entries"]
            ],
            "bounds": [
                {"name": name, **bound.to_json()}
                for name, bound in ledger["bounds"]
            ],
            "ok": ledger["ok"],
        },
    }, 0


def _run_bound_calc(problem):
    formula = _expect_str(problem.get("formula"), "$.formula")
    params = {
        key: _expect_int(value, f"$.{key}")
        for key, value in problem.items()
        if key not in ("kind", "formula")
    }
    try:
        bound = evaluate_bound(formula, params)
    except ValueError as exc:
        raise SchemaError("$.formula", str(exc)) from None
    return bound.to_json(), 0


_HANDLERS = {
    "orbit-intersect": (
        _run_orbit_intersect,
        {"map", "point", "hypersurface", "n_max", "mode", "primes", "seed"},
        {"map", "point", "hypersurface"},
    ),
    "sync-orbits": (
        _run_sync_orbits,
        {"map_f", "map_h", "point1", "point2", "n_max"},
        {"map_f", "map_h", "point1", "point2"},
    ),
    "lrs-zeros": (_run_lrs_zeros, {"coeffs", "init", "n_max"}, {"coeffs", "init"}),
    "exppoly-zeros": (_run_exppoly_zeros, {"terms", "n_max"}, {"terms"}),
    "value-set": (_run_value_set, {"terms", "mu", "n_max"}, {"terms", "mu"}),
    "indep-check": (_run_indep_check, {"values"}, {"values"}),
    "unit-solve": (
        _run_unit_solve,
        {"coeffs", "generators", "box"},
        {"coeffs", "generators"},
    ),
}


def validate_problem(problem):
    """Schema-check a problem object; returns its kind."""
    if not isinstance(problem, dict):
        raise SchemaError("$", "expected an object")
    kind = problem.get("kind")
    if kind not in KINDS:
        raise SchemaError("$.kind", f"expected one of {', '.join(KINDS)}")
    if kind == "bound-calc":
        _expect_str(problem.get("formula"), "$.formula")
        if problem["formula"] not in FORMULAS:
            raise SchemaError("$.formula", f"unknown formula {problem['formula']!r}")
        allowed = {"kind", "formula"} | {
            name for name, _ in FORMULAS[problem["formula"]][0]
        }
        _reject_unknown(problem, allowed, "$")
        return kind
    _, allowed, required = _HANDLERS[kind]
    _reject_unknown(problem, allowed | {"kind"}, "$")
    for name in required:
        if name not in problem:
            raise SchemaError(f"$.{name}", "missing required field")
    return kind


def run_problem(problem, include_timings=False):
    """Validate and run one problem; returns (report dict, exit code)."""
    kind = validate_problem(problem)
    started = time.monotonic()
    if kind == "bound-calc":
        result, code = _run_bound_calc(problem)
    else:
        handler = _HANDLERS[kind][0]
        result, code = handler(problem)
    elapsed_ms = (time.monotonic() - started) * 1000.0
    report = {
        "tool": {"name": "monorbit", "version": __version__},
        "input": problem,
        "result": result,
        "timings": {"wall_ms": elapsed_ms} if include_timings else None,
    }
    return report, code


def render_report(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# --- reproduction harness ----------------------------------------------------


def _approx(actual, expected, tol):
    return abs(actual - expected) <= tol


def check_expectations(result, expect):
    """Compare a result payload against manifest expectations; returns a
    list of failure strings (empty when everything matched)."""
    failures = []

    def members_of(key):
        return [m["n"] for m in result.get(key, [])]

    for key, wanted in expect.items():
        if key == "members":
            got = members_of("members")
            if got != wanted:
                failures.append(f"members {got} != {wanted}")
        elif key == "superset_members":
            got = members_of("superset_members")
            if got != wanted:
                failures.append(f"superset {got} != {wanted}")
        elif key == "isolated":
            if list(result.get("isolated", [])) != wanted:
                failures.append(f"isolated {result.get('isolated')} != {wanted}")
        elif key == "progressions":
            got = [[p["offset"], p["difference"]] for p in result.get("progressions", [])]
            if got != wanted:
                failures.append(f"progressions {got} != {wanted}")
        elif key == "degeneracy_order":
            if result.get("degeneracy_order") != wanted:
                failures.append(
                    f"degeneracy order {result.get('degeneracy_order')} != {wanted}"
                )
        elif key in ("simple", "nondegenerate", "independent"):
            if result.get(key) != wanted:
                failures.append(f"{key} is {result.get(key)}, wanted {wanted}")
        elif key == "applicable":
            got = {
                c["theorem"] for c in result.get("theorem_checks", []) if c["applicable"]
            }
            missing = [t for t in wanted if t not in got]
            if missing:
                failures.append(f"rules {missing} not applicable (got {sorted(got)})")
        elif key == "not_applicable":
            got = {
                c["theorem"] for c in result.get("theorem_checks", []) if c["applicable"]
            }
            bad = [t for t in wanted if t in got]
            if bad:
                failures.append(f"rules {bad} unexpectedly applicable")
        elif key == "ledger_ok":
            entries = result.get("ledger", [])
            if isinstance(entries, dict):
                ok = entries.get("ok", False)
            else:
                ok = all(e["ok"] for e in entries)
            if ok != wanted:
                failures.append(f"ledger ok is {ok}, wanted {wanted}")
        elif key == "certificate":
            if result.get("certificate") != wanted:
                failures.append(f"certificate {result.get('certificate')} != {wanted}")
        elif key == "solution_count":
            if len(result.get("solutions", [])) != wanted:
                failures.append(
                    f"solution count {len(result.get('solutions', []))} != {wanted}"
                )
        elif key == "class_count":
            if len(result.get("proportionality_classes", [])) != wanted:
                failures.append(
                    f"class count {len(result.get('proportionality_classes', []))} "
                    f"!= {wanted}"
                )
        elif key == "representative":
            classes = result.get("proportionality_classes", [])
            reps = [c["representative"] for c in classes]
            if wanted not in reps:
                failures.append(f"representative {wanted} not among {reps}")
        elif key == "all_nondegenerate":
            ok = all(s["nondegenerate"] for s in result.get("solutions", []))
            if ok != wanted:
                failures.append(f"all_nondegenerate is {ok}, wanted {wanted}")
        elif key == "dominant_threshold":
            if result.get("dominant_threshold") != wanted:
                failures.append(
                    f"dominant threshold {result.get('dominant_threshold')} != {wanted}"
                )
        elif key == "log10":
            tol = expect.get("log10_tol", 0.01)
            got = result.get("log10")
            if not isinstance(got, (int, float)) or not _approx(got, wanted, tol):
                failures.append(f"log10 {got} != {wanted} +- {tol}")
        elif key == "value":
            tol = expect.get("value_tol", 0.5)
            got = result.get("log10")
            actual = 10.0**got if isinstance(got, (int, float)) else None
            if actual is None or not _approx(actual, wanted, tol):
                failures.append(f"value {actual} != {wanted} +- {tol}")
        elif key in ("log10_tol", "value_tol"):
            continue
        else:
            failures.append(f"unknown expectation {key!r}")
    return failures


def reproduce_suite(manifest, stream=None, include_timings=False):
    """Run every problem in a manifest and check its expectations; one
    PASS/FAIL line per entry; returns the number of failures.  Errors abort
    with context."""
    if stream is None:
        stream = sys.stdout
    if not isinstance(manifest, dict) or "problems" not in manifest:
        raise SchemaError("$", "manifest must be an object with a 'problems' array")
    entries = _expect_list(manifest["problems"], "$.problems")
    failures = 0
    for i, entry in enumerate(entries):
        path = f"$.problems[{i}]"
        _reject_unknown(entry, {"name", "problem", "expect"}, path)
        name = entry.get("name", f"problem-{i}")
        try:
            report, _ = run_problem(entry["problem"], include_timings=include_timings)
        except Exception as exc:
            raise RuntimeError(f"{name}: {exc}") from exc
        problems = check_expectations(report["result"], entry.get("expect", {}))
        if problems:
            failures += 1
            stream.write(f"FAIL {name}: {'; '.join(problems)}\n")
        else:
            stream.write(f"PASS {name}\n")
    stream.write(f"{len(entries) - failures}/{len(entries)} criteria passed\n")
    return failures


def default_manifest_path():
    from importlib.resources import files

    return files("monorbit").joinpath("data/acceptance_manifest.json")


# --- entry point -------------------------------------------------------------


def _load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monorbit",
        description="Exact orbit-hypersurface intersections, recurrence zero "
        "sets, unit equations and counting bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS + ("reproduce",):
        p = sub.add_parser(kind)
        p.add_argument("--input", help="JSON problem file", default=None)
        p.add_argument("--n-max", type=int, default=None)
        p.add_argument("--mode", choices=("exact", "modular", "hybrid"), default=None)
        p.add_argument("--primes", type=int, default=None, help="modular prime count")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--json-out", default=None)
        p.add_argument("--timings", action="store_true")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce":
            manifest = (
                _load_json(args.input)
                if args.input
                else json.loads(default_manifest_path().read_text())
            )
            failed = reproduce_suite(manifest, include_timings=args.timings)
            return 1 if failed else 0
        if args.input:
            problem = _load_json(args.input)
        else:
            print("error: --input is required", file=sys.stderr)
            return 1
        if not isinstance(problem, dict):
            raise SchemaError("$", "expected an object")
        problem.setdefault("kind", args.command)
        if problem["kind"] != args.command:
            raise SchemaError(
                "$.kind", f"kind {problem['kind']!r} does not match subcommand"
            )
        for flag, key in (
            (args.n_max, "n_max"),
            (args.mode, "mode"),
            (args.primes, "primes"),
            (args.seed, "seed"),
        ):
            if flag is not None:
                problem[key] = flag
        report, code = run_problem(problem, include_timings=args.timings)
        rendered = render_report(report)
        sys.stdout.write(rendered)
        if args.json_out:
            with open(args.json_out, "w", encoding="utf-8") as handle:
                handle.write(rendered)
        return code
    except (MonorbitError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
