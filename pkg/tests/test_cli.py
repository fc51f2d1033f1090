import io
import json

import pytest

from monorbit.cli import (
    check_expectations,
    default_manifest_path,
    main,
    render_report,
    reproduce_suite,
    run_problem,
    validate_problem,
)

ORBIT_PROBLEM = {
    "kind": "orbit-intersect",
    "map": [[2, 0], [0, 2]],
    "point": ["2", "3"],
    "hypersurface": [
        {"coeff": "1", "exps": [1, 0]},
        {"coeff": "-1", "exps": [0, 1]},
        {"coeff": "1", "exps": [0, 0]},
    ],
    "n_max": 12,
    "mode": "exact",
}


def test_orbit_intersect_run():
    report, code = run_problem(dict(ORBIT_PROBLEM))
    assert code == 0
    assert [m["n"] for m in report["result"]["members"]] == [0]
    assert all(entry["ok"] for entry in report["result"]["ledger"])
    assert report["tool"]["name"] == "monorbit"
    assert report["timings"] is None


def test_report_bytes_deterministic():
    a, _ = run_problem(dict(ORBIT_PROBLEM))
    b, _ = run_problem(dict(ORBIT_PROBLEM))
    assert render_report(a) == render_report(b)


def test_unknown_field_rejected():
    bad = dict(ORBIT_PROBLEM, typo=1)
    with pytest.raises(ValueError, match=r"\$\.typo"):
        validate_problem(bad)


def test_bad_scalar_path_named():
    bad = dict(ORBIT_PROBLEM, point=["2", "x"])
    with pytest.raises(ValueError, match=r"\$\.point\[1\]"):
        run_problem(bad)


def test_missing_field_named():
    bad = {k: v for k, v in ORBIT_PROBLEM.items() if k != "point"}
    with pytest.raises(ValueError, match=r"\$\.point"):
        validate_problem(bad)


def test_bound_calc():
    report, code = run_problem({"kind": "bound-calc", "formula": "T3.1", "n": 3})
    assert code == 0
    assert abs(report["result"]["log10"] - 1341.57) < 0.01
    with pytest.raises(ValueError, match=r"\$\.formula"):
        validate_problem({"kind": "bound-calc", "formula": "nope"})
    with pytest.raises(ValueError, match=r"\$\.n: unknown field"):
        validate_problem({"kind": "bound-calc", "formula": "L2.1-simple", "m": 2, "n": 1})


def test_lrs_zeros_run():
    report, code = run_problem(
        {"kind": "lrs-zeros", "coeffs": ["1", "1"], "init": ["0", "1"], "n_max": 60}
    )
    assert code == 0
    assert report["result"]["isolated"] == [0]
    assert report["result"]["degeneracy_order"] == 1


def test_exppoly_and_value_set_runs():
    terms = [{"poly": ["1"], "alpha": "2"}, {"poly": ["1"], "alpha": "-2"}]
    report, code = run_problem({"kind": "exppoly-zeros", "terms": terms, "n_max": 30})
    assert code == 0
    assert report["result"]["progressions"] == [{"offset": 1, "difference": 2}]

    report, code = run_problem(
        {
            "kind": "value-set",
            "terms": [{"poly": ["1"], "alpha": "2"}],
            "mu": "8",
            "n_max": 20,
        }
    )
    assert code == 0
    assert report["result"]["isolated"] == [3]


def test_indep_check_run():
    report, code = run_problem({"kind": "indep-check", "values": ["4", "8"]})
    assert code == 0
    assert report["result"]["independent"] is False
    assert report["result"]["certificate"] == [3, -2]


def test_unit_solve_run():
    report, code = run_problem(
        {
            "kind": "unit-solve",
            "coeffs": ["1", "1", "-1"],
            "generators": [["2", "1", "1"], ["1", "2", "1"], ["1", "1", "2"]],
            "box": 4,
        }
    )
    assert code == 0
    result = report["result"]
    assert len(result["solutions"]) == 8
    assert len(result["proportionality_classes"]) == 1
    assert result["ledger"]["ok"] is True
    assert result["rank"] == 3


def test_sync_orbits_run():
    report, code = run_problem(
        {
            "kind": "sync-orbits",
            "map_f": [[2]],
            "map_h": [[3]],
            "point1": ["2"],
            "point2": ["2"],
            "n_max": 10,
        }
    )
    # equal base points make the product point dependent: no rule applies
    assert code == 2
    assert [m["n"] for m in report["result"]["members"]] == [0]
    assert [m["n"] for m in report["result"]["superset_members"]] == [0]

    report, code = run_problem(
        {
            "kind": "sync-orbits",
            "map_f": [[2]],
            "map_h": [[3]],
            "point1": ["2"],
            "point2": ["3"],
            "n_max": 10,
        }
    )
    assert code == 0
    assert report["result"]["members"] == []


def test_exit_code_2_when_no_rule_applies():
    report, code = run_problem(
        {
            "kind": "orbit-intersect",
            "map": [[1, 0], [0, 2]],
            "point": ["2", "2"],
            "hypersurface": [
                {"coeff": "1", "exps": [1, 0]},
                {"coeff": "-2", "exps": [0, 0]},
            ],
            "n_max": 5,
        }
    )
    assert code == 2
    assert [m["n"] for m in report["result"]["members"]] == [0, 1, 2, 3, 4, 5]
    assert report["result"]["theorem_bounds"] == []


def test_cyclotomic_coefficient_object():
    report, code = run_problem(
        {
            "kind": "orbit-intersect",
            "map": [[2, 0], [0, 2]],
            "point": ["2", "2 * zeta(4)^1"],
            "hypersurface": [
                {"coeff": {"conductor": 4, "coeffs": ["0", "1"]}, "exps": [1, 0]},
                {"coeff": "-1", "exps": [0, 1]},
            ],
            "n_max": 6,
        }
    )
    # zeta*x^(2^n) = y^(2^n) at (2, 2*zeta): n = 0 works: 2 zeta = 2 zeta
    assert [m["n"] for m in report["result"]["members"]] == [0]


def test_main_cli_round_trip(tmp_path, capsys):
    problem_file = tmp_path / "problem.json"
    problem_file.write_text(json.dumps(ORBIT_PROBLEM))
    out_file = tmp_path / "report.json"
    code = main(
        ["orbit-intersect", "--input", str(problem_file), "--json-out", str(out_file)]
    )
    assert code == 0
    printed = capsys.readouterr().out
    assert json.loads(printed) == json.loads(out_file.read_text())


def test_main_flag_overrides(tmp_path, capsys):
    problem_file = tmp_path / "problem.json"
    problem_file.write_text(json.dumps(ORBIT_PROBLEM))
    code = main(["orbit-intersect", "--input", str(problem_file), "--n-max", "3"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["n_max"] == 3


def test_main_kind_mismatch(tmp_path, capsys):
    problem_file = tmp_path / "problem.json"
    problem_file.write_text(json.dumps(ORBIT_PROBLEM))
    code = main(["lrs-zeros", "--input", str(problem_file)])
    assert code == 1
    assert "kind" in capsys.readouterr().err


def test_main_requires_input(capsys):
    assert main(["orbit-intersect"]) == 1
    assert "required" in capsys.readouterr().err


def test_shipped_manifest_passes():
    manifest = json.loads(default_manifest_path().read_text())
    stream = io.StringIO()
    failures = reproduce_suite(manifest, stream=stream)
    assert failures == 0
    lines = stream.getvalue().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("criteria passed")


def test_reproduce_flags_violations():
    manifest = {
        "problems": [
            {
                "name": "broken-expectation",
                "problem": {"kind": "indep-check", "values": ["2", "3"]},
                "expect": {"independent": False},
            }
        ]
    }
    stream = io.StringIO()
    failures = reproduce_suite(manifest, stream=stream)
    assert failures == 1
    assert "FAIL broken-expectation" in stream.getvalue()


def test_reproduce_aborts_on_error():
    manifest = {
        "problems": [
            {"name": "bad", "problem": {"kind": "indep-check"}, "expect": {}}
        ]
    }
    with pytest.raises(RuntimeError, match="bad"):
        reproduce_suite(manifest, stream=io.StringIO())


def test_main_reproduce_exit(capsys, tmp_path):
    assert main(["reproduce"]) == 0
    capsys.readouterr()
    broken = tmp_path / "broken.json"
    broken.write_text(
        json.dumps(
            {
                "problems": [
                    {
                        "name": "violated-bound",
                        "problem": {"kind": "bound-calc", "formula": "T3.1", "n": 3},
                        "expect": {"log10": 1.0, "log10_tol": 0.1},
                    }
                ]
            }
        )
    )
    assert main(["reproduce", "--input", str(broken)]) == 1
    assert "FAIL violated-bound" in capsys.readouterr().out


def test_check_expectations_unknown_key():
    assert check_expectations({}, {"wat": 1}) == ["unknown expectation 'wat'"]
