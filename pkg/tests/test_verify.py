"""Verification grid plumbing: case dispatch, reports, determinism, CLI."""
import json

import pytest

from dickson.cli import main
from dickson.fp_poly import parse_poly
from dickson.verify import (
    CaseSpec,
    GridConfig,
    THEOREMS,
    emit_report,
    grid_cases,
    report_to_dict,
    run_case,
    run_grid,
)


def small_config(**kw):
    base = dict(theorems=("q0-power",), pairs=((2, 2),), d_max=4)
    base.update(kw)
    return GridConfig(**base)


def strip_timing(d):
    return {
        **d,
        "cases": [{k: v for k, v in c.items() if k != "elapsed_ms"} for c in d["cases"]],
    }


class TestGridCases:
    def test_every_theorem_covered_by_default(self):
        names = {c.theorem for c in grid_cases(GridConfig())}
        assert names == set(THEOREMS)

    def test_default_grid_size(self):
        assert len(grid_cases(GridConfig())) == 522

    def test_deterministic(self):
        a = grid_cases(GridConfig(seed=3))
        b = grid_cases(GridConfig(seed=3))
        assert a == b

    def test_seed_feeds_cases(self):
        a = grid_cases(GridConfig(theorems=("recursion",), seed=1))
        b = grid_cases(GridConfig(theorems=("recursion",), seed=2))
        assert [c.seed for c in a] != [c.seed for c in b]
        assert [(c.theorem, c.p, c.n) for c in a] == [(c.theorem, c.p, c.n) for c in b]

    def test_scope_filters(self):
        cases = grid_cases(GridConfig(
            theorems=("main",), pairs=((3, 2),), s_values=(1,), i_max=2))
        assert [(c.s, c.i) for c in cases] == [(1, 1), (1, 2)]

    def test_kernel_index_cap(self):
        cases = grid_cases(GridConfig(theorems=("kernel",), pairs=((2, 2),)))
        assert max(c.i for c in cases) == 5  # n + 3, one below the default top

    def test_empty_grid(self):
        config = GridConfig(theorems=("main",), pairs=((2, 2),), s_values=(9,))
        assert grid_cases(config) == []
        report = run_grid(config)
        assert report.summary == {"passed": 0, "failed": 0, "skipped": 0}
        assert emit_report(report, "text").rstrip().endswith("FAILED: 0")

    def test_injected_failure_is_last(self):
        cases = grid_cases(small_config(inject_failure=True))
        assert cases[-1].perturb
        assert sum(1 for c in cases if c.perturb) == 1

    def test_rejects_unknown_theorem(self):
        with pytest.raises(ValueError):
            grid_cases(GridConfig(theorems=("nope",)))

    def test_rejects_bad_pairs(self):
        with pytest.raises(ValueError):
            grid_cases(GridConfig(pairs=((4, 2),)))
        with pytest.raises(ValueError):
            grid_cases(GridConfig(pairs=((2, 0),)))


class TestRunCase:
    def test_single_pass(self):
        r = run_case(CaseSpec(theorem="main", p=2, n=2, s=1, i=4))
        assert r.passed and not r.skipped and not r.flagged
        assert r.witness is None
        assert r.elapsed_ms >= 0

    def test_perturbed_case_fails_with_witness(self):
        r = run_case(CaseSpec(theorem="q0-power", p=2, n=2, perturb=True))
        assert not r.passed and not r.skipped
        assert r.witness == "1"

    def test_term_budget_skips(self):
        r = run_case(CaseSpec(theorem="q0-power", p=2, n=2), term_budget=1)
        assert r.skipped and not r.passed

    def test_time_budget_skips(self):
        r = run_case(CaseSpec(theorem="hilbert", p=2, n=2, d=20), time_budget=0.0)
        assert r.skipped

    def test_dimension_bound_skips(self):
        # a basis too large for the dimension routine reports as skipped
        r = run_case(CaseSpec(theorem="hilbert", p=2, n=3, d=200))
        assert r.skipped

    def test_flagged_composite(self):
        r = run_case(CaseSpec(theorem="cor-n3", p=3, n=2, s=1))
        assert r.passed and r.flagged
        assert r.witness is not None
        # witness is a single monomial in the text grammar
        w = parse_poly(r.witness, 2, 3)
        assert len(w.terms) == 1

    def test_unflagged_composite(self):
        r = run_case(CaseSpec(theorem="cor-n3", p=2, n=2, s=1))
        assert r.passed and not r.flagged

    def test_unknown_theorem(self):
        with pytest.raises(ValueError):
            run_case(CaseSpec(theorem="bogus", p=2, n=2))


class TestReports:
    def test_summary_counts(self):
        report = run_grid(small_config(inject_failure=True))
        assert report.summary == {"passed": 1, "failed": 1, "skipped": 0}

    def test_emit_is_pure(self):
        report = run_grid(small_config())
        assert emit_report(report, "json") == emit_report(report, "json")
        assert emit_report(report, "text") == emit_report(report, "text")

    def test_rerun_agrees_modulo_timing(self):
        config = GridConfig(
            theorems=("recursion", "q0-power", "cor-n3"),
            pairs=((2, 2), (3, 2)), seed=11)
        a = report_to_dict(run_grid(config))
        b = report_to_dict(run_grid(config))
        assert strip_timing(a) == strip_timing(b)

    def test_json_shape(self):
        report = run_grid(small_config(inject_failure=True))
        data = json.loads(emit_report(report, "json"))
        assert set(data) == {"version", "sign_flag", "seed", "cases", "summary"}
        assert data["sign_flag"] == 1
        assert data["seed"] == 0
        assert data["summary"] == {"passed": 1, "failed": 1, "skipped": 0}
        for case in data["cases"]:
            assert {"theorem", "p", "n", "s", "i", "d", "passed", "skipped",
                    "flagged", "elapsed_ms"} <= set(case)
        good, bad = data["cases"]
        assert "witness" not in good
        assert bad["witness"] == "1"

    def test_json_matches_dict(self):
        report = run_grid(small_config())
        assert json.loads(emit_report(report, "json")) == report_to_dict(report)

    def test_text_layout(self):
        report = run_grid(small_config(inject_failure=True))
        lines = emit_report(report, "text").splitlines()
        assert lines[0].startswith("identity verification, version")
        assert lines[1] == "sign flag +1, seed 0"
        assert any(" FAIL " in line and line.endswith("1") for line in lines)
        assert lines[-4:] == ["PASSED: 1", "FLAGGED: 0", "SKIPPED: 0", "FAILED: 1"]

    def test_flag_status_in_text(self):
        report = run_grid(GridConfig(theorems=("cor-n3",), pairs=((3, 2),)))
        text = emit_report(report, "text")
        assert " flag " in text
        assert text.rstrip().endswith("FAILED: 0")

    def test_unknown_format(self):
        report = run_grid(small_config())
        with pytest.raises(ValueError):
            emit_report(report, "yaml")


class TestCli:
    def test_pass_run(self, capsys):
        rc = main(["--theorem", "q0-power", "--p", "2", "--n", "2"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.rstrip().endswith("FAILED: 0")

    def test_json_output(self, capsys):
        rc = main(["--theorem", "smith-switzer", "--p", "2,3", "--n", "2",
                   "--format", "json"])
        assert rc == 0
        data = json.loads(capsys.readouterr().out)
        assert data["summary"]["failed"] == 0
        assert {(c["p"], c["n"]) for c in data["cases"]} == {(2, 2), (3, 2)}

    def test_inject_failure_rc(self, capsys):
        rc = main(["--theorem", "q0-power", "--p", "2", "--n", "2",
                   "--inject-failure"])
        assert rc == 1
        assert "FAILED: 1" in capsys.readouterr().out

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        rc = main(["--theorem", "q0-power", "--p", "3", "--n", "1",
                   "--format", "json", "--out", str(target)])
        assert rc == 0
        assert capsys.readouterr().out == ""
        data = json.loads(target.read_text())
        assert data["summary"] == {"passed": 1, "failed": 0, "skipped": 0}

    def test_seed_changes_nothing_but_seeds(self, capsys):
        rc = main(["--theorem", "recursion", "--p", "2", "--n", "2",
                   "--seed", "99", "--format", "json"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 99

    @pytest.mark.parametrize("argv", [
        ["--p", "2"],
        ["--n", "2"],
        ["--p", "4", "--n", "2"],
        ["--p", "2,x", "--n", "2"],
        ["--p", "2", "--n", "0"],
        ["--theorem", "wat"],
        ["--seed", "-1"],
        ["--i-max", "0"],
        ["--d-max", "-1"],
        ["--s", "-2"],
    ])
    def test_usage_errors(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2

    def test_bad_budget_env(self, monkeypatch):
        monkeypatch.setenv("DICKSON_TERM_BUDGET", "zero")
        with pytest.raises(SystemExit) as info:
            main(["--theorem", "q0-power", "--p", "2", "--n", "2"])
        assert info.value.code == 2

    def test_tiny_budget_env_skips(self, monkeypatch, capsys):
        monkeypatch.setenv("DICKSON_TERM_BUDGET", "1")
        rc = main(["--theorem", "q0-power", "--p", "2", "--n", "2",
                   "--format", "json"])
        assert rc == 0  # skipped cases do not fail the run
        data = json.loads(capsys.readouterr().out)
        assert data["summary"] == {"passed": 0, "failed": 0, "skipped": 1}
