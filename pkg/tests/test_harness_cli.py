import json
from fractions import Fraction

import pytest

from richlines.cli import main
from richlines.harness import (
    ExperimentConfig,
    build_pointset,
    loglog_slope,
    run_bounds_suite,
    run_claim_suite,
    run_experiment,
    write_report,
)
from richlines.serialization import dumps_json

F = Fraction


def test_build_pointset_kinds():
    ps, lines = build_pointset({"kind": "grid", "d": 2, "h": 3})
    assert len(ps) == 9 and lines is None
    ps, lines = build_pointset({"kind": "sumproduct", "A": [1, 2], "Q": [0, 1], "d": 2})
    assert len(ps) == 5 and len(lines) == 4
    ps, _ = build_pointset(
        {"kind": "power", "base": {"kind": "grid", "d": 1, "h": 2}, "ell": 2}
    )
    assert len(ps) == 4


def test_run_experiment_audits_small_configs():
    cfg = ExperimentConfig(
        generator={"kind": "grid", "d": 2, "h": 5}, r_values=[3, 4]
    )
    report = run_experiment(cfg)
    assert report["ok"]
    assert all(row["oracle_audit"] for row in report["rows"])


def test_run_experiment_reports_are_byte_identical():
    cfg = ExperimentConfig(
        generator={"kind": "grid", "d": 2, "h": [4, 6]},
        r_values=[3],
        pipelines=["progressions"],
        seed=7,
    )
    a = dumps_json(run_experiment(cfg))
    b = dumps_json(run_experiment(cfg))
    assert a == b


def test_run_experiment_term_ratios():
    cfg = ExperimentConfig(generator={"kind": "grid", "d": 2, "h": 10}, r_values=[3])
    row = run_experiment(cfg)["rows"][0]
    # measured count over the n^2/r^3 term, recorded exactly
    assert row["terms"]["n2_r3"] == "10000/27"
    measured = row["rich_lines"]
    num, den = row["term_ratios"]["n2_r3"].split("/")
    assert F(int(num), int(den)) == F(measured) / F(10000, 27)


def test_run_experiment_pasted_sweep_mixed_outcomes():
    cfg = ExperimentConfig(
        generator={"kind": "pasted", "d": 3, "ell": 2, "copies": 2, "h": [3, 4]},
        r_values=[4],
        pipelines=["hyperplane"],
    )
    report = run_experiment(cfg)
    by_h = {row["h"]: row for row in report["rows"]}
    assert by_h[3]["rich_lines"] == 0
    assert by_h[3]["hyperplane_outcome"] == "no-rich-lines"
    assert by_h[4]["hyperplane_subset"] == 16
    assert by_h[4]["hyperplane_outcome"] == "hyperplane"
    assert report["ok"]


def test_run_experiment_constants_override():
    cfg = ExperimentConfig(
        generator={"kind": "grid", "d": 2, "h": 4},
        r_values=[4],
        pipelines=["hyperplane"],
        constants={"line_count_factor": "1/1000000"},
    )
    report = run_experiment(cfg)
    row = report["rows"][0]
    assert row["hyperplane_outcome"] == "hyperplane"
    assert row["hyperplane_regime"] is True
    default = run_experiment(
        ExperimentConfig(
            generator={"kind": "grid", "d": 2, "h": 4},
            r_values=[4],
            pipelines=["hyperplane"],
        )
    )
    assert default["rows"][0]["hyperplane_regime"] is False


def test_write_report_files(tmp_path):
    cfg = ExperimentConfig(
        generator={"kind": "grid", "d": 2, "h": 4}, r_values=[3]
    )
    report = run_experiment(cfg)
    out_json = tmp_path / "report.json"
    out_csv = tmp_path / "report.csv"
    write_report(report, str(out_json), str(out_csv))
    data = json.loads(out_json.read_text())
    assert data["rows"][0]["rich_lines"] == 14
    header, row, *_ = out_csv.read_text().strip().splitlines()
    assert header.startswith("kind,n,d,h,r,rich_lines")
    assert row.split(",")[5] == "14"


def test_loglog_slope_exact_power():
    sizes = [10, 100, 1000]
    counts = [n * n for n in sizes]
    assert abs(loglog_slope(sizes, counts) - 2) < 1e-12


def test_claim_suite_green():
    results = run_claim_suite(seed=0)
    assert all(ok for _, ok, _ in results), results


def test_bounds_suite_green():
    results = run_bounds_suite(seed=0)
    assert all(ok for _, ok, _ in results), results


# -- CLI ----------------------------------------------------------------------


def test_cli_gen_and_richlines(tmp_path):
    pts = tmp_path / "pts.json"
    lines = tmp_path / "lines.json"
    assert main(["gen", "--kind", "grid", "--d", "2", "--h", "3", "--out", str(pts)]) == 0
    assert main(["richlines", "--in", str(pts), "--r", "3", "--out", str(lines)]) == 0
    data = json.loads(lines.read_text())
    assert len(data) == 8


def test_cli_apcount(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    main(["gen", "--kind", "grid", "--d", "1", "--h", "10", "--out", str(pts)])
    assert main(["apcount", "--in", str(pts), "--r", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["count"] == 20 and out["convention"] == "unordered"


def test_cli_vanish_modes(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    main(["gen", "--kind", "grid", "--d", "2", "--h", "3", "--out", str(pts)])
    trace = tmp_path / "trace.json"
    assert (
        main(
            [
                "vanish", "--in", str(pts), "--r", "3",
                "--mode", "lemma31", "--trace", str(trace),
            ]
        )
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["found"] is False
    assert payload["certificate"]["rank_m"] == 3
    assert trace.exists()


def test_cli_vanish_minimal_mode(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    main(["gen", "--kind", "grid", "--d", "1", "--h", "5", "--out", str(pts)])
    capsys.readouterr()
    assert main(["vanish", "--in", str(pts), "--r", "4", "--mode", "minimal"]) == 0
    payload = json.loads(capsys.readouterr().out)
    # five points of C^1 admit no vanishing polynomial of degree <= 2
    assert payload["found"] is False


def test_cli_hyperplane(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    main(
        [
            "gen", "--kind", "pasted", "--d", "3", "--ell", "2",
            "--copies", "2", "--h", "4", "--out", str(pts),
        ]
    )
    assert main(["hyperplane", "--in", str(pts), "--r", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["found"] and len(payload["subset"]) == 16


def test_cli_verify_bounds(capsys):
    assert main(["verify", "--suite", "bounds"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_cli_sweep(tmp_path):
    cfg = {
        "generator": {"kind": "grid", "d": 2, "h": [4, 5]},
        "r_values": [3],
        "pipelines": [],
        "seed": 0,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "out.json"
    csv_path = tmp_path / "out.csv"
    assert (
        main(
            [
                "sweep", "--config", str(cfg_path),
                "--out", str(out_path), "--csv", str(csv_path),
            ]
        )
        == 0
    )
    report = json.loads(out_path.read_text())
    assert report["ok"] and len(report["rows"]) == 2
    assert csv_path.exists()


def test_cli_gen_power(tmp_path):
    base = tmp_path / "base.json"
    main(["gen", "--kind", "grid", "--d", "1", "--h", "3", "--out", str(base)])
    out = tmp_path / "power.json"
    rc = main(
        ["gen", "--kind", "power", "--base", str(base), "--ell", "2", "--out", str(out)]
    )
    assert rc == 0
    assert len(json.loads(out.read_text())["points"]) == 9


def test_cli_gen_power_requires_base(capsys):
    assert main(["gen", "--kind", "power", "--ell", "2"]) == 2
    assert "needs --base" in capsys.readouterr().err


def test_cli_gen_sumproduct_with_lines(tmp_path):
    pts = tmp_path / "sp.json"
    fam = tmp_path / "fam.json"
    assert (
        main(
            [
                "gen", "--kind", "sumproduct", "--A", "1,2,3", "--Q", "0,1,2",
                "--d", "2", "--out", str(pts), "--lines-out", str(fam),
            ]
        )
        == 0
    )
    assert len(json.loads(fam.read_text())) == 9


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["richlines"])  # missing required arguments
    assert exc.value.code == 2


def test_cli_bad_input_exit_code(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["richlines", "--in", str(missing), "--r", "3"]) == 1


def test_cli_size_cap_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RICHLINES_SIZE_CAP", "10")
    assert main(["gen", "--kind", "grid", "--d", "2", "--h", "4"]) == 1
    err = capsys.readouterr().err
    assert "exceeds cap" in err
