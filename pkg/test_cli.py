"""
CLI 테스트

main(argv) 의 종료 코드와 stdout/stderr 분리를 확인
"""
import json
from pathlib import Path

import pytest

from COSETLAB.main import main
from COSETLAB.schemas.report import (
    ClosureReport,
    Prop3Report,
    PropositionSuite,
    SimReport,
)

GOLDEN_EX5 = Path(__file__).parent / "COSETLAB" / "data" / "example5_table1.json"


def _error_payload(stderr: str) -> dict:
    """stderr 마지막 줄의 JSON 에러 페이로드"""
    return json.loads(stderr.strip().splitlines()[-1])


# ============================================
# props
# ============================================

def test_props_defaults_pass(capsys):
    assert main(["props"]) == 0
    out = capsys.readouterr().out
    for name in ("prop1", "prop2", "prop4", "prop5"):
        assert name in out
    assert out.count("PASS") == 4


def test_props_fraction_flag(capsys):
    assert main(["--format", "structured", "props", "--tau1", "1/90", "--tau", "0.15",
                 "--delta1", "0.01", "--delta", "0.067"]) == 0
    suite = PropositionSuite.model_validate_json(capsys.readouterr().out)
    assert [r.name for r in suite.reports] == ["prop1", "prop2", "prop4", "prop5"]
    assert all(r.verdict for r in suite.reports)


def test_props_csv(capsys):
    assert main(["--format", "csv", "props"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,lhs,rhs,margin,verdict"
    assert len(lines) == 5
    assert all(line.endswith(",true") for line in lines[1:])


def test_props_out_of_interval_is_data_error(capsys):
    assert main(["props", "--tau", "0.6"]) == 65
    captured = capsys.readouterr()
    assert captured.out == ""
    payload = _error_payload(captured.err)
    assert payload["error"] == "DOMAIN_ERROR"
    assert "tau" in payload["detail"]


def test_unparseable_value_is_usage_error(capsys):
    assert main(["props", "--tau", "abc"]) == 64
    assert _error_payload(capsys.readouterr().err)["error"] == "USAGE_ERROR"


def test_unknown_or_missing_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 64
    assert main([]) == 64


def test_failed_verdict_still_exits_zero(capsys):
    assert main(["props", "--tau", "0.000001"]) == 0
    assert "FAIL" in capsys.readouterr().out


# ============================================
# 예제 2 / 예제 3
# ============================================

def test_prop3_structured(capsys):
    assert main(["--format", "structured", "prop3"]) == 0
    report = Prop3Report.model_validate_json(capsys.readouterr().out)
    assert report.iid_gap.intermediates["G_A"] == pytest.approx(0.0048, abs=5e-4)
    assert report.coset_slack.intermediates["G_B"] == pytest.approx(-0.0031, abs=5e-4)


def test_c1_csv(capsys):
    assert main(["--format", "csv", "c1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "c1,p_star_x1_1,iterations,optimizer_tolerance"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.01, abs=0.005)


def test_ex3_text(capsys):
    assert main(["ex3"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert "동시 달성: ✅" in out


# ============================================
# sweep / closure / sim
# ============================================

def test_sweep_writes_csv_file(tmp_path, capsys):
    out_path = tmp_path / "rates.csv"
    assert main(["--out", str(out_path), "sweep", "--grid", "3", "--restarts", "4"]) == 0
    assert capsys.readouterr().out == ""
    lines = out_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "tau,iid_upper,coset_lower"
    assert len(lines) == 4
    assert lines[1] == "0,0,0"


def test_sweep_rejects_tiny_grid(capsys):
    assert main(["sweep", "--grid", "1"]) == 64


def test_closure_counts(capsys):
    assert main(["--format", "structured", "closure", "--n", "20", "--k", "4", "--q", "3", "--seed", "7"]) == 0
    report = ClosureReport.model_validate_json(capsys.readouterr().out)
    assert report.sum_support_count == report.expected_count == 3 ** report.rank
    assert report.rank == 4
    assert report.sum_support_count == 81
    assert report.independent_sum_count > 10 * 81


def test_sim_structured(capsys):
    assert main(["--format", "structured", "sim", "--n", "12", "--k", "2", "--trials", "50"]) == 0
    report = SimReport.model_validate_json(capsys.readouterr().out)
    assert report.trials == 50
    assert 0.0 <= report.decode_error_rate <= 1.0


def test_sim_encoder_flags(capsys):
    argv = ["--format", "structured", "sim", "--n", "12", "--k", "2", "--trials", "20"]
    assert main(argv + ["--shaping-k", "3"]) == 0
    report = SimReport.model_validate_json(capsys.readouterr().out)
    assert report.encoder == "coset"
    assert report.shaping_k == 3
    assert main(argv + ["--encoder", "dither"]) == 0
    report = SimReport.model_validate_json(capsys.readouterr().out)
    assert report.encoder == "dither"
    assert report.shaping_k == 0


def test_sim_csv_has_shaping_column(capsys):
    assert main(["--format", "csv", "sim", "--n", "12", "--k", "2", "--trials", "10", "--shaping-k", "1"]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header.split(",")[:3] == ["n", "k", "shaping_k"]
    assert row.split(",")[:3] == ["12", "2", "1"]


def test_sim_guard_is_data_error(capsys):
    assert main(["sim", "--n", "24", "--k", "11", "--trials", "1"]) == 65
    assert _error_payload(capsys.readouterr().err)["error"] == "GUARD_EXCEEDED"


# ============================================
# channel
# ============================================

def test_channel_dump_matches_golden(capsys):
    assert main(["channel", "dump", "--example", "ex5"]) == 0
    assert capsys.readouterr().out == GOLDEN_EX5.read_text(encoding="utf-8")


def test_channel_check(capsys):
    assert main(["channel", "check", str(GOLDEN_EX5)]) == 0
    assert "example5" in capsys.readouterr().out


def test_channel_check_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json", encoding="utf-8")
    assert main(["channel", "check", str(bad)]) == 65
    assert _error_payload(capsys.readouterr().err)["error"] == "CHANNEL_PARSE_ERROR"
