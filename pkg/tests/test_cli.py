"""
Unit Tests for the CLI

Tests run(argv) end to end: exit codes, text and JSON output, error
reports and global options.
"""

import json
from pathlib import Path

import pytest

from src.domain.models.report import GroupSummary, Report, Verdict
from src.domain.models.abelian_group import FPAbelianGroup
from src.presentation.cli.main import EXIT_ERROR, EXIT_USAGE, run

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
FIELD_ORDER = ["schema_version", "check", "input", "groups", "hypotheses", "verdict", "details", "runtime_ms"]


def _config(name: str) -> str:
    return str(CONFIGS / f"{name}.json")


class TestReport:
    """Test suite for the Report model and verdicts."""

    def test_exit_codes(self):
        """Test the exit code of every verdict."""
        assert Verdict.YES.exit_code == 0
        assert Verdict.HYPOTHESES_VIOLATED_YES.exit_code == 0
        assert Verdict.NO.exit_code == 2
        assert Verdict.HYPOTHESES_VIOLATED_NO.exit_code == 2
        assert Verdict.ERROR.exit_code == 1

    def test_from_checks(self):
        """Test verdicts from a result and a hypothesis flag."""
        assert Verdict.from_checks(True) is Verdict.YES
        assert Verdict.from_checks(False, hypotheses_hold=False) is Verdict.HYPOTHESES_VIOLATED_NO

    def test_field_order(self):
        """Test that report fields serialize in a fixed order."""
        report = Report("hh", {"n": 1}, [GroupSummary.from_group("HH_1", FPAbelianGroup.from_orders([2]))])
        assert list(json.loads(report.to_json())) == FIELD_ORDER

    def test_failure_report(self):
        """Test that a failure carries the message and the error verdict."""
        report = Report.failure("milnor", {}, "boom")
        assert report.verdict is Verdict.ERROR
        assert report.details == {"error": "boom"}
        assert report.exit_code == 1


class TestRun:
    """Test suite for run(argv)."""

    # ==================== Success Tests ====================

    def test_milnor_k2_of_f2_dual_numbers(self, capsys):
        """Test that `milnor z2x --n 2` prints Z/2."""
        code = run(["milnor", _config("z2x"), "--n", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "K^M_2 = Z/2" in out
        assert "VERDICT" in out.upper()

    def test_json_on_stdout(self, capsys):
        """Test --format json with the unit group of F_7[e]/e^2."""
        code = run(["--format", "json", "algebra", _config("f7eps")])
        data = json.loads(capsys.readouterr().out)
        assert code == 0
        assert list(data) == FIELD_ORDER
        assert data["groups"][0]["name"] == "R*"
        assert data["groups"][0]["text"] == "Z/42"
        assert data["runtime_ms"] is None

    def test_json_file(self, tmp_path):
        """Test --json with a hypotheses-violated verdict."""
        path = tmp_path / "report.json"
        code = run(["--json", str(path), "verify", "bloch-k2", _config("z2x")])
        data = json.loads(path.read_text(encoding="utf-8"))
        assert code == 0
        assert list(data) == FIELD_ORDER
        assert data["check"] == "bloch-k2"
        assert data["verdict"] == "hypotheses-violated-yes"
        assert data["hypotheses"]["denominators_invertible"] is False

    def test_json_report_is_deterministic(self, tmp_path):
        """Test that the same command writes byte-identical JSON twice."""
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        for path in (first, second):
            argv = ["--json", str(path), "verify", "specseq-convergence", "--seed", "4", "--count", "3"]
            assert run(argv) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_milnor_report_is_deterministic(self, tmp_path):
        """Test that `milnor z2x --n 2` writes the same JSON on every run."""
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        for path in (first, second):
            assert run(["--json", str(path), "milnor", _config("z2x"), "--n", "2"]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_timing(self, tmp_path):
        """Test that --timing records runtime_ms."""
        path = tmp_path / "report.json"
        assert run(["--timing", "--json", str(path), "hh", _config("qeps"), "--n", "1"]) == 0
        assert json.loads(path.read_text(encoding="utf-8"))["runtime_ms"] >= 0

    def test_relative_hc(self, capsys):
        """Test relative HC_2 of Q[e]/e^2."""
        assert run(["hc", _config("qeps"), "--n", "2", "--relative"]) == 0
        assert "HC_2(R,I) = Q" in capsys.readouterr().out

    def test_omega_mod_exact(self, capsys):
        """Test Ω^1_(R,I)/dI of F_2[x]/x^2."""
        assert run(["omega", _config("z2x"), "--n", "1", "--relative", "--mod-exact"]) == 0
        assert "= F_2" in capsys.readouterr().out

    def test_dlog(self, tmp_path):
        """Test dlog of a symbol with a constant entry."""
        path = tmp_path / "dlog.json"
        assert run(["--json", str(path), "dlog", _config("f7eps"), "--symbol", "1+e,3"]) == 0
        details = json.loads(path.read_text(encoding="utf-8"))["details"]
        assert details["is_zero"] is True

    def test_hn(self, capsys):
        """Test relative HN_1 of Q[e]/e^2."""
        assert run(["hn", _config("qeps"), "--n", "1", "--depth", "3", "--relative"]) == 0
        assert "HN_1(R,I) = Q" in capsys.readouterr().out

    def test_specseq_demo(self, capsys):
        """Test the random bicomplex demo."""
        assert run(["--format", "json", "specseq-demo", "--seed", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["details"]["pages"]

    def test_verify_hc1(self):
        """Test the hc1 suite on two configs."""
        assert run(["verify", "hc1", _config("qxy"), _config("qeps")]) == 0

    # ==================== Error Tests ====================

    def test_missing_config(self, tmp_path, capsys):
        """Test that a missing file exits 1 and writes an error report."""
        path = tmp_path / "error.json"
        code = run(["--json", str(path), "hh", str(tmp_path / "nope.json"), "--n", "0"])
        assert code == EXIT_ERROR
        assert "Error:" in capsys.readouterr().err
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["verdict"] == "error"
        assert "error" in data["details"]

    def test_malformed_config(self, tmp_path, capsys):
        """Test that a syntax error reports its position."""
        config = tmp_path / "broken.json"
        config.write_text('{"coefficients": ', encoding="utf-8")
        assert run(["algebra", str(config)]) == EXIT_ERROR
        assert "line 1, column 18" in capsys.readouterr().err

    def test_capacity_exceeded(self, capsys):
        """Test that a tiny --capacity aborts with exit code 1."""
        assert run(["--capacity", "10", "milnor", _config("f7eps"), "--n", "2"]) == EXIT_ERROR
        assert "Error:" in capsys.readouterr().err

    def test_relative_without_ideal(self):
        """Test that --relative needs an ideal in the config."""
        assert run(["hh", _config("f7"), "--n", "1", "--relative"]) == EXIT_ERROR

    # ==================== Usage Tests ====================

    @pytest.mark.parametrize("argv", [
        [],
        ["milnor"],
        ["milnor", "configs/z2x.json"],
        ["verify", "no-such-suite"],
        ["--capacity", "0", "hh", "configs/qeps.json", "--n", "1"],
        ["--format", "xml", "hh", "configs/qeps.json", "--n", "1"],
    ])
    def test_usage_errors(self, argv):
        """Test that malformed command lines exit 64."""
        assert run(argv) == EXIT_USAGE

    def test_negative_degree(self):
        """Test that --n -1 is a usage error."""
        assert run(["omega", _config("qeps"), "--n", "-1"]) == EXIT_USAGE

    def test_verify_wrong_config_count(self):
        """Test that bloch-k2 with two configs is a usage error."""
        assert run(["verify", "bloch-k2", _config("z2x"), _config("f7eps")]) == EXIT_USAGE

    def test_help(self, capsys):
        """Test that --help exits 0."""
        assert run(["--help"]) == 0
        assert "cm" in capsys.readouterr().out
