"""
Tests for the command-line runner.
"""

import json
from pathlib import Path

import pytest

import src.main as cli
from src.hii_principal.tools.metrics import FAILED, SuiteTracker, TrialOutcome

BLOCKS = Path(__file__).resolve().parent.parent / "blocks"


@pytest.fixture(autouse=True)
def isolated_results(monkeypatch, tmp_path):
    monkeypatch.setenv("HII_RESULTS_DIR", str(tmp_path / "results"))
    return tmp_path / "results"


def run_json(capsys, *argv):
    code = cli.run(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestHiiRhsCommand:
    """hii-rhs and --chain."""

    def test_pgl2(self, capsys):
        """Test hii-rhs on the PGL2 block."""
        code, data = run_json(capsys, "hii-rhs", str(BLOCKS / "pgl2_steinberg.json"))
        assert code == 0
        assert data["rhs_squared"] == "81/64"
        assert data["S_sharp"] == 2

    def test_chain(self, capsys):
        """Test hii-rhs --chain on the Sp4 block."""
        code, data = run_json(capsys, "hii-rhs", str(BLOCKS / "sp4_quadratic.json"), "--chain")
        assert code == 0
        assert data["chain"]["outcome"] == "verified"
        assert data["chain"]["clauses"] == {"i": True, "ii": True, "iii": True, "iv": True}

    def test_not_discrete_is_exit_two(self, capsys):
        """Test that a non-discrete block exits 2."""
        assert cli.run(["hii-rhs", str(BLOCKS / "sl2_quadratic.json")]) == 2
        assert "NotDiscrete" in capsys.readouterr().err

    def test_missing_file(self, capsys, tmp_path):
        """Test that a missing file exits 2."""
        assert cli.run(["hii-rhs", str(tmp_path / "none.json")]) == 2

    def test_human_output(self, capsys):
        """Test the human-readable report."""
        assert cli.run(["hii-rhs", str(BLOCKS / "gl2_steinberg.json")]) == 0
        out = capsys.readouterr().out
        assert "625/144" in out

    def test_save(self, capsys, isolated_results):
        """Test --save writing the report."""
        assert cli.run(["--save", "hii-rhs", str(BLOCKS / "sl2_steinberg.json")]) == 0
        saved = list(isolated_results.glob("hii_rhs_*.json"))
        assert len(saved) == 1
        assert json.loads(saved[0].read_text())["rhs_squared"] == "81/16"


class TestOtherCommands:
    """analyze, gamma, verify, list-types and condition."""

    def test_analyze(self, capsys):
        """Test the analyze command."""
        code, data = run_json(capsys, "analyze", str(BLOCKS / "sp4_quadratic.json"))
        assert code == 0
        assert data["W_chi"]["C_chi_order"] == 2
        assert data["volumes"]["ratio"] == "81"

    def test_gamma(self, capsys):
        """Test the gamma command."""
        code, data = run_json(capsys, "gamma", str(BLOCKS / "pgl2_steinberg.json"))
        assert code == 0
        assert data["discrete"]
        assert data["gamma_abs_squared"] == "81/16"

    def test_gamma_pole_is_reported(self, capsys, tmp_path):
        """Test that a pole of gamma is reported with exit 0."""
        path = tmp_path / "trivial.json"
        path.write_text(json.dumps({"datum": "A1", "lattice": "sc", "h": [0], "q": "3"}))
        code, data = run_json(capsys, "gamma", str(path))
        assert code == 0
        assert not data["discrete"]
        assert data["gamma_abs_squared"] is None

    def test_verify(self, capsys):
        """Test a small verify run."""
        code, data = run_json(capsys, "verify", "--types", "A1", "--trials", "3")
        assert code == 0
        assert data["total_trials"] == 6
        assert data["all_passed"]

    def test_verify_failure_is_exit_one(self, monkeypatch, capsys):
        """Test that an IdentityViolation exits 1."""
        def broken(options):
            raise cli.IdentityViolation("iv", "H side differs")

        monkeypatch.setattr(cli, "verify_suite", broken)
        assert cli.run(["verify", "--trials", "1"]) == 1
        assert "iv" in capsys.readouterr().err

    def test_failed_sweep_is_exit_one(self, monkeypatch, capsys):
        """Test that a sweep with a failed identity exits 1 without raising."""
        def failing(options):
            tracker = SuiteTracker()
            tracker.add_datum("A1/sc")
            tracker.record_trial([TrialOutcome("volume-ratio", FAILED, "A1", "sc", 0, "ratio != eps")])
            tracker.finalize()
            return tracker

        monkeypatch.setattr(cli, "verify_suite", failing)
        code, data = run_json(capsys, "verify", "--trials", "1")
        assert code == 1
        assert not data["all_passed"]

    def test_invalid_input_is_exit_two(self, capsys, tmp_path):
        """Test that invalid input exits 2, distinct from identity failures."""
        path = tmp_path / "bad_qhalf.json"
        path.write_text(json.dumps({
            "datum": "A1", "lattice": "ad", "h": [2],
            "s": [{"zeta": "1/4", "qhalf": "1/3"}], "q": "3",
        }))
        assert cli.run(["gamma", str(path)]) == 2
        assert "InvalidBlock" in capsys.readouterr().err

        garbled = tmp_path / "garbled.json"
        garbled.write_text("{not json")
        assert cli.run(["hii-rhs", str(garbled)]) == 2
        assert cli.run(["verify", "--types", "Z9", "--trials", "1"]) == 2

    def test_list_types(self, capsys):
        """Test the list-types command."""
        code, data = run_json(capsys, "list-types", "--max-rank", "2")
        assert code == 0
        assert "G2" in data["types"]

    def test_condition(self, capsys):
        """Test the condition command for p = 2 and p = 3."""
        code, data = run_json(capsys, "condition", str(BLOCKS / "sp4_quadratic.json"), "--p", "2")
        assert code == 0
        assert data["verdict"] is False
        code, data = run_json(capsys, "condition", str(BLOCKS / "sp4_quadratic.json"), "--p", "3")
        assert data["verdict"] is True

    def test_condition_needs_prime(self, capsys):
        """Test that a non-prime p exits 2."""
        assert cli.run(["condition", str(BLOCKS / "sp4_quadratic.json"), "--p", "4"]) == 2
