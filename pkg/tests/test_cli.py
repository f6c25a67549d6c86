"""
Test suite for the crepant CLI, configuration and reports
"""
import json
import pickle

import pytest

from crepant.cli import SCAN_COLUMNS, build_parser, main, run_scan, scan_row
from crepant.config import DEFAULT_GUARD, Settings, resolve_guard
from crepant.errors import ConfigError, GuardExceededError, InconsistencyError, InvalidInputError
from crepant.report import Report, format_rational, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured


def run_json(capsys, *argv):
    code, captured = run(capsys, *argv)
    return code, json.loads(captured.out)


class TestDecide:
    """Test the decide command"""

    def test_resolvable(self, capsys):
        """Test an isolated resolvable type"""
        code, data = run_json(capsys, "decide", "--r", "4", "--l", "11", "--alpha", "3")
        assert code == 0
        assert data["schema_version"] == 1
        assert data["command"] == "decide"
        assert data["decision"]["branch"] == "CON2"
        assert data["char"]["p"] == 5
        assert "timing_ms" in data

    def test_con1(self, capsys):
        """Test g = r-2"""
        code, data = run_json(capsys, "decide", "--r", "4", "--l", "8", "--alpha", "2", "--beta", "4")
        assert code == 0
        assert data["decision"]["branch"] == "CON1"
        assert data["decision"]["mu"] == "1/1"

    def test_not_resolvable_with_oracle(self, capsys):
        """Test all three criteria agree on a failing type"""
        code, data = run_json(capsys, "decide", "--r", "4", "--l", "9", "--alpha", "2", "--oracle")
        assert code == 1
        assert data["extra"]["agree"] is True
        assert data["extra"]["hilbcon"] is False

    def test_one_param(self, capsys):
        """Test the one-parameter route"""
        code, data = run_json(capsys, "decide", "--r", "4", "--l", "7", "--one-param")
        assert code == 0
        assert data["decision"]["dims"] == [1, 2, 2, 2]

    def test_necessary_only(self, capsys):
        """Test the unknown verdict of the Hilbert-basis route"""
        code, data = run_json(capsys, "decide", "--type", "1/39(1,5,8,25)")
        assert code == 2
        assert data["decision"]["verdict"] == "unknown"

    def test_weights(self, capsys):
        """Test --weights"""
        code, data = run_json(capsys, "decide", "--weights", "11", "1", "1", "3", "6")
        assert code == 0
        assert data["decision"]["branch"] == "HILBCON"

    def test_invalid_input(self, capsys):
        """Test α + β mismatch"""
        code, captured = run(capsys, "decide", "--r", "4", "--l", "11", "--alpha", "3", "--beta", "5")
        assert code == 3
        assert "Error" in captured.err

    def test_missing_arguments(self, capsys):
        """Test neither a type nor parameters"""
        code, _ = run(capsys, "decide")
        assert code == 3

    def test_type_with_two_param_flags(self, capsys):
        """Test --type cannot be mixed with --r/--l"""
        code, captured = run(capsys, "decide", "--type", "1/11(1,1,3,6)", "--r", "4", "--l", "11")
        assert code == 3
        assert "--r" in captured.err
        assert captured.out == ""

    def test_weights_with_oracle(self, capsys):
        """Test --oracle needs the two-parameter flags"""
        code, captured = run(capsys, "decide", "--weights", "11", "1", "1", "3", "6", "--oracle")
        assert code == 3
        assert "--oracle" in captured.err

    def test_type_and_weights(self, capsys):
        """Test --type and --weights together"""
        code, _ = run(capsys, "decide", "--type", "1/11(1,1,3,6)", "--weights", "11", "1", "1", "3", "6")
        assert code == 3


class TestOtherCommands:
    """Test cfrac, cone, hilbert, fan and cohomology"""

    def test_cfrac(self, capsys):
        """Test both expansions of 12/7"""
        code, data = run_json(capsys, "cfrac", "12", "7")
        assert code == 0
        assert data["extra"]["regular"] == [1, 1, 2, 2]
        assert data["extra"]["negreg"] == [2, 4, 2]
        assert data["extra"]["dual"]["entries"] == [2, 2, 2]

    def test_cone(self, capsys):
        """Test the (4,7)-cone"""
        code, data = run_json(capsys, "cone", "--p", "4", "--q", "7")
        assert code == 0
        assert data["extra"]["dual"]["p"] == 3
        assert data["extra"]["socius"] == 2
        assert data["extra"]["socius_voronoi"] == 2
        assert data["extra"]["vertices"] == [[1, 0], [1, 1], [4, 7]]

    def test_cone_from_generators(self, capsys):
        """Test --n1/--n2"""
        code, data = run_json(capsys, "cone", "--n1", "2", "1", "--n2", "1", "3")
        assert code == 0
        assert (data["input"]["p"], data["input"]["q"]) == (3, 5)

    def test_hilbert(self, capsys):
        """Test the surface node"""
        code, data = run_json(capsys, "hilbert", "--type", "1/2(1,1)")
        assert code == 0
        assert data["extra"]["all_junior"] is True

    def test_guard_exceeded(self, capsys):
        """Test exit code 4"""
        code, captured = run(capsys, "--guard", "10", "hilbert", "--type", "1/11(1,1,3,6)")
        assert code == 4
        assert "CREPANT_GUARD" in captured.err

    def test_fan(self, capsys):
        """Test the verified fan of 1/11(1,1,3,6)"""
        code, data = run_json(capsys, "fan", "--r", "4", "--l", "11", "--alpha", "3", "--verify")
        assert code == 0
        assert len(data["fan"]["cones"]) == 11
        assert data["extra"]["verify"]["passed"] is True
        assert data["extra"]["polygon"]["rho"] == 2

    def test_fan_not_resolvable(self, capsys):
        """Test the fan of a failing type"""
        code, _ = run(capsys, "fan", "--r", "4", "--l", "9", "--alpha", "2")
        assert code == 3

    def test_cohomology(self, capsys):
        """Test two- and one-parameter dimensions"""
        code, data = run_json(capsys, "cohomology", "--r", "4", "--l", "11", "--alpha", "3")
        assert code == 0
        assert data["delta"] == [1, 3, 4, 3]
        assert data["ehrhart"]["coefficients"][-1] == "11/6"
        code, data = run_json(capsys, "cohomology", "--r", "4", "--l", "7", "--one-param")
        assert data["delta"] == [1, 2, 2, 2]

    def test_no_command(self, capsys):
        """Test help without a subcommand"""
        assert main([]) == 0


class TestScan:
    """Test the scan command"""

    def test_csv(self, capsys):
        """Test the CSV rows for r = 4"""
        code, captured = run(capsys, "scan", "--r", "4", "--lmax", "20")
        assert code == 0
        lines = captured.out.strip().splitlines()
        assert lines[0].split(",") == SCAN_COLUMNS
        assert len(lines) == 1 + 81

    def test_json_with_oracle(self, capsys):
        """Test every row agrees with the brute-force check"""
        code, data = run_json(capsys, "scan", "--r", "5", "--lmax", "30", "--oracle", "--format", "json")
        assert code == 0
        assert all(row["agree"] is True for row in data["rows"])

    def test_row(self):
        """Test a single row"""
        row = scan_row(4, 11, 3, 6)
        assert (row["verdict"], row["q"], row["p"], row["kappa"], row["mu"]) == ("resolvable", 11, 5, 2, "2/1")
        assert row["hilbcon"] == ""

    def test_sorted(self):
        """Test rows come out ordered by (l, α, β)"""
        rows = run_scan(4, 15, all_orders=True)
        keys = [(row["l"], row["alpha"], row["beta"]) for row in rows]
        assert keys == sorted(keys)

    def test_guard_in_worker_processes(self):
        """Test a guard error raised in a worker comes back as GuardExceededError"""
        with pytest.raises(GuardExceededError):
            run_scan(4, 40, oracle=True, workers=2, guard=100)

    def test_guard_in_worker_processes_exit_code(self, capsys):
        """Test exit code 4 from a parallel scan"""
        code, captured = run(capsys, "--guard", "100", "scan", "--r", "4", "--lmax", "40", "--oracle",
                             "--workers", "2")
        assert code == 4
        assert "CREPANT_GUARD" in captured.err

    def test_settings_read_once(self, capsys, monkeypatch):
        """Test a scan reads the environment once, not once per row"""
        monkeypatch.delenv("CREPANT_WORKERS", raising=False)
        calls = []
        original = Settings.from_env

        def counting(dotenv_path=None):
            calls.append(dotenv_path)
            return original(dotenv_path)

        monkeypatch.setattr(Settings, "from_env", counting)
        code, _ = run(capsys, "scan", "--r", "4", "--lmax", "20", "--oracle")
        assert code == 0
        assert len(calls) == 1

    def test_parser(self):
        """Test the global options precede the subcommand"""
        args = build_parser().parse_args(["-v", "--guard", "50", "scan", "--r", "4", "--lmax", "9"])
        assert args.verbose
        assert args.guard == 50
        assert args.format == "csv"


class TestSettings:
    """Test configuration from the environment"""

    def test_defaults(self, monkeypatch):
        """Test the built-in defaults"""
        for key in ("CREPANT_GUARD", "CREPANT_LOG_LEVEL", "CREPANT_WORKERS"):
            monkeypatch.delenv(key, raising=False)
        settings = Settings.from_env()
        assert settings.guard == DEFAULT_GUARD
        assert settings.log_level == "WARNING"
        assert settings.workers == 1

    def test_environment(self, monkeypatch):
        """Test values read from the environment"""
        monkeypatch.setenv("CREPANT_GUARD", "1_000")
        monkeypatch.setenv("CREPANT_LOG_LEVEL", "debug")
        monkeypatch.setenv("CREPANT_WORKERS", "4")
        settings = Settings.from_env()
        assert (settings.guard, settings.log_level, settings.workers) == (1000, "DEBUG", 4)
        assert resolve_guard(None) == 1000
        assert resolve_guard(7) == 7

    def test_invalid_values(self, monkeypatch):
        """Test unusable values"""
        monkeypatch.setenv("CREPANT_GUARD", "many")
        with pytest.raises(ConfigError):
            Settings.from_env()
        monkeypatch.setenv("CREPANT_GUARD", "0")
        with pytest.raises(ConfigError):
            Settings.from_env()
        monkeypatch.delenv("CREPANT_GUARD")
        monkeypatch.setenv("CREPANT_LOG_LEVEL", "LOUD")
        with pytest.raises(ConfigError):
            Settings.from_env()
        with pytest.raises(ConfigError):
            resolve_guard(0)

    def test_bad_environment_exit_code(self, capsys, monkeypatch):
        """Test configuration errors surface as exit code 3"""
        monkeypatch.setenv("CREPANT_LOG_LEVEL", "LOUD")
        code, _ = run(capsys, "cfrac", "7", "4")
        assert code == 3


class TestErrors:
    """Test error types"""

    def test_guard_error_pickles(self):
        """Test the guard error survives pickling with its message and fields"""
        error = GuardExceededError(500, 100, what="Hilbert basis of 1/11(1,1,3,6)")
        restored = pickle.loads(pickle.dumps(error))
        assert isinstance(restored, GuardExceededError)
        assert (restored.needed, restored.guard, restored.what) == (500, 100, error.what)
        assert str(restored) == str(error)
        assert "CREPANT_GUARD" in str(restored)
        assert restored.exit_code == 4

    def test_exit_codes(self):
        """Test the exit codes of the error types"""
        assert InvalidInputError("bad").exit_code == 3
        assert InconsistencyError("disagree").exit_code == 5


class TestReport:
    """Test report serialisation"""

    def test_round_trip(self):
        """Test JSON round trip"""
        report = Report("decide", input={"l": 11}, decision={"verdict": "resolvable"}, delta=[1, 3, 4, 3])
        assert Report.from_json(report.to_json()) == report

    def test_schema_version(self):
        """Test unknown schema versions are rejected"""
        with pytest.raises(InvalidInputError):
            Report.from_dict({"schema_version": 99, "command": "decide"})

    def test_rationals(self):
        """Test exact rational strings"""
        assert format_rational(3) == "3/1"
        assert parse_rational("9/2").denominator == 2
        with pytest.raises(InvalidInputError):
            parse_rational("nine halves")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
