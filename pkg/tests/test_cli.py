"""
End-to-end tests for the ncergo command line.

Each test runs ``main`` in a scratch working directory so log files and
result tables stay inside pytest's tmp_path.
"""

from pathlib import Path

import orjson
import pandas as pd
import pytest

from cli.ncergo import EXIT_FAILED, EXIT_INTERRUPTED, EXIT_OK, EXIT_USAGE, main
from models.experiment import RESULT_COLUMNS
from services.experiment_service import ExperimentService
from services.storage_service import StorageError, StorageService
from services.verification_service import VerificationService

EXPERIMENTS = Path(__file__).resolve().parents[1] / "config" / "experiments"


class TestCli:
    """Subcommands, exit codes and output files."""

    @pytest.fixture(autouse=True)
    def scratch(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("NCERGO_TRUNCATION", raising=False)
        monkeypatch.delenv("NCERGO_LOG_LEVEL", raising=False)
        self.tmp_path = tmp_path

    def test_verify_prints_pass_lines(self, capsys):
        """verify --suite spectrum prints three PASS lines and exits 0."""
        assert main(["verify", "--suite", "spectrum"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert all(line.startswith("PASS spectrum ") for line in lines)

    def test_verify_reports_failures(self, capsys, mocker):
        """A failing invariant turns into exit code 1."""
        from models.reports import InvariantResult

        mocker.patch.object(
            VerificationService, "run", return_value=[InvariantResult("algebra", "commutation", 1.0, 1e-12)]
        )
        assert main(["verify"]) == EXIT_FAILED
        assert capsys.readouterr().out.startswith("FAIL algebra commutation")

    def test_verify_takes_seed_from_config(self, mocker):
        """Without --seed the [run] seed of --config is used."""
        text = (EXPERIMENTS / "default.ini").read_text(encoding="utf-8").replace("seed = 0", "seed = 7")
        config = self.tmp_path / "seeded.ini"
        config.write_text(text, encoding="utf-8")
        run = mocker.patch.object(VerificationService, "run", autospec=True, return_value=[])

        assert main(["verify", "--config", str(config)]) == EXIT_OK
        assert run.call_args.args[0].seed == 7
        assert main(["verify", "--config", str(config), "--seed", "3"]) == EXIT_OK
        assert run.call_args.args[0].seed == 3

    @pytest.mark.parametrize(
        "cmd,config_name,rows",
        [
            ("average", "default.ini", 3),
            ("disjoint", "coupling_irrational_box.ini", 4),
            ("group", "dual_s_letters.ini", 3),
        ],
    )
    def test_tables_are_written_with_sidecar(self, cmd, config_name, rows):
        """Table subcommands write the CSV and its provenance."""
        out = self.tmp_path / "results" / f"{cmd}.csv"
        config = str(EXPERIMENTS / config_name)
        assert main([cmd, "--config", config, "--out", str(out)]) == EXIT_OK

        frame = pd.read_csv(out)
        assert list(frame.columns) == list(RESULT_COLUMNS)
        assert len(frame) == rows
        meta = orjson.loads(Path(f"{out}.meta.json").read_bytes())
        assert meta["subcommand"] == cmd
        assert meta["config_path"] == config
        assert meta["row_count"] == rows

    def test_tables_are_byte_identical_across_runs(self):
        """Two runs of the same config write the same CSV bytes."""
        config = str(EXPERIMENTS / "mirror_relative.ini")
        first, second = self.tmp_path / "a.csv", self.tmp_path / "b.csv"
        assert main(["disjoint", "--config", config, "--out", str(first)]) == EXIT_OK
        assert main(["disjoint", "--config", config, "--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    @pytest.mark.parametrize("cmd", ["average", "disjoint", "group"])
    def test_missing_config_is_a_usage_error(self, cmd, capsys):
        """An unreadable config gives exit code 2 and one error line, no traceback."""
        missing = self.tmp_path / "missing.ini"
        assert main([cmd, "--config", str(missing), "--out", "x.csv"]) == EXIT_USAGE
        err = capsys.readouterr().err
        assert err.startswith("error: ") and "missing.ini" in err
        assert "Traceback" not in err
        assert not (self.tmp_path / "x.csv").exists()

    def test_verify_with_missing_config(self, capsys):
        """verify --config reads the seed from the file and reports a missing one."""
        assert main(["verify", "--config", "nowhere.ini"]) == EXIT_USAGE
        assert "nowhere.ini" in capsys.readouterr().err

    def test_bad_config_is_a_usage_error(self, capsys):
        """Parse errors name the file, line and column."""
        config = self.tmp_path / "bad.ini"
        config.write_text("[system]\nkind = qtorus\ncolour = red\n", encoding="utf-8")
        code = main(["average", "--config", str(config), "--out", str(self.tmp_path / "x.csv")])
        assert code == EXIT_USAGE
        err = capsys.readouterr().err
        assert str(config) in err and "line 3" in err
        assert not (self.tmp_path / "x.csv").exists()

    def test_wrong_system_for_subcommand(self, capsys):
        """average on a group_dual config is rejected."""
        code = main(["average", "--config", str(EXPERIMENTS / "dual_t_letters.ini"), "--out", "x.csv"])
        assert code == EXIT_USAGE
        assert "group_dual" in capsys.readouterr().err

    def test_storage_failure_exits_one(self, mocker):
        """StorageError maps to exit code 1."""
        mocker.patch.object(StorageService, "save_table", side_effect=StorageError("disk full"))
        code = main(["group", "--config", str(EXPERIMENTS / "dual_s_letters.ini"), "--out", "g.csv"])
        assert code == EXIT_FAILED

    def test_interrupt(self, mocker):
        """Ctrl-C exits with 130."""
        mocker.patch.object(ExperimentService, "table", side_effect=KeyboardInterrupt)
        code = main(["group", "--config", str(EXPERIMENTS / "dual_s_letters.ini"), "--out", "g.csv"])
        assert code == EXIT_INTERRUPTED

    def test_oracle_subcommand(self, capsys):
        """oracle prints mul, adjoint and trace lines for one theta."""
        code = main(["oracle", "--theta", "1/2*sqrt(2)", "--truncation", "8", "--samples", "3", "--seed", "1"])
        assert code == EXIT_OK
        ids = [line.split()[2] for line in capsys.readouterr().out.splitlines()]
        assert ids == ["mul", "adjoint", "trace"]

    def test_oracle_rejects_bad_theta(self, capsys):
        """A non-square-free radicand is reported with its column."""
        assert main(["oracle", "--theta", "sqrt(4)"]) == EXIT_USAGE
        assert "column 6" in capsys.readouterr().err

    def test_truncation_from_environment(self, monkeypatch):
        """NCERGO_TRUNCATION must be an integer."""
        monkeypatch.setenv("NCERGO_TRUNCATION", "many")
        assert main(["oracle", "--theta", "1/5", "--samples", "1"]) == EXIT_USAGE

    def test_subcommand_is_required(self):
        """argparse exits with 2 when no subcommand is given."""
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == EXIT_USAGE
