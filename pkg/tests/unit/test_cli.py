"""Tests for the command-line entry point."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from extscale.cli import (
    EXIT_CONFIG,
    EXIT_FAILURES,
    EXIT_OK,
    build_parser,
    main,
    run,
    select_suites,
)
from extscale.core.config import parse_config
from extscale.reports.writer import read_report, report_body

SMALL = """\
app:
  log_level: WARNING
suites: [interp, witness]
seeds: [3]
lattice_sizes: [8]
weights:
  - family: power
    s: 1.0
samples:
  fields: 3
"""


@pytest.fixture
def config_path(tmp_path: Path) -> Path:
    path = tmp_path / "small.yaml"
    path.write_text(SMALL)
    return path


class TestParser:
    """Tests for argument parsing."""

    def test_subcommands(self) -> None:
        """Each module suite has a subcommand."""
        parser = build_parser()
        for command in ("ro", "norm", "interp", "quotient", "bvp", "embed", "report"):
            args = parser.parse_args([command, "--seed", "5", "--seed", "6"])
            assert args.command == command
            assert args.seed == [5, 6]

    def test_suite_restricted_to_subcommand(self) -> None:
        """--suite only accepts suites of the subcommand."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["ro", "--suite", "bvp"])

    def test_select_suites(self) -> None:
        """Subcommands map to their suites in canonical order."""
        config = parse_config({"suites": ["witness", "interp"], "seeds": [1]})
        assert select_suites("ro", config, None) == ["membership", "indices"]
        assert select_suites("embed", config, ["witness"]) == ["witness"]
        assert select_suites("report", config, None) == ["interp", "witness"]


class TestMain:
    """Tests for running the CLI end to end."""

    def test_interp_passes(self, tmp_path: Path, config_path: Path) -> None:
        """A passing suite exits 0 and writes its report and the summary."""
        out = tmp_path / "out"
        code = main(["interp", "--config", str(config_path), "--out", str(out), "--no-charts"])
        assert code == EXIT_OK
        assert all(r.passed for r in read_report(out / "interp.csv"))
        summary = pd.read_csv(out / "summary.csv")
        assert summary["suite"].tolist() == ["interp"]

    def test_seed_override_changes_digest(self, tmp_path: Path, config_path: Path) -> None:
        """--seed replaces the configured seeds."""
        a, b = tmp_path / "a", tmp_path / "b"
        main(["interp", "--config", str(config_path), "--out", str(a), "--no-charts"])
        main(["interp", "--config", str(config_path), "--out", str(b), "--no-charts",
              "--seed", "11"])
        header_a = (a / "interp.csv").read_text().splitlines()[2]
        header_b = (b / "interp.csv").read_text().splitlines()[2]
        assert header_a != header_b

    def test_repeat_runs_identical(self, tmp_path: Path, config_path: Path) -> None:
        """Same config and seeds give identical report bodies."""
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            main(["interp", "--config", str(config_path), "--out", str(out), "--no-charts"])
        assert report_body(a / "interp.csv") == report_body(b / "interp.csv")

    def test_missing_seeds_exit_2(self, tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
        """Config errors exit 2 with diagnostics on stderr."""
        path = tmp_path / "bad.yaml"
        path.write_text("suites: [interp]\n")
        assert main(["interp", "--config", str(path)]) == EXIT_CONFIG
        assert "seeds required" in capsys.readouterr().err

    def test_missing_config_exit_2(self, tmp_path: Path) -> None:
        """A missing config file is a config error."""
        assert main(["report", "--config", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG

    def test_validate(self, config_path: Path, capsys: pytest.CaptureFixture) -> None:
        """validate prints the digest and the normalized config."""
        assert main(["validate", "--config", str(config_path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("# config_digest=")
        assert "tolerances:" in out


class TestRun:
    """Tests for the run loop."""

    def test_failures_exit_1(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Any failing record makes the exit status 1."""
        from extscale.core.models import Provenance, VerificationReport, bound_record

        def failing(name, config, runner=None):
            record = bound_record(name, "c", "bound", Provenance.STABILITY, 2.0, 1.0)
            return VerificationReport(suite=name, config_digest=config.digest, records=[record])

        monkeypatch.setattr("extscale.cli.run_suite", failing)
        config = parse_config({"suites": ["norm"], "seeds": [1]})
        assert run(config, ["norm"], tmp_path, charts=False) == EXIT_FAILURES
        assert (tmp_path / "norm.csv").exists()

    def test_partial_results_flushed(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """A crashing suite is skipped and the suites around it still report."""
        from extscale.core.errors import SolverError
        from extscale.core.models import VerificationReport

        def flaky(name, config, runner=None):
            if name == "bvp":
                raise SolverError("singular mode system")
            return VerificationReport(suite=name, config_digest=config.digest)

        monkeypatch.setattr("extscale.cli.run_suite", flaky)
        config = parse_config({"suites": ["norm", "bvp"], "seeds": [1]})
        assert run(config, ["norm", "bvp", "witness"], tmp_path, charts=False) == EXIT_FAILURES
        assert (tmp_path / "norm.csv").exists()
        assert not (tmp_path / "bvp.csv").exists()
        assert (tmp_path / "witness.csv").exists()
        summary = pd.read_csv(tmp_path / "summary.csv")
        assert summary["suite"].tolist() == ["norm", "witness"]

    @pytest.mark.parametrize("error", [
        np.linalg.LinAlgError("Singular matrix"),
        ValueError("array must not contain infs or NaNs"),
    ], ids=["linalg", "value"])
    def test_foreign_exception_exits_1(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch, error: Exception
    ) -> None:
        """Exceptions from numerical libraries also map to exit status 1."""
        from extscale.core.models import VerificationReport

        def crashing(name, config, runner=None):
            if name == "quotient":
                raise error
            return VerificationReport(suite=name, config_digest=config.digest)

        monkeypatch.setattr("extscale.cli.run_suite", crashing)
        config = parse_config({"suites": ["quotient", "interp"], "seeds": [1]})
        assert run(config, ["quotient", "interp"], tmp_path, charts=False) == EXIT_FAILURES
        assert (tmp_path / "interp.csv").exists()
        assert pd.read_csv(tmp_path / "summary.csv")["suite"].tolist() == ["interp"]

    def test_metrics_file(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """--metrics writes a prometheus textfile."""
        pytest.importorskip("prometheus_client")
        from extscale.core.models import VerificationReport

        monkeypatch.setattr(
            "extscale.cli.run_suite",
            lambda name, config, runner=None: VerificationReport(
                suite=name, config_digest=config.digest),
        )
        config = parse_config({"suites": ["norm"], "seeds": [1]})
        assert run(config, ["norm"], tmp_path, charts=False, metrics=True) == EXIT_OK
        assert "extscale_suite_passed" in (tmp_path / "metrics.prom").read_text()
