"""Command-line entry point: run verification suites from a config file."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from collections.abc import Sequence
from pathlib import Path

import yaml

from extscale import __version__
from extscale.core.config import ALL_SUITES, ExperimentConfig, validate_config
from extscale.core.errors import ConfigError
from extscale.core.models import VerificationReport
from extscale.reports.runner import SuiteRunner
from extscale.reports.suites import run_suite
from extscale.reports.writer import write_report, write_summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_CONFIG = 2

DEFAULT_CONFIG = "configs/default.yaml"

SUBCOMMAND_SUITES: dict[str, tuple[str, ...]] = {
    "ro": ("membership", "indices"),
    "norm": ("norm",),
    "interp": ("interp",),
    "quotient": ("quotient",),
    "bvp": ("bvp",),
    "embed": ("embedding", "witness"),
    "report": ALL_SUITES,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extscale",
        description="Verify Hörmander-space computations on model problems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=Path(DEFAULT_CONFIG),
                        help="Experiment config (YAML)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        default=None, help="Override app.log_level")

    for name, suites in SUBCOMMAND_SUITES.items():
        p = sub.add_parser(name, parents=[common], help=f"run suites: {', '.join(suites)}"
                           if name != "report" else "run every suite selected by the config")
        p.add_argument("--out", type=Path, default=None, help="Output directory")
        p.add_argument("--seed", type=int, action="append", default=None,
                       help="Seed override (repeatable)")
        p.add_argument("--suite", choices=suites, action="append", default=None,
                       help="Restrict to these suites (repeatable)")
        p.add_argument("--metrics", action="store_true", help="Also write metrics.prom")
        p.add_argument("--no-charts", action="store_true", help="Skip SVG charts")

    sub.add_parser("validate", parents=[common], help="check a config and print it normalized")
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def select_suites(command: str, config: ExperimentConfig, requested: Sequence[str] | None) -> list[str]:
    """Suites to run, in canonical order."""
    if requested:
        chosen = set(requested)
    elif command == "report":
        chosen = set(config.suites)
    else:
        chosen = set(SUBCOMMAND_SUITES[command])
    return [suite for suite in ALL_SUITES if suite in chosen]


def _write_charts(reports: list[VerificationReport], out_dir: Path) -> None:
    try:
        from extscale.visualization import render_charts
    except ImportError:
        logger.warning("matplotlib not installed; skipping charts (install extscale[viz])")
        return
    for path in render_charts(reports, out_dir):
        logger.info("wrote %s", path)


def _write_metrics(reports: list[VerificationReport], durations: list[float], out_dir: Path) -> None:
    try:
        from extscale.reports.exporters import SuiteMetricsExporter
    except ImportError:
        logger.warning("prometheus-client not installed; skipping metrics (install extscale[metrics])")
        return
    exporter = SuiteMetricsExporter(run_id=reports[0].config_digest[:12] if reports else "empty")
    for report, duration in zip(reports, durations):
        exporter.record_report(report, duration)
    logger.info("wrote %s", exporter.write(out_dir / "metrics.prom"))


def run(
    config: ExperimentConfig,
    suites: Sequence[str],
    out_dir: Path,
    charts: bool = True,
    metrics: bool = False,
) -> int:
    """Run suites, writing each report as soon as it is complete.

    A suite that raises is logged and skipped; the remaining suites still run.

    Returns:
        EXIT_OK if every record passed, EXIT_FAILURES on a failing record or a crashed suite
    """
    runner = SuiteRunner(config.solver.num_cpus, config.solver.use_ray)
    reports: list[VerificationReport] = []
    durations: list[float] = []
    crashed = False
    try:
        for suite in suites:
            started = time.perf_counter()
            try:
                report = run_suite(suite, config, runner)
            except Exception:
                logger.exception("suite %s crashed, continuing with the remaining suites", suite)
                crashed = True
                continue
            durations.append(time.perf_counter() - started)
            write_report(report, out_dir)
            reports.append(report)
    finally:
        runner.shutdown()
        write_summary(reports, out_dir)

    if charts:
        _write_charts(reports, out_dir)
    if metrics:
        _write_metrics(reports, durations, out_dir)
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        logger.warning("failing suites: %s", ", ".join(failed))
    return EXIT_FAILURES if failed or crashed else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = validate_config(args.config)
    except ConfigError as exc:
        configure_logging(args.log_level or "INFO")
        print(f"config error: {args.config}", file=sys.stderr)
        for line in exc.diagnostics:
            print(f"  {line}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(args.log_level or config.app.log_level)

    if args.command == "validate":
        print(f"# config_digest={config.digest}")
        print(yaml.safe_dump(config.model_dump(mode="json", exclude_none=True), sort_keys=False),
              end="")
        return EXIT_OK

    if args.seed:
        config = config.model_copy(update={"seeds": list(args.seed)})
    out_dir = args.out or Path(config.app.output_dir)
    suites = select_suites(args.command, config, args.suite)
    logger.info("running %s into %s (config %s)", ", ".join(suites), out_dir, config.digest[:12])
    return run(config, suites, out_dir, charts=not args.no_charts, metrics=args.metrics)


if __name__ == "__main__":
    sys.exit(main())
