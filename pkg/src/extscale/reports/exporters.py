"""Prometheus textfile export of suite outcomes."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, generate_latest

from extscale.core.models import VerificationReport
from extscale.reports.writer import atomic_write_text


class SuiteMetricsExporter:
    """Export verification outcomes in Prometheus exposition format.

    The output is meant for a node-exporter textfile collector, so CI runs
    can be charted and alerted on.

    Example:
        exporter = SuiteMetricsExporter(run_id="nightly")
        exporter.record_report(report, duration_seconds=12.5)
        exporter.write(Path("reports/metrics.prom"))
    """

    def __init__(
        self,
        run_id: str = "default",
        registry: CollectorRegistry | None = None,
    ) -> None:
        """Initialize the exporter.

        Args:
            run_id: Run identifier used as label
            registry: Optional custom registry (default creates new one)
        """
        self.run_id = run_id
        self.registry = registry or CollectorRegistry()

        self.records_total = Counter(
            "extscale_records_total",
            "Verification records by outcome",
            ["run_id", "suite", "outcome"],
            registry=self.registry,
        )
        self.suite_passed = Gauge(
            "extscale_suite_passed",
            "1 if every record of the suite passed",
            ["run_id", "suite"],
            registry=self.registry,
        )
        self.suite_duration = Gauge(
            "extscale_suite_duration_seconds",
            "Wall-clock time of the last suite run",
            ["run_id", "suite"],
            registry=self.registry,
        )
        self.tolerance_usage = Histogram(
            "extscale_tolerance_usage",
            "Measured deviation as a fraction of the tolerance for closeness claims",
            ["run_id", "suite"],
            buckets=[1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0],
            registry=self.registry,
        )

    def record_report(self, report: VerificationReport, duration_seconds: float = 0.0) -> None:
        """Add the outcome counts of one suite.

        Args:
            report: Assembled suite report
            duration_seconds: Time the suite took
        """
        labels = {"run_id": self.run_id, "suite": report.suite}
        failures = len(report.failures)
        self.records_total.labels(**labels, outcome="passed").inc(len(report.records) - failures)
        self.records_total.labels(**labels, outcome="failed").inc(failures)
        self.suite_passed.labels(**labels).set(1.0 if report.passed else 0.0)
        self.suite_duration.labels(**labels).set(duration_seconds)
        for record in report.records:
            if record.tolerance > 0.0:
                usage = abs(record.measured - record.expected) / record.tolerance
                self.tolerance_usage.labels(**labels).observe(usage)

    def record_reports(self, reports: Sequence[VerificationReport]) -> None:
        for report in reports:
            self.record_report(report)

    def generate_metrics(self) -> bytes:
        """Generate Prometheus exposition format output.

        Returns:
            Bytes containing Prometheus metrics text
        """
        return generate_latest(self.registry)

    def write(self, path: Path | str) -> Path:
        """Write the metrics atomically as a textfile."""
        path = Path(path)
        atomic_write_text(path, self.generate_metrics().decode("utf-8"))
        return path
