"""Verification suites, report files and outcome export."""

from extscale.reports.runner import SuiteRunner
from extscale.reports.suites import SuiteRegistry, run_suite, suite_registry
from extscale.reports.writer import (
    SUMMARY_COLUMNS,
    atomic_write_text,
    environment_stamp,
    read_report,
    report_body,
    write_report,
    write_summary,
)

__all__ = [
    "SUMMARY_COLUMNS",
    "SuiteRegistry",
    "SuiteRunner",
    "atomic_write_text",
    "environment_stamp",
    "read_report",
    "report_body",
    "run_suite",
    "suite_registry",
    "write_report",
    "write_summary",
]
