"""CSV report files with atomic writes."""

from __future__ import annotations

import io
import logging
import os
import platform
import tempfile
from collections.abc import Sequence
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pandas as pd
import scipy

from extscale import __version__
from extscale.core.models import RECORD_COLUMNS, Provenance, VerificationRecord, VerificationReport

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS: tuple[str, ...] = ("suite", "records", "failures", "passed", "config_digest")


def environment_stamp() -> str:
    return (
        f"extscale={__version__} python={platform.python_version()} "
        f"numpy={np.__version__} scipy={scipy.__version__} pandas={pd.__version__}"
    )


def atomic_write_text(path: Path, text: str) -> None:
    """Write text to a sibling temp file, then move it over path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _body(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.17g", lineterminator="\n")
    return buffer.getvalue()


def report_frame(report: VerificationReport) -> pd.DataFrame:
    return pd.DataFrame([record.row() for record in report.records], columns=list(RECORD_COLUMNS))


def write_report(
    report: VerificationReport, out_dir: Path | str, timestamp: datetime | None = None
) -> Path:
    """Write <suite>.csv with a commented header and the frozen columns.

    Only the header carries the timestamp; the body depends on the
    records alone.

    Returns:
        Path of the written file
    """
    stamp = (timestamp or datetime.now(timezone.utc)).isoformat(timespec="seconds")
    header = (
        f"# suite={report.suite}\n"
        f"# generated={stamp}\n"
        f"# config_digest={report.config_digest}\n"
        f"# environment={environment_stamp()}\n"
    )
    path = Path(out_dir) / f"{report.suite}.csv"
    atomic_write_text(path, header + _body(report_frame(report)))
    logger.info(
        "wrote %s: %d records, %d failures", path, len(report.records), len(report.failures)
    )
    return path


def write_summary(reports: Sequence[VerificationReport], out_dir: Path | str) -> Path:
    """Write summary.csv with one row per suite."""
    rows = [
        {
            "suite": report.suite,
            "records": len(report.records),
            "failures": len(report.failures),
            "passed": report.passed,
            "config_digest": report.config_digest,
        }
        for report in reports
    ]
    path = Path(out_dir) / "summary.csv"
    atomic_write_text(path, _body(pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))))
    return path


def read_report(path: Path | str) -> list[VerificationRecord]:
    """Read the records of a report file written by write_report.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the columns differ from the frozen layout
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Report file not found: {path}")
    frame = pd.read_csv(
        path, comment="#", dtype={"case": str, "claim": str, "inputs_digest": str}
    )
    if tuple(frame.columns) != RECORD_COLUMNS:
        raise ValueError(f"unexpected report columns: {list(frame.columns)}")
    return [
        VerificationRecord(
            suite=str(row.suite),
            case=str(row.case),
            claim=str(row.claim),
            provenance=Provenance(row.provenance),
            measured=float(row.measured),
            expected=float(row.expected),
            tolerance=float(row.tolerance),
            passed=bool(row.passed),
            inputs_digest=str(row.inputs_digest),
        )
        for row in frame.itertuples(index=False)
    ]


def report_body(path: Path | str) -> str:
    """File content without the commented header lines."""
    lines = Path(path).read_text().splitlines(keepends=True)
    return "".join(line for line in lines if not line.startswith("#"))
