"""Verification record and report models."""

from __future__ import annotations

import hashlib
import json
import math
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field, field_validator

RECORD_COLUMNS: tuple[str, ...] = (
    "suite",
    "case",
    "claim",
    "provenance",
    "measured",
    "expected",
    "tolerance",
    "passed",
    "inputs_digest",
)


class Provenance(Enum):
    """Where the expected value of a record comes from."""

    ANALYTIC = "analytic"
    ORACLE = "oracle"
    STABILITY = "stability"


def inputs_digest(**inputs: Any) -> str:
    """Short SHA-256 of the canonical JSON form of case inputs."""
    canonical = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


class VerificationRecord(BaseModel):
    """One checked claim of a suite case."""

    suite: str = Field(min_length=1)
    case: str = Field(min_length=1)
    claim: str = Field(min_length=1)
    provenance: Provenance
    measured: float
    expected: float
    tolerance: float = Field(ge=0.0)
    passed: bool
    inputs_digest: str = Field(min_length=1)

    model_config = {"frozen": True}

    @field_validator("suite", "case", "claim")
    @classmethod
    def no_comment_marker(cls, value: str) -> str:
        if "#" in value or "\n" in value:
            raise ValueError("labels may not contain '#' or newlines")
        return value

    def row(self) -> dict[str, Any]:
        """Column-ordered values for CSV output."""
        data = self.model_dump()
        data["provenance"] = self.provenance.value
        return {column: data[column] for column in RECORD_COLUMNS}


def close_record(
    suite: str,
    case: str,
    claim: str,
    provenance: Provenance,
    measured: float,
    expected: float,
    tolerance: float,
    relative: bool = False,
    **inputs: Any,
) -> VerificationRecord:
    """Record that passes when |measured - expected| <= tolerance.

    With relative=True the tolerance scales by max(1, |expected|).
    """
    scale = max(1.0, abs(expected)) if relative else 1.0
    gap = abs(measured - expected)
    passed = bool(math.isfinite(gap) and gap <= tolerance * scale) or measured == expected
    return VerificationRecord(
        suite=suite,
        case=case,
        claim=claim,
        provenance=provenance,
        measured=float(measured),
        expected=float(expected),
        tolerance=float(tolerance),
        passed=passed,
        inputs_digest=inputs_digest(**inputs),
    )


def verdict_record(
    suite: str,
    case: str,
    claim: str,
    provenance: Provenance,
    observed: bool | None,
    expected: bool,
    **inputs: Any,
) -> VerificationRecord:
    """Record of a boolean verdict; None (undecided) is stored as 0.5 and fails."""
    measured = 0.5 if observed is None else float(observed)
    return VerificationRecord(
        suite=suite,
        case=case,
        claim=claim,
        provenance=provenance,
        measured=measured,
        expected=float(expected),
        tolerance=0.0,
        passed=observed is not None and observed == expected,
        inputs_digest=inputs_digest(**inputs),
    )


def bound_record(
    suite: str,
    case: str,
    claim: str,
    provenance: Provenance,
    measured: float,
    bound: float,
    tolerance: float = 0.0,
    **inputs: Any,
) -> VerificationRecord:
    """Record that passes when measured <= bound + tolerance."""
    return VerificationRecord(
        suite=suite,
        case=case,
        claim=claim,
        provenance=provenance,
        measured=float(measured),
        expected=float(bound),
        tolerance=float(tolerance),
        passed=bool(measured <= bound + tolerance),
        inputs_digest=inputs_digest(**inputs),
    )


def floor_record(
    suite: str,
    case: str,
    claim: str,
    provenance: Provenance,
    measured: float,
    floor: float,
    tolerance: float = 0.0,
    **inputs: Any,
) -> VerificationRecord:
    """Record that passes when measured >= floor - tolerance."""
    return VerificationRecord(
        suite=suite,
        case=case,
        claim=claim,
        provenance=provenance,
        measured=float(measured),
        expected=float(floor),
        tolerance=float(tolerance),
        passed=bool(measured >= floor - tolerance),
        inputs_digest=inputs_digest(**inputs),
    )


class Series(BaseModel):
    """A plotted curve attached to a suite."""

    kind: str = Field(pattern=r"^(norm_ratio|partial_sums|index)$")
    label: str
    x: list[float]
    y: list[float]

    model_config = {"frozen": True}


class CaseResult(BaseModel):
    """Records and chart series produced by one suite case."""

    records: list[VerificationRecord] = Field(default_factory=list)
    series: list[Series] = Field(default_factory=list)

    model_config = {"frozen": True}


class VerificationReport(BaseModel):
    """All records of one suite run."""

    suite: str = Field(min_length=1)
    config_digest: str
    records: list[VerificationRecord] = Field(default_factory=list)
    series: list[Series] = Field(default_factory=list)

    model_config = {"frozen": True}

    @property
    def failures(self) -> list[VerificationRecord]:
        return [record for record in self.records if not record.passed]

    @property
    def passed(self) -> bool:
        return not self.failures
