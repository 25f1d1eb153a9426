"""Tests for verification record and report models."""

import math

import pytest

from extscale.core.models import (
    RECORD_COLUMNS,
    CaseResult,
    Provenance,
    Series,
    VerificationRecord,
    VerificationReport,
    bound_record,
    close_record,
    floor_record,
    inputs_digest,
    verdict_record,
)


class TestInputsDigest:
    """Tests for case input digests."""

    def test_order_independent(self) -> None:
        """Keyword order does not change the digest."""
        assert inputs_digest(a=1, b=[2, 3]) == inputs_digest(b=[2, 3], a=1)

    def test_differs_on_values(self) -> None:
        """Different inputs give different digests."""
        assert inputs_digest(seed=1) != inputs_digest(seed=2)
        assert len(inputs_digest(seed=1)) == 16


class TestRecordBuilders:
    """Tests for the record constructors."""

    def test_close_absolute(self) -> None:
        """Absolute closeness uses the tolerance as is."""
        rec = close_record("s", "c", "claim", Provenance.ANALYTIC, 1.0 + 1e-13, 1.0, 1e-12)
        assert rec.passed
        rec = close_record("s", "c", "claim", Provenance.ANALYTIC, 1.1, 1.0, 1e-12)
        assert not rec.passed

    def test_close_relative_scales(self) -> None:
        """Relative closeness scales with |expected|."""
        rec = close_record("s", "c", "claim", Provenance.ORACLE, 1000.5, 1000.0, 1e-3,
                           relative=True)
        assert rec.passed
        assert rec.provenance is Provenance.ORACLE

    def test_close_nan_fails(self) -> None:
        """A NaN measurement never passes."""
        rec = close_record("s", "c", "claim", Provenance.ANALYTIC, math.nan, 1.0, 1.0)
        assert not rec.passed

    def test_close_equal_infinities_pass(self) -> None:
        """Exactly equal values pass even when infinite."""
        rec = close_record("s", "c", "claim", Provenance.ANALYTIC, math.inf, math.inf, 0.0)
        assert rec.passed

    def test_verdict(self) -> None:
        """Verdicts compare booleans; undecided fails."""
        assert verdict_record("s", "c", "v", Provenance.ANALYTIC, True, True).passed
        assert not verdict_record("s", "c", "v", Provenance.ANALYTIC, False, True).passed
        undecided = verdict_record("s", "c", "v", Provenance.ANALYTIC, None, False)
        assert not undecided.passed
        assert undecided.measured == 0.5

    def test_bound_and_floor(self) -> None:
        """Bounds pass below, floors above."""
        assert bound_record("s", "c", "b", Provenance.STABILITY, 1.0, 1.1).passed
        assert not bound_record("s", "c", "b", Provenance.STABILITY, 1.2, 1.1).passed
        assert floor_record("s", "c", "f", Provenance.STABILITY, 0.3, 0.2).passed
        assert not floor_record("s", "c", "f", Provenance.STABILITY, 0.1, 0.2).passed

    def test_inputs_recorded(self) -> None:
        """Keyword inputs end up in the digest."""
        rec = bound_record("s", "c", "b", Provenance.STABILITY, 1.0, 2.0, K=8)
        assert rec.inputs_digest == inputs_digest(K=8)


class TestVerificationRecord:
    """Tests for the record model."""

    def test_rejects_comment_marker(self) -> None:
        """Labels may not start a CSV comment."""
        with pytest.raises(ValueError):
            close_record("s", "case #1", "claim", Provenance.ANALYTIC, 1.0, 1.0, 0.0)

    def test_negative_tolerance(self) -> None:
        """Tolerances are non-negative."""
        with pytest.raises(ValueError):
            VerificationRecord(suite="s", case="c", claim="x", provenance=Provenance.ANALYTIC,
                               measured=1.0, expected=1.0, tolerance=-1.0, passed=True,
                               inputs_digest="d")

    def test_row_order(self) -> None:
        """Rows follow the frozen column order."""
        row = close_record("s", "c", "claim", Provenance.STABILITY, 1.0, 1.0, 0.1).row()
        assert tuple(row) == RECORD_COLUMNS
        assert row["provenance"] == "stability"

    def test_frozen(self) -> None:
        """Records are immutable."""
        rec = close_record("s", "c", "claim", Provenance.ANALYTIC, 1.0, 1.0, 0.1)
        with pytest.raises(Exception):
            rec.passed = False  # type: ignore[misc]


class TestVerificationReport:
    """Tests for report assembly."""

    def test_failures_and_passed(self) -> None:
        """A report passes iff no record fails."""
        good = bound_record("s", "a", "b", Provenance.STABILITY, 1.0, 2.0)
        bad = bound_record("s", "b", "b", Provenance.STABILITY, 3.0, 2.0)
        assert VerificationReport(suite="s", config_digest="x", records=[good]).passed
        report = VerificationReport(suite="s", config_digest="x", records=[good, bad])
        assert report.failures == [bad]
        assert not report.passed

    def test_empty_report_passes(self) -> None:
        """A report with no records has no failures."""
        assert VerificationReport(suite="s", config_digest="x").passed

    def test_series_kind_checked(self) -> None:
        """Only known chart kinds are accepted."""
        Series(kind="index", label="power", x=[1.0], y=[1.0])
        with pytest.raises(ValueError):
            Series(kind="scatter", label="power", x=[1.0], y=[1.0])

    def test_case_result_defaults(self) -> None:
        """CaseResult starts empty."""
        result = CaseResult()
        assert result.records == []
        assert result.series == []
