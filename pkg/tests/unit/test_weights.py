"""Tests for RO-varying weights, indices and membership checks."""

import logging
import math

import numpy as np
import pytest

from extscale.core.errors import PreconditionError, WeightDomainError
from extscale.weights import (
    IndexGrid,
    IndexMethod,
    MatuszewskaIndices,
    OscPowerWeight,
    PowerLogWeight,
    PowerWeight,
    RepresentedWeight,
    RoWeight,
    ShiftedWeight,
    WeightRegistry,
    check_ro_membership,
    estimate_indices,
    grows_without_bound,
    indices,
    shift,
    weight_from_spec,
)


class TestEvaluate:
    """Tests for weight evaluation."""

    def test_power_closed_form(self) -> None:
        """Power(2) at t=10 should be 100."""
        assert PowerWeight(2.0).evaluate(10.0) == pytest.approx(100.0, rel=1e-14)

    def test_oscpower_at_one(self) -> None:
        """Every oscillating weight starts at 1."""
        assert OscPowerWeight(1.0, 0.5).evaluate(1.0) == pytest.approx(1.0)
        assert OscPowerWeight(1.0, 0.5, clock="log").evaluate(1.0) == pytest.approx(1.0)

    def test_log_clock_closed_form(self) -> None:
        """The log clock should equal t^s * exp(eps * sin(ln t))."""
        phi = OscPowerWeight(1.0, 0.5, clock="log")
        t = 7.3
        assert phi(t) == pytest.approx(t * math.exp(0.5 * math.sin(math.log(t))), rel=1e-13)

    def test_powerlog_closed_form(self) -> None:
        """PowerLog(s, r) should equal t^s * ln(e + t)^r."""
        phi = PowerLogWeight(1.0, 2.0)
        assert phi(5.0) == pytest.approx(5.0 * math.log(math.e + 5.0) ** 2, rel=1e-13)

    def test_powerlog_large_t_finite(self) -> None:
        """The log factor should not overflow in log coordinates."""
        value = PowerLogWeight(0.0, 1.0).log_evaluate(1.0e12)
        assert value == pytest.approx(math.log(1.0e12), rel=1e-12)

    def test_represented_matches_power(self) -> None:
        """A represented weight with gamma = s, beta = 0 should match Power(s) at t = e."""
        phi = RepresentedWeight.from_functions(lambda t: 0.0, lambda t: 1.7, t_max=1.0e6)
        assert phi.evaluate(math.e) == pytest.approx(math.e**1.7, rel=1e-10)

    def test_represented_linear_gamma_exact(self) -> None:
        """Piecewise-linear gamma should integrate exactly."""
        phi = RepresentedWeight(beta=(0.0, 0.0, 0.0), gamma=(0.0, 1.0, 2.0), log_step=1.0)
        # L(x) = x^2 / 2 on [0, 2], then slope 2
        assert phi.log_evaluate(1.5) == pytest.approx(1.125, rel=1e-14)
        assert phi.log_evaluate(3.0) == pytest.approx(2.0 + 2.0, rel=1e-14)

    def test_represented_beta_interpolated(self) -> None:
        """beta should enter linearly between samples and stay constant past the grid."""
        phi = RepresentedWeight(beta=(0.0, 1.0), gamma=(0.0, 0.0), log_step=2.0)
        assert phi.log_evaluate(1.0) == pytest.approx(0.5)
        assert phi.log_evaluate(10.0) == pytest.approx(1.0)

    def test_vector_evaluation(self) -> None:
        """Arrays in should give arrays out."""
        values = PowerWeight(1.0).evaluate(np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(values, [1.0, 2.0, 3.0])

    def test_below_one_rejected(self) -> None:
        """t < 1 is outside the domain."""
        with pytest.raises(WeightDomainError):
            PowerWeight(1.0).evaluate(0.5)
        with pytest.raises(WeightDomainError):
            PowerWeight(1.0).log_evaluate(-0.1)

    def test_positive_everywhere(self) -> None:
        """Weights should be positive on a wide grid."""
        t = np.geomspace(1.0, 1.0e6, 200)
        for phi in (PowerWeight(-0.4), PowerLogWeight(1.0, -3.0), OscPowerWeight(0.0, 2.0)):
            assert np.all(phi.evaluate(t) > 0.0)


class TestRepresentedValidation:
    """Tests for represented-weight construction."""

    def test_declared_bound_enforced(self) -> None:
        """Samples above the declared bound should be rejected."""
        with pytest.raises(WeightDomainError):
            RepresentedWeight(beta=(0.0, 0.0), gamma=(1.0, 3.0), log_step=0.1, gamma_bound=2.0)

    def test_bound_defaults_to_samples(self) -> None:
        """Without a declared bound the sample maximum is used."""
        phi = RepresentedWeight(beta=(0.5, -1.0), gamma=(1.0, -3.0), log_step=0.1)
        assert phi.beta_bound == 1.0
        assert phi.gamma_bound == 3.0

    def test_mismatched_lengths(self) -> None:
        """beta and gamma must have the same number of samples."""
        with pytest.raises(WeightDomainError):
            RepresentedWeight(beta=(0.0,), gamma=(1.0, 1.0), log_step=0.1)

    def test_nonpositive_step(self) -> None:
        """log_step must be positive."""
        with pytest.raises(WeightDomainError):
            RepresentedWeight(beta=(0.0, 0.0), gamma=(1.0, 1.0), log_step=0.0)

    def test_unknown_clock(self) -> None:
        """Only the loglog and log clocks exist."""
        with pytest.raises(WeightDomainError):
            OscPowerWeight(1.0, 0.5, clock="sqrt")  # type: ignore[arg-type]


class TestMembership:
    """Tests for check_ro_membership."""

    def test_power_constant(self) -> None:
        """Power(3) with a=2 has c = 2^3."""
        result = check_ro_membership(PowerWeight(3.0), a=2.0)
        assert result.c_estimate == pytest.approx(8.0, rel=1e-12)
        assert result.is_ro

    def test_oscpower_bounded_and_stable(self) -> None:
        """OscPower(1, 0.5) stays under 2^1.5 * e as T_max doubles."""
        result = check_ro_membership(OscPowerWeight(1.0, 0.5), a=2.0)
        assert result.c_estimate <= 2.0**1.5 * math.e
        assert not result.violated
        assert result.sequence[-1] == pytest.approx(result.sequence[0], rel=1e-6)

    def test_fresh_grid_respects_constant(self) -> None:
        """Ratios on random points should stay within the reported constant."""
        phi = OscPowerWeight(1.0, 0.5)
        c = check_ro_membership(phi, a=2.0).c_estimate
        rng = np.random.default_rng(11)
        t = np.exp(rng.uniform(0.0, np.log(1.0e6), 5000))
        lam = rng.uniform(1.0, 2.0, 5000)
        ratio = phi.evaluate(lam * t) / phi.evaluate(t)
        assert np.all(ratio <= c * 1.02)
        assert np.all(ratio >= 1.0 / (c * 1.02))

    def test_unbounded_gamma_rejected(self) -> None:
        """gamma(t) = ln t makes the ratio grow with T_max."""
        candidate = RepresentedWeight.from_functions(
            lambda t: 0.0, np.log, t_max=1.0e8, points=4000
        )
        result = check_ro_membership(candidate, a=2.0, t_grid=np.geomspace(1.0, 1.0e6, 500))
        assert result.violated
        assert not result.is_ro

    def test_empty_grid(self) -> None:
        """Empty grids are an error."""
        with pytest.raises(ValueError):
            check_ro_membership(PowerWeight(1.0), t_grid=np.array([]))
        with pytest.raises(ValueError):
            check_ro_membership(PowerWeight(1.0), lambda_grid=[])

    def test_lambda_outside_range(self) -> None:
        """Dilations must lie in [1, a]."""
        with pytest.raises(ValueError):
            check_ro_membership(PowerWeight(1.0), a=2.0, lambda_grid=[1.0, 3.0])

    def test_growth_helper(self) -> None:
        """Three consecutive large steps count as unbounded growth."""
        assert grows_without_bound([0.0, 1.0, 2.0, 3.0], min_step=0.5)
        assert not grows_without_bound([0.0, 1.0, 1.1, 3.0], min_step=0.5)
        assert not grows_without_bound([0.0, 1.0], min_step=0.5)


class TestIndices:
    """Tests for Matuszewska indices."""

    @pytest.mark.parametrize("s", [-0.4, 0.0, 1.0, 2.0])
    def test_power_estimated(self, s: float) -> None:
        """Estimated indices of Power(s) are within 0.05 of (s, s)."""
        est = estimate_indices(PowerWeight(s))
        assert est.method is IndexMethod.ESTIMATED
        assert est.sigma0 == pytest.approx(s, abs=0.05)
        assert est.sigma1 == pytest.approx(s, abs=0.05)

    def test_powerlog_estimated(self) -> None:
        """Slowly varying factors have zero indices."""
        for s in (0.0, 1.0):
            est = indices(PowerLogWeight(s, 1.0), mode="estimated")
            assert est.as_tuple() == pytest.approx((s, s), abs=0.05)

    def test_oscpower_estimated(self) -> None:
        """OscPower(1, 0.5) has indices (0.5, 1.5)."""
        est = estimate_indices(OscPowerWeight(1.0, 0.5))
        assert est.as_tuple() == pytest.approx((0.5, 1.5), abs=0.05)

    def test_log_clock_has_order(self) -> None:
        """The log clock oscillation is bounded, so indices collapse."""
        phi = OscPowerWeight(1.0, 0.5, clock="log")
        assert phi.analytic_indices().as_tuple() == (1.0, 1.0)
        assert estimate_indices(phi).as_tuple() == pytest.approx((1.0, 1.0), abs=0.05)

    def test_analytic_values(self) -> None:
        """Closed forms give exact indices."""
        assert indices(PowerWeight(2.0)).as_tuple() == (2.0, 2.0)
        assert indices(PowerLogWeight(0.0, 1.0)).as_tuple() == (0.0, 0.0)
        assert indices(OscPowerWeight(1.0, 0.5)).as_tuple() == (0.5, 1.5)

    def test_analytic_on_represented(self) -> None:
        """Represented weights have no analytic indices."""
        phi = RepresentedWeight(beta=(0.0, 0.0), gamma=(1.0, 1.0), log_step=0.5)
        with pytest.raises(PreconditionError):
            indices(phi, mode=IndexMethod.ANALYTIC)

    def test_represented_estimated(self) -> None:
        """A constant-gamma representation behaves like a power."""
        phi = RepresentedWeight.from_functions(lambda t: 0.0, lambda t: 2.0, t_max=1.0e6)
        assert estimate_indices(phi).as_tuple() == pytest.approx((2.0, 2.0), abs=1e-6)

    def test_inverted_estimate_surfaced(self, caplog: pytest.LogCaptureFixture) -> None:
        """A wiggle with period h_hi inverts the secant slopes; the gap is kept and logged."""

        class WiggleWeight(RoWeight):
            def _log_weight(self, x: np.ndarray) -> np.ndarray:
                return x + np.sin(np.pi * x / 4.0)

            def params(self) -> dict:
                return {}

        grid = IndexGrid(h_lo=4.0, h_hi=8.0, x_max=100.0)
        with caplog.at_level(logging.WARNING, logger="extscale.weights.analysis"):
            est = estimate_indices(WiggleWeight(), grid)
        assert est.inversion == pytest.approx(1.0, abs=1e-3)
        assert est.as_tuple() == pytest.approx((1.0, 1.0), abs=1e-3)
        assert "inverted" in caplog.text

    def test_ordered_estimate_has_no_inversion(self) -> None:
        """Ordered estimates report zero inversion, also after a shift."""
        est = estimate_indices(OscPowerWeight(1.0, 0.5))
        assert est.inversion == 0.0
        assert est.shifted(2.0).inversion == 0.0

    def test_ordering_invariant(self) -> None:
        """sigma0 <= sigma1 always."""
        with pytest.raises(ValueError):
            MatuszewskaIndices(1.0, 0.0)
        with pytest.raises(ValueError):
            MatuszewskaIndices(float("nan"), 0.0)


class TestShift:
    """Tests for the weight shift t^s * phi."""

    def test_power_shift(self) -> None:
        """shift(Power(1), 2) is Power(3)."""
        assert shift(PowerWeight(1.0), 2.0) == PowerWeight(3.0)

    def test_oscpower_shift_indices(self) -> None:
        """Indices move with the shift."""
        shifted = shift(OscPowerWeight(1.0, 0.5), 2.0)
        assert shifted.analytic_indices().as_tuple() == (2.5, 3.5)

    def test_zero_shift_identity(self) -> None:
        """shift by zero returns the same weight."""
        phi = PowerLogWeight(1.0, 1.0)
        assert shift(phi, 0.0) is phi

    def test_shift_roundtrip(self) -> None:
        """shift(shift(phi, s), -s) evaluates like phi."""
        t = np.geomspace(1.0, 1.0e6, 50)
        represented = RepresentedWeight.from_functions(
            lambda t: np.sin(np.log(t)), lambda t: 0.5, t_max=1.0e4
        )
        for phi in (OscPowerWeight(1.0, 0.5), PowerLogWeight(0.3, 1.0), represented):
            back = shift(shift(phi, 0.7), -0.7)
            np.testing.assert_allclose(back.evaluate(t), phi.evaluate(t), rtol=1e-12)

    def test_represented_shift_carries_cache(self) -> None:
        """Cached indices of a represented weight shift too."""
        phi = RepresentedWeight(
            beta=(0.0, 0.0),
            gamma=(1.0, 1.0),
            log_step=0.5,
            cached_indices=MatuszewskaIndices(1.0, 1.0),
        )
        shifted = shift(phi, 1.5)
        assert isinstance(shifted, ShiftedWeight)
        assert shifted.known_indices().as_tuple() == (2.5, 2.5)
        assert shifted.analytic_indices() is None


class TestWeightRegistry:
    """Tests for building weights from config specs."""

    def test_from_spec(self) -> None:
        """Specs build the matching family."""
        assert weight_from_spec({"family": "power", "s": 2.0}) == PowerWeight(2.0)
        phi = weight_from_spec({"family": "oscpower", "s": 1.0, "eps": 0.5, "label": "osc"})
        assert phi == OscPowerWeight(1.0, 0.5)

    def test_bad_params(self) -> None:
        """Unknown parameters are a domain error."""
        with pytest.raises(WeightDomainError):
            weight_from_spec({"family": "power", "s": 1.0, "q": 2.0})

    def test_unknown_family(self) -> None:
        """Unknown families raise KeyError."""
        with pytest.raises(KeyError):
            weight_from_spec({"family": "exotic"})

    def test_register_and_unregister(self) -> None:
        """A fresh registry accepts new families once."""
        registry = WeightRegistry()

        @registry.register("flat")
        class FlatWeight(RoWeight):
            def _log_weight(self, x: np.ndarray) -> np.ndarray:
                return np.zeros_like(x)

            def params(self) -> dict:
                return {}

        assert registry.list_families() == ["flat"]
        assert registry.create({"family": "flat"}).evaluate(5.0) == 1.0
        with pytest.raises(ValueError):
            registry.register("flat")(FlatWeight)
        registry.unregister("flat")
        with pytest.raises(KeyError):
            registry.get("flat")
