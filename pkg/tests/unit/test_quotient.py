"""Tests for quotient norms on domains inside the torus."""

import numpy as np
import pytest

from extscale.core.errors import PreconditionError
from extscale.quotient import (
    CollocationOperator,
    DomainMask,
    QuotientFactorization,
    QuotientProblem,
    dense_kkt_solve,
    load_mask,
    outside_supported_field,
    quotient_norm,
    quotient_upper_bound,
    restriction,
    save_mask,
)
from extscale.spaces import Lattice, SpectralField, h_norm, random_field
from extscale.weights import OscPowerWeight, PowerLogWeight, PowerWeight

WEIGHTS = (PowerWeight(1.0), PowerLogWeight(1.0, 1.0), OscPowerWeight(1.0, 0.5))
GRID_SIZES = (8, 12, 16, 24, 32)


def random_instance(i: int) -> QuotientProblem:
    """Seeded 1D instance: random mask on M <= 32 points, K = M // 2."""
    rng = np.random.default_rng(i)
    points = GRID_SIZES[i % len(GRID_SIZES)]
    inside = rng.random(points) < 0.5
    inside[0], inside[-1] = True, False
    mask = DomainMask(inside)
    target = rng.standard_normal(mask.count) + 1j * rng.standard_normal(mask.count)
    return QuotientProblem(target, WEIGHTS[i % len(WEIGHTS)], Lattice(1, points // 2), mask)


class TestDomainMask:
    """Tests for DomainMask constructors and CSV files."""

    def test_interval(self) -> None:
        """An interval mask holds exactly its index range."""
        mask = DomainMask.interval(16, 4, 12)
        assert mask.count == 8
        assert mask.n == 1
        np.testing.assert_allclose(mask.coordinates()[:, 0], 2 * np.pi * np.arange(4, 12) / 16)

    def test_disk_symmetric(self) -> None:
        """The disk mask is centred at (pi, pi) and symmetric under transposition."""
        mask = DomainMask.disk(32)
        np.testing.assert_array_equal(mask.inside, mask.inside.T)
        assert mask.inside[16, 16]
        assert not mask.inside[0, 0]
        assert mask.radius == 1.0

    def test_needs_both_sides(self) -> None:
        """All-inside and all-outside masks are rejected."""
        with pytest.raises(ValueError):
            DomainMask(np.ones(8, dtype=bool))
        with pytest.raises(ValueError):
            DomainMask(np.zeros((4, 4), dtype=bool))

    def test_csv_roundtrip(self, tmp_path) -> None:
        """Masks survive a CSV write and read."""
        for mask in (DomainMask.interval(16, 2, 9), DomainMask.disk(16)):
            path = tmp_path / f"mask_{mask.n}.csv"
            save_mask(mask, path)
            assert load_mask(path) == mask

    def test_missing_file(self, tmp_path) -> None:
        """Loading a missing mask raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_mask(tmp_path / "absent.csv")


class TestCollocation:
    """Tests for the collocation operator."""

    def test_forward_matches_matrix(self) -> None:
        """The FFT forward transform equals the dense matrix."""
        mask = DomainMask.disk(12)
        lattice = Lattice(2, 8)
        u = random_field(0, PowerWeight(0.0), lattice)
        op = CollocationOperator(mask, lattice)
        np.testing.assert_allclose(op.forward(u.coeffs), op.matrix() @ u.coeffs.ravel(), atol=1e-11)

    def test_adjoint(self) -> None:
        """<C w, lam> = <w, C* lam>."""
        mask = DomainMask.interval(16, 3, 11)
        lattice = Lattice(1, 10)
        op = CollocationOperator(mask, lattice)
        rng = np.random.default_rng(5)
        w = rng.standard_normal(lattice.shape) + 1j * rng.standard_normal(lattice.shape)
        lam = rng.standard_normal(mask.count) + 1j * rng.standard_normal(mask.count)
        lhs = np.vdot(lam, op.forward(w))
        rhs = np.vdot(op.adjoint(lam), w)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_single_mode_values(self) -> None:
        """A unit mode restricts to e^{ikx} at the inside points."""
        mask = DomainMask.interval(16, 0, 8)
        lattice = Lattice(1, 8)
        values = restriction(SpectralField.single_mode(lattice, (3,)), mask)
        np.testing.assert_allclose(values, np.exp(3j * mask.coordinates()[:, 0]), atol=1e-13)

    def test_grid_too_fine(self) -> None:
        """M > 2K + 1 is rejected."""
        with pytest.raises(ValueError, match="finer"):
            CollocationOperator(DomainMask.interval(32, 0, 8), Lattice(1, 8))


class TestQuotientNorm:
    """Tests for quotient_norm against the dense oracle."""

    def test_matches_kkt(self) -> None:
        """50 random 1D instances agree with the dense KKT solve to 1e-8."""
        for i in range(50):
            problem = random_instance(i)
            result = quotient_norm(problem)
            oracle = dense_kkt_solve(problem)
            assert result.converged
            assert result.value == pytest.approx(oracle.value, rel=1e-8)

    def test_interval_instance(self) -> None:
        """M = 16, K = 8, interval of 8 points."""
        mask = DomainMask.interval(16, 4, 12)
        rng = np.random.default_rng(11)
        target = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        problem = QuotientProblem(target, PowerWeight(1.0), Lattice(1, 8), mask)
        assert quotient_norm(problem).value == pytest.approx(
            dense_kkt_solve(problem).value, rel=1e-8
        )

    def test_extension_is_feasible(self) -> None:
        """The minimizer reproduces the target on the mask."""
        problem = random_instance(3)
        result = quotient_norm(problem)
        np.testing.assert_allclose(
            restriction(result.extension, problem.mask), problem.target, atol=1e-9
        )

    def test_infimum_property(self) -> None:
        """No feasible extension has a smaller norm than the minimizer."""
        for i in range(50):
            problem = random_instance(i)
            result = quotient_norm(problem)
            rng = np.random.default_rng(1000 + i)
            for j in range(100):
                z = outside_supported_field(problem.mask, problem.lattice, seed=100 * i + j)
                candidate = result.extension + z.scale(rng.uniform(0.01, 2.0))
                bound = quotient_upper_bound(
                    problem.target, problem.weight, candidate, problem.mask
                )
                assert bound >= result.value * (1.0 - 1e-9)

    def test_zero_target(self) -> None:
        """Zero values have quotient norm 0."""
        mask = DomainMask.interval(8, 0, 4)
        problem = QuotientProblem(np.zeros(4), PowerWeight(1.0), Lattice(1, 4), mask)
        result = quotient_norm(problem)
        assert result.value == 0.0
        assert result.converged
        assert result.extension.is_zero()

    def test_single_mode_upper_bound(self) -> None:
        """The restriction of a unit mode has quotient norm at most phi(<k>)."""
        mask = DomainMask.disk(16)
        lattice = Lattice(2, 16)
        phi = PowerLogWeight(1.0, 1.0)
        mode = SpectralField.single_mode(lattice, (2, -3))
        problem = QuotientProblem(restriction(mode, mask), phi, lattice, mask)
        assert quotient_norm(problem).value <= h_norm(mode, phi) * (1.0 + 1e-12)

    def test_monotone_in_weight(self) -> None:
        """phi <= phi1 on the lattice orders the quotient norms."""
        for i in range(5):
            problem = random_instance(i)
            values = [
                quotient_norm(
                    QuotientProblem(problem.target, phi, problem.lattice, problem.mask)
                ).value
                for phi in (PowerWeight(0.0), PowerWeight(1.0), PowerLogWeight(1.0, 1.0))
            ]
            assert values[0] <= values[1] * (1.0 + 1e-9)
            assert values[1] <= values[2] * (1.0 + 1e-9)

    def test_iteration_cap(self) -> None:
        """Hitting the iteration cap is reported, not raised."""
        problem = random_instance(4)
        capped = QuotientProblem(
            problem.target, problem.weight, problem.lattice, problem.mask, max_iterations=1
        )
        result = quotient_norm(capped)
        assert not result.converged
        assert result.iterations == 1
        assert result.residual > capped.tolerance

    def test_target_size_checked(self) -> None:
        """The target must have one value per inside point."""
        with pytest.raises(ValueError):
            QuotientProblem(np.ones(3), PowerWeight(1.0), Lattice(1, 4), DomainMask.interval(8, 0, 4))


class TestFactorization:
    """Tests for QuotientFactorization and quotient_upper_bound."""

    def test_matches_cg(self) -> None:
        """The dense factorization agrees with conjugate gradients on the disk."""
        mask = DomainMask.disk(12)
        lattice = Lattice(2, 8)
        phi = OscPowerWeight(1.0, 0.5)
        fact = QuotientFactorization(mask, lattice, phi)
        for seed in range(5):
            u = random_field(seed, PowerWeight(1.0), lattice)
            values = restriction(u, mask)
            expected = quotient_norm(QuotientProblem(values, phi, lattice, mask)).value
            assert fact.norm(values) == pytest.approx(expected, rel=1e-8)

    def test_extension(self) -> None:
        """The factorized extension is feasible and attains the norm."""
        mask = DomainMask.interval(16, 2, 10)
        lattice = Lattice(1, 8)
        phi = PowerWeight(1.0)
        fact = QuotientFactorization(mask, lattice, phi)
        values = np.linspace(0.0, 1.0, mask.count) + 0.5j
        w = fact.extension(values)
        assert quotient_upper_bound(values, phi, w, mask) == pytest.approx(fact.norm(values), rel=1e-10)

    def test_infeasible_extension(self) -> None:
        """An extension that misses the values is rejected."""
        mask = DomainMask.interval(8, 0, 4)
        lattice = Lattice(1, 4)
        with pytest.raises(PreconditionError, match="infeasible"):
            quotient_upper_bound(np.ones(4), PowerWeight(1.0), SpectralField.zeros(lattice), mask)

    def test_outside_field_vanishes_inside(self) -> None:
        """outside_supported_field has zero values on the mask."""
        mask = DomainMask.disk(16)
        z = outside_supported_field(mask, Lattice(2, 8), seed=2)
        assert np.max(np.abs(restriction(z, mask))) < 1e-12
        assert not z.is_zero()
