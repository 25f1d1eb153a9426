"""Tests for interpolation parameters and interpolation norms."""

import math

import numpy as np
import pytest

from extscale.core.errors import PreconditionError
from extscale.interpolation import (
    DirectSumPair,
    HilbertPairSpec,
    InterpolationParameter,
    interp_norm,
    is_pseudoconcave,
    make_psi,
    pseudoconcavity_constant,
    verify_direct_sum,
    verify_interp_identity,
)
from extscale.spaces import Lattice, SpectralField, h_norm, random_field
from extscale.weights import OscPowerWeight, PowerLogWeight, PowerWeight, RepresentedWeight

WEIGHT_MATRIX = [PowerWeight(1.0), PowerLogWeight(1.0, 1.0), OscPowerWeight(1.0, 0.5)]
PAIRS = [(0.0, 2.0), (-0.4, 3.0)]


class TestMakePsi:
    """Tests for make_psi."""

    def test_power_closed_form(self) -> None:
        """Power(s) gives psi(t) = t^((s - s0)/(s1 - s0))."""
        psi = make_psi(PowerWeight(1.0), -0.4, 3.0)
        assert psi(10.0) == pytest.approx(10.0 ** (1.4 / 3.4), rel=1e-13)

    def test_below_one(self) -> None:
        """psi(t) = phi(1) for t < 1."""
        assert make_psi(PowerWeight(1.0), 0.0, 2.0)(0.25) == pytest.approx(1.0)

    def test_oscillating_value(self) -> None:
        """psi(4) = phi(2) for the pair (0, 2)."""
        psi = make_psi(OscPowerWeight(1.0, 0.5, clock="log"), 0.0, 2.0)
        assert psi(4.0) == pytest.approx(2.0 * math.exp(0.5 * math.sin(math.log(2.0))), rel=1e-13)

    def test_indices_outside_pair(self) -> None:
        """Indices must lie strictly inside (s0, s1)."""
        with pytest.raises(PreconditionError):
            make_psi(OscPowerWeight(1.0, 0.5), 0.6, 3.0)
        with pytest.raises(PreconditionError):
            make_psi(PowerWeight(2.0), 0.0, 2.0)

    def test_estimated_indices_margin(self) -> None:
        """Estimated indices are widened by the tolerance."""
        phi = RepresentedWeight.from_functions(lambda t: 0.0, lambda t: 1.0, t_max=1.0e4)
        assert make_psi(phi, 0.0, 2.0).s1 == 2.0
        with pytest.raises(PreconditionError):
            make_psi(phi, 0.97, 2.0)

    def test_closed_form_parameters(self) -> None:
        """power(a) is t^a and constant() is 1."""
        assert InterpolationParameter.power(0.5)(9.0) == pytest.approx(3.0)
        assert InterpolationParameter.constant()(123.0) == 1.0


class TestPseudoconcavity:
    """Tests for the pseudoconcavity check."""

    def test_square_root(self) -> None:
        """sqrt(t) is concave."""
        result = pseudoconcavity_constant(InterpolationParameter.power(0.5))
        assert result.pseudoconcave
        assert result.constant == pytest.approx(1.0)

    def test_square_fails(self) -> None:
        """t^2 / t keeps increasing."""
        assert not is_pseudoconcave(InterpolationParameter.power(2.0))

    @pytest.mark.parametrize("phi", WEIGHT_MATRIX)
    @pytest.mark.parametrize(("s0", "s1"), PAIRS)
    def test_make_psi_pseudoconcave(self, phi, s0: float, s1: float) -> None:
        """Every admissible make_psi output is an interpolation parameter."""
        assert is_pseudoconcave(make_psi(phi, s0, s1))


class TestInterpNorm:
    """Tests for interp_norm."""

    def test_constant_parameter(self) -> None:
        """psi = 1 reproduces the lower space."""
        u = random_field(2, PowerWeight(1.0), Lattice(2, 8))
        pair = HilbertPairSpec(0.5, 2.0)
        value = interp_norm(u, pair, InterpolationParameter.constant())
        assert value == pytest.approx(h_norm(u, PowerWeight(0.5)), rel=1e-13)

    def test_identity_parameter(self) -> None:
        """psi(t) = t reproduces the upper space."""
        u = random_field(2, PowerWeight(1.0), Lattice(2, 8))
        pair = HilbertPairSpec(0.5, 2.0)
        value = interp_norm(u, pair, InterpolationParameter.power(1.0))
        assert value == pytest.approx(h_norm(u, PowerWeight(2.0)), rel=1e-13)

    def test_single_mode(self) -> None:
        """Single mode with psi from Power(1) on (0, 2) has norm <k>."""
        u = SpectralField.single_mode(Lattice(2, 8), (2, 5))
        psi = make_psi(PowerWeight(1.0), 0.0, 2.0)
        assert interp_norm(u, HilbertPairSpec(0.0, 2.0), psi) == pytest.approx(math.sqrt(30.0))

    def test_monotone_in_parameter(self) -> None:
        """A pointwise larger psi gives a larger norm."""
        u = random_field(4, PowerWeight(1.0), Lattice(2, 8))
        pair = HilbertPairSpec(0.0, 2.0)
        small = interp_norm(u, pair, InterpolationParameter.power(0.25))
        large = interp_norm(u, pair, InterpolationParameter.power(0.75))
        assert small <= large

    def test_pair_order(self) -> None:
        """Pairs need s0 < s1."""
        with pytest.raises(ValueError):
            HilbertPairSpec(2.0, 2.0)


class TestIdentities:
    """Tests for the interpolation and direct-sum identities."""

    @pytest.mark.parametrize("phi", WEIGHT_MATRIX)
    @pytest.mark.parametrize(("s0", "s1"), PAIRS)
    @pytest.mark.parametrize("K", [8, 16, 32, 64])
    def test_identity_matrix(self, phi, s0: float, s1: float, K: int) -> None:
        """The psi-interpolation norm equals h_norm to machine precision."""
        lattice = Lattice(2, K)
        for seed in range(20):
            u = random_field(seed, PowerWeight(1.0), lattice)
            assert verify_interp_identity(u, phi, s0, s1) <= 1e-12

    def test_zero_field(self) -> None:
        """For u = 0 both sides vanish."""
        u = SpectralField.zeros(Lattice(2, 8))
        assert verify_interp_identity(u, OscPowerWeight(1.0, 0.5), 0.0, 3.0) == 0.0

    def test_direct_sum_modes(self) -> None:
        """Two single modes combine by Pythagoras."""
        lattice = Lattice(1, 8)
        us = [SpectralField.single_mode(lattice, (3,)), SpectralField.single_mode(lattice, (1,))]
        pairs = [HilbertPairSpec(0.0, 2.0), HilbertPairSpec(-1.0, 1.0)]
        psi = InterpolationParameter.power(0.5)
        assert verify_direct_sum(us, pairs, psi) <= 1e-12

    def test_direct_sum_random(self) -> None:
        """Random triples satisfy the direct-sum identity."""
        us = [random_field(seed, PowerWeight(1.0), Lattice(2, 12)) for seed in (1, 2, 3)]
        pairs = [HilbertPairSpec(0.0, 2.0), HilbertPairSpec(-0.4, 3.0), HilbertPairSpec(1.0, 2.5)]
        psi = make_psi(OscPowerWeight(1.0, 0.5), 0.0, 2.0)
        assert verify_direct_sum(us, pairs, psi) <= 1e-12

    def test_direct_sum_empty(self) -> None:
        """An empty direct sum has zero gap."""
        assert verify_direct_sum([], [], InterpolationParameter.constant()) == 0.0

    def test_direct_sum_lengths(self) -> None:
        """Mismatched lists are rejected."""
        u = SpectralField.zeros(Lattice(1, 2))
        with pytest.raises(ValueError):
            verify_direct_sum([u], [], InterpolationParameter.constant())

    def test_direct_sum_pair_closed_form(self) -> None:
        """The assembled sum pair norms single modes as sqrt(10 + 1)."""
        lattice = Lattice(1, 8)
        us = [SpectralField.single_mode(lattice, (3,)), SpectralField.single_mode(lattice, (1,))]
        pairs = [HilbertPairSpec(0.0, 2.0), HilbertPairSpec(-1.0, 1.0)]
        summed = DirectSumPair.assemble(us, pairs)
        assert summed.coeffs.size == 2 * 17
        np.testing.assert_allclose(summed.generator[17:], lattice.moduli().ravel() ** 2.0)
        psi = InterpolationParameter.power(0.5)
        assert summed.interp_norm(psi) == pytest.approx(math.sqrt(11.0), rel=1e-14)

    def test_direct_sum_pair_sees_block_pairs(self) -> None:
        """Assigning a summand to another pair changes the assembled norm."""
        lattice = Lattice(1, 8)
        us = [SpectralField.single_mode(lattice, (3,)), SpectralField.single_mode(lattice, (3,))]
        psi = InterpolationParameter.power(0.5)
        same = DirectSumPair.assemble(us, [HilbertPairSpec(0.0, 2.0)] * 2).interp_norm(psi)
        mixed = DirectSumPair.assemble(
            us, [HilbertPairSpec(0.0, 2.0), HilbertPairSpec(-1.0, 1.0)]
        ).interp_norm(psi)
        assert same == pytest.approx(math.sqrt(20.0), rel=1e-14)
        assert mixed == pytest.approx(math.sqrt(10.0 + 1.0), rel=1e-14)

    def test_direct_sum_pair_empty(self) -> None:
        """Assembling nothing is an error."""
        with pytest.raises(ValueError):
            DirectSumPair.assemble([], [])
