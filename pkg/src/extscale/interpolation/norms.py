"""Interpolation norms for Sobolev pairs on the torus."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from extscale.interpolation.parameter import InterpolationParameter, make_psi
from extscale.spaces.fields import SpectralField
from extscale.spaces.norms import h_norm
from extscale.weights.base import RoWeight


@dataclass(frozen=True)
class HilbertPairSpec:
    """The pair [H^(s0), H^(s1)] with generating multiplier <k>^(s1 - s0)."""

    s0: float
    s1: float

    def __post_init__(self) -> None:
        if not self.s0 < self.s1:
            raise ValueError(f"need s0 < s1, got ({self.s0}, {self.s1})")

    def generator(self, moduli: NDArray[np.float64]) -> NDArray[np.float64]:
        return moduli ** (self.s1 - self.s0)


def _weighted(
    u: SpectralField, pair: HilbertPairSpec, psi: InterpolationParameter
) -> NDArray[np.complex128]:
    log_k = np.log(u.lattice.moduli())
    log_weight = pair.s0 * log_k + psi.log_psi((pair.s1 - pair.s0) * log_k)
    return (np.exp(log_weight) * u.coeffs).ravel()


def interp_norm(u: SpectralField, pair: HilbertPairSpec, psi: InterpolationParameter) -> float:
    """Norm of u in the interpolation space with parameter psi.

    (sum_k <k>^(2 s0) psi(<k>^(s1-s0))^2 |w(k)|^2)^(1/2)
    """
    return float(np.linalg.norm(_weighted(u, pair, psi)))


def verify_interp_identity(u: SpectralField, phi: RoWeight, s0: float, s1: float) -> float:
    """Relative gap between the psi-interpolation norm and h_norm(u, phi).

    Returns the absolute gap when u is zero.
    """
    psi = make_psi(phi, s0, s1)
    lhs = interp_norm(u, HilbertPairSpec(s0, s1), psi)
    rhs = h_norm(u, phi)
    gap = abs(lhs - rhs)
    return gap if rhs == 0.0 else gap / rhs


@dataclass(frozen=True)
class DirectSumPair:
    """A direct sum of Sobolev pairs, assembled as one pair on stacked coefficients.

    The lower space of the sum is normed by lower_weight and the generator
    of the sum acts diagonally, as <k>^(s1_i - s0_i) on the i-th block.
    """

    coeffs: NDArray[np.complex128]
    lower_weight: NDArray[np.float64]
    generator: NDArray[np.float64]

    @classmethod
    def assemble(
        cls, us: Sequence[SpectralField], pairs: Sequence[HilbertPairSpec]
    ) -> DirectSumPair:
        """Stack fields and the pair data of their blocks.

        Raises:
            ValueError: If the lists differ in length or are empty
        """
        if len(us) != len(pairs):
            raise ValueError(f"got {len(us)} fields but {len(pairs)} pairs")
        if not us:
            raise ValueError("a direct sum needs at least one summand")
        moduli = [u.lattice.moduli().ravel() for u in us]
        return cls(
            coeffs=np.concatenate([u.coeffs.ravel() for u in us]),
            lower_weight=np.concatenate([m**pair.s0 for m, pair in zip(moduli, pairs)]),
            generator=np.concatenate([pair.generator(m) for m, pair in zip(moduli, pairs)]),
        )

    def interp_norm(self, psi: InterpolationParameter) -> float:
        """||psi(J) u|| in the lower space of the sum."""
        return float(np.linalg.norm(self.lower_weight * psi(self.generator) * self.coeffs))


def verify_direct_sum(
    us: Sequence[SpectralField],
    pairs: Sequence[HilbertPairSpec],
    psi: InterpolationParameter,
) -> float:
    """Relative gap between the norm of a direct sum and the root sum of squares.

    The left side is computed on the assembled sum pair, the right side
    from the interpolation norm of each summand.

    Raises:
        ValueError: If the lists differ in length
    """
    if len(us) != len(pairs):
        raise ValueError(f"got {len(us)} fields but {len(pairs)} pairs")
    if not us:
        return 0.0
    lhs = DirectSumPair.assemble(us, pairs).interp_norm(psi)
    rhs = float(np.sqrt(sum(interp_norm(u, pair, psi) ** 2 for u, pair in zip(us, pairs))))
    gap = abs(lhs - rhs)
    return gap if rhs == 0.0 else gap / rhs
