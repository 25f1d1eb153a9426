"""Transforms between lattice coefficients and values on a domain mask."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from extscale.quotient.mask import DomainMask
from extscale.spaces.fields import SpectralField
from extscale.spaces.lattice import Lattice


class CollocationOperator:
    """C: coefficients -> field values at the inside grid points, and its adjoint.

    Modes are folded modulo M onto the grid, so both directions cost one
    FFT. The grid must not be finer than the lattice (M <= 2K + 1), which
    keeps C onto.

    Example:
        op = CollocationOperator(DomainMask.disk(32), Lattice(2, 32))
        values = op.forward(u.coeffs)
        back = op.adjoint(values)
    """

    def __init__(self, mask: DomainMask, lattice: Lattice) -> None:
        if mask.n != lattice.n:
            raise ValueError(f"mask is {mask.n}D but lattice is {lattice.n}D")
        if mask.points > 2 * lattice.K + 1:
            raise ValueError(
                f"grid of {mask.points} points is finer than the K={lattice.K} lattice"
            )
        self.mask = mask
        self.lattice = lattice
        self._wrap = tuple(np.mod(lattice.modes()[..., a], mask.points) for a in range(lattice.n))
        self._scale = mask.points**lattice.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.mask.count, self.lattice.size)

    def forward(self, coeffs: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """Values sum_k w(k) e^{ik.x_j} at inside points x_j."""
        grid = np.zeros(self.mask.inside.shape, dtype=np.complex128)
        np.add.at(grid, self._wrap, coeffs.reshape(self.lattice.shape))
        return (np.fft.ifftn(grid) * self._scale)[self.mask.inside]

    def adjoint(self, values: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """C* lambda, returned with the lattice shape."""
        grid = np.zeros(self.mask.inside.shape, dtype=np.complex128)
        grid[self.mask.inside] = values
        return np.fft.fftn(grid)[self._wrap]

    def matrix(self) -> NDArray[np.complex128]:
        """Dense C, rows = inside points, columns = flattened lattice modes."""
        x = self.mask.coordinates()
        k = self.lattice.modes().reshape(-1, self.lattice.n)
        return np.exp(1j * x @ k.T)


def restriction(w: SpectralField, mask: DomainMask) -> NDArray[np.complex128]:
    """Values of w at the inside points of the mask."""
    return CollocationOperator(mask, w.lattice).forward(w.coeffs)
