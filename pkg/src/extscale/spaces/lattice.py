"""Truncated Fourier lattices on the n-torus."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray


def smoothed_modulus(k: ArrayLike) -> float:
    """<k> = (1 + |k|^2)^(1/2) for an integer mode vector (or scalar)."""
    vec = np.atleast_1d(np.asarray(k, dtype=np.float64))
    return float(np.sqrt(1.0 + np.dot(vec, vec)))


@dataclass(frozen=True)
class Lattice:
    """Modes k in Z^n with |k_i| <= K.

    Coefficient arrays have shape (2K+1,)*n; array index i along an axis
    holds mode k = i - K.

    Attributes:
        n: Torus dimension, 1 or 2
        K: Cutoff, K >= 1
    """

    n: int
    K: int

    def __post_init__(self) -> None:
        if self.n not in (1, 2):
            raise ValueError(f"lattice dimension must be 1 or 2, got {self.n}")
        if self.K < 1:
            raise ValueError(f"lattice cutoff K must be >= 1, got {self.K}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (2 * self.K + 1,) * self.n

    @property
    def size(self) -> int:
        return (2 * self.K + 1) ** self.n

    def axis_modes(self) -> NDArray[np.int64]:
        return np.arange(-self.K, self.K + 1, dtype=np.int64)

    @cached_property
    def _modes(self) -> NDArray[np.int64]:
        axes = np.meshgrid(*([self.axis_modes()] * self.n), indexing="ij")
        modes = np.stack(axes, axis=-1)
        modes.setflags(write=False)
        return modes

    def modes(self) -> NDArray[np.int64]:
        """Integer modes, shape (*shape, n)."""
        return self._modes

    @cached_property
    def _moduli(self) -> NDArray[np.float64]:
        k = self._modes.astype(np.float64)
        moduli = np.sqrt(1.0 + np.sum(k * k, axis=-1))
        moduli.setflags(write=False)
        return moduli

    def moduli(self) -> NDArray[np.float64]:
        """Smoothed moduli <k>, shape ``shape``."""
        return self._moduli

    def sup_modes(self) -> NDArray[np.int64]:
        """|k|_inf for every mode, shape ``shape``."""
        return np.max(np.abs(self._modes), axis=-1)
