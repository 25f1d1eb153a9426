"""Spectral fields: distributions on the torus given by Fourier coefficients."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from extscale.spaces.lattice import Lattice
from extscale.weights.base import RoWeight

logger = logging.getLogger(__name__)

_CSV_COLUMNS = ["k1", "k2", "re", "im"]


@dataclass(frozen=True, eq=False)
class SpectralField:
    """u(x) = sum_k w(k) e^{i k.x} on [0, 2pi)^n.

    Attributes:
        lattice: Mode lattice
        coeffs: Complex coefficients, shape ``lattice.shape`` (read-only copy)
        real_valued: Whether the coefficients are conjugate-symmetric
    """

    lattice: Lattice
    coeffs: NDArray[np.complex128] = field(repr=False)
    real_valued: bool = False

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != self.lattice.shape:
            raise ValueError(
                f"coefficient shape {coeffs.shape} does not match lattice {self.lattice.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if self.real_valued and not np.allclose(
            coeffs, np.conj(_reflect(coeffs)), rtol=1e-12, atol=1e-14
        ):
            raise ValueError("real-valued field must have conjugate-symmetric coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, lattice: Lattice) -> SpectralField:
        return cls(lattice, np.zeros(lattice.shape, dtype=np.complex128), real_valued=True)

    @classmethod
    def single_mode(cls, lattice: Lattice, k: tuple[int, ...], value: complex = 1.0) -> SpectralField:
        """Field value * e^{i k.x}."""
        if len(k) != lattice.n or max(abs(c) for c in k) > lattice.K:
            raise ValueError(f"mode {k} is not on the lattice")
        coeffs = np.zeros(lattice.shape, dtype=np.complex128)
        coeffs[tuple(c + lattice.K for c in k)] = value
        return cls(lattice, coeffs)

    def __add__(self, other: SpectralField) -> SpectralField:
        if other.lattice != self.lattice:
            raise ValueError("cannot add fields on different lattices")
        return SpectralField(
            self.lattice, self.coeffs + other.coeffs, self.real_valued and other.real_valued
        )

    def __sub__(self, other: SpectralField) -> SpectralField:
        return self + other.scale(-1.0)

    def scale(self, factor: complex) -> SpectralField:
        real = self.real_valued and complex(factor).imag == 0.0
        return SpectralField(self.lattice, self.coeffs * factor, real)

    def apply_multiplier(
        self, symbol: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    ) -> SpectralField:
        """Multiply each coefficient by a real symbol of <k>."""
        return SpectralField(
            self.lattice, self.coeffs * symbol(self.lattice.moduli()), self.real_valued
        )

    def weighted(self, phi: RoWeight) -> NDArray[np.complex128]:
        """phi(<k>) * w(k), flattened."""
        return (phi.evaluate(self.lattice.moduli()) * self.coeffs).ravel()

    def truncated(self, K: int) -> SpectralField:
        """Restriction to the sub-lattice |k|_inf <= K."""
        if not 1 <= K <= self.lattice.K:
            raise ValueError(f"cannot truncate K={self.lattice.K} lattice to K={K}")
        cut = slice(self.lattice.K - K, self.lattice.K + K + 1)
        return SpectralField(Lattice(self.lattice.n, K), self.coeffs[(cut,) * self.lattice.n],
                             self.real_valued)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)


def _reflect(coeffs: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Coefficients at -k (index i -> 2K - i on every axis)."""
    return coeffs[(slice(None, None, -1),) * coeffs.ndim]


def random_field(
    seed: int,
    decay: RoWeight,
    lattice: Lattice,
    real_valued: bool = False,
) -> SpectralField:
    """Gaussian field with coefficients z(k) / decay(<k>).

    z(k) is standard complex normal (E|z|^2 = 1) drawn from
    ``np.random.default_rng(seed)``; identical seeds give identical fields.

    Args:
        seed: Random seed
        decay: Weight dividing the Gaussian coefficients
        lattice: Mode lattice
        real_valued: Symmetrize so the field is real in space
    """
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal(lattice.shape) + 1j * rng.standard_normal(lattice.shape)) / np.sqrt(2.0)
    coeffs = z / decay.evaluate(lattice.moduli())
    if real_valued:
        coeffs = 0.5 * (coeffs + np.conj(_reflect(coeffs)))
    return SpectralField(lattice, coeffs, real_valued)


def save_field(u: SpectralField, path: Path | str) -> None:
    """Write a field as CSV (k1, k2, re, im) with a lattice header line.

    One-dimensional fields store k2 = 0.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    modes = u.lattice.modes().reshape(-1, u.lattice.n)
    k2 = modes[:, 1] if u.lattice.n == 2 else np.zeros(len(modes), dtype=np.int64)
    values = u.coeffs.ravel()
    frame = pd.DataFrame(
        {"k1": modes[:, 0], "k2": k2, "re": values.real, "im": values.imag},
        columns=_CSV_COLUMNS,
    )
    with open(path, "w") as f:
        f.write(f"# lattice n={u.lattice.n} K={u.lattice.K} real={int(u.real_valued)}\n")
        frame.to_csv(f, index=False, float_format="%.17g")


def load_field(path: Path | str) -> SpectralField:
    """Read a field written by save_field.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the header or columns are malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Field file not found: {path}")
    with open(path) as f:
        header = f.readline().strip()
    if not header.startswith("# lattice"):
        raise ValueError(f"missing lattice header in {path}")
    meta = dict(item.split("=") for item in header.split()[2:])
    lattice = Lattice(int(meta["n"]), int(meta["K"]))
    frame = pd.read_csv(path, comment="#")
    if list(frame.columns) != _CSV_COLUMNS:
        raise ValueError(f"expected columns {_CSV_COLUMNS}, got {list(frame.columns)}")
    coeffs = np.zeros(lattice.shape, dtype=np.complex128)
    index = [frame["k1"].to_numpy() + lattice.K]
    if lattice.n == 2:
        index.append(frame["k2"].to_numpy() + lattice.K)
    coeffs[tuple(index)] = frame["re"].to_numpy() + 1j * frame["im"].to_numpy()
    logger.debug("loaded %d coefficients from %s", len(frame), path)
    return SpectralField(lattice, coeffs, bool(int(meta.get("real", "0"))))
