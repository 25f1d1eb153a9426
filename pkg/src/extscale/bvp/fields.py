"""Fields on the unit disk and on its boundary circle."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from extscale.weights.base import RoWeight


def _check_finite(values: NDArray[np.complex128], what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} must be finite")


@dataclass(frozen=True, eq=False)
class BoundaryField:
    """g(theta) = sum_{|k| <= K} g(k) e^{ik theta} on the unit circle.

    Attributes:
        coeffs: Coefficients, index i holds mode k = i - K
    """

    coeffs: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128).ravel()
        if coeffs.size % 2 == 0:
            raise ValueError("boundary fields need an odd number (2K+1) of coefficients")
        _check_finite(coeffs, "boundary coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, K: int) -> BoundaryField:
        return cls(np.zeros(2 * K + 1, dtype=np.complex128))

    @classmethod
    def single_mode(cls, K: int, k: int, value: complex = 1.0) -> BoundaryField:
        coeffs = np.zeros(2 * K + 1, dtype=np.complex128)
        coeffs[k + K] = value
        return cls(coeffs)

    @property
    def K(self) -> int:
        return (self.coeffs.size - 1) // 2

    def modes(self) -> NDArray[np.int64]:
        return np.arange(-self.K, self.K + 1)

    def moduli(self) -> NDArray[np.float64]:
        return np.sqrt(1.0 + self.modes().astype(np.float64) ** 2)

    def padded(self, K: int) -> NDArray[np.complex128]:
        if K < self.K:
            raise ValueError(f"cannot pad K={self.K} boundary field down to K={K}")
        out = np.zeros(2 * K + 1, dtype=np.complex128)
        out[K - self.K : K + self.K + 1] = self.coeffs
        return out

    def at(self, k: int) -> complex:
        return complex(self.coeffs[k + self.K]) if abs(k) <= self.K else 0j

    def __add__(self, other: BoundaryField) -> BoundaryField:
        K = max(self.K, other.K)
        return BoundaryField(self.padded(K) + other.padded(K))

    def scale(self, factor: complex) -> BoundaryField:
        return BoundaryField(self.coeffs * factor)

    def inner(self, other: BoundaryField) -> complex:
        """(g, h)_Gamma = integral of g conj(h) over [0, 2 pi)."""
        K = max(self.K, other.K)
        return complex(2.0 * np.pi * np.vdot(other.padded(K), self.padded(K)))


def gamma_norm(g: BoundaryField, phi: RoWeight) -> float:
    """H^phi(Gamma) norm (sum_k phi(<k>)^2 |g(k)|^2)^(1/2) on the circle."""
    return float(np.linalg.norm(phi.evaluate(g.moduli()) * g.coeffs))


@dataclass(frozen=True, eq=False)
class DiskField:
    """u(r, theta) = sum_k sum_j c[k, j] r^(|k| + 2j) e^{ik theta} on the unit disk.

    Profiles are polynomials in the regular basis r^(|k|+2j), so every
    field is smooth at the origin.

    Attributes:
        coeffs: Array of shape (2K+1, J); row i holds mode k = i - K
    """

    coeffs: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 2 or coeffs.shape[0] % 2 == 0 or coeffs.shape[1] < 1:
            raise ValueError(f"disk coefficients need shape (2K+1, J), got {coeffs.shape}")
        _check_finite(coeffs, "disk coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, K: int, J: int = 1) -> DiskField:
        return cls(np.zeros((2 * K + 1, J), dtype=np.complex128))

    @classmethod
    def constant(cls, K: int, value: complex = 1.0) -> DiskField:
        coeffs = np.zeros((2 * K + 1, 1), dtype=np.complex128)
        coeffs[K, 0] = value
        return cls(coeffs)

    @classmethod
    def monomial(cls, K: int, k: int, j: int = 0, value: complex = 1.0) -> DiskField:
        """value * r^(|k|+2j) e^{ik theta}."""
        coeffs = np.zeros((2 * K + 1, j + 1), dtype=np.complex128)
        coeffs[k + K, j] = value
        return cls(coeffs)

    @classmethod
    def harmonic(cls, g: BoundaryField) -> DiskField:
        """Harmonic field with boundary trace g."""
        return cls(g.coeffs[:, None])

    @classmethod
    def random_smooth(cls, K: int, J: int, seed: int) -> DiskField:
        """Random complex coefficients decaying like (1 + |k| + j)^-2."""
        rng = np.random.default_rng(seed)
        shape = (2 * K + 1, J)
        z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        k = np.abs(np.arange(-K, K + 1))[:, None]
        j = np.arange(J)[None, :]
        return cls(z / (1.0 + k + j) ** 2)

    @property
    def K(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def J(self) -> int:
        return self.coeffs.shape[1]

    def _abs_modes(self) -> NDArray[np.int64]:
        return np.abs(np.arange(-self.K, self.K + 1))

    def padded(self, K: int, J: int) -> NDArray[np.complex128]:
        if K < self.K or J < self.J:
            raise ValueError("cannot pad a disk field to a smaller shape")
        out = np.zeros((2 * K + 1, J), dtype=np.complex128)
        out[K - self.K : K + self.K + 1, : self.J] = self.coeffs
        return out

    def __add__(self, other: DiskField) -> DiskField:
        K, J = max(self.K, other.K), max(self.J, other.J)
        return DiskField(self.padded(K, J) + other.padded(K, J))

    def __sub__(self, other: DiskField) -> DiskField:
        return self + other.scale(-1.0)

    def scale(self, factor: complex) -> DiskField:
        return DiskField(self.coeffs * factor)

    def mode(self, k: int) -> NDArray[np.complex128]:
        """Radial polynomial coefficients of mode k."""
        return self.coeffs[k + self.K] if abs(k) <= self.K else np.zeros(self.J, np.complex128)

    def laplacian(self) -> DiskField:
        """Delta u, using Delta r^(a+2j) e^{ik theta} = 4j(a+j) r^(a+2j-2) e^{ik theta}."""
        a = self._abs_modes()[:, None]
        j = np.arange(self.J)[None, :]
        scaled = 4.0 * j * (a + j) * self.coeffs
        out = np.zeros_like(self.coeffs)
        out[:, :-1] = scaled[:, 1:]
        return DiskField(out)

    def dirichlet_inverse_laplacian(self) -> DiskField:
        """The v with Delta v = u in the disk and v = 0 on the circle."""
        a = self._abs_modes()[:, None]
        j = np.arange(self.J)[None, :]
        lifted = self.coeffs / (4.0 * (j + 1) * (a + j + 1))
        out = np.zeros((self.coeffs.shape[0], self.J + 1), dtype=np.complex128)
        out[:, 1:] = lifted
        out[:, 0] = -lifted.sum(axis=1)
        return DiskField(out)

    def trace(self) -> BoundaryField:
        """u on the circle."""
        return BoundaryField(self.coeffs.sum(axis=1))

    def normal_derivative(self) -> BoundaryField:
        """d/dr u on the circle."""
        a = self._abs_modes()[:, None]
        j = np.arange(self.J)[None, :]
        return BoundaryField(((a + 2 * j) * self.coeffs).sum(axis=1))

    def inner(self, other: DiskField) -> complex:
        """(u, v)_Omega = integral over the disk of u conj(v)."""
        K, J = max(self.K, other.K), max(self.J, other.J)
        c, d = self.padded(K, J), other.padded(K, J)
        a = np.abs(np.arange(-K, K + 1))[:, None, None]
        j = np.arange(J)[None, :, None]
        l = np.arange(J)[None, None, :]
        radial = 1.0 / (2.0 * a + 2.0 * j + 2.0 * l + 2.0)
        return complex(2.0 * np.pi * np.sum(c[:, :, None] * np.conj(d[:, None, :]) * radial))

    def l2_norm(self) -> float:
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    def profile(self, k: int, r: ArrayLike) -> NDArray[np.complex128]:
        """Radial profile u_k(r)."""
        rs = np.asarray(r, dtype=np.float64)
        powers = np.abs(k) + 2 * np.arange(self.J)
        return np.sum(self.mode(k) * rs[..., None] ** powers, axis=-1)

    def evaluate(self, r: ArrayLike, theta: ArrayLike) -> NDArray[np.complex128]:
        """u at polar points (r, theta), broadcast together."""
        rs, ts = np.broadcast_arrays(
            np.asarray(r, dtype=np.float64), np.asarray(theta, dtype=np.float64)
        )
        total = np.zeros(rs.shape, dtype=np.complex128)
        for k in range(-self.K, self.K + 1):
            if np.any(self.mode(k)):
                total += self.profile(k, rs) * np.exp(1j * k * ts)
        return total

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)


def save_boundary(g: BoundaryField, path: Path | str) -> None:
    """Write a boundary field as CSV (k, re, im)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"k": g.modes(), "re": g.coeffs.real, "im": g.coeffs.imag})
    frame.to_csv(path, index=False, float_format="%.17g")


def load_boundary(path: Path | str) -> BoundaryField:
    """Read a boundary field written by save_boundary.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Boundary file not found: {path}")
    frame = pd.read_csv(path)
    K = int(frame["k"].abs().max())
    coeffs = np.zeros(2 * K + 1, dtype=np.complex128)
    coeffs[frame["k"].to_numpy() + K] = frame["re"].to_numpy() + 1j * frame["im"].to_numpy()
    return BoundaryField(coeffs)


def save_solution(u: DiskField, path: Path | str, radii: ArrayLike | None = None) -> None:
    """Write mode profiles as CSV (k, r_i, re, im)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rs = np.linspace(0.0, 1.0, 17) if radii is None else np.asarray(radii, dtype=np.float64)
    rows = []
    for k in range(-u.K, u.K + 1):
        values = u.profile(k, rs)
        rows.append(pd.DataFrame({"k": k, "r_i": rs, "re": values.real, "im": values.imag}))
    pd.concat(rows, ignore_index=True).to_csv(path, index=False, float_format="%.17g")
