"""Base interface for RO-varying weight functions."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from extscale.core.errors import WeightDomainError


class IndexMethod(Enum):
    """How a pair of Matuszewska indices was obtained."""

    ANALYTIC = "analytic"
    ESTIMATED = "estimated"


@dataclass(frozen=True)
class IndexGrid:
    """Grid for estimating Matuszewska indices in logarithmic coordinates.

    Windows have length h = ln(lambda); positions are x = ln(t).

    Attributes:
        lambda_min: Smallest admissible dilation factor
        h_lo: Shorter window used for the secant slope
        h_hi: Longer window used for the secant slope
        x_max: Largest window start position
        points: Number of geometric x samples in [1, x_max] (x = 0 is always added)
    """

    lambda_min: float = 8.0
    h_lo: float = 1.0e3
    h_hi: float = 1.0e4
    x_max: float = 1.0e12
    points: int = 4000

    def __post_init__(self) -> None:
        if self.lambda_min <= 1.0:
            raise ValueError("lambda_min must exceed 1")
        if not np.log(self.lambda_min) <= self.h_lo < self.h_hi:
            raise ValueError("need ln(lambda_min) <= h_lo < h_hi")
        if self.x_max <= 1.0 or self.points < 2:
            raise ValueError("x grid must extend beyond 1 with at least 2 points")

    def positions(self) -> NDArray[np.float64]:
        """Window start positions x = ln(t)."""
        return np.concatenate(([0.0], np.geomspace(1.0, self.x_max, self.points)))


@dataclass(frozen=True)
class MatuszewskaIndices:
    """Lower and upper Matuszewska indices of a weight.

    Attributes:
        sigma0: Lower index
        sigma1: Upper index
        method: Analytic or estimated
        grid: Grid used when estimated
        inversion: How far a raw estimate of sigma0 exceeded sigma1 before
            the two were merged (0 when the estimates were ordered)
    """

    sigma0: float
    sigma1: float
    method: IndexMethod = IndexMethod.ANALYTIC
    grid: IndexGrid | None = None
    inversion: float = 0.0

    def __post_init__(self) -> None:
        if not (np.isfinite(self.sigma0) and np.isfinite(self.sigma1)):
            raise ValueError("Matuszewska indices must be finite")
        if self.sigma0 > self.sigma1:
            raise ValueError(f"sigma0={self.sigma0} exceeds sigma1={self.sigma1}")
        if self.inversion < 0.0:
            raise ValueError("inversion must be non-negative")

    def shifted(self, s: float) -> MatuszewskaIndices:
        """Indices of t^s * phi(t)."""
        return MatuszewskaIndices(
            self.sigma0 + s, self.sigma1 + s, self.method, self.grid, self.inversion
        )

    def as_tuple(self) -> tuple[float, float]:
        return (self.sigma0, self.sigma1)


class RoWeight(ABC):
    """An RO-varying function phi on [1, inf).

    Subclasses are immutable and implement the log-weight
    L(x) = ln(phi(e^x)) for x >= 0; everything else derives from it.

    Example:
        phi = PowerWeight(2.0)
        phi.evaluate(10.0)  # 100.0
        phi.log_evaluate(np.log(10.0))  # ln(100)
    """

    family: str = "abstract"

    @abstractmethod
    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        """Compute L(x) for a validated array x >= 0."""

    def analytic_indices(self) -> MatuszewskaIndices | None:
        """Closed-form indices, or None when the family has none."""
        return None

    def known_indices(self) -> MatuszewskaIndices | None:
        """Analytic indices, or indices cached at construction."""
        return self.analytic_indices()

    @abstractmethod
    def params(self) -> dict[str, Any]:
        """Constructor parameters, as they appear in a weight spec."""

    @property
    def label(self) -> str:
        """Short human-readable identifier used in reports."""
        inner = ",".join(f"{k}={v:g}" for k, v in self.params().items() if isinstance(v, float))
        return f"{self.family}({inner})"

    def shifted(self, s: float) -> RoWeight:
        """Return the weight t -> t^s * phi(t)."""
        from extscale.weights.families import ShiftedWeight

        if s == 0.0:
            return self
        return ShiftedWeight(self, float(s))

    def log_evaluate(self, x: ArrayLike) -> Any:
        """Evaluate L(x) = ln(phi(e^x)).

        Args:
            x: Logarithmic positions, x = ln(t) >= 0

        Raises:
            WeightDomainError: If any x < 0
        """
        xs = np.asarray(x, dtype=np.float64)
        if np.any(xs < 0.0):
            raise WeightDomainError("weights are defined for t >= 1 (x = ln t >= 0)")
        return _unwrap(self._log_weight(xs))

    def evaluate(self, t: ArrayLike) -> Any:
        """Evaluate phi(t) for t >= 1.

        Raises:
            WeightDomainError: If any t < 1
        """
        ts = np.asarray(t, dtype=np.float64)
        if np.any(ts < 1.0):
            raise WeightDomainError("weights are defined for t >= 1")
        return _unwrap(np.exp(self._log_weight(np.log(ts))))

    def __call__(self, t: ArrayLike) -> Any:
        return self.evaluate(t)


def _unwrap(values: NDArray[np.float64]) -> Any:
    """Return a float for 0-d results, the array otherwise."""
    return float(values) if values.ndim == 0 else values
