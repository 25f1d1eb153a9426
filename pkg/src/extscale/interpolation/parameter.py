"""Interpolation parameters psi and the pseudoconcavity check."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from extscale.core.errors import PreconditionError
from extscale.weights.analysis import RO_GROWTH_STEP, best_indices, grows_without_bound
from extscale.weights.base import IndexGrid, IndexMethod, RoWeight

logger = logging.getLogger(__name__)


class InterpolationParameter(ABC):
    """A positive function psi on (0, inf), handled through ln(psi(e^y))."""

    @abstractmethod
    def log_psi(self, y: ArrayLike) -> NDArray[np.float64]:
        """ln(psi(e^y)) for real y."""

    def __call__(self, t: ArrayLike) -> NDArray[np.float64] | float:
        ts = np.asarray(t, dtype=np.float64)
        if np.any(ts <= 0.0):
            raise ValueError("interpolation parameters are defined for t > 0")
        values = np.exp(self.log_psi(np.log(ts)))
        return float(values) if values.ndim == 0 else values

    @property
    @abstractmethod
    def label(self) -> str: ...

    @staticmethod
    def power(a: float) -> PowerParameter:
        """psi(t) = t^a."""
        return PowerParameter(float(a))

    @staticmethod
    def constant() -> PowerParameter:
        """psi = 1, which reproduces the lower space of a pair."""
        return PowerParameter(0.0)


@dataclass(frozen=True)
class PowerParameter(InterpolationParameter):
    a: float

    def log_psi(self, y: ArrayLike) -> NDArray[np.float64]:
        return self.a * np.asarray(y, dtype=np.float64)

    @property
    def label(self) -> str:
        return f"t^{self.a:g}"


@dataclass(frozen=True)
class WeightParameter(InterpolationParameter):
    """psi(t) = t^(-s0/(s1-s0)) phi(t^(1/(s1-s0))) for t >= 1, phi(1) below.

    Attributes:
        source: Weight phi
        s0: Lower Sobolev order of the pair
        s1: Upper Sobolev order of the pair
    """

    source: RoWeight
    s0: float
    s1: float

    def log_psi(self, y: ArrayLike) -> NDArray[np.float64]:
        ys = np.asarray(y, dtype=np.float64)
        width = self.s1 - self.s0
        inner = np.maximum(ys, 0.0) / width
        upper = -self.s0 / width * ys + self.source.log_evaluate(inner)
        return np.where(ys >= 0.0, upper, self.source.log_evaluate(0.0))

    @property
    def label(self) -> str:
        return f"psi[{self.source.label};{self.s0:g},{self.s1:g}]"


def make_psi(
    phi: RoWeight,
    s0: float,
    s1: float,
    grid: IndexGrid | None = None,
    tolerance: float = 0.05,
) -> WeightParameter:
    """Build the interpolation parameter that turns [H^(s0), H^(s1)] into H^phi.

    Args:
        phi: Target weight
        s0: Lower order, below sigma0(phi)
        s1: Upper order, above sigma1(phi)
        grid: Index estimation grid for weights without known indices
        tolerance: Safety margin applied to estimated indices

    Raises:
        PreconditionError: If (sigma0, sigma1) is not inside (s0, s1)
    """
    if not s0 < s1:
        raise PreconditionError(f"need s0 < s1, got ({s0}, {s1})")
    idx = best_indices(phi, grid)
    margin = tolerance if idx.method is IndexMethod.ESTIMATED else 0.0
    if not (s0 < idx.sigma0 - margin and idx.sigma1 + margin < s1):
        raise PreconditionError(
            f"indices ({idx.sigma0:g}, {idx.sigma1:g}) of {phi.label} "
            f"are not inside ({s0:g}, {s1:g})"
        )
    return WeightParameter(phi, float(s0), float(s1))


@dataclass(frozen=True)
class PseudoconcavityResult:
    """Outcome of is_pseudoconcave.

    Attributes:
        pseudoconcave: Verdict
        constant: Slack C witnessing psi(t) >= psi(s)/C and
            psi(t)/t <= C psi(s)/s for 1 <= s <= t on the checked range
        sequence: ln C on each extension of the range
    """

    pseudoconcave: bool
    constant: float
    sequence: tuple[float, ...]

    def __bool__(self) -> bool:
        return self.pseudoconcave


def pseudoconcavity_constant(
    psi: InterpolationParameter,
    y_max: float = 50.0,
    points: int = 2001,
    extensions: int = 3,
) -> PseudoconcavityResult:
    """Quasi-concavity slack of psi near infinity, in y = ln t.

    psi is pseudoconcave near infinity iff it is equivalent to a concave
    function there, i.e. iff psi is nearly non-decreasing and psi(t)/t
    nearly non-increasing for t >= 1. Both slacks are measured on
    [0, y_max * 2^j] for j = 0..extensions.
    """
    y = np.linspace(0.0, y_max * 2.0**extensions, points * 2**extensions)
    v = psi.log_psi(y)
    w = v - y
    drop = np.maximum.accumulate(v) - v
    rise = w - np.minimum.accumulate(w)
    slack = np.maximum.accumulate(np.maximum(drop, rise))
    sequence = tuple(
        float(slack[y <= y_max * 2.0**j + 1e-9][-1]) for j in range(extensions + 1)
    )
    unbounded = grows_without_bound(sequence, RO_GROWTH_STEP, extensions)
    constant = float("inf") if unbounded else float(np.exp(sequence[-1]))
    logger.debug("%s: pseudoconcavity slack %s", psi.label, sequence)
    return PseudoconcavityResult(not unbounded, constant, sequence)


def is_pseudoconcave(psi: InterpolationParameter, y_max: float = 50.0) -> bool:
    return pseudoconcavity_constant(psi, y_max).pseudoconcave
