"""Closed-form and represented weight families."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Callable, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from extscale.core.errors import WeightDomainError
from extscale.weights.base import MatuszewskaIndices, RoWeight
from extscale.weights.registry import weight_registry

Clock = Literal["loglog", "log"]


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise WeightDomainError(f"{name} must be finite, got {value}")
    return value


@weight_registry.register("power")
@dataclass(frozen=True)
class PowerWeight(RoWeight):
    """phi(t) = t^s."""

    s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", _finite("s", self.s))

    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.s * x

    def analytic_indices(self) -> MatuszewskaIndices:
        return MatuszewskaIndices(self.s, self.s)

    def shifted(self, s: float) -> RoWeight:
        return self if s == 0.0 else PowerWeight(self.s + s)

    def params(self) -> dict[str, Any]:
        return {"s": self.s}


@weight_registry.register("powerlog")
@dataclass(frozen=True)
class PowerLogWeight(RoWeight):
    """phi(t) = t^s * (ln(e + t))^r; the log factor is slowly varying."""

    s: float
    r: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", _finite("s", self.s))
        object.__setattr__(self, "r", _finite("r", self.r))

    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        # ln(e + e^x) without overflow for large x
        return self.s * x + self.r * np.log(np.logaddexp(1.0, x))

    def analytic_indices(self) -> MatuszewskaIndices:
        return MatuszewskaIndices(self.s, self.s)

    def shifted(self, s: float) -> RoWeight:
        return self if s == 0.0 else PowerLogWeight(self.s + s, self.r)

    def params(self) -> dict[str, Any]:
        return {"s": self.s, "r": self.r}


@weight_registry.register("oscpower")
@dataclass(frozen=True)
class OscPowerWeight(RoWeight):
    """Power weight with an oscillating exponent.

    The weight is exp(integral of gamma(tau)/tau over [1, t]) with
    gamma(tau) = s + eps * cos(c(tau)), where the clock c(tau) is
    ln(1 + ln(tau)) for ``clock="loglog"`` and ln(tau) for ``clock="log"``.

    With the loglog clock the oscillation is slow enough that the weight
    has no order: its indices are (s - |eps|, s + |eps|). The log clock
    gives t^s * exp(eps * sin(ln t)), whose indices collapse to (s, s).

    Attributes:
        s: Mean exponent
        eps: Oscillation amplitude
        clock: Oscillation clock, "loglog" or "log"
    """

    s: float
    eps: float = 0.0
    clock: Clock = "loglog"

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", _finite("s", self.s))
        object.__setattr__(self, "eps", _finite("eps", self.eps))
        if self.clock not in ("loglog", "log"):
            raise WeightDomainError(f"unknown oscillation clock '{self.clock}'")

    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        if self.clock == "log":
            return self.s * x + self.eps * np.sin(x)
        # antiderivative of cos(ln(1 + y)) over [0, x]
        phase = np.log1p(x)
        osc = ((1.0 + x) * (np.cos(phase) + np.sin(phase)) - 1.0) / 2.0
        return self.s * x + self.eps * osc

    def analytic_indices(self) -> MatuszewskaIndices:
        if self.clock == "log":
            return MatuszewskaIndices(self.s, self.s)
        spread = abs(self.eps)
        return MatuszewskaIndices(self.s - spread, self.s + spread)

    def shifted(self, s: float) -> RoWeight:
        return self if s == 0.0 else replace(self, s=self.s + s)

    def params(self) -> dict[str, Any]:
        return {"s": self.s, "eps": self.eps, "clock": self.clock}


@weight_registry.register("represented")
@dataclass(frozen=True)
class RepresentedWeight(RoWeight):
    """Weight given by its exponential representation.

    phi(t) = exp(beta(t) + integral of gamma(tau)/tau over [1, t]), with
    beta and gamma sampled at x_i = i * log_step (x = ln t). Both are
    piecewise linear in x between samples and constant past the last one,
    so the integral is exact.

    Attributes:
        beta: Samples of beta on the log grid
        gamma: Samples of gamma on the log grid
        log_step: Spacing of the log grid (> 0)
        beta_bound: Declared bound on |beta|; defaults to the sample maximum
        gamma_bound: Declared bound on |gamma|; defaults to the sample maximum
        cached_indices: Known Matuszewska indices, if any
    """

    beta: tuple[float, ...]
    gamma: tuple[float, ...]
    log_step: float
    beta_bound: float | None = None
    gamma_bound: float | None = None
    cached_indices: MatuszewskaIndices | None = None

    def __post_init__(self) -> None:
        beta = tuple(float(v) for v in self.beta)
        gamma = tuple(float(v) for v in self.gamma)
        if len(beta) != len(gamma) or len(gamma) < 2:
            raise WeightDomainError("beta and gamma need the same number (>= 2) of samples")
        if not (np.all(np.isfinite(beta)) and np.all(np.isfinite(gamma))):
            raise WeightDomainError("beta and gamma samples must be finite")
        if not self.log_step > 0.0:
            raise WeightDomainError("log_step must be positive")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(
            self, "beta_bound", _declared_bound("beta", beta, self.beta_bound)
        )
        object.__setattr__(
            self, "gamma_bound", _declared_bound("gamma", gamma, self.gamma_bound)
        )

    @classmethod
    def from_functions(
        cls,
        beta: Callable[[NDArray[np.float64]], ArrayLike],
        gamma: Callable[[NDArray[np.float64]], ArrayLike],
        t_max: float,
        points: int = 2048,
        **kwargs: Any,
    ) -> RepresentedWeight:
        """Sample beta and gamma (functions of t) on a log grid over [1, t_max].

        Example:
            phi = RepresentedWeight.from_functions(
                beta=lambda t: 0.0, gamma=lambda t: 2.0, t_max=1e6
            )
        """
        if t_max <= 1.0 or points < 2:
            raise WeightDomainError("need t_max > 1 and at least two samples")
        x = np.linspace(0.0, np.log(t_max), points)
        t = np.exp(x)
        beta_s = np.broadcast_to(np.asarray(beta(t), dtype=np.float64), x.shape)
        gamma_s = np.broadcast_to(np.asarray(gamma(t), dtype=np.float64), x.shape)
        return cls(
            beta=tuple(beta_s.tolist()),
            gamma=tuple(gamma_s.tolist()),
            log_step=float(x[1] - x[0]),
            **kwargs,
        )

    @cached_property
    def _nodes(self) -> NDArray[np.float64]:
        return self.log_step * np.arange(len(self.gamma), dtype=np.float64)

    @cached_property
    def _cumulative(self) -> NDArray[np.float64]:
        g = np.asarray(self.gamma)
        steps = 0.5 * (g[1:] + g[:-1]) * self.log_step
        return np.concatenate(([0.0], np.cumsum(steps)))

    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        g = np.asarray(self.gamma)
        h = self.log_step
        x_end = self._nodes[-1]
        idx = np.clip(np.floor(x / h).astype(np.int64), 0, len(g) - 2)
        d = np.minimum(x - idx * h, h)
        integral = self._cumulative[idx] + g[idx] * d + (g[idx + 1] - g[idx]) * d**2 / (2.0 * h)
        integral = integral + np.where(x > x_end, g[-1] * (x - x_end), 0.0)
        return np.interp(x, self._nodes, np.asarray(self.beta)) + integral

    def known_indices(self) -> MatuszewskaIndices | None:
        return self.cached_indices

    def params(self) -> dict[str, Any]:
        return {
            "beta": list(self.beta),
            "gamma": list(self.gamma),
            "log_step": self.log_step,
            "beta_bound": self.beta_bound,
            "gamma_bound": self.gamma_bound,
        }

    @property
    def label(self) -> str:
        return f"represented(n={len(self.gamma)},t_max={np.exp(self._nodes[-1]):.3g})"


def _declared_bound(name: str, samples: tuple[float, ...], bound: float | None) -> float:
    observed = float(np.max(np.abs(samples)))
    if bound is None:
        return observed
    if observed > bound:
        raise WeightDomainError(f"|{name}| reaches {observed:g}, above declared bound {bound:g}")
    return float(bound)


@dataclass(frozen=True)
class ShiftedWeight(RoWeight):
    """t^offset * base(t) for a base weight without a closed-form shift."""

    base: RoWeight
    offset: float

    family = "shifted"

    def _log_weight(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.offset * x + self.base._log_weight(x)

    def analytic_indices(self) -> MatuszewskaIndices | None:
        inner = self.base.analytic_indices()
        return None if inner is None else inner.shifted(self.offset)

    def known_indices(self) -> MatuszewskaIndices | None:
        inner = self.base.known_indices()
        return None if inner is None else inner.shifted(self.offset)

    def shifted(self, s: float) -> RoWeight:
        total = self.offset + s
        return self.base if total == 0.0 else ShiftedWeight(self.base, total)

    def params(self) -> dict[str, Any]:
        return {"base": {"family": self.base.family, **self.base.params()}, "offset": self.offset}

    @property
    def label(self) -> str:
        return f"shift({self.base.label},{self.offset:g})"
