"""Integral criteria for embeddings of H^phi into C^k."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import logsumexp

from extscale.weights.analysis import best_indices, shift
from extscale.weights.base import IndexGrid, RoWeight

logger = logging.getLogger(__name__)

_GAUSS_NODES = 48
_PANEL_EDGES = np.concatenate((np.arange(0.0, 64.0), np.geomspace(64.0, 8192.0, 8)))
_DOUBLINGS = 40
_LOG_OVERFLOW = 700.0
CONVERGENT_RATIO = 0.75
DIVERGENT_RATIO = 0.95


class Verdict(Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of an integral criterion.

    Attributes:
        verdict: Convergence verdict for the integral
        integral: Estimated value (inf when divergent, nan when indeterminate)
        exponent: e in the integrand t^(e-1) phi(t)^-2
        method: "index" or "partial-sums"
        log_partial_sums: ln of the partial integrals over x-doublings
    """

    verdict: Verdict
    integral: float
    exponent: float
    method: str
    log_partial_sums: tuple[float, ...] = ()

    @property
    def holds(self) -> bool | None:
        """True if the integral is finite, False if divergent, None if undecided."""
        if self.verdict is Verdict.INDETERMINATE:
            return None
        return self.verdict is Verdict.CONVERGES


def _log_integrand(phi: RoWeight, exponent: float, x: np.ndarray) -> np.ndarray:
    # t^(e-1) phi^-2 dt in x = ln t
    return exponent * x - 2.0 * phi.log_evaluate(x)


def _log_panel_integrals(phi: RoWeight, exponent: float, edges: np.ndarray) -> np.ndarray:
    nodes, weights = np.polynomial.legendre.leggauss(_GAUSS_NODES)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    x = lo + half * (nodes[None, :] + 1.0)
    values = _log_integrand(phi, exponent, x) + np.log(half * weights[None, :])
    return logsumexp(values, axis=1)


def _exp(log_value: float) -> float:
    return float("inf") if log_value > _LOG_OVERFLOW else float(np.exp(log_value))


def integral_criterion(
    phi: RoWeight,
    exponent: float,
    grid: IndexGrid | None = None,
) -> CriterionResult:
    """Decide finiteness of the integral of t^(exponent-1) phi(t)^-2 over [1, inf).

    Matuszewska indices decide first: 2 sigma0 > exponent gives a finite
    integral (panel quadrature plus an exponential tail), 2 sigma1 < exponent
    a divergent one. Otherwise partial integrals over doublings of x = ln t
    are compared: a geometric mean increment ratio of at most 0.75 converges,
    at least 0.95 diverges, anything between is indeterminate.
    """
    idx = best_indices(phi, grid)
    gap = 2.0 * idx.sigma0 - exponent
    if gap > 0.0:
        panels = _log_panel_integrals(phi, exponent, _PANEL_EDGES)
        x_end = _PANEL_EDGES[-1]
        tail = float(_log_integrand(phi, exponent, np.array(x_end))) - np.log(gap)
        value = _exp(float(logsumexp(np.append(panels, tail))))
        return CriterionResult(Verdict.CONVERGES, value, exponent, "index")
    if 2.0 * idx.sigma1 < exponent:
        return CriterionResult(Verdict.DIVERGES, float("inf"), exponent, "index")

    edges = np.concatenate(([0.0], 2.0 ** np.arange(0, _DOUBLINGS + 1)))
    increments = _log_panel_integrals(phi, exponent, edges)
    partial = tuple(float(v) for v in np.logaddexp.accumulate(increments))
    ratio = float(np.exp(np.mean(np.diff(increments)[-3:])))
    logger.debug("%s exponent %.3g: increment ratio %.4f", phi.label, exponent, ratio)
    if ratio <= CONVERGENT_RATIO:
        tail = increments[-1] + np.log(ratio / (1.0 - ratio))
        value = _exp(float(np.logaddexp(partial[-1], tail)))
        return CriterionResult(Verdict.CONVERGES, value, exponent, "partial-sums", partial)
    if ratio >= DIVERGENT_RATIO:
        return CriterionResult(Verdict.DIVERGES, float("inf"), exponent, "partial-sums", partial)
    return CriterionResult(Verdict.INDETERMINATE, float("nan"), exponent, "partial-sums", partial)


def ck_embedding_criterion(
    phi: RoWeight, k: int, n: int, grid: IndexGrid | None = None
) -> CriterionResult:
    """H^phi on an n-dimensional domain lies in C^k iff the integral of
    t^(2k+n-1) phi(t)^-2 over [1, inf) is finite."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    return integral_criterion(phi, 2.0 * k + n, grid)


def ck_prediction(
    phi: RoWeight, k: int, q: int, n: int, grid: IndexGrid | None = None
) -> CriterionResult:
    """Predict u in C^k for solutions with right-hand side in H^phi of an
    order-2q problem: the integral of t^(2k+n-1-4q) phi^-2 must be finite."""
    if q < 1:
        raise ValueError("problem order 2q needs q >= 1")
    return ck_embedding_criterion(shift(phi, 2.0 * q), k, n, grid)
