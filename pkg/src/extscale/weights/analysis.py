"""RO membership checks, Matuszewska indices and weight arithmetic."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from extscale.core.errors import PreconditionError, WeightDomainError
from extscale.weights.base import IndexGrid, IndexMethod, MatuszewskaIndices, RoWeight

logger = logging.getLogger(__name__)

# log-units: a running sup that grows by this factor per doubling is unbounded
RO_GROWTH_STEP = float(np.log(1.5))
GROWTH_PATIENCE = 3
ROUNDOFF_INVERSION = 1e-9


def grows_without_bound(
    sups: Sequence[float],
    min_step: float,
    patience: int = GROWTH_PATIENCE,
) -> bool:
    """Decide whether running suprema over growing domains diverge.

    The sequence is declared unbounded when each of its last ``patience``
    increments is at least ``min_step``.

    Args:
        sups: Running suprema, one per domain extension
        min_step: Smallest increment counted as growth
        patience: Number of consecutive growth steps required

    Returns:
        True if the sequence keeps growing
    """
    values = np.asarray(sups, dtype=np.float64)
    if values.size < patience + 1:
        return False
    steps = np.diff(values)[-patience:]
    return bool(np.all(steps >= min_step))


@dataclass(frozen=True)
class RoMembership:
    """Outcome of an RO membership check.

    Attributes:
        c_estimate: Observed max of max(ratio, 1/ratio) on the fitting grids
        violated: True if the estimate keeps growing as T_max doubles
        t_max: Largest t of the fitting grid
        sequence: Estimates at T_max * 2^j, j = 0..patience
    """

    c_estimate: float
    violated: bool
    t_max: float
    sequence: tuple[float, ...]

    @property
    def is_ro(self) -> bool:
        return not self.violated


def default_t_grid(t_max: float = 1.0e6, points: int = 2000) -> NDArray[np.float64]:
    return np.geomspace(1.0, t_max, points)


def check_ro_membership(
    phi: RoWeight,
    a: float = 2.0,
    t_grid: ArrayLike | None = None,
    lambda_grid: ArrayLike | None = None,
    patience: int = GROWTH_PATIENCE,
) -> RoMembership:
    """Estimate the RO constant c of phi on [1, a] dilations.

    Args:
        phi: Weight to check
        a: Upper end of the dilation range, a > 1
        t_grid: Points t in [1, T_max]; defaults to a geometric grid up to 1e6
        lambda_grid: Dilations in [1, a]; defaults to 129 uniform points
        patience: Number of T_max doublings that must all show growth

    Returns:
        RoMembership with the constant and the violation verdict

    Raises:
        ValueError: If a grid is empty or lambda_grid leaves [1, a]
        WeightDomainError: If t_grid contains t < 1
    """
    if a <= 1.0:
        raise ValueError("dilation bound a must exceed 1")
    ts = default_t_grid() if t_grid is None else np.sort(np.asarray(t_grid, dtype=np.float64))
    lams = (
        np.linspace(1.0, a, 129)
        if lambda_grid is None
        else np.asarray(lambda_grid, dtype=np.float64)
    )
    if ts.size == 0 or lams.size == 0:
        raise ValueError("t_grid and lambda_grid must be non-empty")
    if np.any(lams < 1.0) or np.any(lams > a):
        raise ValueError(f"lambda_grid must lie in [1, {a}]")
    if np.any(ts < 1.0):
        raise WeightDomainError("t_grid must lie in [1, inf)")

    t_max = float(ts[-1])
    span = patience * np.log(2.0)
    density = ts.size / max(np.log(t_max), span)
    extra = np.geomspace(t_max, t_max * 2.0**patience, max(16, int(density * span)))[1:]
    x = np.log(np.concatenate((ts, extra)))
    h = np.log(lams)

    base = phi.log_evaluate(x)
    moved = phi.log_evaluate(x[:, None] + h[None, :])
    spread = np.max(np.abs(moved - base[:, None]), axis=1)
    running = np.maximum.accumulate(spread)

    sequence = []
    for j in range(patience + 1):
        cutoff = np.log(t_max) + j * np.log(2.0)
        sequence.append(float(running[x <= cutoff + 1e-12][-1]))

    violated = grows_without_bound(sequence, RO_GROWTH_STEP, patience)
    if violated:
        logger.info("%s: RO constant grows with T_max (%s)", phi.label, sequence)
    return RoMembership(
        c_estimate=float(np.exp(sequence[0])),
        violated=violated,
        t_max=t_max,
        sequence=tuple(float(np.exp(v)) for v in sequence),
    )


def estimate_indices(phi: RoWeight, grid: IndexGrid | None = None) -> MatuszewskaIndices:
    """Estimate Matuszewska indices from secant slopes in log coordinates.

    For window lengths h = ln(lambda), M(h) and m(h) are the max and min
    over window starts x of L(x + h) - L(x). The upper index is the slope
    of M between h_lo and h_hi, the lower index the slope of m.

    Args:
        phi: Weight to analyse
        grid: Estimation grid (defaults to IndexGrid())

    Returns:
        Indices with method ESTIMATED and the grid attached. If the raw
        lower estimate exceeds the upper one, both are set to their
        midpoint, a warning is logged and the gap is kept as ``inversion``.
    """
    grid = grid or IndexGrid()
    x = grid.positions()
    base = phi.log_evaluate(x)
    extremes = []
    for h in (grid.h_lo, grid.h_hi):
        increments = phi.log_evaluate(x + h) - base
        extremes.append((float(np.min(increments)), float(np.max(increments))))
    width = grid.h_hi - grid.h_lo
    sigma0 = (extremes[1][0] - extremes[0][0]) / width
    sigma1 = (extremes[1][1] - extremes[0][1]) / width
    logger.debug("%s: estimated indices (%.6f, %.6f)", phi.label, sigma0, sigma1)
    inversion = max(sigma0 - sigma1, 0.0)
    if inversion > 0.0:
        logger.log(
            logging.WARNING if inversion > ROUNDOFF_INVERSION else logging.DEBUG,
            "%s: index estimates inverted by %.3g (sigma0=%.6f > sigma1=%.6f), using midpoint",
            phi.label, inversion, sigma0, sigma1,
        )
        sigma0 = sigma1 = 0.5 * (sigma0 + sigma1)
    return MatuszewskaIndices(sigma0, sigma1, IndexMethod.ESTIMATED, grid, inversion)


def indices(
    phi: RoWeight,
    mode: IndexMethod | str = IndexMethod.ANALYTIC,
    grid: IndexGrid | None = None,
) -> MatuszewskaIndices:
    """Matuszewska indices of phi, analytic or estimated.

    Raises:
        PreconditionError: If analytic indices are requested for a weight
            without a closed form
    """
    method = IndexMethod(mode)
    if method is IndexMethod.ESTIMATED:
        return estimate_indices(phi, grid)
    known = phi.analytic_indices()
    if known is None:
        raise PreconditionError(f"{phi.label} has no analytic Matuszewska indices")
    return known


def best_indices(phi: RoWeight, grid: IndexGrid | None = None) -> MatuszewskaIndices:
    """Known indices when available, estimated ones otherwise."""
    return phi.known_indices() or estimate_indices(phi, grid)


def shift(phi: RoWeight, s: float) -> RoWeight:
    """Return the weight t -> t^s * phi(t); indices move by s."""
    return phi.shifted(float(s))


def log_sup_ratio(
    phi: RoWeight, phi1: RoWeight, x: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Pointwise ln(phi / phi1) on log positions x."""
    return phi.log_evaluate(x) - phi1.log_evaluate(x)
