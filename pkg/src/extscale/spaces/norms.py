"""H^phi norms on the torus and embeddings between them."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from extscale.spaces.fields import SpectralField
from extscale.spaces.lattice import Lattice
from extscale.weights.analysis import best_indices, grows_without_bound
from extscale.weights.base import IndexGrid, RoWeight
from extscale.weights.families import PowerWeight

logger = logging.getLogger(__name__)

# x = ln t checkpoints for embedding scans
EMBED_CHECKPOINTS: tuple[float, ...] = (1.0e3, 1.0e6, 1.0e9, 1.0e12)
EMBED_GROWTH_STEP = 0.1
_SCAN_POINTS = 4000


def h_norm(u: SpectralField, phi: RoWeight) -> float:
    """(sum_k phi(<k>)^2 |w(k)|^2)^(1/2); a unit mode has norm phi(<k>)."""
    return float(np.linalg.norm(u.weighted(phi)))


@dataclass(frozen=True)
class EmbeddingResult:
    """Outcome of an embedding check H^phi -> H^phi1.

    Attributes:
        embeds: Whether phi / phi1 is bounded
        constant: sup over t >= 1 of phi / phi1 (inf when unbounded)
        method: "index" when decided by Matuszewska indices, else "scan"
        sequence: Running sups of ln(phi / phi1) at the scan checkpoints
    """

    embeds: bool
    constant: float
    method: str
    sequence: tuple[float, ...] = ()


def _scan_grid(x_max: float) -> np.ndarray:
    return np.concatenate(([0.0], np.geomspace(1.0e-3, x_max, _SCAN_POINTS)))


def _log_ratio(phi: RoWeight, phi1: RoWeight, x: np.ndarray) -> np.ndarray:
    return phi.log_evaluate(x) - phi1.log_evaluate(x)


def embedding_bounded(
    phi: RoWeight,
    phi1: RoWeight,
    checkpoints: Sequence[float] = EMBED_CHECKPOINTS,
    grid: IndexGrid | None = None,
) -> EmbeddingResult:
    """Check whether H^phi1 embeds continuously in H^phi (phi / phi1 bounded).

    Indices decide first: sigma1(phi) < sigma0(phi1) means bounded,
    sigma0(phi) > sigma1(phi1) means unbounded. Otherwise the running sup
    of ln(phi / phi1) is tracked over growing x = ln t ranges.

    Args:
        phi: Weight of the target space
        phi1: Weight of the source space
        checkpoints: Increasing x = ln t limits for the scan
        grid: Index estimation grid for weights without known indices
    """
    x = _scan_grid(checkpoints[-1])
    log_ratio = np.maximum.accumulate(_log_ratio(phi, phi1, x))
    sequence = tuple(float(log_ratio[x <= limit][-1]) for limit in checkpoints)

    idx, idx1 = best_indices(phi, grid), best_indices(phi1, grid)
    if idx.sigma1 < idx1.sigma0:
        return EmbeddingResult(True, float(np.exp(sequence[-1])), "index", sequence)
    if idx.sigma0 > idx1.sigma1:
        return EmbeddingResult(False, float("inf"), "index", sequence)

    unbounded = grows_without_bound(sequence, EMBED_GROWTH_STEP)
    logger.debug("%s / %s scan sups %s", phi.label, phi1.label, sequence)
    constant = float("inf") if unbounded else float(np.exp(sequence[-1]))
    return EmbeddingResult(not unbounded, constant, "scan", sequence)


def embedding_compact(
    phi: RoWeight,
    phi1: RoWeight,
    checkpoints: Sequence[float] = (1.0, 1.0e3, 1.0e6, 1.0e9),
    x_max: float = 1.0e12,
    grid: IndexGrid | None = None,
) -> bool:
    """Check whether the embedding H^phi1 -> H^phi is compact (phi / phi1 -> 0).

    Outside the index shortcut the tail sup of ln(phi / phi1) over
    [x_j, x_max] must keep falling as x_j moves out.
    """
    idx, idx1 = best_indices(phi, grid), best_indices(phi1, grid)
    if idx.sigma1 < idx1.sigma0:
        return True
    if idx.sigma0 > idx1.sigma1:
        return False
    x = _scan_grid(x_max)
    log_ratio = _log_ratio(phi, phi1, x)
    tails = [float(np.max(log_ratio[x >= start])) for start in checkpoints]
    return grows_without_bound([-v for v in tails], EMBED_GROWTH_STEP)


def scale_bracket(phi: RoWeight, s0: float, s1: float, lattice: Lattice) -> tuple[float, float]:
    """Realized constants of H^(s1) -> H^phi -> H^(s0) on a lattice.

    Returns (C0, C1) with ||u||_(s0) <= C0 ||u||_phi and
    ||u||_phi <= C1 ||u||_(s1) for every field on the lattice.
    """
    if not s0 < s1:
        raise ValueError("need s0 < s1")
    moduli = lattice.moduli()
    values = phi.evaluate(moduli)
    c0 = float(np.max(PowerWeight(s0).evaluate(moduli) / values))
    c1 = float(np.max(values / PowerWeight(s1).evaluate(moduli)))
    return c0, c1
