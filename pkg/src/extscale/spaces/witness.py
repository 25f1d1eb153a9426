"""Partial-sum derivatives of spectral fields and C^k witness fields."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from extscale.spaces.fields import SpectralField
from extscale.spaces.lattice import Lattice

MAX_DERIVATIVE_ORDER = 4


def derivative_partial_sup(
    u: SpectralField,
    mu: Sequence[int],
    K_list: Sequence[int],
    grid_points: int | None = None,
) -> list[float]:
    """Sup-norms of D^mu applied to cube partial sums of u.

    For each K in K_list the partial sum over |k|_inf <= K of
    (ik)^mu w(k) e^{ik.x} is evaluated on a uniform spatial grid by FFT
    and its max modulus is returned.

    Args:
        u: Field to differentiate
        mu: Multi-index, one entry per torus dimension, |mu| <= 4
        K_list: Partial-sum cutoffs, each <= u.lattice.K
        grid_points: Spatial points per axis (default 4 * max(K_list))

    Raises:
        ValueError: On a bad multi-index or cutoff
    """
    lattice = u.lattice
    mu = tuple(int(m) for m in mu)
    if len(mu) != lattice.n or min(mu) < 0 or sum(mu) > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"multi-index {mu} invalid for n={lattice.n} (|mu| <= 4)")
    if not K_list or max(K_list) > lattice.K or min(K_list) < 0:
        raise ValueError(f"cutoffs must lie in [0, {lattice.K}]")
    points = grid_points or 4 * max(max(K_list), 1)
    if points < 2 * max(K_list) + 1:
        raise ValueError("spatial grid too coarse for the largest cutoff")

    modes = lattice.modes()
    symbol = np.ones(lattice.shape, dtype=np.complex128)
    for axis, order in enumerate(mu):
        symbol = symbol * (1j * modes[..., axis]) ** order
    derived = symbol * u.coeffs
    sup_index = lattice.sup_modes()

    wrap = tuple(np.mod(modes[..., axis], points) for axis in range(lattice.n))
    sups = []
    for K in K_list:
        grid = np.zeros((points,) * lattice.n, dtype=np.complex128)
        keep = sup_index <= K
        np.add.at(grid, tuple(w[keep] for w in wrap), derived[keep])
        values = np.fft.ifftn(grid) * points**lattice.n
        sups.append(float(np.max(np.abs(values))))
    return sups


def threshold_witness(
    lattice: Lattice,
    order: int,
    excess: float = 0.0,
    k_min: int = 8,
) -> SpectralField:
    """Field whose order-th derivative in x1 sits at the C^k threshold.

    Coefficients are <k>^-(order + n + excess), supported on |k|_inf >= k_min,
    with phases (-i sign k1)^order so every partial sum of D^(order, 0)
    peaks at x = 0. With excess = 0 the sup-norms of the partial sums
    grow without bound; any positive excess keeps them bounded.
    """
    if order < 0 or excess < 0.0 or k_min < 0:
        raise ValueError("order, excess and k_min must be non-negative")
    modes = lattice.modes()
    k1 = modes[..., 0]
    magnitude = lattice.moduli() ** (-(order + lattice.n + excess))
    phase = np.where(k1 == 0, 1.0 if order == 0 else 0.0, (-1j * np.sign(k1)) ** order)
    coeffs = np.where(lattice.sup_modes() >= k_min, magnitude * phase, 0.0)
    return SpectralField(lattice, coeffs)
