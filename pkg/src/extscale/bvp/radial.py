"""Radial mode solves for sources given as callables.

The mode equation of the Laplacian is

    u'' + u'/r - (a^2 / r^2) u = F(r),   a = |k|,

and with u(1) = 0 and u regular at 0 its solution is
u(r) = integral_0^1 G(r, rho) rho F(rho) d rho, where
G = phi1(r<) phi2(r>) / w with phi1 = r^a, phi2 = r^a - r^-a, w = 2a
(phi1 = 1, phi2 = ln r, w = 1 for a = 0).
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from extscale.bvp.models import BoundaryKind, BvpModel
from extscale.core.errors import SolverError

logger = logging.getLogger(__name__)

RadialSource = Callable[[NDArray[np.float64]], ArrayLike]

MIN_NODES = 8


def _kernel_parts(a: int) -> tuple[Callable, Callable, float]:
    if a == 0:
        return (lambda r: np.ones_like(r)), np.log, 1.0
    return (lambda r: r**a), (lambda r: r**a - r ** (-a)), 2.0 * a


def _gauss(lo: NDArray[np.float64], hi: NDArray[np.float64], nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (hi - lo)[:, None]
    points = lo[:, None] + half * (x[None, :] + 1.0)
    return points, half * w[None, :]


def _source_values(source: RadialSource, r: NDArray[np.float64]) -> NDArray[np.complex128]:
    values = np.broadcast_to(np.asarray(source(r), dtype=np.complex128), r.shape)
    if not np.all(np.isfinite(values)):
        raise SolverError("radial source is not finite on the quadrature grid")
    return values


def green_dirichlet_mode(
    k: int, source: RadialSource, radii: ArrayLike, nodes: int
) -> NDArray[np.complex128]:
    """u with u'' + u'/r - (k^2/r^2) u = F, u(1) = 0, evaluated at radii.

    Raises:
        SolverError: If the quadrature grid is too coarse or produces non-finite values
    """
    if nodes < MIN_NODES:
        raise SolverError(f"radial quadrature needs at least {MIN_NODES} nodes, got {nodes}")
    rs = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    if np.any((rs < 0.0) | (rs > 1.0)):
        raise ValueError("radii must lie in [0, 1]")
    a = abs(k)
    if a == 0:
        return _green_zero_mode(source, rs, nodes)
    phi1, phi2, w = _kernel_parts(a)

    inner_pts, inner_w = _gauss(np.zeros_like(rs), rs, nodes)
    outer_pts, outer_w = _gauss(rs, np.ones_like(rs), nodes)
    inner = np.sum(inner_w * phi1(inner_pts) * inner_pts * _source_values(source, inner_pts), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        outer = np.sum(
            outer_w * phi2(outer_pts) * outer_pts * _source_values(source, outer_pts), axis=1
        )
        left = np.where(rs > 0.0, phi2(np.where(rs > 0.0, rs, 1.0)) * inner, 0.0)
    u = (left + phi1(rs) * outer) / w
    if not np.all(np.isfinite(u)):
        raise SolverError(f"radial quadrature for mode {k} produced non-finite values")
    return u


def _green_zero_mode(
    source: RadialSource, rs: NDArray[np.float64], nodes: int
) -> NDArray[np.complex128]:
    """Mode 0 as u(r) = -integral_r^1 G(rho) / rho d rho, G(rho) = integral_0^rho s F(s) ds.

    Integrating the ln kernel by parts leaves a smooth integrand, so Gauss
    nodes converge at the same rate as for k != 0.
    """
    outer_pts, outer_w = _gauss(rs, np.ones_like(rs), nodes)
    inner_pts, inner_w = _gauss(np.zeros(outer_pts.size), outer_pts.ravel(), nodes)
    primitive = np.sum(inner_w * inner_pts * _source_values(source, inner_pts), axis=1)
    u = -np.sum(outer_w * primitive.reshape(outer_pts.shape) / outer_pts, axis=1)
    if not np.all(np.isfinite(u)):
        raise SolverError("radial quadrature for mode 0 produced non-finite values")
    return u


def green_polynomial_mode(k: int, profile: ArrayLike) -> NDArray[np.complex128]:
    """Green kernel applied exactly to F = sum_j p_j r^(|k|+2j).

    For a monomial source r^m the kernel moments integrate in closed form to
    (r^(m+2) - r^a) / ((m+2)^2 - a^2), the ln r terms of mode 0 cancelling.

    Returns:
        Coefficients of u in the basis r^(|k|+2j), one longer than the profile
    """
    p = np.atleast_1d(np.asarray(profile, dtype=np.complex128))
    a = abs(k)
    m = a + 2 * np.arange(p.size)
    if a == 0:
        moments = 1.0 / (m + 2.0) ** 2
    else:
        # inner moment of phi1 against the outer moment of phi2, over w = 2a
        moments = (1.0 / (m - a + 2.0) - 1.0 / (m + a + 2.0)) / (2.0 * a)
    u = np.zeros(p.size + 1, dtype=np.complex128)
    u[1:] = p * moments
    u[0] = -np.sum(p * moments)
    return u


def green_dirichlet_slope(k: int, source: RadialSource, nodes: int) -> complex:
    """u'(1) of the zero-trace mode solution: integral_0^1 rho^(|k|+1) F d rho."""
    a = abs(k)
    points, weights = _gauss(np.zeros(1), np.ones(1), nodes)
    return complex(np.sum(weights * points ** (a + 1) * _source_values(source, points)))


@dataclass(frozen=True)
class RadialSolution:
    """Mode profile sampled at radii.

    Attributes:
        k: Angular mode
        radii: Sample radii
        values: u_k at the radii
        solvable: False when a Neumann k = 0 datum is incompatible
        defect: Mode compatibility defect (0 when none applies)
    """

    k: int
    radii: NDArray[np.float64] = field(repr=False)
    values: NDArray[np.complex128] = field(repr=False)
    solvable: bool = True
    defect: complex = 0j


def green_mode_solve(
    model: BvpModel,
    k: int,
    source: RadialSource,
    g_value: complex,
    radii: ArrayLike,
    nodes: int | None = None,
    tolerance: float = 1e-10,
) -> RadialSolution:
    """Laplace-model mode solve -u_k'' - u_k'/r + (k^2/r^2) u_k = f_k by the Green kernel.

    Dirichlet data fix u_k(1) = g, Neumann data fix u_k'(1) = g; the
    homogeneous part is c r^|k|. The Neumann k = 0 mode is solvable only if
    2 pi (integral rho f_0 + g) vanishes, and is then normalized to zero mean.

    Args:
        nodes: Gauss-Legendre nodes per panel (default 4 * max(|k|, 8))
    """
    if model.q != 1:
        raise ValueError("radial Green solves cover the second order models")
    nodes = nodes or 4 * max(abs(k), MIN_NODES)
    rs = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    a = abs(k)

    def neg(r: NDArray[np.float64]) -> NDArray[np.complex128]:
        return -_source_values(source, r)

    particular = green_dirichlet_mode(k, neg, rs, nodes)
    if model.boundary[0].kind is BoundaryKind.TRACE:
        return RadialSolution(k, rs, particular + g_value * rs**a)

    slope = green_dirichlet_slope(k, neg, nodes)
    if a > 0:
        return RadialSolution(k, rs, particular + (g_value - slope) / a * rs**a)

    points, weights = _gauss(np.zeros(1), np.ones(1), nodes)
    defect = complex(
        2.0 * np.pi * (np.sum(weights * points * _source_values(source, points)) + g_value)
    )
    scale = max(1.0, abs(g_value))
    mean = np.sum(weights[0] * points[0] * green_dirichlet_mode(0, neg, points[0], nodes))
    values = particular - 2.0 * mean
    return RadialSolution(k, rs, values, abs(defect) <= tolerance * scale, defect)


def fd_dirichlet_mode(
    k: int, source: RadialSource, points: int = 2000, extrapolate: bool = False
) -> tuple[NDArray[np.float64], NDArray[np.complex128]]:
    """Second-order finite differences for u'' + u'/r - (k^2/r^2) u = F, u(1) = 0.

    Args:
        extrapolate: Also solve on the grid of 2 * points intervals and
            cancel the h^2 error term by Richardson extrapolation

    Returns:
        Grid r_i = i/points and the solution on it
    """
    if points < 4:
        raise SolverError("finite-difference grid needs at least 4 intervals")
    r, u = _fd_solve(abs(k), source, points)
    if extrapolate:
        _, fine = _fd_solve(abs(k), source, 2 * points)
        u = (4.0 * fine[::2] - u) / 3.0
    return r, u


def _fd_solve(
    a: int, source: RadialSource, points: int
) -> tuple[NDArray[np.float64], NDArray[np.complex128]]:
    h = 1.0 / points
    r = np.arange(points + 1) * h
    u = np.zeros(points + 1, dtype=np.complex128)
    start = 0 if a == 0 else 1
    idx = np.arange(start, points)
    rhs = _source_values(source, r[idx]).copy()
    size = idx.size
    bands = np.zeros((3, size), dtype=np.float64)
    ri = r[idx]
    with np.errstate(divide="ignore", invalid="ignore"):
        lower = 1.0 / h**2 - 1.0 / (2.0 * ri * h)
        diag = -2.0 / h**2 - a**2 / ri**2
        upper = 1.0 / h**2 + 1.0 / (2.0 * ri * h)
    if a == 0:
        # symmetry at the origin: u'' + u'/r -> 2 u''
        diag[0], upper[0], lower[0] = -4.0 / h**2, 4.0 / h**2, 0.0
    bands[0, 1:] = upper[:-1]
    bands[1] = diag
    bands[2, :-1] = lower[1:]
    u[idx] = scipy.linalg.solve_banded((1, 1), bands, rhs)
    return r, u
