"""Mode-wise solution of the disk models, Fredholm data and projectors."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from extscale.bvp.fields import BoundaryField, DiskField
from extscale.bvp.models import BoundaryOperator, BvpData, BvpModel, apply_model
from extscale.bvp.radial import green_polynomial_mode
from extscale.core.errors import IncompatibleDataError, SolverError

logger = logging.getLogger(__name__)

# modes scanned when building kernel bases; kernels of the disk models live in |k| <= 1
FREDHOLM_MODES = 16


@dataclass(frozen=True)
class FredholmData:
    """Kernel N, cokernel N+ and index of a model.

    Attributes:
        kernel: Basis of N = {u : Au = 0, Bu = 0}
        cokernel: Basis of N+ = {v : A+v = 0, B+v = 0}
        adjoint_operators: C+_j realizing the compatibility functionals
    """

    kernel: tuple[DiskField, ...] = field(repr=False)
    cokernel: tuple[DiskField, ...] = field(repr=False)
    adjoint_operators: tuple[BoundaryOperator, ...] = ()

    @property
    def dims(self) -> tuple[int, int]:
        return (len(self.kernel), len(self.cokernel))

    @property
    def index(self) -> int:
        return len(self.kernel) - len(self.cokernel)


def _null_fields(
    model: BvpModel, operators: tuple[BoundaryOperator, ...], modes: int, rcond: float
) -> tuple[DiskField, ...]:
    basis: list[DiskField] = []
    for k in range(-modes, modes + 1):
        null = scipy.linalg.null_space(model.mode_matrix(k, operators), rcond=rcond)
        for vector in null.T:
            # fix the phase so the largest entry is real and positive
            pivot = vector[np.argmax(np.abs(vector))]
            vector = vector * (abs(pivot) / pivot)
            coeffs = np.zeros((2 * abs(k) + 1, model.q), dtype=np.complex128)
            coeffs[k + abs(k)] = vector
            basis.append(DiskField(coeffs))
    return tuple(basis)


@lru_cache(maxsize=None)
def fredholm_data(model: BvpModel, modes: int = FREDHOLM_MODES, rcond: float = 1e-12) -> FredholmData:
    """Kernel and cokernel from the null spaces of the mode boundary systems.

    Homogeneous solutions of A in mode k are spanned by r^(|k|+2j), j < q,
    so N is the union over k of the null spaces of those q x q systems
    under B, and N+ the same under B+.
    """
    kernel = _null_fields(model, model.boundary, modes, rcond)
    cokernel = _null_fields(model, model.adjoint_boundary, modes, rcond)
    data = FredholmData(kernel, cokernel, model.green_c_plus)
    logger.debug("fredholm data for %s: dims=%s index=%d", model.name, data.dims, data.index)
    return data


def kernel_residual(model: BvpModel, w: DiskField) -> float:
    """Size of (A, B) w, zero for kernel elements."""
    data = apply_model(model, w)
    return float(
        max(
            [np.abs(data.f.coeffs).max(initial=0.0)]
            + [np.abs(g.coeffs).max(initial=0.0) for g in data.g]
        )
    )


def _gram(basis: tuple[DiskField, ...]) -> NDArray[np.complex128]:
    # entry [i, l] = (basis_l, basis_i)
    return np.array([[bl.inner(bi) for bl in basis] for bi in basis], dtype=np.complex128)


def compatibility_defect(
    model: BvpModel, f: DiskField, g: tuple[BoundaryField, ...]
) -> NDArray[np.complex128]:
    """(f, v)_Omega + sum_j (g_j, C+_j v)_Gamma for each v in the N+ basis.

    Empty when N+ = {0}; the data lie in the range iff every entry vanishes.
    """
    _check_data(model, g)
    cokernel = fredholm_data(model).cokernel
    return np.array(
        [
            f.inner(v) + sum(gj.inner(c.apply(v)) for gj, c in zip(g, model.green_c_plus))
            for v in cokernel
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True)
class ProjectorPair:
    """P removes the N-component of fields; P+ removes an N+-component of data.

    P is the L2(Omega)-orthogonal projector onto the complement of N.
    P+ subtracts (v, 0, ..., 0), v in N+, so the result satisfies the
    compatibility conditions.
    """

    model: BvpModel

    def p(self, u: DiskField) -> DiskField:
        return _remove_span(u, fredholm_data(self.model).kernel)

    def p_plus(self, data: BvpData) -> BvpData:
        cokernel = fredholm_data(self.model).cokernel
        if not cokernel:
            return data
        defect = compatibility_defect(self.model, data.f, data.g)
        c = scipy.linalg.solve(_gram(cokernel), defect)
        f = data.f
        for ci, v in zip(c, cokernel):
            f = f - v.scale(ci)
        return BvpData(f, data.g)


def projectors(model: BvpModel) -> ProjectorPair:
    return ProjectorPair(model)


def _remove_span(u: DiskField, basis: tuple[DiskField, ...]) -> DiskField:
    if not basis:
        return u
    rhs = np.array([u.inner(w) for w in basis], dtype=np.complex128)
    c = scipy.linalg.solve(_gram(basis), rhs)
    for ci, w in zip(c, basis):
        u = u - w.scale(ci)
    return u


@dataclass(frozen=True)
class ModeSolution:
    """Solution of one angular mode.

    Attributes:
        k: Angular mode
        solution: Mode-k solution (least-squares when not solvable)
        solvable: Whether the mode data satisfy the compatibility conditions
        defect: Mode part of the compatibility defect
        residual: Size of (A, B) u minus the data
    """

    k: int
    solution: DiskField = field(repr=False)
    solvable: bool = True
    defect: NDArray[np.complex128] = field(default_factory=lambda: np.zeros(0, np.complex128))
    residual: float = 0.0


def _check_data(model: BvpModel, g: tuple[BoundaryField, ...]) -> None:
    if len(g) != model.q:
        raise ValueError(f"model {model.name} takes {model.q} boundary data, got {len(g)}")


def _mode_only(u: DiskField, k: int) -> DiskField:
    K = max(u.K, abs(k))
    coeffs = np.zeros((2 * K + 1, u.J), dtype=np.complex128)
    coeffs[k + K] = u.mode(k)
    return DiskField(coeffs)


def _green_particular(k: int, profile: NDArray[np.complex128]) -> DiskField:
    K = abs(k)
    coeffs = np.zeros((2 * K + 1, profile.size + 1), dtype=np.complex128)
    coeffs[k + K] = green_polynomial_mode(k, -profile)
    return DiskField(coeffs)


def solve_mode(
    model: BvpModel,
    k: int,
    f_profile: ArrayLike,
    g_values: ArrayLike,
    tolerance: float = 1e-10,
) -> ModeSolution:
    """Solve A u = f, B u = g for angular mode k.

    A particular solution with zero Dirichlet traces, taken from the radial
    Green kernel for the Laplace models, is completed by the homogeneous part
    sum_j c_j r^(|k|+2j), whose coefficients solve the q x q boundary system
    of the mode. When that system is singular the
    compatibility defect decides solvability and the minimal-norm
    coefficients are P-normalized.

    Args:
        model: Disk model
        k: Angular mode
        f_profile: Coefficients of f_k in the basis r^(|k|+2j)
        g_values: Mode-k coefficients of g_1..g_q
        tolerance: Relative defect tolerance
    """
    profile = np.atleast_1d(np.asarray(f_profile, dtype=np.complex128))
    values = np.atleast_1d(np.asarray(g_values, dtype=np.complex128))
    if values.size != model.q:
        raise ValueError(f"model {model.name} takes {model.q} boundary values, got {values.size}")
    K = abs(k)
    coeffs = np.zeros((2 * K + 1, profile.size), dtype=np.complex128)
    coeffs[k + K] = profile
    f = DiskField(coeffs)
    g = tuple(BoundaryField.single_mode(K, k, value) for value in values)

    particular = _green_particular(k, profile) if model.q == 1 else model.particular(f)
    rhs = values - np.array([op.apply(particular).at(k) for op in model.boundary])
    matrix = model.mode_matrix(k)
    c, _, rank, _ = scipy.linalg.lstsq(matrix, rhs)
    if not np.all(np.isfinite(c)):
        raise SolverError(f"mode {k} boundary system of {model.name} produced non-finite values")

    homogeneous = np.zeros((2 * K + 1, model.q), dtype=np.complex128)
    homogeneous[k + K] = c
    u = particular + DiskField(homogeneous)

    data = fredholm_data(model)
    mode_cokernel = tuple(_mode_only(v, k) for v in data.cokernel if np.any(v.mode(k)))
    defect = np.array(
        [
            f.inner(v) + sum(gj.inner(op.apply(v)) for gj, op in zip(g, model.green_c_plus))
            for v in mode_cokernel
        ],
        dtype=np.complex128,
    )
    scale = max(1.0, float(np.abs(profile).max(initial=0.0)), float(np.abs(values).max()))
    solvable = bool(np.all(np.abs(defect) <= tolerance * scale))
    if rank < model.q:
        u = _remove_span(u, tuple(_mode_only(w, k) for w in data.kernel if np.any(w.mode(k))))

    got = apply_model(model, u)
    interior = got.f.mode(k).copy()
    interior[: profile.size] -= profile
    residual = max(
        float(np.abs(interior).max(initial=0.0)),
        float(np.abs(np.array([gj.at(k) for gj in got.g]) - values).max()),
    )
    return ModeSolution(k, u, solvable, defect, residual)


def solve(
    model: BvpModel,
    f: DiskField,
    g: tuple[BoundaryField, ...],
    tolerance: float = 1e-10,
) -> DiskField:
    """Solve (A, B) u = (f, g) mode by mode.

    Returns:
        The solution with zero N-component

    Raises:
        IncompatibleDataError: If the data violate the compatibility conditions
        SolverError: If a mode system fails
    """
    _check_data(model, g)
    defect = compatibility_defect(model, f, g)
    scale = max([1.0, f.l2_norm()] + [float(np.abs(gj.coeffs).max(initial=0.0)) for gj in g])
    if defect.size and np.abs(defect).max() > tolerance * scale:
        raise IncompatibleDataError(
            f"data are incompatible with model {model.name}: defect {np.abs(defect).max():.6g}",
            defect.tolist(),
        )

    K = max([f.K] + [gj.K for gj in g])
    pieces = []
    for k in range(-K, K + 1):
        profile = f.mode(k)
        values = np.array([gj.at(k) for gj in g])
        if not np.any(profile) and not np.any(values):
            continue
        pieces.append(solve_mode(model, k, profile, values, tolerance).solution)
    u = DiskField.zeros(K)
    for piece in pieces:
        u = u + piece
    logger.debug("solved %s on %d active modes (K=%d)", model.name, len(pieces), K)
    return projectors(model).p(u)
