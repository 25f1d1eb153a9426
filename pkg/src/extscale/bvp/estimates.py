"""Norm estimates for the disk models in the extended Sobolev scale.

Solutions live in H^{phi rho^{2q}}(Omega) and data in the tuple space
H^phi(Omega) + sum_j H^{phi rho^{2q - m_j - 1/2}}(Gamma), rho(t) = t.
Norms on the disk are quotient norms of the disk inside the torus; for
harmonic fields a boundary surrogate gives an independent route.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from extscale.bvp.fields import BoundaryField, DiskField, gamma_norm
from extscale.bvp.models import BvpModel, apply_model
from extscale.bvp.solver import fredholm_data, solve
from extscale.core.errors import PreconditionError
from extscale.quotient.mask import DomainMask
from extscale.quotient.solver import QuotientFactorization
from extscale.spaces.criteria import CriterionResult, integral_criterion
from extscale.spaces.fields import SpectralField
from extscale.spaces.lattice import Lattice
from extscale.spaces.norms import h_norm
from extscale.weights.analysis import best_indices, shift
from extscale.weights.base import IndexGrid, RoWeight

logger = logging.getLogger(__name__)

MIN_LOWER_INDEX = -0.5
DISK_POINTS = 65


def _require_lower_index(phi: RoWeight, grid: IndexGrid | None = None) -> None:
    sigma0 = best_indices(phi, grid).sigma0
    if not sigma0 > MIN_LOWER_INDEX:
        raise PreconditionError(f"{phi.label} has sigma0={sigma0:.4g}, need sigma0 > -1/2")


def boundary_weight(model: BvpModel, phi: RoWeight, j: int) -> RoWeight:
    """Weight phi rho^{2q - m_j - 1/2} of the j-th boundary datum."""
    return shift(phi, model.order - model.orders[j] - 0.5)


def solution_weight(model: BvpModel, phi: RoWeight) -> RoWeight:
    """Weight phi rho^{2q} of the solution space."""
    return shift(phi, model.order)


class DiskNorms:
    """Quotient norms H^phi(Omega) of disk fields on a fixed discretization.

    The unit disk is centred at (pi, pi) in the 2-torus; fields are sampled
    at the M x M grid points inside it and normed by their least-norm
    extension on the lattice |k_i| <= max(K, (M - 1) / 2). The sample set
    does not depend on K, so lattices of growing K are nested and the
    norms decrease monotonically towards the continuous quotient norm.
    Factorizations are cached per weight.

    Args:
        K: Nominal lattice cutoff
        points: Odd grid size M per axis (DISK_POINTS by default)

    Example:
        norms = DiskNorms(32)
        norms.norm(u, PowerWeight(2.0))
    """

    def __init__(self, K: int, points: int | None = None) -> None:
        points = points or DISK_POINTS
        if points < 3 or points % 2 == 0:
            raise ValueError(f"disk grid needs an odd number of points >= 3, got {points}")
        self._K = K
        self.lattice = Lattice(2, max(K, (points - 1) // 2))
        self.mask = DomainMask.disk(points)
        offsets = self.mask.coordinates() - np.pi
        self._r = np.hypot(offsets[:, 0], offsets[:, 1])
        self._theta = np.arctan2(offsets[:, 1], offsets[:, 0])
        self._factorizations: dict[RoWeight, QuotientFactorization] = {}

    @property
    def K(self) -> int:
        return self._K

    @property
    def points(self) -> int:
        return self.mask.points

    def values(self, u: DiskField) -> NDArray[np.complex128]:
        return u.evaluate(self._r, self._theta)

    def factorization(self, phi: RoWeight) -> QuotientFactorization:
        if phi not in self._factorizations:
            logger.debug(
                "factorizing disk quotient for %s at K=%d (cutoff %d, %d points)",
                phi.label, self.K, self.lattice.K, self.mask.count,
            )
            self._factorizations[phi] = QuotientFactorization(self.mask, self.lattice, phi)
        return self._factorizations[phi]

    def norm(self, u: DiskField, phi: RoWeight) -> float:
        values = self.values(u)
        if not np.any(values):
            return 0.0
        return self.factorization(phi).norm(values)


def harmonic_surrogate_norm(g: BoundaryField, psi: RoWeight) -> float:
    """Norm of the harmonic extension of g, built from its boundary modes.

    Each mode r^|k| e^{ik theta} carries its disk L2 mass pi / (|k| + 1)
    times psi(<k>)^2, so psi = 1 reproduces the L2(Omega) norm.
    """
    mass = np.pi / (np.abs(g.modes()) + 1.0)
    return float(np.sqrt(np.sum(psi.evaluate(g.moduli()) ** 2 * mass * np.abs(g.coeffs) ** 2)))


def data_norm(model: BvpModel, f: DiskField, g: Sequence[BoundaryField], phi: RoWeight,
              norms: DiskNorms) -> float:
    """Tuple norm (||f||^2_{H^phi(Omega)} + sum_j ||g_j||^2_{H^{phi rho^{2q-m_j-1/2}}(Gamma)})^(1/2)."""
    total = norms.norm(f, phi) ** 2 if not f.is_zero() else 0.0
    for j, gj in enumerate(g):
        total += gamma_norm(gj, boundary_weight(model, phi, j)) ** 2
    return float(np.sqrt(total))


@dataclass(frozen=True)
class AprioriEstimate:
    """One evaluation of ||u|| / (||(A,B)u|| + ||u||_{L2}).

    Attributes:
        ratio: The quotient itself
        solution_norm: ||u|| in H^{phi rho^{2q}}(Omega)
        data_norm: Tuple norm of (A, B) u
        l2_norm: ||u|| in L2(Omega)
        route: "quotient" or "surrogate"
    """

    ratio: float
    solution_norm: float
    data_norm: float
    l2_norm: float
    route: str = "quotient"


def apriori_ratio(
    model: BvpModel,
    u: DiskField,
    phi: RoWeight,
    norms: DiskNorms,
    route: str = "quotient",
) -> AprioriEstimate:
    """Evaluate the a priori estimate quotient for one field.

    Args:
        route: "quotient" for disk quotient norms, "surrogate" for the
            boundary-mode norm of a harmonic u

    Raises:
        PreconditionError: If sigma0(phi) <= -1/2, or the surrogate is asked
            for a field that is not harmonic
        ValueError: If u = 0
    """
    _require_lower_index(phi)
    if u.is_zero():
        raise ValueError("the a priori ratio is undefined for u = 0")
    data = apply_model(model, u)
    psi = solution_weight(model, phi)
    if route == "quotient":
        numerator = norms.norm(u, psi)
    elif route == "surrogate":
        if not u.laplacian().is_zero():
            raise PreconditionError("the surrogate route needs a harmonic field")
        numerator = harmonic_surrogate_norm(u.trace(), psi)
    else:
        raise ValueError(f"unknown route '{route}'")
    tuple_norm = data_norm(model, data.f, data.g, phi, norms)
    l2 = u.l2_norm()
    return AprioriEstimate(numerator / (tuple_norm + l2), numerator, tuple_norm, l2, route)


def route_agreement(model: BvpModel, u: DiskField, phi: RoWeight, norms: DiskNorms) -> float:
    """max(q/s, s/q) of the quotient and surrogate solution norms of a harmonic u."""
    quotient = apriori_ratio(model, u, phi, norms, route="quotient").solution_norm
    surrogate = apriori_ratio(model, u, phi, norms, route="surrogate").solution_norm
    return max(quotient / surrogate, surrogate / quotient)


def _compatible_boundary(model: BvpModel, g: list[BoundaryField]) -> list[BoundaryField]:
    """Remove from g the part that pairs with N+ through C+ (with f = 0)."""
    cokernel = fredholm_data(model).cokernel
    if not cokernel:
        return g
    directions = [[c.apply(v) for c in model.green_c_plus] for v in cokernel]
    gram = np.array(
        [[sum(hl[j].inner(hi[j]) for j in range(model.q)) for hl in directions] for hi in directions]
    )
    defect = np.array([sum(g[j].inner(h[j]) for j in range(model.q)) for h in directions])
    coeffs = scipy.linalg.solve(gram, defect)
    for c, h in zip(coeffs, directions):
        g = [gj + hj.scale(-c) for gj, hj in zip(g, h)]
    return g


def homogeneous_samples(
    model: BvpModel, n: int, seed: int, order: float = 1.0, band: int = 8
) -> list[DiskField]:
    """Random P-normalized solutions of A u = 0 with random boundary data.

    The j-th datum has Gaussian modes |k| <= band decaying like
    <k>^-(order + 2q - m_j - 1/2), so u behaves like an element of
    H^{2q + order}; order > -1/2 keeps the samples in H^{2q-1/2+}.
    """
    if not order > MIN_LOWER_INDEX:
        raise ValueError("sample Sobolev order must exceed -1/2")
    if band < 1:
        raise ValueError("band must be at least 1")
    modes = np.arange(-band, band + 1)
    moduli = np.sqrt(1.0 + modes**2.0)
    zero = DiskField.zeros(band)
    samples = []
    for i in range(n):
        rng = np.random.default_rng((seed, i))
        g = []
        for m_j in model.orders:
            z = rng.standard_normal(modes.size) + 1j * rng.standard_normal(modes.size)
            g.append(BoundaryField(z * moduli ** -(order + model.order - m_j - 0.5)))
        samples.append(solve(model, zero, tuple(_compatible_boundary(model, g))))
    return samples


@dataclass(frozen=True)
class IsomorphismBounds:
    """Observed bounds of ||(A,B)u||_tuple / ||u|| over samples."""

    lower: float
    upper: float
    ratios: tuple[float, ...] = field(default=(), repr=False)


def isomorphism_condition(
    model: BvpModel,
    phi: RoWeight,
    K: int,
    n_samples: int,
    seed: int,
    order: float = 1.0,
    band: int = 8,
    norms: DiskNorms | None = None,
    points: int | None = None,
) -> IsomorphismBounds:
    """Min and max of the data-to-solution norm ratio over random samples.

    Args:
        norms: Disk norms to reuse; built from K and points when omitted

    Raises:
        PreconditionError: If sigma0(phi) <= -1/2
    """
    _require_lower_index(phi)
    norms = norms or DiskNorms(K, points)
    psi = solution_weight(model, phi)
    ratios = []
    for u in homogeneous_samples(model, n_samples, seed, order, band):
        data = apply_model(model, u)
        ratios.append(data_norm(model, data.f, data.g, phi, norms) / norms.norm(u, psi))
    logger.info(
        "%s %s K=%d: isomorphism ratios in [%.4g, %.4g]",
        model.name, phi.label, K, min(ratios), max(ratios),
    )
    return IsomorphismBounds(min(ratios), max(ratios), tuple(ratios))


def torus_solve(f: SpectralField) -> SpectralField:
    """The u with (1 - Delta) u = f on the torus."""
    return f.apply_multiplier(lambda m: m**-2.0)


def regularity_shift_exact(u: SpectralField, phi: RoWeight) -> float:
    """|h_norm((1-Delta)u, phi) - h_norm(u, phi rho^2)|, relative when nonzero.

    The symbol of 1 - Delta is <k>^2 exactly.
    """
    lhs = h_norm(u.apply_multiplier(lambda m: m**2), phi)
    rhs = h_norm(u, shift(phi, 2.0))
    return abs(lhs - rhs) / rhs if rhs > 0.0 else abs(lhs - rhs)


def regularity_lift_check(f: SpectralField, phi: RoWeight) -> float:
    """Relative gap between ||torus_solve(f)||_{phi rho^2} and ||f||_phi."""
    lifted = h_norm(torus_solve(f), shift(phi, 2.0))
    base = h_norm(f, phi)
    return abs(lifted - base) / base if base > 0.0 else abs(lifted - base)


@dataclass(frozen=True)
class ClassicalPrediction:
    """Prediction that u lies in C^{2q}(Omega) and C^m up to the boundary.

    Attributes:
        interior: Criterion on t^(n-1) phi1^-2
        boundary: Criterion on t^(2m+n-1-4q) phi2^-2
    """

    interior: CriterionResult
    boundary: CriterionResult

    @property
    def holds(self) -> bool | None:
        verdicts = (self.interior.holds, self.boundary.holds)
        if False in verdicts:
            return False
        if None in verdicts:
            return None
        return True


def classical_prediction(
    model: BvpModel,
    phi1: RoWeight,
    phi2: RoWeight,
    n: int = 2,
    grid: IndexGrid | None = None,
) -> ClassicalPrediction:
    """Predict classical solutions from the weights of the right-hand side.

    Raises:
        PreconditionError: If sigma0(phi1) or sigma0(phi2) <= -1/2
    """
    _require_lower_index(phi1, grid)
    _require_lower_index(phi2, grid)
    interior = integral_criterion(phi1, float(n), grid)
    boundary = integral_criterion(shift(phi2, model.order), 2.0 * model.m + n, grid)
    return ClassicalPrediction(interior, boundary)


@dataclass(frozen=True)
class FredholmInvariance:
    """Kernel and cokernel dimensions recomputed in each weighted setting."""

    dims: dict[str, tuple[int, int]]

    @property
    def invariant(self) -> bool:
        return len(set(self.dims.values())) <= 1


def fredholm_invariance(
    model: BvpModel, weights: Sequence[RoWeight], modes: int = 16, rcond: float = 1e-12
) -> FredholmInvariance:
    """Null-space dimensions of the mode systems scaled by each weight.

    In mode k the operator maps H^{phi rho^{2q}} coefficients to boundary
    data measured in H^{phi rho^{2q-m_j-1/2}}(Gamma); the diagonal scalings
    must not change the dimensions of N and N+.
    """
    dims = {}
    for phi in weights:
        kernel = cokernel = 0
        for k in range(-modes, modes + 1):
            t = np.sqrt(1.0 + k * k)
            cols = 1.0 / float(solution_weight(model, phi).evaluate(t))
            rows = np.array(
                [float(boundary_weight(model, phi, j).evaluate(t)) for j in range(model.q)]
            )
            for ops, counter in ((model.boundary, "kernel"), (model.adjoint_boundary, "cokernel")):
                scaled = rows[:, None] * model.mode_matrix(k, ops) * cols
                dim = scipy.linalg.null_space(scaled, rcond=rcond).shape[1]
                if counter == "kernel":
                    kernel += dim
                else:
                    cokernel += dim
        dims[phi.label] = (kernel, cokernel)
    return FredholmInvariance(dims)
