"""Quotient norms: least-H^phi-norm extensions of domain values."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from extscale.core.errors import PreconditionError
from extscale.quotient.collocation import CollocationOperator
from extscale.quotient.mask import DomainMask
from extscale.spaces.fields import SpectralField
from extscale.spaces.lattice import Lattice
from extscale.spaces.norms import h_norm
from extscale.weights.base import RoWeight

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuotientProblem:
    """Find the extension of domain values with the smallest H^phi norm.

    Attributes:
        target: Values at the inside points of the mask (u)
        weight: Weight phi
        lattice: Mode lattice of the extension
        mask: Domain mask
        tolerance: Relative residual tolerance of the iterative solver
        max_iterations: Iteration cap (default 50 * number of inside points)
    """

    target: NDArray[np.complex128] = field(repr=False)
    weight: RoWeight
    lattice: Lattice
    mask: DomainMask
    tolerance: float = 1e-12
    max_iterations: int | None = None

    def __post_init__(self) -> None:
        target = np.asarray(self.target, dtype=np.complex128).ravel()
        if target.size != self.mask.count:
            raise ValueError(f"{target.size} target values for {self.mask.count} inside points")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "target", target)

    @cached_property
    def operator(self) -> CollocationOperator:
        return CollocationOperator(self.mask, self.lattice)

    @cached_property
    def inverse_weight_squared(self) -> NDArray[np.float64]:
        return self.weight.evaluate(self.lattice.moduli()) ** -2.0


@dataclass(frozen=True)
class QuotientResult:
    """Minimizer of a quotient problem.

    Attributes:
        value: H^phi norm of the extension (an upper bound if not converged)
        extension: Extension with the reported norm
        converged: Whether the residual tolerance was met
        iterations: Solver iterations used
        residual: Final relative residual
    """

    value: float
    extension: SpectralField
    converged: bool
    iterations: int = 0
    residual: float = 0.0


def quotient_norm(problem: QuotientProblem) -> QuotientResult:
    """Quotient norm of the target values by conjugate gradients.

    Solves (C D^-1 C*) lam = u with D = phi^2 and returns the extension
    w = D^-1 C* lam, which is feasible and has the least H^phi norm.
    Non-convergence is reported through ``converged=False``.
    """
    op = problem.operator
    u = problem.target
    dinv = problem.inverse_weight_squared
    u_norm = float(np.linalg.norm(u))
    if u_norm == 0.0:
        return QuotientResult(0.0, SpectralField.zeros(problem.lattice), True)

    def apply(lam: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return op.forward(dinv * op.adjoint(lam))

    max_iter = problem.max_iterations or 50 * problem.mask.count
    lam = np.zeros_like(u)
    r = u.copy()
    p = r.copy()
    rs = float(np.vdot(r, r).real)
    iterations = 0
    residual = np.sqrt(rs) / u_norm
    while residual > problem.tolerance and iterations < max_iter:
        gp = apply(p)
        alpha = rs / float(np.vdot(p, gp).real)
        lam = lam + alpha * p
        r = r - alpha * gp
        rs_next = float(np.vdot(r, r).real)
        p = r + (rs_next / rs) * p
        rs = rs_next
        iterations += 1
        residual = np.sqrt(rs) / u_norm

    converged = residual <= problem.tolerance
    if not converged:
        logger.warning(
            "quotient CG stopped after %d iterations at residual %.3e", iterations, residual
        )
    else:
        logger.debug("quotient CG converged in %d iterations", iterations)
    extension = SpectralField(problem.lattice, dinv * op.adjoint(lam))
    return QuotientResult(
        h_norm(extension, problem.weight), extension, converged, iterations, float(residual)
    )


def dense_kkt_solve(problem: QuotientProblem) -> QuotientResult:
    """Reference solution from the dense system [[D, C*], [C, 0]] [w; mu] = [0; u]."""
    c = problem.operator.matrix()
    m, size = c.shape
    d = problem.weight.evaluate(problem.lattice.moduli()).ravel() ** 2
    kkt = np.zeros((size + m, size + m), dtype=np.complex128)
    kkt[:size, :size] = np.diag(d)
    kkt[:size, size:] = c.conj().T
    kkt[size:, :size] = c
    rhs = np.concatenate((np.zeros(size, dtype=np.complex128), problem.target))
    solution = scipy.linalg.solve(kkt, rhs)
    extension = SpectralField(problem.lattice, solution[:size].reshape(problem.lattice.shape))
    return QuotientResult(h_norm(extension, problem.weight), extension, True)


class QuotientFactorization:
    """Dense least-norm factorization for repeated quotient norms.

    With A = C diag(1/phi), the quotient norm of u is ||R^-H u|| where
    A^H = Q R. One factorization serves every target on the same
    (mask, lattice, phi).

    Example:
        fact = QuotientFactorization(DomainMask.disk(32), Lattice(2, 32), PowerWeight(1.0))
        value = fact.norm(values)
    """

    def __init__(self, mask: DomainMask, lattice: Lattice, weight: RoWeight) -> None:
        self.mask = mask
        self.lattice = lattice
        self.weight = weight
        self._op = CollocationOperator(mask, lattice)
        self._phi = weight.evaluate(lattice.moduli()).ravel()
        a_h = (self._op.matrix() / self._phi[None, :]).conj().T
        self._q, self._r = scipy.linalg.qr(a_h, mode="economic")

    def _solve(self, values: ArrayLike) -> NDArray[np.complex128]:
        u = np.asarray(values, dtype=np.complex128).ravel()
        if u.size != self.mask.count:
            raise ValueError(f"{u.size} values for {self.mask.count} inside points")
        return scipy.linalg.solve_triangular(self._r, u, trans="C", lower=False)

    def norm(self, values: ArrayLike) -> float:
        return float(np.linalg.norm(self._solve(values)))

    def extension(self, values: ArrayLike) -> SpectralField:
        v = self._q @ self._solve(values)
        return SpectralField(self.lattice, (v / self._phi).reshape(self.lattice.shape))


def quotient_upper_bound(
    values: ArrayLike,
    weight: RoWeight,
    extension: SpectralField,
    mask: DomainMask,
    tolerance: float = 1e-10,
) -> float:
    """h_norm of an explicit extension, after checking it matches the values.

    Raises:
        PreconditionError: If the extension does not reproduce the values on the mask
    """
    u = np.asarray(values, dtype=np.complex128).ravel()
    got = CollocationOperator(mask, extension.lattice).forward(extension.coeffs)
    defect = float(np.linalg.norm(got - u))
    if defect > tolerance * max(1.0, float(np.linalg.norm(u))):
        raise PreconditionError(f"extension is infeasible: defect {defect:.3e}")
    return h_norm(extension, weight)


def outside_supported_field(
    mask: DomainMask, lattice: Lattice, seed: int
) -> SpectralField:
    """Random field whose grid values vanish at every inside point."""
    rng = np.random.default_rng(seed)
    shape = mask.inside.shape
    grid = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    grid[mask.inside] = 0.0
    spectrum = np.fft.fftn(grid) / mask.points**mask.n
    # one representative mode per residue class
    reps = np.arange(-(mask.points // 2), mask.points - mask.points // 2)
    coeffs = np.zeros(lattice.shape, dtype=np.complex128)
    axes = np.meshgrid(*([reps] * mask.n), indexing="ij")
    coeffs[tuple(a + lattice.K for a in axes)] = spectrum[tuple(np.mod(a, mask.points) for a in axes)]
    return SpectralField(lattice, coeffs)
