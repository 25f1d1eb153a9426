"""Regular elliptic boundary-value models on the unit disk.

Each model fixes A, the boundary system B = (B_1, ..., B_q) and the
auxiliary systems C, C+ and B+ of the Green formula

    (Au, v) + sum_j (B_j u, C+_j v) = (u, A+ v) + sum_j (C_j u, B+_j v)

with A+ = A. Signs are chosen so that the identity holds exactly for
(u, v)_Omega = integral of u conj(v) and (g, h)_Gamma = integral over theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from extscale.bvp.fields import BoundaryField, DiskField


class BoundaryKind(Enum):
    """Elementary boundary operators and their orders."""

    TRACE = 0
    NORMAL = 1
    LAPLACIAN_TRACE = 2
    NORMAL_LAPLACIAN = 3


@dataclass(frozen=True)
class BoundaryOperator:
    """sign * (elementary operator) restricted to the circle."""

    kind: BoundaryKind
    sign: float = 1.0

    @property
    def order(self) -> int:
        return self.kind.value

    def apply(self, u: DiskField) -> BoundaryField:
        if self.kind is BoundaryKind.TRACE:
            g = u.trace()
        elif self.kind is BoundaryKind.NORMAL:
            g = u.normal_derivative()
        elif self.kind is BoundaryKind.LAPLACIAN_TRACE:
            g = u.laplacian().trace()
        else:
            g = u.laplacian().normal_derivative()
        return g if self.sign == 1.0 else g.scale(self.sign)

    def __str__(self) -> str:
        names = {
            BoundaryKind.TRACE: "u",
            BoundaryKind.NORMAL: "d_n u",
            BoundaryKind.LAPLACIAN_TRACE: "Delta u",
            BoundaryKind.NORMAL_LAPLACIAN: "d_n Delta u",
        }
        return ("-" if self.sign < 0 else "") + names[self.kind]


TRACE = BoundaryOperator(BoundaryKind.TRACE)
NORMAL = BoundaryOperator(BoundaryKind.NORMAL)


@dataclass(frozen=True)
class BvpData:
    """Right-hand side (f, g_1, ..., g_q) of a boundary-value problem."""

    f: DiskField
    g: tuple[BoundaryField, ...]


@dataclass(frozen=True)
class BvpModel:
    """A regular elliptic problem (A, B) in the unit disk.

    Attributes:
        name: Model identifier used in configs and reports
        q: Half order; A has order 2q (A = -Delta for q = 1, Delta^2 for q = 2)
        boundary: B_1..B_q
        green_c: C_1..C_q
        green_c_plus: C+_1..C+_q
        adjoint_boundary: B+_1..B+_q
    """

    name: str
    q: int
    boundary: tuple[BoundaryOperator, ...]
    green_c: tuple[BoundaryOperator, ...]
    green_c_plus: tuple[BoundaryOperator, ...]
    adjoint_boundary: tuple[BoundaryOperator, ...]

    def __post_init__(self) -> None:
        if self.q not in (1, 2):
            raise ValueError("only second and fourth order models are supported")
        systems = (self.boundary, self.green_c, self.green_c_plus, self.adjoint_boundary)
        if any(len(system) != self.q for system in systems):
            raise ValueError(f"model {self.name} needs {self.q} operators per boundary system")
        orders = self.orders
        if len(set(orders)) != len(orders) or max(orders) > 2 * self.q - 1:
            raise ValueError(f"boundary orders {orders} are not normal for order {2 * self.q}")
        for c, b_plus in zip(self.green_c, self.adjoint_boundary):
            if c.order + b_plus.order != 2 * self.q - 1:
                raise ValueError("ord C_j + ord B+_j must equal 2q - 1")

    @property
    def order(self) -> int:
        return 2 * self.q

    @property
    def orders(self) -> tuple[int, ...]:
        """Boundary orders m_j."""
        return tuple(op.order for op in self.boundary)

    @property
    def m(self) -> int:
        return max(self.orders)

    def apply_operator(self, u: DiskField) -> DiskField:
        """A u."""
        if self.q == 1:
            return u.laplacian().scale(-1.0)
        return u.laplacian().laplacian()

    def particular(self, f: DiskField) -> DiskField:
        """A solution of A u = f with all Dirichlet traces of u zero."""
        if self.q == 1:
            return f.dirichlet_inverse_laplacian().scale(-1.0)
        return f.dirichlet_inverse_laplacian().dirichlet_inverse_laplacian()

    def mode_matrix(
        self, k: int, operators: tuple[BoundaryOperator, ...] | None = None
    ) -> NDArray[np.complex128]:
        """Boundary operators applied to the homogeneous basis r^(|k|+2j), j < q.

        Entry [i, j] is the k-th coefficient of operators[i](r^(|k|+2j) e^{ik theta}).
        """
        ops = self.boundary if operators is None else operators
        K = abs(k)
        matrix = np.zeros((len(ops), self.q), dtype=np.complex128)
        for j in range(self.q):
            basis = DiskField.monomial(K, k, j)
            for i, op in enumerate(ops):
                matrix[i, j] = op.apply(basis).at(k)
        return matrix


def apply_model(model: BvpModel, u: DiskField) -> BvpData:
    """The operator (A, B): u -> (Au, B_1 u, ..., B_q u)."""
    return BvpData(model.apply_operator(u), tuple(op.apply(u) for op in model.boundary))


def green_identity_residual(model: BvpModel, u: DiskField, v: DiskField) -> float:
    """|(Au,v) + sum (B_j u, C+_j v) - (u, A+v) - sum (C_j u, B+_j v)|."""
    lhs = model.apply_operator(u).inner(v) + sum(
        b.apply(u).inner(c_plus.apply(v))
        for b, c_plus in zip(model.boundary, model.green_c_plus)
    )
    rhs = u.inner(model.apply_operator(v)) + sum(
        c.apply(u).inner(b_plus.apply(v))
        for c, b_plus in zip(model.green_c, model.adjoint_boundary)
    )
    return float(abs(lhs - rhs))


def _op(kind: BoundaryKind, sign: float = 1.0) -> BoundaryOperator:
    return BoundaryOperator(kind, sign)


DIRICHLET = BvpModel(
    name="dirichlet",
    q=1,
    boundary=(TRACE,),
    green_c=(_op(BoundaryKind.NORMAL, -1.0),),
    green_c_plus=(_op(BoundaryKind.NORMAL, -1.0),),
    adjoint_boundary=(TRACE,),
)

NEUMANN = BvpModel(
    name="neumann",
    q=1,
    boundary=(NORMAL,),
    green_c=(TRACE,),
    green_c_plus=(TRACE,),
    adjoint_boundary=(NORMAL,),
)

BIHARMONIC = BvpModel(
    name="biharmonic",
    q=2,
    boundary=(TRACE, NORMAL),
    green_c=(_op(BoundaryKind.NORMAL_LAPLACIAN), _op(BoundaryKind.LAPLACIAN_TRACE, -1.0)),
    green_c_plus=(_op(BoundaryKind.NORMAL_LAPLACIAN), _op(BoundaryKind.LAPLACIAN_TRACE, -1.0)),
    adjoint_boundary=(TRACE, NORMAL),
)

MODELS: dict[str, BvpModel] = {model.name: model for model in (DIRICHLET, NEUMANN, BIHARMONIC)}


def get_model(name: str) -> BvpModel:
    """Look up a model by name.

    Raises:
        KeyError: If no model has that name
    """
    if name not in MODELS:
        raise KeyError(f"Unknown model '{name}'. Available: {sorted(MODELS)}")
    return MODELS[name]
