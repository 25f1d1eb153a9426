"""Regular elliptic boundary-value models on the unit disk."""

from extscale.bvp.estimates import (
    AprioriEstimate,
    ClassicalPrediction,
    DISK_POINTS,
    DiskNorms,
    FredholmInvariance,
    IsomorphismBounds,
    apriori_ratio,
    classical_prediction,
    data_norm,
    fredholm_invariance,
    harmonic_surrogate_norm,
    homogeneous_samples,
    isomorphism_condition,
    regularity_lift_check,
    regularity_shift_exact,
    route_agreement,
    torus_solve,
)
from extscale.bvp.fields import (
    BoundaryField,
    DiskField,
    gamma_norm,
    load_boundary,
    save_boundary,
    save_solution,
)
from extscale.bvp.models import (
    BIHARMONIC,
    DIRICHLET,
    MODELS,
    NEUMANN,
    BoundaryKind,
    BoundaryOperator,
    BvpData,
    BvpModel,
    apply_model,
    get_model,
    green_identity_residual,
)
from extscale.bvp.radial import (
    fd_dirichlet_mode,
    green_dirichlet_mode,
    green_mode_solve,
    green_polynomial_mode,
)
from extscale.bvp.solver import (
    FredholmData,
    ModeSolution,
    ProjectorPair,
    compatibility_defect,
    fredholm_data,
    kernel_residual,
    projectors,
    solve,
    solve_mode,
)

__all__ = [
    "AprioriEstimate",
    "BIHARMONIC",
    "BoundaryField",
    "BoundaryKind",
    "BoundaryOperator",
    "BvpData",
    "BvpModel",
    "ClassicalPrediction",
    "DIRICHLET",
    "DISK_POINTS",
    "DiskField",
    "DiskNorms",
    "FredholmData",
    "FredholmInvariance",
    "IsomorphismBounds",
    "MODELS",
    "ModeSolution",
    "NEUMANN",
    "ProjectorPair",
    "apply_model",
    "apriori_ratio",
    "classical_prediction",
    "compatibility_defect",
    "data_norm",
    "fd_dirichlet_mode",
    "fredholm_data",
    "fredholm_invariance",
    "gamma_norm",
    "get_model",
    "green_dirichlet_mode",
    "green_identity_residual",
    "green_mode_solve",
    "green_polynomial_mode",
    "harmonic_surrogate_norm",
    "homogeneous_samples",
    "isomorphism_condition",
    "kernel_residual",
    "load_boundary",
    "projectors",
    "regularity_lift_check",
    "regularity_shift_exact",
    "route_agreement",
    "save_boundary",
    "save_solution",
    "solve",
    "solve_mode",
    "torus_solve",
]
