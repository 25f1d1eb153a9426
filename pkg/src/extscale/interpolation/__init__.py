"""Interpolation with a function parameter for Sobolev pairs on the torus."""

from extscale.interpolation.norms import (
    DirectSumPair,
    HilbertPairSpec,
    interp_norm,
    verify_direct_sum,
    verify_interp_identity,
)
from extscale.interpolation.parameter import (
    InterpolationParameter,
    PowerParameter,
    PseudoconcavityResult,
    WeightParameter,
    is_pseudoconcave,
    make_psi,
    pseudoconcavity_constant,
)

__all__ = [
    "DirectSumPair",
    "HilbertPairSpec",
    "InterpolationParameter",
    "PowerParameter",
    "PseudoconcavityResult",
    "WeightParameter",
    "interp_norm",
    "is_pseudoconcave",
    "make_psi",
    "pseudoconcavity_constant",
    "verify_direct_sum",
    "verify_interp_identity",
]
