"""RO-varying weights: families, indices and membership checks."""

from extscale.weights.analysis import (
    RoMembership,
    best_indices,
    check_ro_membership,
    estimate_indices,
    grows_without_bound,
    indices,
    shift,
)
from extscale.weights.base import IndexGrid, IndexMethod, MatuszewskaIndices, RoWeight
from extscale.weights.families import (
    OscPowerWeight,
    PowerLogWeight,
    PowerWeight,
    RepresentedWeight,
    ShiftedWeight,
)
from extscale.weights.registry import WeightRegistry, weight_from_spec, weight_registry

__all__ = [
    "IndexGrid",
    "IndexMethod",
    "MatuszewskaIndices",
    "OscPowerWeight",
    "PowerLogWeight",
    "PowerWeight",
    "RepresentedWeight",
    "RoMembership",
    "RoWeight",
    "ShiftedWeight",
    "WeightRegistry",
    "best_indices",
    "check_ro_membership",
    "estimate_indices",
    "grows_without_bound",
    "indices",
    "shift",
    "weight_from_spec",
    "weight_registry",
]
