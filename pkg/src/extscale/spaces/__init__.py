"""Hörmander spaces H^phi realized on the n-torus."""

from extscale.spaces.criteria import (
    CriterionResult,
    Verdict,
    ck_embedding_criterion,
    ck_prediction,
    integral_criterion,
)
from extscale.spaces.fields import SpectralField, load_field, random_field, save_field
from extscale.spaces.lattice import Lattice, smoothed_modulus
from extscale.spaces.norms import (
    EmbeddingResult,
    embedding_bounded,
    embedding_compact,
    h_norm,
    scale_bracket,
)
from extscale.spaces.witness import derivative_partial_sup, threshold_witness

__all__ = [
    "CriterionResult",
    "EmbeddingResult",
    "Lattice",
    "SpectralField",
    "Verdict",
    "ck_embedding_criterion",
    "ck_prediction",
    "derivative_partial_sup",
    "embedding_bounded",
    "embedding_compact",
    "h_norm",
    "integral_criterion",
    "load_field",
    "random_field",
    "save_field",
    "scale_bracket",
    "smoothed_modulus",
    "threshold_witness",
]
