"""Quotient norms H^phi(Omega) on domains inside the torus."""

from extscale.quotient.collocation import CollocationOperator, restriction
from extscale.quotient.mask import DomainMask, load_mask, save_mask
from extscale.quotient.solver import (
    QuotientFactorization,
    QuotientProblem,
    QuotientResult,
    dense_kkt_solve,
    outside_supported_field,
    quotient_norm,
    quotient_upper_bound,
)

__all__ = [
    "CollocationOperator",
    "DomainMask",
    "QuotientFactorization",
    "QuotientProblem",
    "QuotientResult",
    "dense_kkt_solve",
    "load_mask",
    "outside_supported_field",
    "quotient_norm",
    "quotient_upper_bound",
    "restriction",
    "save_mask",
]
