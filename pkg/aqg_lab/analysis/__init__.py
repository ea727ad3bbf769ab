"""Norms, random test fields and empirical checks of the functional inequalities."""

from .lemmas import (
    RatioReport,
    ResolutionRatio,
    check_commutator,
    check_interpolation,
    check_lp_interpolation,
    check_pointwise_product,
    check_product_estimate,
    check_riesz_lp,
    check_sobolev_interpolation,
    pointwise_product_constant,
)
from .norms import (
    NormKind,
    NormRequest,
    directional_norm,
    dissipation_pair,
    homogeneous_norm,
    inner_product,
    l2_norm,
    lp_norm,
    sobolev_norm,
)
from .random_fields import random_field, seeded_field
from .suite import LEMMAS, LemmaVerdict, verify_lemmas

__all__ = [
    "NormKind",
    "NormRequest",
    "lp_norm",
    "l2_norm",
    "sobolev_norm",
    "homogeneous_norm",
    "directional_norm",
    "dissipation_pair",
    "inner_product",
    "random_field",
    "seeded_field",
    "RatioReport",
    "ResolutionRatio",
    "check_interpolation",
    "check_product_estimate",
    "check_riesz_lp",
    "check_commutator",
    "check_pointwise_product",
    "check_sobolev_interpolation",
    "check_lp_interpolation",
    "pointwise_product_constant",
    "LEMMAS",
    "LemmaVerdict",
    "verify_lemmas",
]
