"""Integrable highest-weight modules, weight multiplicities and quiver
combinatorics."""

from .module import (
    IntegrableModule,
    UqReport,
    build_module,
    shapovalov_cyclotomic_dim,
    shapovalov_form,
    verify_uq_relations,
)
from .quiver import (
    QuiverDims,
    nakajima_nonempty,
    nakajima_string,
    period_class,
    period_coefficients,
    quiver_space_dims,
    twist_coordinates,
    twist_integrality,
)
from .weights import (
    depth_of,
    freudenthal_multiplicity,
    multiplicity_at_depth,
    root_multiplicity,
    string_support,
)

__all__ = [
    "IntegrableModule",
    "QuiverDims",
    "UqReport",
    "build_module",
    "depth_of",
    "freudenthal_multiplicity",
    "multiplicity_at_depth",
    "nakajima_nonempty",
    "nakajima_string",
    "period_class",
    "period_coefficients",
    "quiver_space_dims",
    "root_multiplicity",
    "shapovalov_cyclotomic_dim",
    "shapovalov_form",
    "string_support",
    "twist_coordinates",
    "twist_integrality",
    "verify_uq_relations",
]
