"""Executable companion to rainbow saturation numbers of complete graphs."""

from .codes import (
    RateReport,
    StringFamily,
    balanced_type_family,
    concat_product,
    cyclic_family,
    exact_max_family,
    greedy_search,
    has_pair_property,
    rate_report,
    verify_family,
)
from .construct import build_bipartite, construction_report, maximal_extension
from .errors import ContractViolation, FormatError, ParameterError, ResourceError
from .graph import (
    ColoredGraph,
    SaturationReport,
    creates_rainbow_through,
    find_rainbow_clique,
    is_rainbow_saturated,
)
from .oracle import LowerBoundReport, RsatResult, bound_formulas, exact_rsat, lower_bound_witness_check

__version__ = "0.1.0"

__all__ = [
    "ColoredGraph",
    "ContractViolation",
    "FormatError",
    "LowerBoundReport",
    "ParameterError",
    "RateReport",
    "ResourceError",
    "RsatResult",
    "SaturationReport",
    "StringFamily",
    "balanced_type_family",
    "bound_formulas",
    "build_bipartite",
    "concat_product",
    "construction_report",
    "creates_rainbow_through",
    "cyclic_family",
    "exact_max_family",
    "exact_rsat",
    "find_rainbow_clique",
    "greedy_search",
    "has_pair_property",
    "is_rainbow_saturated",
    "lower_bound_witness_check",
    "maximal_extension",
    "rate_report",
    "verify_family",
]
