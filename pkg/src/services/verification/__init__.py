"""Verification harness: C-property checks and scheme comparisons."""

from .c_property import (
    DEFAULT_GRIDS,
    DEFAULT_STEPS,
    check_c_property,
    classify,
    convergence_order,
    measure_defect,
)
from .scheme_comparison import PairwiseDifference, SchemeComparison, compare_schemes

__all__ = [
    "DEFAULT_GRIDS",
    "DEFAULT_STEPS",
    "check_c_property",
    "classify",
    "convergence_order",
    "measure_defect",
    "PairwiseDifference",
    "SchemeComparison",
    "compare_schemes",
]
