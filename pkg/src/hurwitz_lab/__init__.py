"""Exact classical and weighted Hurwitz numbers, computed by several
independent routes and cross-validated against each other."""

from .errors import (
    EmptyProfileList, HurwitzLabError, InconsistentSystem, InsufficientParameters,
    NonUnitConstantTerm, NotDivisible, RepeatedPoint, TooLarge, TruncationError,
    Underdetermined, WeightMismatch,
)
from .exact_ring import BetaSeries, LaurentPoly, VarId, poly_det, poly_exact_div, series_invert
from .partitions import Partition, partitions_of
from .weights import WeightFunc

__all__ = [
    "BetaSeries", "EmptyProfileList", "HurwitzLabError", "InconsistentSystem",
    "InsufficientParameters", "LaurentPoly", "NonUnitConstantTerm", "NotDivisible", "Partition",
    "RepeatedPoint", "TooLarge", "TruncationError", "Underdetermined", "VarId", "WeightFunc",
    "WeightMismatch", "partitions_of", "poly_det", "poly_exact_div", "series_invert",
]
__version__ = "0.1.0"
