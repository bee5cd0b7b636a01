"""Multiplicity strata, tangent flats and the Viete map for monic polynomials."""

from .flats import AffineFlat, EmptyIntersection
from .partitions import Partition
from .poly_core import MonicPoly, RootConfig, RootFindingError, from_roots, roots, shift

__version__ = "0.1.0"

__all__ = [
    "AffineFlat",
    "EmptyIntersection",
    "MonicPoly",
    "Partition",
    "RootConfig",
    "RootFindingError",
    "from_roots",
    "roots",
    "shift",
]
