"""Cohomology of metacyclic groups with coefficients in group-ring lattices mod d."""

from .errors import CohomKernError
from .groups import MetacyclicGroup, make_group, parse_descriptor

__all__ = ["CohomKernError", "MetacyclicGroup", "make_group", "parse_descriptor"]
__version__ = "0.1.0"
