"""Exact computer algebra for the infinite-dimensional l-super Galilean conformal algebra."""

from sgca.halfint import HalfInt
from sgca.algebra import (
    AlgebraParams,
    BasisGen,
    Element,
    bracket,
    super_jacobiator,
    verify_jacobi_window,
)

__all__ = [
    "HalfInt",
    "AlgebraParams",
    "BasisGen",
    "Element",
    "bracket",
    "super_jacobiator",
    "verify_jacobi_window",
]
