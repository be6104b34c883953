"""Commutants of subalgebras in symmetric algebras and the polynomial Poisson
algebras they generate, computed exactly over Q(sqrt2, sqrt3)."""

from .scalar import Scalar, parse_scalar
from .poly import Poly
from .lie import LieAlgebraSpec, BlockTable, make_sl, make_su3_elliott, validate, weight

__all__ = [
    "Scalar",
    "parse_scalar",
    "Poly",
    "LieAlgebraSpec",
    "BlockTable",
    "make_sl",
    "make_su3_elliott",
    "validate",
    "weight",
]
