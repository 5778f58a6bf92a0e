"""Exact polynomial algebra over prime fields through symmetric functions of
roots: GCD, LCM, resultants, squarefree decomposition and related operations,
plus constant-depth arithmetic circuit builders for them."""

from .field import FieldCtx
from .upoly import DensePoly, format_poly, parse_poly

__all__ = ["FieldCtx", "DensePoly", "parse_poly", "format_poly"]
__version__ = "0.1.0"
