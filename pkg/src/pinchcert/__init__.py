"""Exact certification of the algebra behind a pinching theorem for minimal hypersurfaces."""

from pinchcert.exactnum import parse_rational, format_rational, rat_make, rat_binop
from pinchcert.multipoly import MultiPoly, VarTable, parse_poly

__all__ = [
    "MultiPoly",
    "VarTable",
    "format_rational",
    "parse_poly",
    "parse_rational",
    "rat_binop",
    "rat_make",
]
