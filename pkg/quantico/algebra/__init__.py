"""Módulo de álgebra: corpos GF(2^a), polinômios e geometria afim de F^d."""

from quantico.algebra.gf import FieldElem, FieldParams, field_for_order, get_field
from quantico.algebra.mpoly import DataTable, LdeParams, MultiPoly, UniPoly, interpolate_lde
from quantico.algebra.geom import AffineSubspace, Line, LinearMap, line_catalog

__all__ = [
    "FieldParams",
    "FieldElem",
    "get_field",
    "field_for_order",
    "LdeParams",
    "DataTable",
    "MultiPoly",
    "UniPoly",
    "interpolate_lde",
    "Line",
    "AffineSubspace",
    "LinearMap",
    "line_catalog",
]
