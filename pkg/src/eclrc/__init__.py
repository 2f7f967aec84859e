"""Optimal locally repairable codes from elliptic curves over finite fields."""
from .gf import FieldSpec, make_field, field_of_order
from .curve import O, Curve, Point, find_maximal_curve
from .funcfield import Divisor, FuncElem
from .autgroup import CurveAut, StabAut, Subgroup
from .lrc import LrcCode, build_code

__all__ = [
    "FieldSpec",
    "make_field",
    "field_of_order",
    "O",
    "Curve",
    "Point",
    "find_maximal_curve",
    "Divisor",
    "FuncElem",
    "CurveAut",
    "StabAut",
    "Subgroup",
    "LrcCode",
    "build_code",
]

__version__ = "0.1.0"
