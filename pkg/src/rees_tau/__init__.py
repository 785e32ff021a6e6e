"""Rees algebras, differential saturation, the tau-invariant and elimination."""

from .polyring import FieldSpec, MultiPoly, Ring, hasse_derivative, initial_form, substitute
from .parser import parse_poly

__all__ = [
    "FieldSpec",
    "MultiPoly",
    "Ring",
    "hasse_derivative",
    "initial_form",
    "parse_poly",
    "substitute",
]
