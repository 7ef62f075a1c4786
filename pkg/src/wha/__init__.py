"""Workbench for finite-dimensional weak C*-Hopf algebras over exact
real algebraic number fields."""

from .scalars import (
    NumberField, FieldElement, ApproxComplex, ApproxField,
    field_make, field_arith, rationals, embed, sign_of, ScalarError,
)

__all__ = [
    "NumberField", "FieldElement", "ApproxComplex", "ApproxField",
    "field_make", "field_arith", "rationals", "embed", "sign_of", "ScalarError",
]

__version__ = "0.1.0"
