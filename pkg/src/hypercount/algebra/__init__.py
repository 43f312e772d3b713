from .cyclotomic import CyclotomicInteger, PrimeFieldElement, character, is_prime
from .poly import (
    InexactDivision,
    LaurentPolynomial,
    RationalFunction,
    VariableMismatch,
    poly_gcd,
    variable,
)
from .series import BoxMismatch, TruncatedMultiSeries, box_points

__all__ = [
    "BoxMismatch",
    "CyclotomicInteger",
    "InexactDivision",
    "LaurentPolynomial",
    "PrimeFieldElement",
    "RationalFunction",
    "TruncatedMultiSeries",
    "VariableMismatch",
    "box_points",
    "character",
    "is_prime",
    "poly_gcd",
    "variable",
]
