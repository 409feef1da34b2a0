"""Exact scalars: rationals, polynomials in q, and the function field Q(q)."""
from fractions import Fraction

from .fields import (
    QQ,
    Field,
    QQq,
    Scalar,
    common_field,
    field_by_name,
    field_of,
    is_in_integer_subring,
    scalar_arith,
)
from .parse import (
    NegativeExponentError,
    ParseError,
    UnknownIdentifierError,
    parse_polynomial,
    parse_rational,
    parse_rational_function,
)
from .polynomial import Polynomial, exact_quotient, format_polynomial, poly_divmod, poly_gcd
from .ratfunc import FieldMismatchError, RationalFunction, clear_denominators

Rational = Fraction

__all__ = [
    "Fraction",
    "Rational",
    "Polynomial",
    "RationalFunction",
    "Scalar",
    "Field",
    "QQ",
    "QQq",
    "field_of",
    "field_by_name",
    "common_field",
    "scalar_arith",
    "is_in_integer_subring",
    "parse_polynomial",
    "parse_rational",
    "parse_rational_function",
    "format_polynomial",
    "poly_divmod",
    "poly_gcd",
    "exact_quotient",
    "ParseError",
    "UnknownIdentifierError",
    "NegativeExponentError",
    "FieldMismatchError",
    "clear_denominators",
]
