"""The two coefficient fields, Q and Q(q), behind one small interface.

Elements of Q are :class:`fractions.Fraction`; elements of Q(q) are
:class:`RationalFunction`. Plain ``int`` is accepted by both as a constant.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from .parse import parse_rational, parse_rational_function
from .polynomial import Polynomial
from .ratfunc import FieldMismatchError, RationalFunction

Scalar = Union[Fraction, RationalFunction]


class Field:
    name: str = ""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def __call__(self, x):
        """Coerce ``x`` into this field."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self(x))

    def contains(self, x) -> bool:
        raise NotImplementedError

    def is_integer(self, x) -> bool:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, bool):
            raise FieldMismatchError("bool is not a scalar")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"{type(x).__name__} is not an element of Q")

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)

    def format(self, x) -> str:
        x = self(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def is_integer(self, x) -> bool:
        return self(x).denominator == 1


class RationalFunctionField(Field):
    name = "Q(q)"

    def zero(self) -> RationalFunction:
        return RationalFunction(0)

    def one(self) -> RationalFunction:
        return RationalFunction(1)

    def __call__(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        if isinstance(x, int) and not isinstance(x, bool):
            return RationalFunction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"{type(x).__name__} is not an element of Q(q)")

    def parse(self, text: str) -> RationalFunction:
        return parse_rational_function(text)

    def contains(self, x) -> bool:
        return isinstance(x, (RationalFunction, Polynomial)) or (
            isinstance(x, int) and not isinstance(x, bool)
        )

    def is_integer(self, x) -> bool:
        x = self(x)
        if not x.is_polynomial() or not x.num.is_constant():
            return False
        return x.num.constant_term().denominator == 1


QQ = RationalField()
QQq = RationalFunctionField()

_BY_NAME = {"Q": QQ, "Q(q)": QQq, "Qq": QQq, "QQ": QQ}


def field_by_name(name: str) -> Field:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown field {name!r}; expected 'Q' or 'Q(q)'") from None


def field_of(x) -> Field:
    """The field an element lives in. Bare ints are taken to be rationals."""
    if isinstance(x, (RationalFunction, Polynomial)):
        return QQq
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise FieldMismatchError(f"{type(x).__name__} is not a scalar")


def common_field(values) -> Field | None:
    """The one field shared by ``values``; raises on a mix of Q and Q(q).

    Ints are compatible with either field. Returns None if every value is an int.
    """
    found = None
    for v in values:
        if isinstance(v, int) and not isinstance(v, bool):
            continue
        f = field_of(v)
        if found is None:
            found = f
        elif f is not found:
            raise FieldMismatchError(f"mixed scalars from {found.name} and {f.name}")
    return found


def scalar_arith(a, b, op: str):
    """Exact ``a op b`` for two scalars of the same field."""
    fa, fb = field_of(a), field_of(b)
    if fa is not fb:
        raise FieldMismatchError(f"cannot combine {fa.name} with {fb.name}")
    a, b = fa(a), fb(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_in_integer_subring(a) -> bool:
    """True iff ``a`` lies in the subring generated by 1."""
    return field_of(a).is_integer(a)
