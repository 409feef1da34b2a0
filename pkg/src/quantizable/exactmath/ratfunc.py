"""Elements of the function field Q(q)."""
from __future__ import annotations

from fractions import Fraction

from .polynomial import Polynomial, exact_quotient, poly_gcd


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


_ONE = Polynomial.constant(1)
_ZERO = Polynomial()


class RationalFunction:
    """A reduced fraction ``num / den`` with ``den`` monic.

    Zero is stored as ``0 / 1``. Two rational functions are equal iff their
    stored numerators and denominators coincide.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Polynomial.constant(num)
        if den is None:
            den = _ONE
        elif isinstance(den, (int, Fraction)):
            den = Polynomial.constant(den)
        if not isinstance(num, Polynomial) or not isinstance(den, Polynomial):
            raise FieldMismatchError(
                f"cannot build a rational function from {type(num).__name__}"
                f" / {type(den).__name__}"
            )
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = _ZERO, _ONE
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = exact_quotient(num, g)
                den = exact_quotient(den, g)
        lead = den.leading
        if lead != 1:
            num = num / lead
            den = den / lead
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        r = cls.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def q(cls) -> "RationalFunction":
        return cls._raw(Polynomial.q(), _ONE)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Polynomial)):
            return self.is_polynomial() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RationalFunction", self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    @staticmethod
    def _coerce(other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            return RationalFunction._raw(Polynomial.constant(other), _ONE)
        if isinstance(other, Polynomial):
            return RationalFunction._raw(other, _ONE)
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot combine an element of Q(q) with a bare rational")
        return None

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __pos__(self) -> "RationalFunction":
        return self

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self.den, o.den
        if d1.degree == 0 and d2.degree == 0:
            return RationalFunction._raw(self.num + o.num, _ONE)
        # with g = gcd(d1, d2), any common factor of the sum's numerator and
        # denominator already divides g
        g = poly_gcd(d1, d2)
        m1, m2 = exact_quotient(d1, g), exact_quotient(d2, g)
        num = self.num * m2 + o.num * m1
        if num.is_zero():
            return RationalFunction._raw(_ZERO, _ONE)
        den = d1 * m2
        if g.degree > 0:
            h = poly_gcd(num, g)
            if h.degree > 0:
                num, den = exact_quotient(num, h), exact_quotient(den, h)
        return RationalFunction._raw(num, den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RationalFunction._raw(self.num * o.num, _ONE)
        # cross-cancel before multiplying to keep degrees down
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d2.degree > 0:
            g1 = poly_gcd(n1, d2)
            if g1.degree > 0:
                n1, d2 = exact_quotient(n1, g1), exact_quotient(d2, g1)
        if d1.degree > 0:
            g2 = poly_gcd(n2, d1)
            if g2.degree > 0:
                n2, d1 = exact_quotient(n2, g2), exact_quotient(d1, g2)
        num, den = n1 * n2, d1 * d2
        if num.is_zero():
            return RationalFunction._raw(_ZERO, _ONE)
        lead = den.leading
        if lead != 1:
            num, den = num / lead, den / lead
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        num, den = self.den, self.num
        lead = den.leading
        if lead != 1:
            num, den = num / lead, den / lead
        return RationalFunction._raw(num, den)

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num**n, self.den**n)


def clear_denominators(values) -> tuple[list[Polynomial], Polynomial]:
    """``(P, d)`` with ``values[i] == P[i] / d`` and ``d`` the monic lcm."""
    d = _ONE
    for v in values:
        if v.den.degree > 0 and v.den != d:
            g = poly_gcd(d, v.den)
            d = d * exact_quotient(v.den, g)
    if d.degree == 0:
        return [v.num for v in values], d
    return [v.num * exact_quotient(d, v.den) for v in values], d
