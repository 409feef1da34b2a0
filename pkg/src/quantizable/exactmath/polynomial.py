"""Dense univariate polynomials in ``q`` with rational coefficients.

Internally a polynomial is an integer coefficient tuple over one positive
common denominator, kept in lowest terms, which makes products plain
integer convolutions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Union

Coefficient = Union[int, Fraction]


def _strip_ints(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _content(c: Iterable[int]) -> int:
    g = 0
    for x in c:
        g = igcd(g, x)
        if g == 1:
            break
    return g


class Polynomial:
    """An immutable polynomial; ``coeffs`` lists rationals lowest degree first.

    The zero polynomial has no coefficients; otherwise the last coefficient
    is nonzero.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable[Coefficient] = ()):
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // igcd(den, c.denominator)
        num = [int(c.numerator * (den // c.denominator)) for c in fr]
        self._set(_strip_ints(num), den)

    def _set(self, num: list[int], den: int) -> None:
        if not num:
            self._num, self._den = (), 1
        else:
            if den < 0:
                num, den = [-x for x in num], -den
            g = igcd(_content(num), den)
            if g > 1:
                num = [x // g for x in num]
                den //= g
            self._num, self._den = tuple(num), den
        self._hash = None

    @classmethod
    def _make(cls, num: list[int], den: int = 1) -> "Polynomial":
        p = cls.__new__(cls)
        p._set(_strip_ints(num), den)
        return p

    @classmethod
    def constant(cls, c: Coefficient) -> "Polynomial":
        c = Fraction(c)
        return cls._make([c.numerator], c.denominator)

    @classmethod
    def monomial(cls, degree: int, c: Coefficient = 1) -> "Polynomial":
        c = Fraction(c)
        return cls._make([0] * degree + [c.numerator], c.denominator)

    @classmethod
    def q(cls) -> "Polynomial":
        return cls._make([0, 1])

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._num) - 1

    @property
    def leading(self) -> Fraction:
        return Fraction(self._num[-1], self._den) if self._num else Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def constant_term(self) -> Fraction:
        return Fraction(self._num[0], self._den) if self._num else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Polynomial", self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __neg__(self) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p._num, p._den, p._hash = tuple(-c for c in self._num), self._den, None
        return p

    def __pos__(self) -> "Polynomial":
        return self

    def __add__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            return self
        if not self._num:
            return o
        d1, d2 = self._den, o._den
        if d1 == d2:
            a, b, den = self._num, o._num, d1
        else:
            g = igcd(d1, d2)
            m1, m2 = d2 // g, d1 // g
            a = [x * m1 for x in self._num]
            b = [x * m2 for x in o._num]
            den = d1 * m1
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return Polynomial._make(res, den)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial._make([x * c.numerator for x in self._num], self._den * c.denominator)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._num, other._num
        if not a or not b:
            return Polynomial._make([])
        return Polynomial._make(_convolve(a, b), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Polynomial):
            from .ratfunc import RationalFunction

            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            from .ratfunc import RationalFunction

            return RationalFunction(Polynomial.constant(other), self)
        return NotImplemented

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return poly_divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be any ring element."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._num):
                acc = acc * x + c
            return acc / self._den
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if not self._num:
            return self
        if self._num[-1] == 1 and self._den == 1:
            return self
        return Polynomial._make(list(self._num), self._num[-1])

    def primitive(self) -> tuple[list[int], Fraction]:
        """``(P, c)`` with ``self = c * P``, ``P`` a primitive integer list."""
        if not self._num:
            return [], Fraction(0)
        g = _content(self._num)
        if self._num[-1] < 0:
            g = -g
        return [x // g for x in self._num], Fraction(g, self._den)

    def derivative(self) -> "Polynomial":
        return Polynomial._make([c * i for i, c in enumerate(self._num)][1:], self._den)

    def integer_coefficients(self) -> list[int] | None:
        """The coefficients as ints, or None if any is non-integral."""
        if self._den != 1:
            return None
        return list(self._num)


def _convolve(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    res = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                res[i + j] += x * y
    return res


def _int_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int], int]:
    """Pseudo-division: ``s * a = quo * b + rem`` with ``s = lead(b)^k``."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(rem) - 1 < db:
        return [], rem, 1
    quo = [0] * (len(rem) - db)
    scale = 1
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if not top:
            continue
        if top % lb:
            # bring everything to a common multiple so the step is exact
            rem = [x * lb for x in rem]
            quo = [x * lb for x in quo]
            scale *= lb
            top *= lb
        c = top // lb
        quo[k] = c
        for j in range(db + 1):
            rem[k + j] -= c * b[j]
    return quo, _strip_ints(rem[:db]), scale


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if not b._num:
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return Polynomial._make([]), a
    B, cb = b.primitive()
    quo, rem, scale = _int_divmod(list(a._num), B)
    # scale * A = quo * B + rem, a = A / da, b = cb * B
    da = a._den
    q = Polynomial._make(quo, scale * da) * (1 / cb)
    r = Polynomial._make(rem, scale * da)
    return q, r


def exact_quotient(a: Polynomial, b: Polynomial) -> Polynomial:
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


# -- gcd via primitive integer remainder sequences ---------------------------


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        if lr % lb == 0:
            c = lr // lb
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
        else:
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[shift + j] -= lr * b[j]
        _strip_ints(r)
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q; gcd(0, 0) is 0."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Polynomial._make([1])
    x, y = a.primitive()[0], b.primitive()[0]
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        if r:
            g = _content(r)
            if g > 1:
                r = [c // g for c in r]
        x, y = y, r
    return Polynomial._make(x).monic()


# -- formatting ---------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, var: str = "q") -> str:
    """Descending-degree text with explicit ``*``; re-parseable."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    coeffs = p.coeffs
    for k in range(p.degree, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
