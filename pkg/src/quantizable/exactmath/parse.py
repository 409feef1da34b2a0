"""Recursive-descent parser for polynomial and rational-function text.

Grammar (explicit ``*`` only; ``4q`` is a syntax error)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ['^' INT]
    atom   := INT | 'q' | '(' expr ')' | ('+'|'-') power
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial
from .ratfunc import RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownIdentifierError(ParseError):
    pass


class NegativeExponentError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, allow_q: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_q = allow_q

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ParseError(msg, tok.pos, self.text)

    def parse(self) -> RationalFunction:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        val = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"expected operator, found {tok.value!r}", tok)
        return val

    def expr(self) -> RationalFunction:
        val = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RationalFunction:
        val = self.power()
        while self.peek().kind == "op" and self.peek().value in "*/":
            op_tok = self.take()
            rhs = self.power()
            if op_tok.value == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", op_tok.pos, self.text)
                val = val / rhs
        return val

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.peek()
            if tok.kind == "op" and tok.value == "-":
                raise NegativeExponentError("negative exponent", tok.pos, self.text)
            if tok.kind == "op" and tok.value == "(":
                # parenthesised exponent: must still be a nonnegative integer literal
                self.take()
                neg = self.peek().kind == "op" and self.peek().value == "-"
                if neg:
                    raise NegativeExponentError("negative exponent", self.peek().pos, self.text)
                inner = self.take()
                if inner.kind != "int":
                    raise self.error("exponent must be an integer literal", inner)
                close = self.take()
                if close.kind != "op" or close.value != ")":
                    raise self.error("expected ')'", close)
                return base ** int(inner.value)
            if tok.kind != "int":
                raise self.error("exponent must be an integer literal", tok)
            self.take()
            return base ** int(tok.value)
        return base

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok.kind == "int":
            return RationalFunction(Polynomial.constant(int(tok.value)))
        if tok.kind == "name":
            if tok.value == "q" and self.allow_q:
                return RationalFunction.q()
            raise UnknownIdentifierError(f"unknown identifier {tok.value!r}", tok.pos, self.text)
        if tok.kind == "op" and tok.value == "(":
            val = self.expr()
            close = self.take()
            if close.kind != "op" or close.value != ")":
                raise self.error("expected ')'", close)
            return val
        if tok.kind == "op" and tok.value in "+-":
            val = self.power()
            return -val if tok.value == "-" else val
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {tok.value!r}", tok)


def parse_rational_function(text: str) -> RationalFunction:
    return _Parser(text, allow_q=True).parse()


def parse_polynomial(text: str) -> Polynomial:
    """Parse and expand ``text`` into a canonical polynomial.

    Division is accepted only where it leaves a polynomial, e.g. ``1/2*q``.
    """
    val = parse_rational_function(text)
    if not val.is_polynomial():
        raise ParseError("expression is not a polynomial", 0, text)
    return val.num


def parse_rational(text: str) -> Fraction:
    val = _Parser(text, allow_q=False).parse()
    return val.num.constant_term()
