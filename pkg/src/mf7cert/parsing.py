"""A small recursive-descent parser for polynomial expressions.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' number))*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' integer)?
    atom   := number | identifier | '(' expr ')'

Error positions are 1-based character offsets into the input.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactalg import MF7, MultiPoly, PolyRing


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.message = message
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "id", "op", "end"
    text: str
    pos: int  # 1-based


def _tokenize(text: str) -> list:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            break
        if m.group(1):
            toks.append(_Tok("num", m.group(1), m.start(1) + 1))
        elif m.group(2):
            toks.append(_Tok("id", m.group(2), m.start(2) + 1))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3) + 1)
            toks.append(_Tok("op", ch, m.start(3) + 1))
        i = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: PolyRing, names: Mapping[str, MultiPoly]):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.names = names

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, ch: str) -> None:
        t = self.take()
        if t.kind != "op" or t.text != ch:
            raise ParseError(f"expected {ch!r}", t.pos)

    def parse(self) -> MultiPoly:
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return value

    def expr(self) -> MultiPoly:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> MultiPoly:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            if op.text == "*":
                value = value * self.unary()
            else:
                t = self.take()
                if t.kind != "num":
                    raise ParseError("division is only allowed by an integer literal", t.pos)
                d = int(t.text)
                if d == 0:
                    raise ParseError("division by zero", t.pos)
                value = value * self.ring.const(Fraction(1, d))
        return value

    def unary(self) -> MultiPoly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "num":
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            return base ** int(t.text)
        return base

    def atom(self) -> MultiPoly:
        t = self.take()
        if t.kind == "num":
            return self.ring.const(int(t.text))
        if t.kind == "id":
            if t.text not in self.names:
                raise ParseError(f"unknown identifier {t.text!r}", t.pos)
            return self.names[t.text]
        if t.kind == "op" and t.text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def mf7_aliases(ring: PolyRing) -> dict:
    """sigma1, sigma2, sigma3, p (and s1, s3) as polynomials in ``ring``."""
    z1, z2, z3 = ring.gen("z1"), ring.gen("z2"), ring.gen("z3")
    s1 = z1 + z2 + z3
    s2 = z1 * z2 + z2 * z3 + z3 * z1
    s3 = z1 * z2 * z3
    p = z1 * z1 * z2 + z2 * z2 * z3 + z3 * z3 * z1
    return {"sigma1": s1, "sigma2": s2, "sigma3": s3, "s1": s1, "s3": s3, "p": p}


def parse_expr(text: str, ring: PolyRing = MF7, aliases: Mapping[str, MultiPoly] | None = None) -> MultiPoly:
    """Parse ``text`` into ``ring``; in rings with z1, z2, z3 the symmetric
    functions are available as sigma1, sigma2, sigma3 and p."""
    names = dict(ring.gens_dict())
    if {"z1", "z2", "z3"} <= set(ring.gens):
        for k, v in mf7_aliases(ring).items():
            names.setdefault(k, v)
    if aliases:
        names.update(aliases)
    return _Parser(text, ring, names).parse()
