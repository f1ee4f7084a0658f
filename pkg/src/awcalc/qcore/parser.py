"""Recursive-descent parser for polynomial expressions in x.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-') unary | power
    power   := atom ('^' exponent)?
    atom    := NUMBER | 'x' | '(' expr ')'
    NUMBER  := digits ('.' digits)? ('/' digits)?  -- "1/2" binds as a literal
    exponent:= digits

Division is accepted only by a nonzero constant, so every accepted text
denotes a polynomial.  Offsets in errors are byte offsets into the UTF-8
encoding of the input.
"""

from __future__ import annotations

from ..errors import ExponentError, ExprSyntaxError
from .scalars import mpq
from .xpoly import XPoly

__all__ = ["parse_xpoly"]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.raw = text.encode("utf-8")
        self.pos = 0

    def error(self, msg, pos=None, cls=ExprSyntaxError):
        raise cls(msg, self.pos if pos is None else pos, self.text)

    def skip_ws(self):
        while self.pos < len(self.raw) and self.raw[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return chr(self.raw[self.pos]) if self.pos < len(self.raw) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def digits(self) -> str:
        start = self.pos
        while self.pos < len(self.raw) and 48 <= self.raw[self.pos] <= 57:
            self.pos += 1
        return self.raw[start : self.pos].decode()

    def parse(self) -> XPoly:
        if not self.text.strip():
            self.error("empty expression", 0)
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> XPoly:
        acc = self.term()
        while True:
            if self.take("+"):
                acc = acc + self.term()
            elif self.take("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> XPoly:
        acc = self.unary()
        while True:
            if self.take("*"):
                acc = acc * self.unary()
            elif self.peek() == "/":
                at = self.pos
                self.pos += 1
                rhs = self.unary()
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division only by a nonzero constant", at)
                acc = acc * (1 / rhs.coeffs[0])
            else:
                return acc

    def unary(self) -> XPoly:
        if self.take("-"):
            return -self.unary()
        if self.take("+"):
            return self.unary()
        return self.power()

    def power(self) -> XPoly:
        base = self.atom()
        if not self.take("^"):
            return base
        at = self.pos
        ch = self.peek()
        if ch in "-+(":
            self.error("exponent must be a nonnegative integer", at, ExponentError)
        if not ch.isdigit():
            self.error("missing exponent", at)
        text = self.digits()
        if self.pos < len(self.raw) and chr(self.raw[self.pos]) in "./":
            self.error("exponent must be a nonnegative integer", at, ExponentError)
        return base ** int(text)

    def atom(self) -> XPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if ch == "x":
            self.pos += 1
            return XPoly.x()
        if ch.isdigit() or ch == ".":
            return XPoly([self.number()])
        self.error("expected number, 'x' or '('" if ch else "unexpected end of input")

    def number(self):
        start = self.pos
        whole = self.digits()
        frac = ""
        if self.pos < len(self.raw) and self.raw[self.pos] == ord("."):
            self.pos += 1
            frac = self.digits()
            if not frac:
                self.error("malformed decimal literal", start)
        if not whole and not frac:
            self.error("malformed number", start)
        value = mpq(int(whole or "0") * 10 ** len(frac) + int(frac or "0"), 10 ** len(frac))
        # a slash directly followed by digits is part of a rational literal
        if (
            not frac
            and self.pos + 1 < len(self.raw)
            and self.raw[self.pos] == ord("/")
            and 48 <= self.raw[self.pos + 1] <= 57
        ):
            at = self.pos
            self.pos += 1
            den = int(self.digits())
            if den == 0:
                self.error("zero denominator in literal", at)
            value = value / den
        return value


def parse_xpoly(text: str) -> XPoly:
    """Parse text such as ``"x^2 - 3*x + 1/2"`` into an XPoly."""
    return _Parser(text).parse()
