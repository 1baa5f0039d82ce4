"""Small recursive-descent reader for scalar and rational-function text."""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .polys import Poly, RatFunc
from .scalars import Scalar


def _tokenize(text, var):
    toks = []
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
        elif ch.isdigit():
            j = k
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[k:j]), k))
            k = j
        elif ch.isalpha() or ch == "_":
            j = k
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[k:j]
            if word == "i":
                toks.append(("i", None, k))
            elif word == var:
                toks.append(("var", None, k))
            else:
                raise ParseError(f"unknown symbol {word!r} at offset {k}", 1, k + 1)
            k = j
        elif text.startswith("**", k):
            toks.append(("^", None, k))
            k += 2
        elif ch in "+-*/^()":
            toks.append((ch, None, k))
            k += 1
        else:
            raise ParseError(f"unexpected character {ch!r} at offset {k}", 1, k + 1)
    toks.append(("end", None, n))
    return toks


class _Reader:
    def __init__(self, text, var):
        self.toks = _tokenize(text, var)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg):
        off = self.toks[self.pos][2]
        raise ParseError(f"{msg} at offset {off}", 1, off + 1)

    def expr(self):
        val = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs:
                    self.fail("division by zero")
                val = val / rhs
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() != "num":
                self.fail("expected integer exponent")
            e = sign * self.take()[1]
            if e < 0 and not base:
                self.fail("zero to a negative power")
            base = base ** e
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return RatFunc.const(Scalar(Fraction(self.take()[1])))
        if kind == "i":
            self.take()
            return RatFunc.const(Scalar(0, 1))
        if kind == "var":
            self.take()
            return RatFunc.z()
        if kind == "(":
            self.take()
            val = self.expr()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return val
        self.fail("unexpected token")


def parse_ratfunc(text: str, var: str = "z") -> RatFunc:
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 1, 1)
    r = _Reader(text, var)
    val = r.expr()
    if r.peek() != "end":
        r.fail("trailing input")
    return val


def parse_poly(text: str, var: str = "z") -> Poly:
    f = parse_ratfunc(text, var)
    if not f.is_poly():
        raise ParseError(f"{text!r} is not a polynomial", 1, 1)
    return f.num


def parse_scalar(text: str) -> Scalar:
    f = parse_ratfunc(text, var="\0")
    if not f.is_constant():
        raise ParseError(f"{text!r} is not a constant", 1, 1)
    return f.constant_value()
