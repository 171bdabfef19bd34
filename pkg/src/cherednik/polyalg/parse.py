"""Text syntax for scalars and polynomials, e.g. "3/2*x1^2*x2 - z3*x3".

``zN`` stands for exp(2 pi i / N) and ``pN`` for the power sum
x1^N + ... + xn^N.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..exactnum import Cyc
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]+)(\d+)|(\^)|([-+*/()]))")


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("num", Fraction(m.group(1))))
        elif m.group(2):
            out.append(("sym", m.group(2), int(m.group(3))))
        elif m.group(4):
            out.append(("op", "^"))
        else:
            out.append(("op", m.group(5)))
    return out


class _Parser:
    def __init__(self, text, N, nvars, var="x"):
        self.toks = _tokens(text)
        self.i = 0
        self.N = N
        self.nvars = nvars
        self.var = var

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()}")
        return v

    def expr(self):
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if t[1] == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.power()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] == "*":
                self.take()
                v = v * self.power()
            elif t and t[0] == "op" and t[1] == "/":
                self.take()
                d = self.power()
                if d.degree() > 0 or d.is_zero():
                    raise ValueError("can only divide by a nonzero constant")
                v = v.scale(d.constant_term().inverse())
            else:
                return v

    def power(self):
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if not e or e[0] != "num" or e[1].denominator != 1:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(e[1])
        return base

    def atom(self):
        t = self.take()
        if t is None:
            raise ValueError("unexpected end of input")
        if t[0] == "num":
            return Poly.const(self.N, self.nvars, Cyc(self.N, t[1]))
        if t[0] == "sym":
            name, idx = t[1], t[2]
            if name == "z":
                return Poly.const(self.N, self.nvars, Cyc.root_of_unity(self.N, idx, 1))
            if name == self.var:
                if not 1 <= idx <= self.nvars:
                    raise ValueError(f"variable {name}{idx} out of range")
                return Poly.var(self.N, self.nvars, idx - 1)
            if name == "p":
                out = Poly.zero(self.N, self.nvars)
                for i in range(self.nvars):
                    out = out + Poly.var(self.N, self.nvars, i) ** idx
                return out
            raise ValueError(f"unknown symbol {name}{idx}")
        if t == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return v
        raise ValueError(f"unexpected token {t}")


def parse_poly(text: str, N: int, nvars: int, var: str = "x") -> Poly:
    text = text.replace("xi", "x") if var == "x" else text
    return _Parser(text, N, nvars, var).parse()


def parse_scalar(text: str, N: int) -> Cyc:
    p = _Parser(text, N, 1, "x").parse()
    if p.degree() > 0:
        raise ValueError("expected a scalar")
    return p.constant_term()
