"""Rational functions whose denominators are products of hyperplane forms."""
from __future__ import annotations

from fractions import Fraction

from ..exactnum import Cyc
from .poly import Poly, try_divide_linear


class RatFun:
    """``num / prod_H alpha_H ** den[H]`` in reduced form.

    ``ctx`` supplies ``N``, ``dim``, ``alpha_polys`` and ``pivots`` (one per
    hyperplane); a ReflectionGroup does.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num: Poly, den=None, *, reduced=False):
        self.ctx = ctx
        nh = len(ctx.alpha_polys)
        den = tuple(den) if den is not None else (0,) * nh
        if not reduced and num.terms:
            den = list(den)
            for h, m in enumerate(den):
                while m:
                    q = try_divide_linear(num, ctx.alpha_polys[h], ctx.pivots[h])
                    if q is None:
                        break
                    num, m = q, m - 1
                den[h] = m
            den = tuple(den)
        if not num.terms:
            den = (0,) * nh
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, ctx, f: Poly):
        return cls(ctx, f, None, reduced=True)

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, Poly.const(ctx.N, ctx.dim, c), None, reduced=True)

    @classmethod
    def inverse_alpha(cls, ctx, h: int, m: int = 1):
        den = [0] * len(ctx.alpha_polys)
        den[h] = m
        return cls(ctx, Poly.const(ctx.N, ctx.dim, 1), den, reduced=True)

    def is_poly(self) -> bool:
        return not any(self.den)

    def to_poly(self) -> Poly:
        if any(self.den):
            raise ValueError("not a polynomial")
        return self.num

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def _lift(self, den):
        """Numerator rewritten over the larger denominator ``den``."""
        num = self.num
        for h, (a, b) in enumerate(zip(self.den, den)):
            if b > a:
                num = num * self.ctx.alpha_polys[h] ** (b - a)
        return num

    def _coerce(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun.from_poly(self.ctx, other)
        if isinstance(other, (int, Fraction, Cyc)):
            return RatFun.const(self.ctx, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if self.den == o.den:
            return RatFun(self.ctx, self.num + o.num, self.den)
        den = tuple(max(a, b) for a, b in zip(self.den, o.den))
        return RatFun(self.ctx, self._lift(den) + o._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(self.ctx, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return RatFun(self.ctx, self.num.scale(other), self.den, reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return RatFun.const(self.ctx, 0)
        den = tuple(a + b for a, b in zip(self.den, o.den))
        # cancellation can only happen where one side has a denominator and
        # the other a numerator factor
        return RatFun(self.ctx, self.num * o.num, den, reduced=not (any(self.den) or any(o.den)))

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, i: int) -> "RatFun":
        """Partial derivative in x_i."""
        dnum = self.num.diff(i)
        if not any(self.den):
            return RatFun(self.ctx, dnum, self.den, reduced=True)
        # d(n / prod a^m) = (n' prod a - n sum m a_i prod_{H' != H} a) / (prod a^m * prod a)
        support = [h for h, m in enumerate(self.den) if m]
        alphas = self.ctx.alpha_polys
        prod_all = Poly.const(self.ctx.N, self.ctx.dim, 1)
        for h in support:
            prod_all = prod_all * alphas[h]
        total = dnum * prod_all
        for h in support:
            c = alphas[h].coefficient(tuple(int(j == i) for j in range(self.ctx.dim)))
            if not c:
                continue
            rest = Poly.const(self.ctx.N, self.ctx.dim, 1)
            for h2 in support:
                if h2 != h:
                    rest = rest * alphas[h2]
            total = total - self.num * rest.scale(c * self.den[h])
        den = tuple(m + 1 if m else 0 for m in self.den)
        return RatFun(self.ctx, total, den)

    def diff_multi(self, beta) -> "RatFun":
        out = self
        for i, b in enumerate(beta):
            for _ in range(b):
                out = out.diff(i)
        return out

    def act(self, w) -> "RatFun":
        """Group action (w.f)(x) = f(w^-1 x); ``w`` is an element index."""
        ctx = self.ctx
        num = ctx.act_poly(w, self.num)
        if not any(self.den):
            return RatFun(ctx, num, self.den, reduced=True)
        den = [0] * len(self.den)
        scale = Cyc(ctx.N, 1)
        for h, m in enumerate(self.den):
            if m:
                h2, lam = ctx.hyp_image[w][h]
                den[h2] = m
                scale = scale * lam ** m
        return RatFun(ctx, num.scale(1 / scale), den, reduced=True)

    def to_str(self) -> str:
        if not any(self.den):
            return self.num.to_str()
        parts = []
        for h, m in enumerate(self.den):
            if m:
                a = f"({self.ctx.alpha_polys[h].to_str()})"
                parts.append(a + (f"^{m}" if m > 1 else ""))
        return f"({self.num.to_str()})/(" + "*".join(parts) + ")"

    __str__ = to_str

    def __repr__(self):
        return f"RatFun({self.to_str()})"
