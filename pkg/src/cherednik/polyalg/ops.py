"""Group-aware polynomial operations: action, averaging, divided differences, orders."""
from __future__ import annotations

import math

from ..errors import NotDivisible
from .linalg import kernel
from .poly import Poly, monomials, try_divide_linear
from .ratfun import RatFun

INFINITY = math.inf


def act(G, w: int, f):
    """(w.f)(x) = f(w^-1 x) for a polynomial or rational function."""
    if isinstance(f, RatFun):
        return f.act(w)
    return G.act_poly(w, f)


def reynolds(G, f: Poly) -> Poly:
    return G.reynolds(f)


def demoted_difference(G, s: int, f: Poly) -> Poly:
    """((1 - s) f) / alpha_s for a pseudoreflection s."""
    h = next((H.index for H in G.hyperplanes if s in H.stabilizer and s != 0), None)
    if h is None:
        raise ValueError("element is not a pseudoreflection of the group")
    g = f - G.act_poly(s, f)
    q = try_divide_linear(g, G.alpha_polys[h], G.pivots[h])
    if q is None:
        raise NotDivisible("(1 - s) f is not divisible by alpha_s")
    return q


def ord_along(G, h: int, f: Poly):
    """Largest m with alpha_H^m dividing f (infinity for f = 0)."""
    if not f.terms:
        return INFINITY
    alpha, piv = G.alpha_polys[h], G.pivots[h]
    m = 0
    while True:
        q = try_divide_linear(f, alpha, piv)
        if q is None:
            return m
        f, m = q, m + 1


def graded_solve(conditions, nvars: int, degree: int, N: int) -> list[Poly]:
    """Kernel basis of linear functionals on the degree-d monomial space.

    Each condition is a dict exponent -> coefficient, read as
    f -> sum coefficient * (coefficient of that monomial in f).
    """
    mons = monomials(nvars, degree)
    col = {m: j for j, m in enumerate(mons)}
    rows = [{col[m]: c for m, c in cond.items()} for cond in conditions]
    return [Poly(N, nvars, {mons[j]: c for j, c in vec.items()}, clean=True)
            for vec in kernel(rows, len(mons), N)]


class GradedSubspace:
    """Per-degree bases of homogeneous polynomials."""

    def __init__(self, nvars: int, N: int):
        self.nvars = nvars
        self.N = N
        self.slices: dict[int, list[Poly]] = {}

    def set(self, d: int, basis):
        self.slices[d] = list(basis)

    def __getitem__(self, d):
        return self.slices[d]

    def dims(self, D: int):
        return [len(self.slices.get(d, [])) for d in range(D + 1)]

    def degrees(self):
        return sorted(self.slices)
