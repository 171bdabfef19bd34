"""Sparse multivariate polynomials with cyclotomic coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from ..errors import NotDivisible
from ..exactnum import Cyc

Exp = tuple  # exponent vector


class Poly:
    """A polynomial in ``nvars`` variables over Q(zeta_N).

    ``terms`` maps exponent tuples to nonzero ``Cyc`` coefficients.  Instances
    are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("N", "nvars", "terms")

    def __init__(self, N: int, nvars: int, terms: dict | None = None, *, clean=False):
        self.N = N
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif clean:
            self.terms = terms
        else:
            self.terms = {}
            for e, c in terms.items():
                if not isinstance(c, Cyc):
                    c = Cyc(N, c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, N, nvars):
        return cls(N, nvars, {}, clean=True)

    @classmethod
    def const(cls, N, nvars, c):
        c = c if isinstance(c, Cyc) else Cyc(N, c)
        return cls(N, nvars, {(0,) * nvars: c} if c else {}, clean=True)

    @classmethod
    def var(cls, N, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(N, nvars, {tuple(e): Cyc(N, 1)}, clean=True)

    @classmethod
    def monomial(cls, N, exp, c=1):
        c = c if isinstance(c, Cyc) else Cyc(N, c)
        return cls(N, len(exp), {tuple(exp): c} if c else {}, clean=True)

    @classmethod
    def linear(cls, N, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = c if isinstance(c, Cyc) else Cyc(N, c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(N, n, terms, clean=True)

    def _like(self, terms):
        return Poly(self.N, self.nvars, terms, clean=True)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, Cyc)):
            return Poly.const(self.N, self.nvars, other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o, self
        else:
            big, small = self, o
        out = dict(big.terms)
        for e, c in small.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = -c
            else:
                v = v - c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._like(out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not isinstance(c, Cyc):
            c = Cyc(self.N, c)
        if not c:
            return self._like({})
        if c == 1:
            return self
        return self._like({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return self._like({tuple(a + b for a, b in zip(e1, e2)): c1 * c2
                               for e1, c1 in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._like({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction, Cyc)):
            return self.scale(1 / (c if isinstance(c, Cyc) else Fraction(c)))
        return NotImplemented

    def __pow__(self, k: int):
        result = Poly.const(self.N, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure --------------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return self._like({e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self) -> Cyc:
        return self.terms.get((0,) * self.nvars, Cyc(self.N, 0))

    def coefficient(self, exp) -> Cyc:
        return self.terms.get(tuple(exp), Cyc(self.N, 0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a:
                ne = e[:i] + (a - 1,) + e[i + 1:]
                out[ne] = c * a
        return self._like(out)

    def diff_along(self, xi) -> "Poly":
        out = Poly.zero(self.N, self.nvars)
        for i, c in enumerate(xi):
            if c:
                out = out + self.diff(i).scale(c)
        return out

    def substitute_linear(self, images, cache=None) -> "Poly":
        """Replace x_i by the polynomial images[i] (typically linear forms)."""
        out = {}
        for e, c in self.terms.items():
            img = cache.get(e) if cache is not None else None
            if img is None:
                img = Poly.const(self.N, images[0].nvars if images else 0, 1)
                for i, a in enumerate(e):
                    if a:
                        img = img * images[i] ** a
                if cache is not None:
                    cache[e] = img
            for e2, c2 in img.terms.items():
                v = out.get(e2)
                out[e2] = c * c2 if v is None else v + c * c2
        nv = images[0].nvars if images else self.nvars
        return Poly(self.N, nv, {e: v for e, v in out.items() if v}, clean=True)

    def evaluate(self, point):
        total = Cyc(self.N, 0)
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t = t * (x ** a if isinstance(x, Cyc) else Fraction(x) ** a)
            total = total + t
        return total

    def with_N(self, N):
        if N == self.N:
            return self
        raise ValueError("conductor change not supported")

    # -- formatting -------------------------------------------------------
    def to_str(self, var="x") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{var}{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a
            )
            if c.is_rational():
                q = c.to_fraction()
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            else:
                sign = "+"
                cs = str(c)
                body = f"({cs})" + (f"*{mono}" if mono else "")
            pieces.append((sign, body))
        s, b = pieces[0]
        out = ("-" if s == "-" else "") + b
        for s, b in pieces[1:]:
            out += f" {s} {b}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_json(self):
        return [[list(e), c.to_json()] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, N, nvars, data):
        return cls(N, nvars, {tuple(e): Cyc.from_json(c) for e, c in data})


def monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent vectors of total degree ``degree``, lexicographically descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def count_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree) if nvars else int(degree == 0)


def divide_linear(f: Poly, alpha: Poly, pivot: int) -> Poly:
    """Exact quotient f / alpha for a linear form alpha with a nonzero pivot coefficient.

    Raises NotDivisible if alpha does not divide f.
    """
    q = try_divide_linear(f, alpha, pivot)
    if q is None:
        raise NotDivisible(f"{alpha} does not divide {f}")
    return q


def try_divide_linear(f: Poly, alpha: Poly, pivot: int):
    if not f.terms:
        return f
    n = f.nvars
    unit = [0] * n
    unit[pivot] = 1
    lead = None
    rest = []
    for e, c in alpha.terms.items():
        if e[pivot]:
            lead = c
        else:
            rest.append((e.index(1), c))
    if lead is None:
        raise ValueError("pivot coefficient of alpha is zero")
    inv_lead = None if lead == 1 else 1 / lead
    # bucket terms by exponent in the pivot variable
    buckets: dict[int, dict] = {}
    top = 0
    for e, c in f.terms.items():
        a = e[pivot]
        buckets.setdefault(a, {})[e] = c
        if a > top:
            top = a
    quotient = {}
    for level in range(top, 0, -1):
        layer = buckets.get(level)
        if not layer:
            continue
        below = buckets.setdefault(level - 1, {})
        for e, c in layer.items():
            if inv_lead is not None:
                c = c * inv_lead
            qe = e[:pivot] + (level - 1,) + e[pivot + 1:]
            quotient[qe] = c
            for j, a in rest:
                ne = qe[:j] + (qe[j] + 1,) + qe[j + 1:]
                v = below.get(ne)
                t = c * a
                if v is None:
                    below[ne] = -t
                else:
                    v = v - t
                    if v:
                        below[ne] = v
                    else:
                        del below[ne]
    if buckets.get(0):
        return None
    return Poly(f.N, n, quotient, clean=True)
