"""Finite complex reflection groups given by exact matrices.

The group acts on functions by (w.f)(x) = f(w^-1 x).  On coordinates this
reads x_i -> sum_j (w^-1)_{ij} x_j, and on derivatives (or dual variables)
xi_i -> sum_j w_{ji} xi_j.
"""
from __future__ import annotations

import json
import warnings
from fractions import Fraction
from functools import reduce
from math import gcd, prod

from .errors import (CapExceeded, ConductorMismatch, FactorizationFailed, MultiplicityError,
                     NotCentral, NotReflectionGroupWarning, NotScalar, NotUnitary)
from .exactnum import Cyc, as_fraction
from .polyalg.linalg import Echelon, kernel, matrix_inverse, solve
from .polyalg.poly import Poly


def _lcm(a, b):
    return a * b // gcd(a, b)


def _mat(N, rows):
    return tuple(tuple(x if isinstance(x, Cyc) else Cyc(N, x) for x in r) for r in rows)


def mat_mul(A, B, N):
    n, m = len(A), len(B[0])
    zero = Cyc(N, 0)
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            s = zero
            for t, a in enumerate(Ai):
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_identity(n, N):
    return tuple(tuple(Cyc(N, int(i == j)) for j in range(n)) for i in range(n))


def conj_transpose(A):
    return tuple(tuple(A[j][i].conj() for j in range(len(A))) for i in range(len(A[0])))


def determinant(A, N):
    n = len(A)
    M = [list(r) for r in A]
    det = Cyc(N, 1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Cyc(N, 0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def mat_rank(A):
    e = Echelon()
    for r in A:
        e.add({j: x for j, x in enumerate(r) if x})
    return len(e)


def _is_monomial(A):
    return all(sum(1 for x in r if x) == 1 for r in A)


class GroupElement:
    """One enumerated group element."""

    def __init__(self, index, matrix, N):
        self.index = index
        self.matrix = matrix
        self.N = N
        self.det = determinant(matrix, N)
        self.inverse = None  # index, filled by the group
        self.order = None

    def __repr__(self):
        return f"GroupElement({self.index})"


class Hyperplane:
    def __init__(self, index, alpha, pivot, stabilizer, order, distinguished):
        self.index = index
        self.alpha = alpha  # tuple of Cyc, first nonzero entry 1
        self.v = tuple(a.conj() for a in alpha)
        self.pivot = pivot
        self.stabilizer = stabilizer  # element indices, stabilizer[j] = s_H^j
        self.order = order
        self.distinguished = distinguished
        self.orbit_id = None

    def __repr__(self):
        return f"Hyperplane({self.index}, n={self.order}, alpha={[str(a) for a in self.alpha]})"


class ReflectionGroup:
    """An enumerated finite group of unitary matrices with its reflection arrangement."""

    def __init__(self, generators, N: int, cap: int = 2000, family="explicit", params=None,
                 check_unitary=True):
        self.N = N
        self.family = family
        self.params = dict(params or {})
        gens = [_mat(N, g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        self.dim = len(gens[0])
        for g in gens:
            if len(g) != self.dim or any(len(r) != self.dim for r in g):
                raise ValueError("generator matrices must be square of equal size")
            if not determinant(g, N):
                raise ValueError("generator is not invertible")
            if check_unitary and mat_mul(conj_transpose(g), g, N) != mat_identity(self.dim, N):
                raise NotUnitary("generator is not unitary for the standard Hermitian form")
        self.generator_matrices = gens
        self._enumerate(gens, cap)
        if family == "explicit":
            ident = mat_identity(self.dim, N)
            for g in gens:
                if mat_rank([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(g, ident)]) != 1:
                    warnings.warn("generator is not a pseudoreflection", NotReflectionGroupWarning)
        self._monomial = all(_is_monomial(e.matrix) for e in self.elements)
        self._act_cache = {}
        self._dual_cache = {}
        self._find_hyperplanes()
        self._degrees = None

    # -- enumeration -----------------------------------------------------
    def _enumerate(self, gens, cap):
        N, n = self.N, self.dim
        ident = mat_identity(n, N)
        mats = [ident]
        index = {ident: 0}
        words = [()]
        parents = [None]
        frontier = [0]
        gen_idx = []
        while frontier:
            nxt = []
            for i in frontier:
                for gi, g in enumerate(gens):
                    m = mat_mul(mats[i], g, N)
                    if m not in index:
                        if len(mats) >= cap:
                            raise CapExceeded(f"group order exceeds cap {cap}")
                        index[m] = len(mats)
                        mats.append(m)
                        words.append(words[i] + (gi,))
                        parents.append((i, gi))
                        nxt.append(index[m])
            frontier = nxt
        self.elements = [GroupElement(i, m, N) for i, m in enumerate(mats)]
        self._index = index
        self.words = words
        self.parents = parents
        self.generators = [index[g] for g in gens]
        self.order = len(mats)
        self._mul = {}
        for e in self.elements:
            e.inverse = index[conj_transpose(e.matrix)] if conj_transpose(e.matrix) in index else \
                index[_mat(N, matrix_inverse([list(r) for r in e.matrix], N))]
        self.identity = 0

    def index_of(self, matrix):
        return self._index[_mat(self.N, matrix)]

    def mul(self, i, j):
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self._index[mat_mul(self.elements[i].matrix, self.elements[j].matrix, self.N)]
            self._mul[key] = r
        return r

    def inv(self, i):
        return self.elements[i].inverse

    def element_order(self, i):
        e = self.elements[i]
        if e.order is None:
            k, j = 1, i
            while j != 0:
                j = self.mul(j, i)
                k += 1
            e.order = k
        return e.order

    # -- arrangement -------------------------------------------------------
    def _find_hyperplanes(self):
        N, n = self.N, self.dim
        ident = mat_identity(n, N)
        groups = {}
        order = []
        for e in self.elements[1:]:
            D = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(e.matrix, ident)]
            if mat_rank(D) != 1:
                continue
            row = next(r for r in D if any(r))
            piv = next(j for j, x in enumerate(row) if x)
            inv = 1 / row[piv]
            alpha = tuple(x * inv for x in row)
            if alpha not in groups:
                groups[alpha] = (piv, [])
                order.append(alpha)
            groups[alpha][1].append(e.index)
        self.hyperplanes = []
        for h, alpha in enumerate(order):
            piv, members = groups[alpha]
            nh = len(members) + 1
            target = Cyc.root_of_unity(N, nh, 1)
            s = next((m for m in members if self.elements[m].det == target), None)
            if s is None:
                raise ValueError("hyperplane stabilizer has no element with det = exp(2 pi i / n_H)")
            stab = [0]
            j = s
            while j != 0:
                stab.append(j)
                j = self.mul(j, s)
            if sorted(stab) != sorted([0] + members):
                raise ValueError("hyperplane stabilizer is not cyclic")
            self.hyperplanes.append(Hyperplane(h, alpha, piv, stab, nh, s))
        self.alpha_polys = [Poly.linear(N, H.alpha) for H in self.hyperplanes]
        self.pivots = [H.pivot for H in self.hyperplanes]
        amap = {H.alpha: H.index for H in self.hyperplanes}
        # w.alpha_H = alpha_H o w^-1 = lam * alpha_{wH}
        self.hyp_image = []
        for e in self.elements:
            winv = self.elements[e.inverse].matrix
            row = []
            for H in self.hyperplanes:
                img = tuple(sum((H.alpha[t] * winv[t][j] for t in range(n)), Cyc(N, 0))
                            for j in range(n))
                piv = next(j for j, x in enumerate(img) if x)
                lam = img[piv]
                normed = tuple(x / lam for x in img)
                row.append((amap[normed], lam))
            self.hyp_image.append(row)
        # orbits
        orbit_of = [None] * len(self.hyperplanes)
        self.orbits = []
        for H in self.hyperplanes:
            if orbit_of[H.index] is not None:
                continue
            oid = len(self.orbits)
            members = sorted({self.hyp_image[w][H.index][0] for w in range(self.order)})
            for m in members:
                orbit_of[m] = oid
            self.orbits.append(members)
        for H in self.hyperplanes:
            H.orbit_id = orbit_of[H.index]
        self.orbit_orders = [self.hyperplanes[o[0]].order for o in self.orbits]

    def is_coxeter(self):
        return all(H.order == 2 for H in self.hyperplanes)

    # -- actions on polynomials -------------------------------------------
    def act_poly(self, w: int, f: Poly) -> Poly:
        """(w.f)(x) = f(w^-1 x)."""
        if w == 0 or not f.terms:
            return f
        cache = self._act_cache.setdefault(w, {})
        winv = self.elements[self.elements[w].inverse].matrix
        N = self.N
        if self._monomial:
            rows = [next((j, x) for j, x in enumerate(r) if x) for r in winv]
            out = {}
            for e, c in f.terms.items():
                ne = [0] * self.dim
                s = c
                for i, a in enumerate(e):
                    if a:
                        j, x = rows[i]
                        ne[j] += a
                        s = s * x ** a
                ne = tuple(ne)
                v = out.get(ne)
                out[ne] = s if v is None else v + s
            return Poly(N, self.dim, {e: c for e, c in out.items() if c}, clean=True)
        images = [Poly.linear(N, winv[i]) for i in range(self.dim)]
        return f.substitute_linear(images, cache)

    def act_dual(self, w: int, P: Poly) -> Poly:
        """Action on polynomials in dual variables: xi_i -> sum_j w_{ji} xi_j."""
        if w == 0 or not P.terms:
            return P
        cache = self._dual_cache.setdefault(w, {})
        m = self.elements[w].matrix
        images = [Poly.linear(self.N, [m[j][i] for j in range(self.dim)]) for i in range(self.dim)]
        return P.substitute_linear(images, cache)

    def apply_vector(self, w: int, xi):
        m = self.elements[w].matrix
        return tuple(sum((m[i][j] * xi[j] for j in range(self.dim)), Cyc(self.N, 0))
                     for i in range(self.dim))

    @property
    def delta(self) -> Poly:
        return reduce(lambda a, b: a * b, self.alpha_polys, Poly.const(self.N, self.dim, 1))

    @property
    def delta_star(self) -> Poly:
        return reduce(lambda a, b: a * b, (Poly.linear(self.N, H.v) for H in self.hyperplanes),
                      Poly.const(self.N, self.dim, 1))

    # -- invariant theory -------------------------------------------------
    def molien_series(self, Dmax: int) -> list[Fraction]:
        total = [Cyc(self.N, 0)] * (Dmax + 1)
        for e in self.elements:
            cp = _det_one_minus_t(e.matrix, self.N)  # coefficients of det(1 - t w)
            inv = _series_inverse(cp, Dmax, self.N)
            total = [a + b for a, b in zip(total, inv)]
        if not all(c.is_rational() for c in total):
            raise FactorizationFailed("Molien series has non-rational coefficients")
        return [c.to_fraction() / self.order for c in total]

    def degrees(self, Dmax: int | None = None):
        if self._degrees is None or Dmax is not None:
            D = Dmax if Dmax is not None else self.order + 1
            series = self.molien_series(D)
            self._degrees = factor_product(series, self.order, self.dim)
        return list(self._degrees)

    # -- group algebra ----------------------------------------------------
    def idempotent(self, h: int, i: int) -> "GroupAlgebraElement":
        H = self.hyperplanes[h]
        n = H.order
        coeffs = {}
        for a, w in enumerate(H.stabilizer):
            coeffs[w] = Cyc.root_of_unity(self.N, n, (-a * i) % n) / n
        return GroupAlgebraElement(self, coeffs)

    def a_H(self, h: int, k: "Multiplicity") -> "GroupAlgebraElement":
        H = self.hyperplanes[h]
        out = GroupAlgebraElement(self, {})
        for i in range(1, H.order):
            kv = k.value(H.orbit_id, i)
            if kv:
                out = out + self.idempotent(h, i) * (H.order * kv)
        return out

    def central_element(self, k: "Multiplicity") -> "GroupAlgebraElement":
        z = GroupAlgebraElement(self, {})
        for H in self.hyperplanes:
            z = z + self.a_H(H.index, k)
        for g in self.generators:
            u = GroupAlgebraElement.basis(self, g)
            if u * z != z * u:
                raise NotCentral("z(k) does not commute with a generator")
        z.certificate = "commutes with every generator"
        return z

    def symmetrizer(self) -> "GroupAlgebraElement":
        c = Cyc(self.N, Fraction(1, self.order))
        return GroupAlgebraElement(self, {w: c for w in range(self.order)})

    def reynolds(self, f: Poly) -> Poly:
        out = Poly.zero(self.N, self.dim)
        for w in range(self.order):
            out = out + self.act_poly(w, f)
        return out / self.order

    def is_invariant(self, f: Poly) -> bool:
        return all(self.act_poly(g, f) == f for g in self.generators)

    def is_dual_invariant(self, P: Poly) -> bool:
        return all(self.act_dual(g, P) == P for g in self.generators)

    # -- description ------------------------------------------------------
    def info(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "conductor": self.N,
            "dim": self.dim,
            "order": self.order,
            "hyperplanes": [
                {"alpha": [str(a) for a in H.alpha], "order": H.order, "orbit": H.orbit_id}
                for H in self.hyperplanes
            ],
            "orbits": [{"hyperplanes": o, "n": self.orbit_orders[i]} for i, o in enumerate(self.orbits)],
            "degrees": self.degrees(),
            "coxeter": self.is_coxeter(),
        }

    def describe(self) -> str:
        if self.family == "explicit":
            return f"explicit(dim={self.dim}, order={self.order})"
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({args})"

    def __repr__(self):
        return f"ReflectionGroup({self.describe()})"


def _det_one_minus_t(M, N):
    """Coefficients c_0..c_n of det(I - tM), via sums of principal minors."""
    from itertools import combinations
    n = len(M)
    out = [Cyc(N, 1)]
    for j in range(1, n + 1):
        s = Cyc(N, 0)
        for S in combinations(range(n), j):
            s = s + determinant([[M[a][b] for b in S] for a in S], N)
        out.append(s if j % 2 == 0 else -s)
    return out


def _series_inverse(c, D, N):
    inv = [Cyc(N, 0)] * (D + 1)
    inv[0] = 1 / c[0]
    for j in range(1, D + 1):
        s = Cyc(N, 0)
        for t in range(1, min(j, len(c) - 1) + 1):
            if c[t]:
                s = s + c[t] * inv[j - t]
        inv[j] = -s * inv[0]
    return inv


def factor_product(series, order, dim):
    """Write a power series as prod 1/(1 - t^d_i); checks prod d_i == order."""
    R = [Fraction(x) for x in series]
    D = len(R) - 1
    if R[0] != 1:
        raise FactorizationFailed("constant term is not 1")
    degs = []
    while True:
        j = next((j for j in range(1, D + 1) if R[j] != 0), None)
        if j is None:
            break
        if R[j] < 0 or R[j].denominator != 1:
            raise FactorizationFailed(f"coefficient {R[j]} at t^{j} is not a positive integer")
        degs.append(j)
        R = [R[t] - (R[t - j] if t >= j else 0) for t in range(D + 1)]
        if len(degs) > dim:
            raise FactorizationFailed("more factors than the dimension")
    if prod(degs) != order or len(degs) != dim:
        raise FactorizationFailed(f"degrees {degs} do not multiply to |W| = {order}")
    return degs


class GroupAlgebraElement:
    __slots__ = ("G", "coeffs", "certificate")

    def __init__(self, G, coeffs):
        self.G = G
        self.coeffs = {w: c for w, c in coeffs.items() if c}
        self.certificate = None

    @classmethod
    def basis(cls, G, w):
        return cls(G, {w: Cyc(G.N, 1)})

    @classmethod
    def scalar(cls, G, c):
        return cls(G, {0: c if isinstance(c, Cyc) else Cyc(G.N, c)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return GroupAlgebraElement(self.G, out)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return GroupAlgebraElement(self.G, {w: c * other for w, c in self.coeffs.items()})
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                ab = self.G.mul(a, b)
                out[ab] = out[ab] + x * y if ab in out else x * y
        return GroupAlgebraElement(self.G, out)

    __rmul__ = lambda self, c: self * c

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, w):
        return self.coeffs.get(w, Cyc(self.G.N, 0))

    def act_poly(self, f: Poly) -> Poly:
        out = Poly.zero(self.G.N, self.G.dim)
        for w, c in self.coeffs.items():
            out = out + self.G.act_poly(w, f).scale(c)
        return out

    def vector(self):
        return dict(self.coeffs)

    def __repr__(self):
        return "GA(" + " + ".join(f"({c})*g{w}" for w, c in sorted(self.coeffs.items())) + ")"


# -- spectrum of central elements -----------------------------------------

def _minimal_polynomial(z: GroupAlgebraElement):
    """Monic minimal polynomial (rational coefficients, low to high) of left multiplication by z."""
    G = z.G
    vecs = []
    cur = GroupAlgebraElement.scalar(G, 1)
    while True:
        v = cur.vector()
        vecs.append(v)
        M = len(vecs)
        rows = {}
        for j, vv in enumerate(vecs[:-1]):
            for w, c in vv.items():
                rows.setdefault(w, {})[j] = c
        target_rows = sorted(set(rows) | set(v))
        A = [rows.get(w, {}) for w in target_rows]
        b = [v.get(w, Cyc(G.N, 0)) for w in target_rows]
        res = solve(A, b, M - 1, G.N) if M > 1 else (None if v else ({}, []))
        if res is not None:
            sol = res[0]
            coeffs = [-sol.get(j, Cyc(G.N, 0)) for j in range(M - 1)] + [Cyc(G.N, 1)]
            return coeffs
        cur = cur * z


def spectrum(z: GroupAlgebraElement):
    """Eigenvalues of z on the regular representation as {eigenvalue: multiplicity}.

    z must be central with rational eigenvalues.
    """
    import sympy
    G = z.G
    mp = _minimal_polynomial(z)
    if not all(c.is_rational() for c in mp):
        raise ValueError("minimal polynomial is not rational")
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator)
                       for c in reversed(mp)], t, domain="QQ")
    _, factors = poly.factor_list()
    roots = []
    for fac, mult in factors:
        if fac.degree() != 1:
            raise ValueError("z has non-rational eigenvalues")
        a, b = fac.all_coeffs()
        r = -b / a
        roots.append(Fraction(int(r.p), int(r.q)))
    roots.sort()
    out = {}
    one = GroupAlgebraElement.scalar(G, 1)
    for r in roots:
        P = one
        for r2 in roots:
            if r2 != r:
                P = P * ((z - one * r2) * Cyc(G.N, 1 / (r - r2)))
        mult = P.coefficient(0) * G.order
        if not mult.is_rational() or mult.to_fraction().denominator != 1:
            raise ValueError("non-integral multiplicity")
        out[r] = int(mult.to_fraction())
    if sum(out.values()) != G.order:
        raise ValueError("multiplicities do not add up to |W|")
    return out


def spectral_projectors(z: GroupAlgebraElement):
    G = z.G
    spec = spectrum(z)
    roots = sorted(spec)
    one = GroupAlgebraElement.scalar(G, 1)
    out = {}
    for r in roots:
        P = one
        for r2 in roots:
            if r2 != r:
                P = P * ((z - one * r2) * Cyc(G.N, 1 / (r - r2)))
        out[r] = P
    return out


def orbit_parts(G):
    """z_{C,i} = sum_{H in C} n_H e_{H,i} for each orbit C and 1 <= i < n_C."""
    parts = {}
    for oid, members in enumerate(G.orbits):
        n = G.orbit_orders[oid]
        for i in range(1, n):
            z = GroupAlgebraElement(G, {})
            for h in members:
                z = z + G.idempotent(h, i) * n
            parts[(oid, i)] = z
    return parts


def joint_spectrum(G):
    """Joint eigen-decomposition of the commuting central parts z_{C,i}.

    Returns a list of (coefficient dict {(C,i): integer eigenvalue}, multiplicity);
    z(k) then has eigenvalue sum k_{C,i} * coefficient on each block.
    """
    parts = orbit_parts(G)
    blocks = [({}, GroupAlgebraElement.scalar(G, 1))]
    for key in sorted(parts):
        projs = spectral_projectors(parts[key])
        new = []
        for coeffs, P in blocks:
            for r, Q in projs.items():
                PQ = P * Q
                if not PQ.is_zero():
                    c = dict(coeffs)
                    c[key] = r
                    new.append((c, PQ))
        blocks = new
    out = []
    for coeffs, P in blocks:
        mult = P.coefficient(0) * G.order
        out.append((coeffs, int(mult.to_fraction())))
    out.sort(key=lambda t: sorted(t[0].items()))
    return out


# -- multiplicities -------------------------------------------------------

class Multiplicity:
    """Parameters k_{C,i}, one vector per orbit C, with k_{C,0} = 0."""

    def __init__(self, G, orbits):
        if len(orbits) != len(G.orbits):
            raise MultiplicityError(f"expected {len(G.orbits)} orbit vectors, got {len(orbits)}")
        vals = []
        for oid, vec in enumerate(orbits):
            n = G.orbit_orders[oid]
            vec = [as_fraction(x) for x in vec]
            if len(vec) != n:
                raise MultiplicityError(f"orbit {oid} needs {n} entries, got {len(vec)}")
            if vec[0] != 0:
                raise MultiplicityError("k_{C,0} must be 0")
            vals.append(tuple(vec))
        self.G = G
        self.orbits = tuple(vals)

    @classmethod
    def scalar(cls, G, k):
        k = as_fraction(k)
        return cls(G, [[0] + [k] * (n - 1) for n in G.orbit_orders])

    @classmethod
    def zero(cls, G):
        return cls.scalar(G, 0)

    def value(self, oid, i):
        vec = self.orbits[oid]
        return vec[i % len(vec)]

    def for_hyperplane(self, h, i):
        return self.value(self.G.hyperplanes[h].orbit_id, i)

    def is_integral(self):
        return all(x.denominator == 1 for v in self.orbits for x in v)

    def is_nonnegative_integral(self):
        return self.is_integral() and all(x >= 0 for v in self.orbits for x in v)

    def is_zero(self):
        return all(x == 0 for v in self.orbits for x in v)

    def scaled(self, c):
        c = as_fraction(c)
        return Multiplicity(self.G, [[x * c for x in v] for v in self.orbits])

    def to_json(self):
        return {"orbits": [[str(x) for x in v] for v in self.orbits]}

    def __eq__(self, other):
        return isinstance(other, Multiplicity) and self.orbits == other.orbits

    def __hash__(self):
        return hash(self.orbits)

    def __le__(self, other):
        return all(a <= b for v, w in zip(self.orbits, other.orbits) for a, b in zip(v, w))

    def __repr__(self):
        return "Multiplicity(" + "; ".join(",".join(str(x) for x in v) for v in self.orbits) + ")"


def c_tau(G, k, tau):
    """Scalar by which z(k) acts on an irreducible tau; for tau regular the eigenvalue multiset."""
    z = G.central_element(k)
    if tau.name == "regular":
        return spectrum(z)
    M = tau.of_algebra(z)
    c = M[0][0]
    for i in range(tau.dim):
        for j in range(tau.dim):
            if M[i][j] != (c if i == j else 0):
                raise NotScalar("z(k) does not act by a scalar on this representation")
    return c


# -- representations ------------------------------------------------------

class WRepresentation:
    """A matrix representation, defined on generators and extended along words."""

    def __init__(self, G, gen_matrices, name="explicit"):
        self.G = G
        self.name = name
        gms = [_mat(G.N, m) for m in gen_matrices]
        self.dim = len(gms[0]) if gms else 1
        mats = [mat_identity(self.dim, G.N)]
        for w in range(1, G.order):
            parent, gi = G.parents[w]
            mats.append(mat_mul(mats[parent], gms[gi], G.N))
        self.matrices = mats
        for gi, g in enumerate(G.generators):
            for h in range(G.order):
                if mat_mul(mats[g], mats[h], G.N) != mats[G.mul(g, h)]:
                    raise ValueError("generator images do not define a representation")

    def __call__(self, w):
        return self.matrices[w]

    def of_algebra(self, a: GroupAlgebraElement):
        N = self.G.N
        M = [[Cyc(N, 0)] * self.dim for _ in range(self.dim)]
        for w, c in a.coeffs.items():
            R = self.matrices[w]
            for i in range(self.dim):
                for j in range(self.dim):
                    if R[i][j]:
                        M[i][j] = M[i][j] + c * R[i][j]
        return tuple(tuple(r) for r in M)

    # constructors
    @classmethod
    def trivial(cls, G):
        return cls(G, [[[1]] for _ in G.generators], "trivial")

    @classmethod
    def det(cls, G):
        return cls(G, [[[G.elements[g].det]] for g in G.generators], "det")

    @classmethod
    def reflection(cls, G):
        return cls(G, [G.elements[g].matrix for g in G.generators], "reflection")

    @classmethod
    def regular(cls, G):
        mats = []
        for g in G.generators:
            M = [[0] * G.order for _ in range(G.order)]
            for h in range(G.order):
                M[G.mul(g, h)][h] = 1
            mats.append(M)
        return cls(G, mats, "regular")

    @classmethod
    def standard(cls, G):
        """Reflection representation restricted to the orthogonal complement of V^W."""
        N, n = G.N, G.dim
        conds = []
        for g in G.generators:
            m = G.elements[g].matrix
            for i in range(n):
                conds.append({j: m[i][j] - int(i == j) for j in range(n) if m[i][j] - int(i == j)})
        fixed = kernel(conds, n, N)
        # complement: vectors orthogonal (Hermitian) to the fixed space
        orth = [{j: c.conj() for j, c in v.items()} for v in fixed]
        basis = kernel(orth, n, N)
        return cls.subrepresentation(G, [[v.get(j, Cyc(N, 0)) for j in range(n)] for v in basis],
                                     "standard")

    @classmethod
    def subrepresentation(cls, G, basis, name="explicit"):
        """Matrices of the reflection representation on an invariant subspace spanned by basis."""
        N, n = G.N, G.dim
        r = len(basis)
        B = [[basis[c][i] for c in range(r)] for i in range(n)]  # n x r
        gms = []
        for g in G.generators:
            m = G.elements[g].matrix
            img = mat_mul(m, B, N)  # n x r; solve B X = img
            rows = [{c: B[i][c] for c in range(r) if B[i][c]} for i in range(n)]
            cols = []
            for c in range(r):
                res = solve(rows, [img[i][c] for i in range(n)], r, N)
                if res is None:
                    raise ValueError("subspace is not invariant")
                sol = res[0]
                cols.append([sol.get(j, Cyc(N, 0)) for j in range(r)])
            X = [[cols[c][j] for c in range(r)] for j in range(r)]
            gms.append(X)
        return cls(G, gms, name)

    @classmethod
    def by_name(cls, G, name):
        table = {"trivial": cls.trivial, "det": cls.det, "reflection": cls.reflection,
                 "regular": cls.regular, "standard": cls.standard}
        if name not in table:
            raise ValueError(f"unknown representation {name!r}")
        return table[name](G)


# -- built-in families ----------------------------------------------------

def cyclic(n: int, cap=2000):
    if n < 2:
        raise ValueError("cyclic(n) needs n >= 2")
    return ReflectionGroup([[[Cyc.zeta(n, 1)]]], n, cap, "cyclic", {"n": n})


def symmetric(n: int, cap=2000):
    if n < 2:
        raise ValueError("symmetric(n) needs n >= 2")
    gens = []
    for i in range(n - 1):
        M = [[int(r == c) for c in range(n)] for r in range(n)]
        M[i][i] = M[i + 1][i + 1] = 0
        M[i][i + 1] = M[i + 1][i] = 1
        gens.append(M)
    return ReflectionGroup(gens, 2, cap, "symmetric", {"n": n})


def _cos_sin(N, m, j):
    """cos(2 pi j / m) and sin(2 pi j / m) in Q(zeta_N), 4 | N and m | N."""
    z = Cyc.root_of_unity(N, m, j)
    zi = Cyc.root_of_unity(N, m, -j)
    i = Cyc.root_of_unity(N, 4, 1)
    return (z + zi) / 2, (z - zi) / (2 * i)


def dihedral(m: int, cap=2000):
    """I_2(m) acting on R^2 by orthogonal reflections."""
    if m < 2:
        raise ValueError("dihedral(m) needs m >= 2")
    N = _lcm(m, 4)
    gens = []
    for j in (0, 1):
        c, s = _cos_sin(N, m, j)
        gens.append([[c, s], [s, -c]])
    if all(x.is_rational() for g in gens for r in g for x in r):
        gens = [[[Cyc(2, x.to_fraction()) for x in r] for r in g] for g in gens]
        N = 2
    return ReflectionGroup(gens, N, cap, "dihedral", {"m": m})


def G_mpn(m: int, p: int, n: int, cap=2000):
    """The monomial group G(m, p, n)."""
    if m < 1 or n < 1 or m % p:
        raise ValueError("G(m,p,n) needs p | m")
    N = max(m, 2)
    z = Cyc.root_of_unity(N, m, 1) if m > 1 else Cyc(N, 1)
    gens = []
    for i in range(n - 1):
        M = [[Cyc(N, int(r == c)) for c in range(n)] for r in range(n)]
        M[i][i] = M[i + 1][i + 1] = Cyc(N, 0)
        M[i][i + 1] = M[i + 1][i] = Cyc(N, 1)
        gens.append(M)
    if p > 1 and n >= 2:
        M = [[Cyc(N, int(r == c)) for c in range(n)] for r in range(n)]
        M[0][0] = M[1][1] = Cyc(N, 0)
        M[0][1] = 1 / z
        M[1][0] = z
        gens.append(M)
    if p < m:
        M = [[Cyc(N, int(r == c)) for c in range(n)] for r in range(n)]
        M[0][0] = z ** p
        gens.append(M)
    if not gens:
        raise ValueError("G(m,p,n) is trivial for these parameters")
    return ReflectionGroup(gens, N, cap, "G", {"m": m, "p": p, "n": n})


def from_family(name: str, params: dict, cap=2000):
    if name == "cyclic":
        return cyclic(int(params["n"]), cap)
    if name == "symmetric":
        return symmetric(int(params["n"]), cap)
    if name == "dihedral":
        return dihedral(int(params["m"]), cap)
    if name == "G":
        return G_mpn(int(params["m"]), int(params["p"]), int(params["n"]), cap)
    raise ValueError(f"unknown family {name!r}")


def load_group_file(path, cap=2000):
    with open(path) as fh:
        data = json.load(fh)
    family = data.get("family", "explicit")
    if family != "explicit":
        return from_family(family, data.get("params", {}), cap)
    N = int(data["conductor"])
    gens = [[[_parse_entry(N, x) for x in row] for row in g] for g in data["generators"]]
    return ReflectionGroup(gens, N, cap, "explicit", data.get("params", {}))


def _parse_entry(N, x):
    if isinstance(x, dict):
        return Cyc.from_json(x)
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        if isinstance(x, float) and not x.is_integer():
            raise ValueError("floating-point matrix entries are not accepted")
        return Cyc(N, int(x))
    from .polyalg.parse import parse_scalar
    return parse_scalar(str(x), N)
