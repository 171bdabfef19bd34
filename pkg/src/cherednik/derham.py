"""The deformed polynomial de Rham complex K = C[V] (x) Lambda V*."""
from __future__ import annotations

from itertools import combinations

from .dunkl import DunklEngine, Report, unit
from .errors import SingularParameter
from .exactnum import Cyc
from .groups import determinant, spectrum
from .polyalg.linalg import solve
from .polyalg.poly import Poly, monomials


class KForm:
    """Sum of p_I dx_I over strictly increasing index tuples I."""

    __slots__ = ("N", "dim", "comps")

    def __init__(self, N, dim, comps=None):
        self.N = N
        self.dim = dim
        self.comps = {tuple(I): p for I, p in (comps or {}).items() if p.terms}

    @classmethod
    def function(cls, p: Poly):
        return cls(p.N, p.nvars, {(): p})

    @classmethod
    def basis(cls, N, dim, exp, I):
        return cls(N, dim, {tuple(I): Poly.monomial(N, exp)})

    def __add__(self, other):
        out = dict(self.comps)
        for I, p in other.comps.items():
            out[I] = out[I] + p if I in out else p
        return KForm(self.N, self.dim, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return KForm(self.N, self.dim, {I: p.scale(c) for I, p in self.comps.items()})

    def __eq__(self, other):
        return isinstance(other, KForm) and self.comps == other.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    def is_zero(self):
        return not self.comps

    def bidegrees(self):
        return sorted({(len(I), sum(e)) for I, p in self.comps.items() for e in p.terms})

    def to_str(self):
        if not self.comps:
            return "0"
        parts = []
        for I, p in sorted(self.comps.items()):
            w = "^".join(f"dx{i + 1}" for i in I)
            parts.append(f"({p.to_str()})" + (f"*{w}" if w else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"KForm({self.to_str()})"


def wedge_insert(j, I):
    """dx_j ^ dx_I = sign * dx_J; returns (sign, J) or (0, None)."""
    if j in I:
        return 0, None
    pos = sum(1 for i in I if i < j)
    J = tuple(sorted(I + (j,)))
    return (-1) ** pos, J


def _add(out, I, p):
    if I in out:
        out[I] = out[I] + p
    else:
        out[I] = p


class DeRham:
    """d(k), the Koszul differential and E(k) for a fixed group and multiplicity."""

    def __init__(self, G, k):
        self.G = G
        self.k = k
        self.minus = k.scaled(-1)
        # d(k) = sum_j D_j dx_j with D_j = d_j + sum_H alpha_H(e_j) a_H(k) / alpha_H = T_{e_j}(-k)
        self.eng = DunklEngine(G, self.minus)
        self.z = None
        self._wedge_cache = {}

    def D(self, j, p):
        return self.eng.T(j, p)

    def d_k(self, w: KForm) -> KForm:
        out = {}
        for I, p in w.comps.items():
            for j in range(self.G.dim):
                s, J = wedge_insert(j, I)
                if s:
                    q = self.D(j, p)
                    if q.terms:
                        _add(out, J, q.scale(s))
        return KForm(self.G.N, self.G.dim, out)

    def euler(self, w: KForm) -> KForm:
        """E(k) = E(0) + sum_H a_H(k), a_H acting diagonally on p (x) dx_I."""
        G = self.G
        out = {}
        for I, p in w.comps.items():
            for e, c in p.terms.items():
                _add(out, I, Poly.monomial(G.N, e, c * (len(I) + sum(e))))
        res = KForm(G.N, G.dim, out)
        for H in G.hyperplanes:
            a = G.a_H(H.index, self.k)
            for g, c in a.coeffs.items():
                res = res + self.act(g, w).scale(c)
        return res

    def act(self, g, w: KForm) -> KForm:
        """Diagonal action; dx_i transforms like x_i."""
        G = self.G
        out = {}
        for I, p in w.comps.items():
            gp = G.act_poly(g, p)
            for J, c in self._wedge_image(g, I).items():
                _add(out, J, gp.scale(c))
        return KForm(G.N, G.dim, out)

    def _wedge_image(self, g, I):
        key = (g, I)
        r = self._wedge_cache.get(key)
        if r is None:
            G = self.G
            winv = G.elements[G.inv(g)].matrix
            r = {}
            for J in combinations(range(G.dim), len(I)):
                det = determinant([[winv[i][j] for j in J] for i in I], G.N) if I else Cyc(G.N, 1)
                if det:
                    r[J] = det
            self._wedge_cache[key] = r
        return r


def koszul(w: KForm) -> KForm:
    """p dx_{i1}^...^dx_{il} -> sum_r (-1)^(r-1) x_{ir} p dx_{i1}^..(omit r)..^dx_{il}."""
    out = {}
    for I, p in w.comps.items():
        for r, i in enumerate(I):
            J = I[:r] + I[r + 1:]
            q = p * Poly.var(w.N, w.dim, i)
            _add(out, J, q if r % 2 == 0 else -q)
    return KForm(w.N, w.dim, out)


def d_k(G, k, w: KForm) -> KForm:
    return DeRham(G, k).d_k(w)


def euler_k(G, k, w: KForm) -> KForm:
    return DeRham(G, k).euler(w)


def form_basis(G, bound):
    """Basis forms x^e dx_I with l + m <= bound."""
    for l in range(G.dim + 1):
        for I in combinations(range(G.dim), l):
            for m in range(bound - l + 1):
                for e in monomials(G.dim, m):
                    yield KForm.basis(G.N, G.dim, e, I)


def check_homotopy(G, k, bound) -> Report:
    R = DeRham(G, k)
    rep = Report("homotopy", bound=bound)
    for w in form_basis(G, bound):
        lhs = R.euler(w)
        rhs = koszul(R.d_k(w)) + R.d_k(koszul(w))
        rep.checked += 1
        if lhs != rhs:
            rep.fail({"form": w.to_str(), "E": lhs.to_str(), "dK+Kd": rhs.to_str()})
            return rep
    return rep


def check_koszul_square(G, bound) -> Report:
    rep = Report("koszul_square", bound=bound)
    for w in form_basis(G, bound):
        rep.checked += 1
        if not koszul(koszul(w)).is_zero():
            rep.fail(w.to_str())
            return rep
    return rep


def check_d_squared(G, k, bound) -> Report:
    """d(k)^2 = 0 on the basis, and on K^0 the cross-check against Dunkl commutators.

    On K^0, d(k)^2 f = sum_{i<j} (D_i D_j - D_j D_i) f dx_i ^ dx_j with D_j = T_{e_j}(-k);
    both sides are computed independently and compared term by term.
    """
    from .dunkl import dunkl_T, op_mul
    R = DeRham(G, k)
    rep = Report("d_squared", bound=bound)
    for w in form_basis(G, bound):
        rep.checked += 1
        dd = R.d_k(R.d_k(w))
        if not dd.is_zero():
            rep.fail({"form": w.to_str(), "d2": dd.to_str()})
            return rep
    # K^0 cross-check with operator products from the dunkl module
    if G.dim >= 2:
        Ts = [dunkl_T(G, R.minus, unit(G, j)) for j in range(G.dim)]
        comms = {}
        for i in range(G.dim):
            for j in range(i + 1, G.dim):
                comms[(i, j)] = op_mul(Ts[i], Ts[j]) - op_mul(Ts[j], Ts[i])
        for m in range(bound + 1):
            for e in monomials(G.dim, m):
                f = Poly.monomial(G.N, e)
                dd = R.d_k(R.d_k(KForm.function(f)))
                for (i, j), C in comms.items():
                    val = C.apply(f)
                    comp = dd.comps.get((i, j), Poly.zero(G.N, G.dim))
                    if not (val.is_poly() and val.num == comp):
                        rep.fail({"monomial": list(e), "pair": [i + 1, j + 1]})
                        return rep
        rep.extra["commutator_cross_check"] = True
    return rep


class Intertwiner:
    """S(k) on K^0 up to a degree bound, extended by S(p w) = S(p) w.

    On C[V]_m the identity E(k) S p = sum_j x_j S(d_j p) determines S(k):
    E(k) acts there as m + z(k), which is invertible when no eigenvalue c of
    z(k) has -c a positive integer.
    """

    def __init__(self, G, k, bound):
        self.G = G
        self.k = k
        self.bound = bound
        z = G.central_element(k)
        self.spectrum = spectrum(z)
        for c in sorted(self.spectrum):
            if -c >= 1 and (-c).denominator == 1:
                raise SingularParameter(c, f"z(k) has eigenvalue {c}; -c is a positive integer")
        self.z = z
        self.images = {}  # exponent -> S(x^e)
        self.unique = True
        for m in range(bound + 1):
            self._solve_degree(m)

    def _solve_degree(self, m):
        G = self.G
        mons = monomials(G.dim, m)
        if m == 0:
            self.images[mons[0]] = Poly.const(G.N, G.dim, 1)
            return
        col = {e: i for i, e in enumerate(mons)}
        # matrix of m + z(k) on the degree-m slice, column per monomial
        cols = []
        for e in mons:
            f = Poly.monomial(G.N, e)
            img = f.scale(m) + self.z.act_poly(f)
            cols.append(img)
        rows = [dict() for _ in mons]
        for c, img in enumerate(cols):
            for e2, v in img.terms.items():
                rows[col[e2]][c] = v
        for e in mons:
            f = Poly.monomial(G.N, e)
            rhs = Poly.zero(G.N, G.dim)
            for j in range(G.dim):
                rhs = rhs + Poly.var(G.N, G.dim, j) * self.apply_poly(f.diff(j))
            res = solve(rows, [rhs.coefficient(e2) for e2 in mons], len(mons), G.N)
            if res is None:
                raise SingularParameter(None, f"no solution in degree {m}")
            sol, ker = res
            if ker:
                self.unique = False
            self.images[e] = Poly(G.N, G.dim, {mons[c]: v for c, v in sol.items()}, clean=True)

    def apply_poly(self, p: Poly) -> Poly:
        out = Poly.zero(p.N, p.nvars)
        for e, c in p.terms.items():
            out = out + self.images[e].scale(c)
        return out

    def apply(self, w: KForm) -> KForm:
        return KForm(w.N, w.dim, {I: self.apply_poly(p) for I, p in w.comps.items()})

    def matrices(self):
        """Per polynomial degree, the matrix of S(k) in the monomial basis (columns = inputs)."""
        out = {}
        for m in range(self.bound + 1):
            mons = monomials(self.G.dim, m)
            out[m] = [[self.images[e].coefficient(e2) for e in mons] for e2 in mons]
        return out

    def verify(self) -> Report:
        G = self.G
        R = DeRham(G, self.k)
        R0 = DeRham(G, self.k.scaled(0))
        rep = Report("intertwiner", bound=self.bound, unique_per_degree=self.unique)
        for w in form_basis(G, self.bound):
            rep.checked += 1
            lhs = R.d_k(self.apply(w))
            rhs = self.apply(R0.d_k(w))
            if lhs != rhs:
                rep.fail({"form": w.to_str()})
                return rep
        if self.images[(0,) * G.dim] != Poly.const(G.N, G.dim, 1):
            rep.fail("S is not the identity on K^0_0")
        # invertibility on each graded piece
        from .polyalg.linalg import matrix_rank
        for m, M in self.matrices().items():
            if matrix_rank(M) != len(M):
                rep.fail({"singular_degree": m})
        # W-invariance: S commutes with the group action
        for g in G.generators:
            for m in range(self.bound + 1):
                for e in monomials(G.dim, m):
                    f = Poly.monomial(G.N, e)
                    if G.act_poly(g, self.apply_poly(f)) != self.apply_poly(G.act_poly(g, f)):
                        rep.fail({"not_equivariant": list(e)})
                        return rep
        return rep


def intertwiner(G, k, bound) -> Intertwiner:
    return Intertwiner(G, k, bound)
