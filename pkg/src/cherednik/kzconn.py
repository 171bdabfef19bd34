"""The KZ connection on C[V_reg] (x) tau.

The group acts on the values (the representation space of tau); the
arguments are untouched.  Residues are B_H = sum_i n_H k_{H,i} rho(e_{H,i}).
"""
from __future__ import annotations

from .dunkl import Report, unit, alpha_of
from .exactnum import Cyc
from .groups import mat_mul
from .polyalg.linalg import matrix_rank
from .polyalg.poly import Poly, monomials
from .polyalg.ratfun import RatFun


def kz_residues(G, k, tau):
    """List of matrices B_H, one per hyperplane."""
    return [tau.of_algebra(G.a_H(H.index, k)) for H in G.hyperplanes]


class Section:
    """Element of C[V_reg] (x) tau as a vector of rational functions."""

    def __init__(self, G, comps):
        self.G = G
        self.comps = [c if isinstance(c, RatFun) else RatFun.from_poly(G, c) for c in comps]

    @classmethod
    def pure(cls, G, f, v):
        f = f if isinstance(f, RatFun) else RatFun.from_poly(G, f)
        return cls(G, [f * c for c in v])

    def __add__(self, other):
        return Section(self.G, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return Section(self.G, [a - b for a, b in zip(self.comps, other.comps)])

    def __eq__(self, other):
        return self.comps == other.comps

    def is_zero(self):
        return all(not c for c in self.comps)

    def to_json(self):
        return [c.to_str() for c in self.comps]


class KZConnection:
    def __init__(self, G, k, tau):
        self.G = G
        self.k = k
        self.tau = tau
        self.B = kz_residues(G, k, tau)

    def derivative(self, xi, s: Section) -> Section:
        G = self.G
        out = []
        for c in s.comps:
            d = RatFun.const(G, 0)
            for j, x in enumerate(xi):
                if x:
                    d = d + c.diff(j) * x
            out.append(d)
        for H in G.hyperplanes:
            a = alpha_of(G, H.index, xi)
            B = self.B[H.index]
            if not a or all(not x for r in B for x in r):
                continue
            inv = RatFun.inverse_alpha(G, H.index) * a
            for r in range(self.tau.dim):
                acc = RatFun.const(G, 0)
                for col in range(self.tau.dim):
                    if B[r][col]:
                        acc = acc + s.comps[col] * B[r][col]
                if acc:
                    out[r] = out[r] + inv * acc
        return Section(G, out)

    def curvature(self, i, j, s: Section) -> Section:
        ei, ej = unit(self.G, i), unit(self.G, j)
        return self.derivative(ei, self.derivative(ej, s)) - self.derivative(ej, self.derivative(ei, s))


def kz_derivative(G, k, tau, xi, s: Section) -> Section:
    return KZConnection(G, k, tau).derivative(xi, s)


def _commutator_zero(A, B, N):
    AB = mat_mul(A, B, N)
    BA = mat_mul(B, A, N)
    return AB == BA


def codim2_flats(G):
    """Codimension-two intersections, each as the set of hyperplanes containing it."""
    from .polyalg.linalg import rank
    hs = G.hyperplanes
    flats = set()
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            span = [dict(enumerate(hs[a].alpha)), dict(enumerate(hs[b].alpha))]
            span = [{j: x for j, x in v.items() if x} for v in span]
            members = tuple(h.index for h in hs
                            if rank(span + [{j: x for j, x in enumerate(h.alpha) if x}]) == 2)
            flats.add(members)
    return sorted(flats)


def check_residues(G, k, tau) -> Report:
    """B_H has spectrum in {0, n_H k_{H,i}} and B_{wH} = rho(w) B_H rho(w)^-1."""
    N = G.N
    B = kz_residues(G, k, tau)
    rep = Report("kz_residues")
    for w in range(G.order):
        R, Rinv = tau(w), tau(G.inv(w))
        for H in G.hyperplanes:
            h2, _ = G.hyp_image[w][H.index]
            rep.checked += 1
            if mat_mul(mat_mul(R, B[H.index], N), Rinv, N) != B[h2]:
                rep.fail({"element": w, "hyperplane": H.index})
                return rep
    # diagonalizable with the expected eigenvalues: prod (B - lambda) = 0 over distinct lambdas
    for H in G.hyperplanes:
        lams = sorted({H.order * k.value(H.orbit_id, i) for i in range(H.order)})
        n = tau.dim
        P = [[Cyc(N, int(i == j)) for j in range(n)] for i in range(n)]
        for lam in lams:
            M = [[B[H.index][i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
            P = mat_mul(P, M, N)
        if matrix_rank(P) != 0:
            rep.fail({"hyperplane": H.index, "spectrum": "unexpected"})
    return rep


def check_flatness(G, k, tau, bound) -> Report:
    conn = KZConnection(G, k, tau)
    rep = Report("kz_flatness", bound=bound, representation=tau.name)
    N, n = G.N, tau.dim
    vecs = [[Cyc(N, int(i == j)) for j in range(n)] for i in range(n)]
    funcs = []
    for d in range(bound + 1):
        for e in monomials(G.dim, d):
            funcs.append(RatFun.from_poly(G, Poly.monomial(N, e)))
    for H in G.hyperplanes:
        for m in (1, 2):
            funcs.append(RatFun.inverse_alpha(G, H.index, m))
    for f in funcs:
        for v in vecs:
            s = Section.pure(G, f, v)
            for i in range(G.dim):
                for j in range(i + 1, G.dim):
                    rep.checked += 1
                    c = conn.curvature(i, j, s)
                    if not c.is_zero():
                        rep.fail({"section": f.to_str(), "vector": v.index(Cyc(N, 1)),
                                  "pair": [i + 1, j + 1]})
                        return rep
    # residue criterion on codimension-two flats
    crit = True
    for members in codim2_flats(G):
        total = None
        for h in members:
            total = conn.B[h] if total is None else tuple(
                tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(total, conn.B[h]))
        for h in members:
            if not _commutator_zero(conn.B[h], total, N):
                crit = False
                rep.fail({"flat": list(members), "hyperplane": h})
    rep.extra["residue_criterion"] = crit
    rep.extra["codim2_flats"] = len(codim2_flats(G)) if G.dim >= 2 else 0
    return rep
