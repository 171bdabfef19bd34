"""Quasi-invariants Q_k, the multiplier algebra A_k, and CW-valued quasi-invariants.

f lies in Q_k when, for every hyperplane H and every i, the component
e_{H,-i}(f) vanishes to order n_H k_{H,i} along H.  Vanishing order along H is
read off after the linear change of variables that turns alpha_H into a
coordinate y: f vanishes to order m iff no term has y-degree below m.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .dunkl import DunklEngine, L_P, Report, unit, alpha_of
from .errors import Inconclusive, VerificationFailed
from .exactnum import Cyc
from .groups import Multiplicity
from .polyalg.linalg import Echelon, kernel
from .polyalg.ops import ord_along
from .polyalg.poly import Poly, monomials, try_divide_linear
from .polyalg.ratfun import RatFun


class _Substitution:
    """For each hyperplane, the change of variables x_p -> (y - sum_{j != p} a_j x_j) / a_p."""

    def __init__(self, G):
        self.G = G
        self.images = []
        for H in G.hyperplanes:
            imgs = []
            for j in range(G.dim):
                if j == H.pivot:
                    inv = H.alpha[j].inverse()
                    coeffs = [Cyc(G.N, 0) if t != j else inv for t in range(G.dim)]
                    for t in range(G.dim):
                        if t != j and H.alpha[t]:
                            coeffs[t] = -H.alpha[t] * inv
                    imgs.append(Poly.linear(G.N, coeffs))
                else:
                    imgs.append(Poly.var(G.N, G.dim, j))
            self.images.append(imgs)
        self._cache = [dict() for _ in G.hyperplanes]

    def low_part(self, h, f: Poly, m: int) -> dict:
        """Terms of the substituted f whose y-degree is below m."""
        piv = self.G.hyperplanes[h].pivot
        cache = self._cache[h]
        out = {}
        for e, c in f.terms.items():
            img = cache.get(e)
            if img is None:
                img = Poly.monomial(f.N, e).substitute_linear(self.images[h])
                cache[e] = img
            for e2, c2 in img.terms.items():
                if e2[piv] < m:
                    v = out.get(e2)
                    out[e2] = c * c2 if v is None else v + c * c2
        return {e: v for e, v in out.items() if v}


def _check_k(k: Multiplicity):
    if not k.is_nonnegative_integral():
        raise ValueError("quasi-invariants need integral nonnegative k")


class QuasiModule:
    """Q_k with per-degree bases computed on demand."""

    def __init__(self, G, k: Multiplicity):
        _check_k(k)
        self.G = G
        self.k = k
        self.sub = _Substitution(G)
        self.conds = []  # (h, i, m) with m = n_H k_{H,i} > 0
        for H in G.hyperplanes:
            for i in range(1, H.order):
                m = H.order * int(k.value(H.orbit_id, i))
                if m > 0:
                    self.conds.append((H.index, i, m))
        self._idem = {}
        self._proj_cache = {}
        self.slices = {}

    def projection(self, h, i):
        """e_{H,-i}."""
        key = (h, i)
        if key not in self._idem:
            self._idem[key] = self.G.idempotent(h, -i % self.G.hyperplanes[h].order)
        return self._idem[key]

    def _proj_mono(self, h, i, e):
        key = (h, i, e)
        r = self._proj_cache.get(key)
        if r is None:
            r = self.projection(h, i).act_poly(Poly.monomial(self.G.N, e))
            self._proj_cache[key] = r
        return r

    def project(self, h, i, f):
        out = Poly.zero(self.G.N, self.G.dim)
        for e, c in f.terms.items():
            out = out + self._proj_mono(h, i, e).scale(c)
        return out

    # -- membership ----------------------------------------------------------
    def membership(self, f: Poly):
        """(True, None) or (False, witness) with witness (h, i, achieved order, required)."""
        for h, i, m in self.conds:
            g = self.project(h, i, f)
            o = ord_along(self.G, h, g)
            if o < m:
                return False, {"hyperplane": h, "i": i, "order": o, "required": m}
        return True, None

    def contains(self, f: Poly) -> bool:
        return self.membership(f)[0]

    def condition_vector(self, f: Poly, tag=None) -> dict:
        """Linear functionals whose joint vanishing is membership of a homogeneous f."""
        out = {}
        for h, i, m in self.conds:
            low = self.sub.low_part(h, self.project(h, i, f), m)
            for e, c in low.items():
                out[(tag, h, i, e)] = c
        return out

    # -- bases -----------------------------------------------------------------
    def basis(self, d: int) -> list[Poly]:
        if d not in self.slices:
            G = self.G
            mons = monomials(G.dim, d)
            cols = [self.condition_vector(Poly.monomial(G.N, e)) for e in mons]
            keys = sorted({key for c in cols for key in c}, key=repr)
            kidx = {key: r for r, key in enumerate(keys)}
            rows = [dict() for _ in keys]
            for j, c in enumerate(cols):
                for key, v in c.items():
                    rows[kidx[key]][j] = v
            vecs = kernel(rows, len(mons), G.N)
            self.slices[d] = [Poly(G.N, G.dim, {mons[j]: v for j, v in vec.items()}, clean=True)
                              for vec in vecs]
        return self.slices[d]

    def dims(self, D):
        return [len(self.basis(d)) for d in range(D + 1)]


def qk_membership(G, k, f):
    return QuasiModule(G, k).membership(f)


def qk_basis(G, k, d):
    return QuasiModule(G, k).basis(d)


# ---------------------------------------------------------------------------
# Hilbert series and freeness

def default_cap(G, k):
    """A degree cap that exceeds the expected numerator degree."""
    total = 0
    for H in G.hyperplanes:
        kmax = max(int(k.value(H.orbit_id, i)) for i in range(H.order))
        total += H.order * kmax + H.order - 1
    return total + 1


class HilbertResult:
    def __init__(self, coeffs, numerator, p1, degrees, status):
        self.coeffs = coeffs
        self.numerator = numerator
        self.p1 = p1
        self.degrees = degrees
        self.status = status  # "certified" or a failure description

    @property
    def passed(self):
        return self.status == "certified"

    def numerator_str(self):
        parts = []
        for j, c in enumerate(self.numerator):
            if c:
                mono = "1" if j == 0 else ("t" if j == 1 else f"t^{j}")
                parts.append(mono if c == 1 else f"{c}*{mono}" if j else str(c))
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"coefficients": self.coeffs, "numerator": self.numerator_str(),
                "numerator_coefficients": self.numerator, "p(1)": self.p1,
                "degrees": self.degrees, "status": self.status, "pass": self.passed}


def qk_hilbert(G, k, Dmax, Q: QuasiModule | None = None) -> HilbertResult:
    Q = Q or QuasiModule(G, k)
    dims = Q.dims(Dmax)
    degs = G.degrees()
    p = list(dims)
    for d in degs:
        p = [p[t] - (p[t - d] if t >= d else 0) for t in range(Dmax + 1)]
    while p and p[-1] == 0:
        p.pop()
    total = sum(p)
    neg = any(c < 0 for c in p)
    if neg or total > G.order:
        status = "numerator has negative coefficients" if neg else "p(1) exceeds |W|"
        return HilbertResult(dims, p, total, degs, status)
    if total < G.order or len(p) - 1 >= Dmax:
        raise Inconclusive(f"numerator not determined below degree {Dmax}; raise the cap")
    return HilbertResult(dims, p, total, degs, "certified")


def invariant_slices(G, D):
    """Bases of C[V]^W_d for d <= D, via Reynolds images of monomials."""
    out = {}
    for d in range(D + 1):
        e = Echelon()
        mons = monomials(G.dim, d)
        col = {m: j for j, m in enumerate(mons)}
        basis = []
        for m in mons:
            r = G.reynolds(Poly.monomial(G.N, m))
            vec = {col[t]: c for t, c in r.terms.items()}
            if e.add(vec):
                basis.append(r)
        out[d] = basis
    return out


def basic_invariants(G, D=None):
    """Homogeneous generators of C[V]^W, degree by degree (complements of decomposables)."""
    degs = G.degrees()
    D = D if D is not None else max(degs)
    inv = invariant_slices(G, D)
    gens = []
    for d in range(1, D + 1):
        mons = monomials(G.dim, d)
        col = {m: j for j, m in enumerate(mons)}
        e = Echelon()
        for f in _products_of(gens, d, G):
            e.add({col[t]: c for t, c in f.terms.items()})
        for f in inv[d]:
            if e.add({col[t]: c for t, c in f.terms.items()}):
                gens.append(f)
    if sorted(f.degree() for f in gens) != sorted(degs):
        raise VerificationFailed("basic invariants do not match the Molien degrees")
    return gens


def _products_of(gens, d, G):
    """All products of the given homogeneous polynomials with total degree d (at least one factor)."""
    out = []

    def rec(start, deg, acc):
        if deg == d and acc is not None:
            out.append(acc)
            return
        for idx in range(start, len(gens)):
            g = gens[idx]
            gd = g.degree()
            if deg + gd <= d:
                rec(idx, deg + gd, g if acc is None else acc * g)

    rec(0, 0, None)
    return out


class FreenessCertificate:
    def __init__(self, generators, hilbert, independent, degrees_match, max_degree):
        self.generators = generators
        self.hilbert = hilbert
        self.independent = independent
        self.degrees_match = degrees_match
        self.max_degree = max_degree

    @property
    def passed(self):
        return self.independent and self.degrees_match and self.hilbert.passed

    def to_json(self):
        return {"generators": [g.to_str() for g in self.generators],
                "generator_degrees": sorted(g.degree() for g in self.generators),
                "count": len(self.generators), "independent": self.independent,
                "degrees_match_numerator": self.degrees_match,
                "verified_up_to_degree": self.max_degree, "pass": self.passed}


def freeness_certificate(G, k, Dmax, Q: QuasiModule | None = None) -> FreenessCertificate:
    Q = Q or QuasiModule(G, k)
    hil = qk_hilbert(G, k, Dmax, Q)
    if not hil.passed:
        raise Inconclusive(f"Hilbert check failed: {hil.status}")
    basics = basic_invariants(G)
    gens = []
    for d in range(Dmax + 1):
        mons = monomials(G.dim, d)
        col = {m: j for j, m in enumerate(mons)}
        e = Echelon()
        for f in basics:
            fd = f.degree()
            if fd <= d:
                for q in Q.basis(d - fd):
                    e.add({col[t]: c for t, c in (f * q).terms.items()})
        for q in Q.basis(d):
            if e.add({col[t]: c for t, c in q.terms.items()}):
                gens.append(q)
    gen_degs = [g.degree() for g in gens]
    profile = [gen_degs.count(j) for j in range(len(hil.numerator))]
    degrees_match = profile == hil.numerator and len(gens) == G.order
    # independence: products (monomials in basic invariants) * generators
    independent = True
    for d in range(Dmax + 1):
        mons = monomials(G.dim, d)
        col = {m: j for j, m in enumerate(mons)}
        e = Echelon()
        count = 0
        for g in gens:
            gd = g.degree()
            if gd > d:
                continue
            mult = [Poly.const(G.N, G.dim, 1)] if gd == d else _products_of(basics, d - gd, G)
            for f in mult:
                count += 1
                if not e.add({col[t]: c for t, c in (f * g).terms.items()}):
                    independent = False
        if len(e) != len(Q.basis(d)):
            independent = False
    return FreenessCertificate(gens, hil, independent, degrees_match, Dmax)


# ---------------------------------------------------------------------------
# A_k

def ak_formula_simple(G, k):
    """k'_{C,i} = max_j max(0, k_{C,i+j} - k_{C,j})."""
    out = []
    for oid, vec in enumerate(k.orbits):
        n = len(vec)
        out.append([max(max(0, vec[(i + j) % n] - vec[j]) for j in range(n)) if i else 0
                    for i in range(n)])
    return Multiplicity(G, out)


def ak_formula_carry(G, k):
    """k'_{C,a} = max(0, max_j (k_{C,a+j} - k_{C,j} - [a + j >= n]))."""
    out = []
    for oid, vec in enumerate(k.orbits):
        n = len(vec)
        row = [0]
        for a in range(1, n):
            row.append(max(0, max(vec[(a + j) % n] - vec[j] - (1 if a + j >= n else 0)
                                  for j in range(n))))
        out.append(row)
    return Multiplicity(G, out)


def _span_equal(G, A, B, d):
    mons = monomials(G.dim, d)
    col = {m: j for j, m in enumerate(mons)}
    ea, eb, eab = Echelon(), Echelon(), Echelon()
    for f in A:
        v = {col[t]: c for t, c in f.terms.items()}
        ea.add(v)
        eab.add(v)
    for f in B:
        v = {col[t]: c for t, c in f.terms.items()}
        eb.add(v)
        eab.add(v)
    return len(ea) == len(eb) == len(eab)


def ak_brute_slices(G, k, Dmax, Q: QuasiModule | None = None, generators=None):
    """A_k in degrees <= Dmax: polynomials p with p * g in Q_k for every module generator g.

    Without generators, every Q_k basis element with deg(p) + deg <= Dmax is used
    (which only bounds A_k from above).
    """
    Q = Q or QuasiModule(G, k)
    out = {}
    for a in range(Dmax + 1):
        mons = monomials(G.dim, a)
        if generators is not None:
            tests = generators
        else:
            tests = [q for d in range(Dmax - a + 1) for q in Q.basis(d)]
        cols = []
        for e in mons:
            x = Poly.monomial(G.N, e)
            cv = {}
            for t, g in enumerate(tests):
                cv.update(Q.condition_vector(x * g, tag=t))
            cols.append(cv)
        keys = sorted({key for c in cols for key in c}, key=repr)
        kidx = {key: r for r, key in enumerate(keys)}
        rows = [dict() for _ in keys]
        for j, c in enumerate(cols):
            for key, v in c.items():
                rows[kidx[key]][j] = v
        out[a] = [Poly(G.N, G.dim, {mons[j]: v for j, v in vec.items()}, clean=True)
                  for vec in kernel(rows, len(mons), G.N)]
    return out


class AkResult:
    def __init__(self, kprime, formula, report, slices=None):
        self.kprime = kprime
        self.formula = formula
        self.report = report
        self.slices = slices

    def to_json(self):
        return {"k_prime": self.kprime.to_json() if self.kprime else None,
                "formula": self.formula, "report": self.report}


def ak_compute(G, k, Dmax) -> AkResult:
    """Find k' with A_k = Q_{k'} and verify it in degrees <= Dmax.

    Tries the plain hyperplane-local formula first, then the variant with a
    carry term; if neither verifies, returns the brute-force slices.
    """
    Q = QuasiModule(G, k)
    try:
        cert = freeness_certificate(G, k, max(Dmax, default_cap(G, k)), Q)
        gens = cert.generators if cert.passed else None
    except Inconclusive:
        gens = None
    brute = ak_brute_slices(G, k, Dmax, Q, gens)
    attempts = []
    for name, fn in (("simple", ak_formula_simple), ("carry", ak_formula_carry)):
        kp = fn(G, k)
        Qp = QuasiModule(G, kp)
        # (a) Q_{k'} * Q_k inside Q_k
        a_ok = True
        for d1 in range(Dmax + 1):
            for p in Qp.basis(d1):
                for d2 in range(Dmax - d1 + 1):
                    for q in Q.basis(d2):
                        if not Q.contains(p * q):
                            a_ok = False
                            break
                    if not a_ok:
                        break
                if not a_ok:
                    break
            if not a_ok:
                break
        # (b) brute-force A_k slices equal Q_{k'} slices
        b_ok = all(_span_equal(G, brute[d], Qp.basis(d), d) for d in range(Dmax + 1))
        attempts.append({"formula": name, "k_prime": kp.to_json(), "multiplier_check": a_ok,
                         "brute_force_match": b_ok})
        if a_ok and b_ok:
            return AkResult(kp, name, {"attempts": attempts, "verified_up_to_degree": Dmax,
                                       "exact_generators": gens is not None}, brute)
    return AkResult(None, "brute_force", {"attempts": attempts, "verified_up_to_degree": Dmax,
                                           "dims": [len(brute[d]) for d in range(Dmax + 1)]}, brute)


# ---------------------------------------------------------------------------
# CW-valued quasi-invariants

class BoldElement:
    """sum_w f_w (x) w."""

    def __init__(self, G, comps):
        self.G = G
        self.comps = {w: f for w, f in comps.items() if f.terms}

    def __eq__(self, other):
        return self.comps == other.comps

    def scale(self, c):
        return BoldElement(self.G, {w: f.scale(c) for w, f in self.comps.items()})

    def __add__(self, other):
        out = dict(self.comps)
        for w, f in other.comps.items():
            out[w] = out[w] + f if w in out else f
        return BoldElement(self.G, out)

    def left_mult(self, a):
        """(1 (x) a) phi."""
        out = {}
        for u, c in a.coeffs.items():
            for w, f in self.comps.items():
                uw = self.G.mul(u, w)
                out[uw] = out[uw] + f.scale(c) if uw in out else f.scale(c)
        return BoldElement(self.G, out)

    def diagonal(self, g):
        """g (f (x) u) = g.f (x) g u."""
        return BoldElement(self.G, {self.G.mul(g, w): self.G.act_poly(g, f) for w, f in self.comps.items()})

    def times(self, p: Poly):
        return BoldElement(self.G, {w: p * f for w, f in self.comps.items()})

    def degree(self):
        return max((f.degree() for f in self.comps.values()), default=-1)

    def to_json(self):
        return {str(w): f.to_str() for w, f in sorted(self.comps.items())}


class BoldModule:
    def __init__(self, G, k):
        _check_k(k)
        self.G = G
        self.k = k
        self.sub = _Substitution(G)
        self.conds = []
        for H in G.hyperplanes:
            for i in range(1, H.order):
                m = H.order * int(k.value(H.orbit_id, i))
                if m > 0:
                    self.conds.append((H.index, i, m, G.idempotent(H.index, i)))
        self.slices = {}

    def condition_vector(self, phi: BoldElement, tag=None):
        out = {}
        for h, i, m, e in self.conds:
            img = phi.left_mult(e)
            for v, f in img.comps.items():
                for mono, c in self.sub.low_part(h, f, m).items():
                    out[(tag, h, i, v, mono)] = c
        return out

    def contains(self, phi: BoldElement) -> bool:
        return not self.condition_vector(phi)

    def basis(self, d):
        if d not in self.slices:
            G = self.G
            mons = monomials(G.dim, d)
            nm = len(mons)
            cols = []
            for w in range(G.order):
                for e in mons:
                    phi = BoldElement(G, {w: Poly.monomial(G.N, e)})
                    cols.append(self.condition_vector(phi))
            keys = sorted({key for c in cols for key in c}, key=repr)
            kidx = {key: r for r, key in enumerate(keys)}
            rows = [dict() for _ in keys]
            for j, c in enumerate(cols):
                for key, v in c.items():
                    rows[kidx[key]][j] = v
            out = []
            for vec in kernel(rows, len(cols), G.N):
                comps = {}
                for j, v in vec.items():
                    w, t = divmod(j, nm)
                    comps.setdefault(w, {})[mons[t]] = v
                out.append(BoldElement(G, {w: Poly(G.N, G.dim, c, clean=True) for w, c in comps.items()}))
            self.slices[d] = out
        return self.slices[d]


def bold_qk_basis(G, k, d):
    return BoldModule(G, k).basis(d)


def _bold_vec(phi: BoldElement, d, G, col):
    out = {}
    nm = len(col)
    for w, f in phi.comps.items():
        for e, c in f.terms.items():
            out[w * nm + col[e]] = c
    return out


def symmetrize(phi: BoldElement) -> BoldElement:
    G = phi.G
    out = BoldElement(G, {})
    for g in range(G.order):
        out = out + phi.diagonal(g)
    return out.scale(Fraction(1, G.order))


def bold_T(G, eng_aH, xi, phi: BoldElement):
    """Differential action of T_xi(k) on C[V] (x) CW; None if the result is not polynomial."""
    out = {}
    for w, f in phi.comps.items():
        d = f.diff_along(xi)
        if d.terms:
            out[w] = d
    res = BoldElement(G, out)
    for H in G.hyperplanes:
        a = alpha_of(G, H.index, xi)
        aH = eng_aH[H.index]
        if not a or aH.is_zero():
            continue
        acc = BoldElement(G, {})
        for g, c in aH.coeffs.items():
            acc = acc + phi.diagonal(g).scale(c)
        quot = {}
        for w, f in acc.comps.items():
            q = try_divide_linear(f, G.alpha_polys[H.index], G.pivots[H.index])
            if q is None:
                return None
            quot[w] = q.scale(-a)
        res = res + BoldElement(G, quot)
    return res


def check_bold_stability(G, k, Dmax) -> Report:
    B = BoldModule(G, k)
    Q = QuasiModule(G, k)
    rep = Report("bold_stability", max_degree=Dmax)
    aH = [G.a_H(H.index, k) for H in G.hyperplanes]
    res = {"multiplication": True, "diagonal_action": True, "dunkl": True, "symmetrization": True}
    for d in range(Dmax + 1):
        basis = B.basis(d)
        for phi in basis:
            rep.checked += 1
            if d < Dmax:
                for j in range(G.dim):
                    if not B.contains(phi.times(Poly.var(G.N, G.dim, j))):
                        res["multiplication"] = False
                        rep.fail({"check": "multiplication", "degree": d, "x": j + 1})
            for g in G.generators:
                if not B.contains(phi.diagonal(g)):
                    res["diagonal_action"] = False
                    rep.fail({"check": "diagonal_action", "degree": d, "element": g})
            for j in range(G.dim):
                t = bold_T(G, aH, unit(G, j), phi)
                if t is None or not B.contains(t):
                    res["dunkl"] = False
                    rep.fail({"check": "dunkl", "degree": d, "xi": j + 1, "element": phi.to_json()})
        # symmetrization: e Q_k = e (Q_k (x) 1)
        mons = monomials(G.dim, d)
        col = {m: j for j, m in enumerate(mons)}
        ea, eb, eab = Echelon(), Echelon(), Echelon()
        for phi in basis:
            v = _bold_vec(symmetrize(phi), d, G, col)
            ea.add(v)
            eab.add(v)
        for f in Q.basis(d):
            v = _bold_vec(symmetrize(BoldElement(G, {0: f})), d, G, col)
            eb.add(v)
            eab.add(v)
        if not (len(ea) == len(eb) == len(eab)):
            res["symmetrization"] = False
            rep.fail({"check": "symmetrization", "degree": d, "dims": [len(ea), len(eb), len(eab)]})
    rep.extra.update(res)
    return rep


# ---------------------------------------------------------------------------
# stability under invariant differential operators

def dqk_membership(G, k, op, Dmax, Q: QuasiModule | None = None) -> Report:
    """Does op map every Q_k basis element of degree <= Dmax into Q_k?"""
    Q = Q or QuasiModule(G, k)
    if any(w != 0 for w, _ in op.terms):
        raise ValueError("operator has a nontrivial group part")
    rep = Report("dqk_membership", verified_up_to_degree=Dmax)
    for d in range(Dmax + 1):
        for f in Q.basis(d):
            rep.checked += 1
            r = op.apply(f)
            if not r.is_poly():
                rep.fail({"f": f.to_str(), "image": r.to_str(), "reason": "not polynomial"})
                return rep
            ok, wit = Q.membership(r.num)
            if not ok:
                rep.fail({"f": f.to_str(), "image": r.num.to_str(), "condition": wit})
                return rep
    return rep


def check_uk_stability(G, k, P: Poly, Dmax) -> Report:
    L = L_P(G, k, P)
    rep = dqk_membership(G, k, L, Dmax)
    rep.name = "uk_stability"
    return rep
