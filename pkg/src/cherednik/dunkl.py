"""Dunkl operators, differential-reflection operators and their restrictions."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb

from .errors import NotCoxeter, NotEquivariant, NotInvariant
from .exactnum import Cyc
from .groups import GroupAlgebraElement, Multiplicity
from .polyalg.poly import Poly, monomials, try_divide_linear
from .polyalg.ratfun import RatFun
from .errors import NotDivisible


class Report:
    """Outcome of an exhaustive check: pass flag, first witness, and counters."""

    def __init__(self, name, passed=True, witness=None, checked=0, **extra):
        self.name = name
        self.passed = passed
        self.witness = witness
        self.checked = checked
        self.extra = extra

    def fail(self, witness):
        if self.passed:
            self.passed = False
            self.witness = witness

    def to_json(self):
        out = {"check": self.name, "pass": self.passed, "witness": self.witness, "checked": self.checked}
        out.update(self.extra)
        return out

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return f"Report({self.name}, pass={self.passed}, witness={self.witness})"


def unit(G, j):
    return tuple(Cyc(G.N, int(i == j)) for i in range(G.dim))


def _as_vec(G, xi):
    return tuple(x if isinstance(x, Cyc) else Cyc(G.N, x) for x in xi)


def alpha_of(G, h, xi):
    a = G.hyperplanes[h].alpha
    s = Cyc(G.N, 0)
    for x, y in zip(a, xi):
        if x and y:
            s = s + x * y
    return s


# ---------------------------------------------------------------------------
# Dunkl operators on polynomials

class DunklEngine:
    """Applies T_xi(k) to polynomials, caching the work per monomial."""

    def __init__(self, G, k: Multiplicity):
        self.G = G
        self.k = k
        self.aH = [G.a_H(H.index, k) for H in G.hyperplanes]
        self._q = {}  # (h, exponent) -> (a_H x^e) / alpha_H
        self._T = {}  # (j, exponent) -> T_{e_j} x^e

    def reflection_part(self, h, e):
        key = (h, e)
        q = self._q.get(key)
        if q is None:
            G = self.G
            mono = Poly.monomial(G.N, e)
            g = self.aH[h].act_poly(mono)
            q = try_divide_linear(g, G.alpha_polys[h], G.pivots[h])
            if q is None:
                raise NotDivisible("a_H(k) f is not divisible by alpha_H")
            self._q[key] = q
        return q

    def T_mono(self, j, e):
        key = (j, e)
        r = self._T.get(key)
        if r is None:
            G = self.G
            r = Poly.monomial(G.N, e).diff(j)
            for H in G.hyperplanes:
                c = H.alpha[j]
                if c and not self.aH[H.index].is_zero():
                    r = r - self.reflection_part(H.index, e).scale(c)
            self._T[key] = r
        return r

    def T(self, j, f: Poly) -> Poly:
        out = {}
        for e, c in f.terms.items():
            for e2, c2 in self.T_mono(j, e).terms.items():
                v = out.get(e2)
                out[e2] = c * c2 if v is None else v + c * c2
        return Poly(self.G.N, self.G.dim, {e: v for e, v in out.items() if v}, clean=True)

    def apply(self, xi, f: Poly) -> Poly:
        out = Poly.zero(self.G.N, self.G.dim)
        for j, c in enumerate(_as_vec(self.G, xi)):
            if c:
                out = out + self.T(j, f).scale(c)
        return out

    def apply_poly_in_T(self, P: Poly, f: Poly) -> Poly:
        """P(T) f for P a polynomial in dual variables."""
        out = Poly.zero(self.G.N, self.G.dim)
        for gamma, c in P.terms.items():
            g = f
            for j in reversed(range(self.G.dim)):
                for _ in range(gamma[j]):
                    g = self.T(j, g)
            out = out + g.scale(c)
        return out


def dunkl_apply(G, k, xi, f: Poly) -> Poly:
    return DunklEngine(G, k).apply(xi, f)


# ---------------------------------------------------------------------------
# Operators in DW: sum of coefficient * derivative * group element

class DiffReflOp:
    """Finite sum of terms A_{w,beta} d^beta w with RatFun coefficients on the left."""

    def __init__(self, G, terms=None):
        self.G = G
        self.terms = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, RatFun):
                c = RatFun.const(G, c) if not isinstance(c, Poly) else RatFun.from_poly(G, c)
            if c:
                self.terms[key] = c

    # constructors
    @classmethod
    def identity(cls, G):
        return cls(G, {(0, (0,) * G.dim): RatFun.const(G, 1)})

    @classmethod
    def group_element(cls, G, w):
        return cls(G, {(w, (0,) * G.dim): RatFun.const(G, 1)})

    @classmethod
    def derivative(cls, G, xi):
        terms = {}
        for j, c in enumerate(_as_vec(G, xi)):
            if c:
                beta = tuple(int(i == j) for i in range(G.dim))
                terms[(0, beta)] = RatFun.const(G, c)
        return cls(G, terms)

    @classmethod
    def multiplication(cls, G, f):
        if isinstance(f, Poly):
            f = RatFun.from_poly(G, f)
        return cls(G, {(0, (0,) * G.dim): f})

    @classmethod
    def from_group_algebra(cls, G, a: GroupAlgebraElement, coeff: RatFun | None = None):
        zero = (0,) * G.dim
        coeff = coeff if coeff is not None else RatFun.const(G, 1)
        return cls(G, {(w, zero): coeff * c for w, c in a.coeffs.items()})

    # arithmetic
    def _wrap(self, terms):
        return type(self)(self.G, terms) if type(self) is not DiffReflOp and all(
            w == 0 for w, _ in terms) else DiffReflOp(self.G, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._wrap({key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        if isinstance(other, DiffReflOp):
            return op_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DiffReflOp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def order(self):
        return max((sum(b) for _, b in self.terms), default=-1)

    def group_support(self):
        return sorted({w for w, _ in self.terms})

    def apply(self, f) -> RatFun:
        """Apply to a polynomial or rational function."""
        G = self.G
        if isinstance(f, Poly):
            f = RatFun.from_poly(G, f)
        out = RatFun.const(G, 0)
        moved = {}
        for (w, beta), A in self.terms.items():
            g = moved.get(w)
            if g is None:
                g = moved[w] = f.act(w)
            out = out + A * g.diff_multi(beta)
        return out

    def conjugate(self, w):
        """w * self * w^-1."""
        G = self.G
        return op_mul(op_mul(DiffReflOp.group_element(G, w), self),
                      DiffReflOp.group_element(G, G.inv(w)))

    def is_equivariant(self):
        return all(self.conjugate(g) == self for g in self.G.generators)

    def restrict(self) -> "CMOperator":
        """Drop the group letters: sum_w A_w, as an operator on invariants."""
        out = {}
        for (w, beta), A in self.terms.items():
            key = (0, beta)
            out[key] = out[key] + A if key in out else A
        return CMOperator(self.G, out)

    def to_json(self):
        return [{"g": w, "d": list(beta), "coeff": c.to_str()}
                for (w, beta), c in sorted(self.terms.items())]

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, beta), c in sorted(self.terms.items()):
            d = "*".join(f"d{i + 1}" + (f"^{b}" if b > 1 else "") for i, b in enumerate(beta) if b)
            s = f"[{c.to_str()}]"
            if d:
                s += "*" + d
            if w:
                s += f"*g{w}"
            parts.append(s)
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_str()})"


class CMOperator(DiffReflOp):
    """A differential operator with RatFun coefficients and no group part."""

    def __init__(self, G, terms=None):
        terms = terms or {}
        norm = {}
        for key, c in terms.items():
            if isinstance(key[0], tuple):  # allow plain beta keys
                key = (0, key)
            if key[0] != 0:
                raise ValueError("CMOperator terms must have trivial group part")
            norm[key] = c
        super().__init__(G, norm)

    def restrict(self):
        return self


def _dual_monomial_image(G, u, gamma):
    """u d^gamma u^-1 as a constant-coefficient polynomial in the derivatives."""
    if u == 0:
        return {gamma: Cyc(G.N, 1)}
    key = (u, gamma)
    cache = G.__dict__.setdefault("_dual_mono_cache", {})
    r = cache.get(key)
    if r is None:
        r = G.act_dual(u, Poly.monomial(G.N, gamma)).terms
        cache[key] = r
    return r


def _subsets(beta):
    return product(*[range(b + 1) for b in beta])


def op_mul(a: DiffReflOp, b: DiffReflOp) -> DiffReflOp:
    """Product in normal form (group elements rightmost)."""
    G = a.G
    out = {}
    moved = {}
    for (u, beta), A in a.terms.items():
        for (v, gamma), B in b.terms.items():
            uB = moved.get((u, v, gamma))
            if uB is None:
                uB = moved[(u, v, gamma)] = B.act(u)
            D = _dual_monomial_image(G, u, gamma)
            uv = G.mul(u, v)
            for gp in _subsets(beta):
                coef = 1
                for x, y in zip(beta, gp):
                    coef *= comb(x, y)
                C = A * uB.diff_multi(gp)
                if coef != 1:
                    C = C * coef
                if not C:
                    continue
                rest = tuple(x - y for x, y in zip(beta, gp))
                for delta, c in D.items():
                    key = (uv, tuple(x + y for x, y in zip(rest, delta)))
                    t = C * c
                    if key in out:
                        out[key] = out[key] + t
                    else:
                        out[key] = t
    res = {key: c for key, c in out.items() if c}
    if isinstance(a, CMOperator) and isinstance(b, CMOperator):
        return CMOperator(G, res)
    return DiffReflOp(G, res)


def dunkl_T(G, k: Multiplicity, xi) -> DiffReflOp:
    """T_xi(k) = d_xi - sum_H alpha_H(xi)/alpha_H * a_H(k)."""
    xi = _as_vec(G, xi)
    op = DiffReflOp.derivative(G, xi)
    for H in G.hyperplanes:
        c = alpha_of(G, H.index, xi)
        if not c:
            continue
        a = G.a_H(H.index, k)
        if a.is_zero():
            continue
        coeff = RatFun.inverse_alpha(G, H.index) * (-c)
        op = op + DiffReflOp.from_group_algebra(G, a, coeff)
    return op


def _coxeter_c(G, c):
    if not G.is_coxeter():
        raise NotCoxeter("nabla needs every hyperplane to have order 2")
    if isinstance(c, Multiplicity):
        return [c.value(o, 1) for o in range(len(G.orbits))]
    if isinstance(c, (list, tuple)):
        return [Fraction(x) for x in c]
    return [Fraction(c)] * len(G.orbits)


def dunkl_nabla_op(G, c, xi) -> DiffReflOp:
    """nabla_xi(c) = d_xi + sum_H c_H alpha_H(xi)/alpha_H s_H (s_H f(x) = f(s_H x))."""
    cs = _coxeter_c(G, c)
    xi = _as_vec(G, xi)
    op = DiffReflOp.derivative(G, xi)
    zero = (0,) * G.dim
    for H in G.hyperplanes:
        a = alpha_of(G, H.index, xi)
        cH = cs[H.orbit_id]
        if a and cH:
            op = op + DiffReflOp(G, {(H.distinguished, zero): RatFun.inverse_alpha(G, H.index) * (a * cH)})
    return op


def dunkl_nabla(G, c, xi, f) -> RatFun:
    return dunkl_nabla_op(G, c, xi).apply(f)


def poly_in_T(G, k, P: Poly) -> DiffReflOp:
    """P(T) for P in dual variables, substituting T_{e_1},...,T_{e_n} in a fixed order."""
    Ts = [dunkl_T(G, k, unit(G, j)) for j in range(G.dim)]
    return _poly_in_ops(G, Ts, P, reverse=False)


def _poly_in_ops(G, ops, P, reverse=False):
    powers = {}

    def power(j, m):
        key = (j, m)
        if key not in powers:
            powers[key] = DiffReflOp.identity(G) if m == 0 else op_mul(power(j, m - 1), ops[j])
        return powers[key]

    out = DiffReflOp(G, {})
    order = list(range(G.dim))
    if reverse:
        order.reverse()
    for gamma, c in sorted(P.terms.items()):
        term = DiffReflOp.identity(G)
        for j in order:
            if gamma[j]:
                term = op_mul(term, power(j, gamma[j]))
        out = out + term.scale(c)
    return out


def restrict_invariant(op: DiffReflOp, check=True) -> CMOperator:
    if check and not op.is_equivariant():
        raise NotEquivariant("operator does not commute with the group action")
    return op.restrict()


def L_P(G, k, P: Poly, check=True) -> CMOperator:
    if check and not G.is_dual_invariant(P):
        raise NotInvariant("P is not W-invariant")
    return restrict_invariant(poly_in_T(G, k, P), check=False)


def cm_commutator(G, k, P: Poly, Q: Poly) -> CMOperator:
    for R in (P, Q):
        if not G.is_dual_invariant(R):
            raise NotInvariant("argument is not W-invariant")
    LP = L_P(G, k, P, check=False)
    LQ = L_P(G, k, Q, check=False)
    return op_mul(LP, LQ) - op_mul(LQ, LP)


# ---------------------------------------------------------------------------
# exhaustive checks on polynomials

def all_monomials(G, D):
    for d in range(D + 1):
        yield from monomials(G.dim, d)


def check_commutativity(G, k, D) -> Report:
    eng = DunklEngine(G, k)
    rep = Report("commutativity", max_degree=D)
    for e in all_monomials(G, D):
        f = Poly.monomial(G.N, e)
        for i in range(G.dim):
            for j in range(i + 1, G.dim):
                r = eng.T(i, eng.T(j, f)) - eng.T(j, eng.T(i, f))
                rep.checked += 1
                if r:
                    rep.fail({"monomial": list(e), "pair": [i + 1, j + 1], "result": r.to_str()})
                    return rep
    return rep


def check_equivariance(G, k, D, elements=None) -> Report:
    """w T_xi w^-1 = T_{w xi} on all monomials of degree <= D."""
    eng = DunklEngine(G, k)
    rep = Report("equivariance", max_degree=D)
    ws = range(G.order) if elements is None else elements
    for e in all_monomials(G, D):
        f = Poly.monomial(G.N, e)
        for w in ws:
            wf = G.act_poly(w, f)
            for i in range(G.dim):
                lhs = G.act_poly(w, eng.T(i, f))
                rhs = eng.apply(G.apply_vector(w, unit(G, i)), wf)
                rep.checked += 1
                if lhs != rhs:
                    rep.fail({"monomial": list(e), "element": w, "xi": i + 1})
                    return rep
    return rep


def commutator_rhs(G, k, i, j, f: Poly, shift: int) -> Poly:
    """<e_i, x_j> f + sum_H <alpha_H,e_i><x_j,v_H>/<alpha_H,v_H> sum_r n(k_r - k_{r+shift}) e_{H,r} f."""
    out = f if i == j else Poly.zero(G.N, G.dim)
    for H in G.hyperplanes:
        a = H.alpha[i]
        vj = H.v[j]
        if not a or not vj:
            continue
        norm = sum((x * y for x, y in zip(H.alpha, H.v)), Cyc(G.N, 0))
        pref = a * vj / norm
        n = H.order
        acc = GroupAlgebraElement(G, {})
        for r in range(n):
            diff = n * (k.value(H.orbit_id, r) - k.value(H.orbit_id, r + shift))
            if diff:
                acc = acc + G.idempotent(H.index, r) * diff
        out = out + acc.act_poly(f).scale(pref)
    return out


def check_cherednik_relations(G, k, D) -> Report:
    """[x, x'] = 0, w T w^-1 = T_{w xi}, and the [xi, x] relation on polynomials of degree <= D.

    The [xi, x] relation is tested with both index shifts (k_i - k_{i-1} and
    k_i - k_{i+1}); the report records which holds.  They coincide when every
    n_H = 2.
    """
    eng = DunklEngine(G, k)
    rep = Report("cherednik_relations", max_degree=D)
    xs = [Poly.var(G.N, G.dim, j) for j in range(G.dim)]
    shift_ok = {-1: True, 1: True}
    for e in all_monomials(G, D):
        f = Poly.monomial(G.N, e)
        for a in range(G.dim):
            for b in range(G.dim):
                if xs[a] * (xs[b] * f) != xs[b] * (xs[a] * f):
                    rep.fail({"relation": "[x,x']", "monomial": list(e)})
        for i in range(G.dim):
            Tf = eng.T(i, f)
            for j in range(G.dim):
                lhs = eng.T(i, xs[j] * f) - xs[j] * Tf
                rep.checked += 1
                for shift in (-1, 1):
                    if shift_ok[shift] and lhs != commutator_rhs(G, k, i, j, f, shift):
                        shift_ok[shift] = False
                        rep.extra.setdefault("witness_shift", {})[str(shift)] = {
                            "monomial": list(e), "xi": i + 1, "x": j + 1}
    rep.extra["shift_minus_one_holds"] = shift_ok[-1]
    rep.extra["shift_plus_one_holds"] = shift_ok[1]
    if not shift_ok[-1]:
        rep.fail(rep.extra["witness_shift"]["-1"])
    eq = check_equivariance(G, k, D)
    rep.extra["equivariance"] = eq.passed
    if not eq.passed:
        rep.fail(eq.witness)
    return rep


# ---------------------------------------------------------------------------
# Calogero-Moser

def _hermitian_norm(G, H):
    return sum((x * x.conj() for x in H.alpha), Cyc(G.N, 0))


def calogero_moser(G, c) -> CMOperator:
    """Delta - sum_H c_H (c_H + 1) (alpha_H, alpha_H) / alpha_H^2."""
    cs = _coxeter_c(G, c)
    zero = (0,) * G.dim
    terms = {}
    for j in range(G.dim):
        beta = tuple(2 if i == j else 0 for i in range(G.dim))
        terms[(0, beta)] = RatFun.const(G, 1)
    pot = RatFun.const(G, 0)
    for H in G.hyperplanes:
        cH = cs[H.orbit_id]
        if cH * (cH + 1):
            pot = pot - RatFun.inverse_alpha(G, H.index, 2) * (_hermitian_norm(G, H) * (cH * (cH + 1)))
    if pot:
        terms[(0, zero)] = pot
    return CMOperator(G, terms)


def nabla_laplacian(G, c) -> DiffReflOp:
    out = DiffReflOp(G, {})
    for j in range(G.dim):
        nb = dunkl_nabla_op(G, c, unit(G, j))
        out = out + op_mul(nb, nb)
    return out


def _is_real_orthogonal(G):
    return all(x == x.conj() for e in G.elements for r in e.matrix for x in r)


def check_cm_identity(G, c) -> Report:
    """restrict(|nabla(c)|^2) equals the Calogero-Moser operator, also after clearing delta^2."""
    if not G.is_coxeter():
        raise NotCoxeter("the Calogero-Moser identity needs a Coxeter group")
    rep = Report("calogero_moser")
    if not _is_real_orthogonal(G):
        rep.fail("coordinates are not real orthonormal")
        return rep
    lhs = restrict_invariant(nabla_laplacian(G, c))
    rhs = calogero_moser(G, c)
    rep.checked = len(set(lhs.terms) | set(rhs.terms))
    if lhs != rhs:
        rep.fail({"lhs": lhs.to_str(), "rhs": rhs.to_str()})
        return rep
    d2 = RatFun.from_poly(G, G.delta * G.delta)
    keys = set(lhs.terms) | set(rhs.terms)
    for key in sorted(keys):
        a = lhs.terms.get(key, RatFun.const(G, 0)) * d2
        b = rhs.terms.get(key, RatFun.const(G, 0)) * d2
        if not (a.is_poly() and b.is_poly() and a.num == b.num):
            rep.fail({"term": list(key[1])})
    rep.extra["cleared_polynomial_identity"] = rep.passed
    return rep


# ---------------------------------------------------------------------------
# nabla versus T

def conjugation_probe(G, k: Multiplicity, D) -> Report:
    """Test delta_k^{e1} nabla(e2 k) delta_k^{-e1} = T(k) for the four sign choices.

    delta_k = prod_H alpha_H^{k_H}.  The passing combinations are recorded.
    """
    if not k.is_integral():
        raise ValueError("conjugation probe needs integral k")
    kv = [k.value(H.orbit_id, 1) for H in G.hyperplanes]
    if not G.is_coxeter():
        raise NotCoxeter("nabla needs a Coxeter group")
    eng = DunklEngine(G, k)
    delta = [Poly.const(G.N, G.dim, 1), Poly.const(G.N, G.dim, 1)]  # positive, negative parts
    for h, m in enumerate(kv):
        m = int(m)
        if m > 0:
            delta[0] = delta[0] * G.alpha_polys[h] ** m
        elif m < 0:
            delta[1] = delta[1] * G.alpha_polys[h] ** (-m)

    def delta_pow(sign):
        # delta_k^sign as a RatFun
        num, den = (delta[0], delta[1]) if sign > 0 else (delta[1], delta[0])
        dexp = [0] * len(G.hyperplanes)
        for h, m in enumerate(kv):
            m = int(m) * sign
            if m < 0:
                dexp[h] = -m
        return RatFun(G, num, dexp)

    cands = {}
    for e1 in (1, -1):
        for e2 in (1, -1):
            cs = [e2 * k.value(o, 1) for o in range(len(G.orbits))]
            ops = [dunkl_nabla_op(G, cs, unit(G, j)) for j in range(G.dim)]
            cands[(e1, e2)] = (delta_pow(e1), ops, delta_pow(-e1))
    ok = {key: True for key in cands}
    checked = 0
    for e in all_monomials(G, D):
        f = Poly.monomial(G.N, e)
        for j in range(G.dim):
            target = RatFun.from_poly(G, eng.T(j, f))
            checked += 1
            for key, (left, ops, right) in cands.items():
                if ok[key]:
                    val = left * ops[j].apply(right * RatFun.from_poly(G, f))
                    if val != target:
                        ok[key] = False
    passing = [f"delta^{'+' if a > 0 else '-'}k nabla({'+' if b > 0 else '-'}k) delta^{'-' if a > 0 else '+'}k"
               for (a, b), v in sorted(ok.items(), reverse=True) if v]
    return Report("conjugation_probe", passed=bool(passing), checked=checked, max_degree=D,
                  passing=passing, all_pass=all(ok.values()))
