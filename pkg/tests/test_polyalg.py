from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cherednik.errors import NotDivisible
from cherednik.exactnum import Cyc
from cherednik.polyalg import (Poly, RatFun, demoted_difference, graded_solve, kernel, monomials,
                               ord_along, parse_poly, reynolds, solve, try_divide_linear)
from cherednik.polyalg.linalg import matrix_inverse, matmul

from conftest import cyclic, dihedral, gmpn, symmetric


def P(G, text):
    return parse_poly(text, G.N, G.dim)


# -- group action on polynomials ------------------------------------------

def test_action_examples():
    Z2 = cyclic(2)
    s = Z2.generators[0]
    assert Z2.act_poly(s, P(Z2, "x1")) == P(Z2, "-x1")
    Z3 = cyclic(3)
    s = next(H for H in Z3.hyperplanes).stabilizer[1]
    assert Z3.act_poly(s, P(Z3, "x1^2")) == P(Z3, "z3*x1^2")


@pytest.mark.parametrize("G", [cyclic(3), symmetric(3), dihedral(4), dihedral(5), gmpn(3, 1, 2)],
                         ids=lambda G: G.describe())
def test_delta_transforms_by_inverse_determinant(G):
    d = G.delta
    for w in range(G.order):
        assert G.act_poly(w, d) == d.scale(G.elements[w].det.inverse())


def test_reynolds_examples():
    Z2 = cyclic(2)
    assert reynolds(Z2, P(Z2, "x1")).is_zero()
    assert reynolds(Z2, P(Z2, "x1^2")) == P(Z2, "x1^2")
    S3 = symmetric(3)
    assert reynolds(S3, P(S3, "x1^2")) == P(S3, "(x1^2 + x2^2 + x3^2)/3")


def test_demoted_difference_examples():
    Z2 = cyclic(2)
    s = Z2.generators[0]
    assert demoted_difference(Z2, s, P(Z2, "x1")) == P(Z2, "2")
    assert demoted_difference(Z2, s, P(Z2, "x1^2")).is_zero()
    assert demoted_difference(Z2, s, P(Z2, "x1^3")) == P(Z2, "2*x1^2")


def test_demoted_difference_rejects_non_reflection():
    Z3 = cyclic(3)
    # the identity is not a pseudoreflection
    with pytest.raises(ValueError):
        demoted_difference(Z3, 0, P(Z3, "x1"))


def test_ord_along_examples():
    S3 = symmetric(3)
    h = next(H.index for H in S3.hyperplanes
             if P(S3, "x1 - x2").scale(H.alpha[0]) == S3.alpha_polys[H.index])
    assert ord_along(S3, h, P(S3, "(x1 - x2)^2*x3")) == 2
    assert ord_along(S3, h, P(S3, "1")) == 0
    Z2 = cyclic(2)
    assert ord_along(Z2, 0, P(Z2, "x1^3 - x1^5")) == 3


def test_graded_solve_examples():
    assert len(graded_solve([], 2, 4, 1)) == 5
    basis = graded_solve([{(4, 0): 1}], 2, 4, 1)
    assert len(basis) == 4 and all(b.coefficient((4, 0)) == 0 for b in basis)
    # Z/2, Q_1: the odd part must vanish to order 2 at x = 0
    assert [b.to_str() for b in graded_solve([], 1, 3, 1)] == ["x1^3"]
    assert graded_solve([{(1,): 1}], 1, 1, 1) == []


def test_ratfun_examples():
    Z2 = cyclic(2)
    inv = RatFun.inverse_alpha(Z2, 0)
    assert (inv + (-inv)).is_zero()
    x = Poly.var(Z2.N, 1, 0)
    assert RatFun(Z2, x * x, [1]) == RatFun.from_poly(Z2, x)
    assert inv * RatFun.from_poly(Z2, P(Z2, "x1^3 - x1")) == RatFun.from_poly(Z2, P(Z2, "x1^2 - 1"))


def test_ratfun_derivative_quotient_rule():
    Z2 = cyclic(2)
    f = RatFun.inverse_alpha(Z2, 0, 2)  # x^-2
    assert f.diff(0) == RatFun.inverse_alpha(Z2, 0, 3) * RatFun.const(Z2, -2)


def test_parse_and_print():
    S3 = symmetric(3)
    f = P(S3, "3/2*x1^2*x2 - x3")
    assert f.to_str() == "3/2*x1^2*x2 - x3"
    assert P(S3, "p2") == P(S3, "x1^2 + x2^2 + x3^2")
    Z3 = cyclic(3)
    assert P(Z3, "z3*x1").coefficient((1,)) == Cyc.zeta(3)
    with pytest.raises(ValueError):
        P(S3, "x4")
    with pytest.raises(ValueError):
        P(S3, "x1 +")


def test_poly_json_roundtrip():
    G = gmpn(3, 1, 2)
    f = P(G, "z3*x1^2 - 1/2*x2 + 4")
    assert Poly.from_json(G.N, G.dim, f.to_json()) == f


def test_linalg_solve_and_inverse():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
    sol, ker = solve(rows, [Fraction(3), Fraction(1)], 2, 1)
    assert sol == {0: 2, 1: 1} and ker == []
    assert solve([{0: Fraction(1)}, {0: Fraction(2)}], [Fraction(1), Fraction(3)], 1, 1) is None
    M = [[Cyc(4, 1), Cyc.zeta(4)], [Cyc(4, 0), Cyc(4, 2)]]
    Mi = matrix_inverse(M, 4)
    I = matmul(M, Mi, 4)
    assert all(I[i][j] == int(i == j) for i in range(2) for j in range(2))


# -- properties -------------------------------------------------------------

GROUPS = [cyclic(3), cyclic(4), symmetric(3), dihedral(4), dihedral(5), gmpn(3, 1, 2)]


@st.composite
def poly_in(draw, G, max_deg=4):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        d = draw(st.integers(0, max_deg))
        mons = monomials(G.dim, d)
        e = mons[draw(st.integers(0, len(mons) - 1))]
        c = Cyc.zeta(G.N, draw(st.integers(0, G.N - 1))) * draw(st.integers(-3, 3))
        terms[e] = terms.get(e, Cyc(G.N, 0)) + c
    return Poly(G.N, G.dim, terms)


@st.composite
def group_and_polys(draw, n=2):
    G = draw(st.sampled_from(GROUPS))
    return (G,) + tuple(draw(poly_in(G)) for _ in range(n))


@given(group_and_polys(3))
def test_poly_ring_axioms(t):
    G, f, g, h = t
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Poly.zero(G.N, G.dim)


@given(group_and_polys(2), st.data())
def test_action_is_group_action(t, data):
    G, f, _ = t
    u = data.draw(st.integers(0, G.order - 1))
    v = data.draw(st.integers(0, G.order - 1))
    assert G.act_poly(u, G.act_poly(v, f)) == G.act_poly(G.mul(u, v), f)
    assert G.act_poly(0, f) == f


@given(group_and_polys(2), st.data())
def test_action_is_ring_map(t, data):
    G, f, g = t
    w = data.draw(st.integers(0, G.order - 1))
    assert G.act_poly(w, f * g) == G.act_poly(w, f) * G.act_poly(w, g)


@given(group_and_polys(2), st.data())
def test_twisted_leibniz(t, data):
    # (1-s)(fg)/a = ((1-s)f/a) g + s(f) ((1-s)g/a)
    G, f, g = t
    H = G.hyperplanes[data.draw(st.integers(0, len(G.hyperplanes) - 1))]
    s = H.stabilizer[1]
    lhs = demoted_difference(G, s, f * g)
    rhs = demoted_difference(G, s, f) * g + G.act_poly(s, f) * demoted_difference(G, s, g)
    assert lhs == rhs


@given(group_and_polys(1))
def test_reynolds_is_invariant_projection(t):
    G, f = t
    r = reynolds(G, f)
    assert G.is_invariant(r)
    assert reynolds(G, r) == r


@given(group_and_polys(2), st.data())
def test_ord_is_additive(t, data):
    G, f, g = t
    if f.is_zero() or g.is_zero():
        return
    h = data.draw(st.integers(0, len(G.hyperplanes) - 1))
    a = G.alpha_polys[h]
    f2 = f * a ** data.draw(st.integers(0, 2))
    assert ord_along(G, h, f2 * g) == ord_along(G, h, f2) + ord_along(G, h, g)


@given(group_and_polys(2), st.data())
def test_division_by_linear_form(t, data):
    G, f, _ = t
    h = data.draw(st.integers(0, len(G.hyperplanes) - 1))
    a = G.alpha_polys[h]
    assert try_divide_linear(f * a, a, G.pivots[h]) == f


@given(st.integers(1, 3), st.integers(0, 5), st.lists(st.integers(-2, 2), min_size=1, max_size=8), st.data())
def test_graded_solve_kernel(nvars, d, coeffs, data):
    mons = monomials(nvars, d)
    conds = []
    for _ in range(data.draw(st.integers(0, 3))):
        conds.append({m: Fraction(data.draw(st.integers(-2, 2))) for m in mons[:len(coeffs)]})
    basis = graded_solve(conds, nvars, d, 1)
    for b in basis:
        for c in conds:
            assert sum((b.coefficient(m) * v for m, v in c.items()), Cyc(1, 0)) == 0
    rows = [{j: c[m] for j, m in enumerate(mons) if c.get(m)} for c in conds]
    from cherednik.polyalg import rank
    assert len(basis) == len(mons) - rank([r for r in rows if r])


@given(group_and_polys(1), st.data())
def test_derivative_commutes_with_action(t, data):
    # w (d_xi f) = d_{w xi} (w f)
    G, f = t
    w = data.draw(st.integers(0, G.order - 1))
    j = data.draw(st.integers(0, G.dim - 1))
    xi = tuple(Cyc(G.N, int(i == j)) for i in range(G.dim))
    assert G.act_poly(w, f.diff(j)) == G.act_poly(w, f).diff_along(G.apply_vector(w, xi))


def test_kernel_orders_free_columns():
    ker = kernel([{0: Fraction(1), 2: Fraction(-1)}], 3, 1)
    assert len(ker) == 2


def test_divide_not_divisible():
    Z2 = cyclic(2)
    assert try_divide_linear(P(Z2, "x1 + 1"), Z2.alpha_polys[0], 0) is None
    from cherednik.polyalg import divide_linear
    with pytest.raises(NotDivisible):
        divide_linear(P(Z2, "x1 + 1"), Z2.alpha_polys[0], 0)
