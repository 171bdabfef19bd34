from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cherednik import dunkl
from cherednik.dunkl import (DiffReflOp, DunklEngine, L_P, check_cherednik_relations,
                             check_cm_identity, check_commutativity, check_equivariance,
                             cm_commutator, conjugation_probe, dunkl_T, op_mul, poly_in_T,
                             restrict_invariant, unit)
from cherednik.errors import NotCoxeter, NotEquivariant, NotInvariant
from cherednik.exactnum import Cyc
from cherednik.groups import Multiplicity
from cherednik.polyalg import Poly, RatFun, monomials, parse_poly

from conftest import cyclic, dihedral, gmpn, symmetric


def P(G, text):
    return parse_poly(text, G.N, G.dim)


def mult(G, *orbits):
    return Multiplicity(G, [[Fraction(x) for x in o] for o in orbits])


def test_cyclic3_formula():
    # T = d/dx - (1/x)(3 k1 e1 + 3 k2 e2), evaluated directly in the group algebra
    G = cyclic(3)
    k = mult(G, [0, Fraction(1, 4), Fraction(2, 5)])
    eng = DunklEngine(G, k)
    a = G.idempotent(0, 1) * (3 * k.value(0, 1)) + G.idempotent(0, 2) * (3 * k.value(0, 2))
    for m in range(10):
        f = P(G, f"x1^{m}")
        af = a.act_poly(f)
        expected = f.diff(0) - (Poly.monomial(G.N, (m - 1,)).scale(af.coefficient((m,))) if m else 0)
        assert eng.T(0, f) == expected


def test_z2_values():
    G = cyclic(2)
    k = Multiplicity.scalar(G, Fraction(1, 3))
    eng = DunklEngine(G, k)
    assert eng.T(0, P(G, "x1")) == P(G, "1/3")
    assert eng.T(0, P(G, "x1^2")) == P(G, "2*x1")
    assert eng.T(0, P(G, "x1^3")) == P(G, "7/3*x1^2")


def test_identity_normal_form():
    G = cyclic(2)
    a = DiffReflOp.identity(G).scale(Fraction(5, 2))
    assert op_mul(a, DiffReflOp.identity(G)) == a


def test_s_times_derivative():
    G = cyclic(2)
    s = DiffReflOp.group_element(G, G.generators[0])
    d = DiffReflOp.derivative(G, unit(G, 0))
    assert op_mul(s, d) == op_mul(d, s).scale(-1)


def test_z2_T_squared_normal_form():
    G = cyclic(2)
    kk = Fraction(3, 7)
    T = dunkl_T(G, Multiplicity.scalar(G, kk), unit(G, 0))
    s = G.generators[0]
    inv1 = RatFun.inverse_alpha(G, 0, 1)
    inv2 = RatFun.inverse_alpha(G, 0, 2)
    expected = DiffReflOp(G, {
        (0, (2,)): RatFun.const(G, 1),
        (0, (1,)): inv1 * (-2 * kk),
        (0, (0,)): inv2 * kk,
        (s, (0,)): inv2 * (-kk),
    })
    TT = op_mul(T, T)
    assert TT == expected
    for m in (3, 4):
        f = P(G, f"x1^{m}")
        eng = DunklEngine(G, Multiplicity.scalar(G, kk))
        assert TT.apply(f) == RatFun.from_poly(G, eng.T(0, eng.T(0, f)))


def test_commutativity_examples():
    S3 = symmetric(3)
    assert check_commutativity(S3, Multiplicity.scalar(S3, 2), 6).passed
    for G in (cyclic(4), dihedral(5), gmpn(3, 1, 2)):
        assert check_commutativity(G, Multiplicity.zero(G), 4).passed
    G = gmpn(3, 1, 2)
    assert check_commutativity(G, mult(G, [0, Fraction(2, 7)], [0, Fraction(-1, 3), Fraction(5, 4)]), 5).passed


def test_relations_examples():
    G = cyclic(2)
    for kk in (Fraction(0), Fraction(1), Fraction(-2, 5)):
        k = Multiplicity.scalar(G, kk)
        eng = DunklEngine(G, k)
        x = P(G, "x1")
        s = G.generators[0]
        for m in range(8):
            f = P(G, f"x1^{m}")
            # [T, x] = 1 - 2k s
            assert eng.T(0, x * f) - x * eng.T(0, f) == f - G.act_poly(s, f).scale(2 * kk)
        assert check_cherednik_relations(G, k, 6).passed
    S3 = symmetric(3)
    assert check_cherednik_relations(S3, Multiplicity.scalar(S3, 1), 5).passed


def test_relation_index_shift_for_cyclic3():
    G = cyclic(3)
    r = check_cherednik_relations(G, mult(G, [0, 1, Fraction(1, 3)]), 6)
    assert r.passed
    assert r.extra["shift_minus_one_holds"] and not r.extra["shift_plus_one_holds"]


def test_equivariance_random_rational():
    G = dihedral(5)
    assert check_equivariance(G, Multiplicity.scalar(G, Fraction(-3, 4)), 4).passed


def test_restrict_examples():
    G = symmetric(3)
    d = DiffReflOp.derivative(G, (1, 1, 1))
    assert restrict_invariant(d) == d.restrict()
    T = dunkl_T(G, Multiplicity.scalar(G, 1), unit(G, 0))
    with pytest.raises(NotEquivariant):
        restrict_invariant(T)


def test_cm_commutator_examples():
    S3 = symmetric(3)
    k = Multiplicity.scalar(S3, 1)
    p2 = P(S3, "p2")
    assert cm_commutator(S3, k, p2, p2).is_zero()
    assert cm_commutator(S3, k, p2, P(S3, "p3")).is_zero()
    assert cm_commutator(S3, Multiplicity.scalar(S3, Fraction(2, 3)), p2, P(S3, "p3")).is_zero()
    Z2 = cyclic(2)
    kz = Multiplicity.scalar(Z2, Fraction(5, 2))
    assert cm_commutator(Z2, kz, P(Z2, "x1^2"), P(Z2, "x1^4")).is_zero()
    with pytest.raises(NotInvariant):
        cm_commutator(S3, k, P(S3, "x1"), p2)


def test_L_p2_on_z2():
    G = cyclic(2)
    L = L_P(G, Multiplicity.scalar(G, 1), P(G, "x1^2"))
    assert L.apply(P(G, "x1^3")).is_zero()
    assert L.apply(P(G, "x1^2")) == RatFun.const(G, -2)
    assert L.apply(P(G, "x1^5")) == RatFun.from_poly(G, P(G, "10*x1^3"))


def test_L_p2_s3_is_calogero_moser_form():
    # L_{p2} on invariants equals Laplacian - 2 sum_H k/alpha_H d_{alpha_H^vee}
    S3 = symmetric(3)
    k = Multiplicity.scalar(S3, Fraction(1, 2))
    L = L_P(S3, k, P(S3, "p2"))
    f = P(S3, "x1^2*x2^2 + x1^2*x3^2 + x2^2*x3^2")
    lap = sum((f.diff(i).diff(i) for i in range(3)), Poly.zero(2, 3))
    rhs = RatFun.from_poly(S3, lap)
    for H in S3.hyperplanes:
        # (alpha, alpha) = 2 here and d_{alpha^vee} = d_alpha
        grad = f.diff_along(H.alpha)
        rhs = rhs - RatFun.inverse_alpha(S3, H.index) * RatFun.from_poly(S3, grad.scale(Fraction(1)))
    assert L.apply(f) == rhs


def test_conjugation_probe_examples():
    G = cyclic(2)
    r0 = conjugation_probe(G, Multiplicity.zero(G), 6)
    assert r0.extra["all_pass"]
    r1 = conjugation_probe(G, Multiplicity.scalar(G, 1), 6)
    assert len(r1.extra["passing"]) == 1
    with pytest.raises(NotCoxeter):
        conjugation_probe(cyclic(3), Multiplicity.scalar(cyclic(3), 1), 2)


@pytest.mark.parametrize("G,c", [(symmetric(3), [Fraction(2)]), (dihedral(5), [Fraction(1, 2)]),
                                 (dihedral(4), [Fraction(1), Fraction(-1, 3)]),
                                 (gmpn(2, 1, 2), [Fraction(2), Fraction(1)])],
                         ids=["S3", "I2(5)", "I2(4)", "B2"])
def test_cm_identity(G, c):
    assert check_cm_identity(G, c).passed


# -- properties -------------------------------------------------------------

GROUPS = [cyclic(3), cyclic(4), symmetric(3), dihedral(4), dihedral(5), gmpn(3, 1, 2)]


@st.composite
def setting(draw):
    G = draw(st.sampled_from(GROUPS))
    orbits = [[Fraction(0)] + [Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
                               for _ in range(n - 1)] for n in G.orbit_orders]
    k = Multiplicity(G, orbits)
    d = draw(st.integers(0, 4))
    mons = monomials(G.dim, d)
    f = Poly.monomial(G.N, mons[draw(st.integers(0, len(mons) - 1))])
    return G, k, f


@given(setting(), st.data())
def test_T_commute_property(t, data):
    G, k, f = t
    eng = DunklEngine(G, k)
    i, j = data.draw(st.integers(0, G.dim - 1)), data.draw(st.integers(0, G.dim - 1))
    assert eng.T(i, eng.T(j, f)) == eng.T(j, eng.T(i, f))


@given(setting(), st.data())
def test_T_lowers_degree_and_is_linear_in_k(t, data):
    G, k, f = t
    eng = DunklEngine(G, k)
    eng2 = DunklEngine(G, k.scaled(2))
    eng0 = DunklEngine(G, Multiplicity.zero(G))
    j = data.draw(st.integers(0, G.dim - 1))
    Tf = eng.T(j, f)
    assert Tf.is_zero() or Tf.degree() == f.degree() - 1
    # T(2k) - T(0) = 2 (T(k) - T(0))
    assert eng2.T(j, f) - eng0.T(j, f) == (Tf - eng0.T(j, f)).scale(2)


@given(setting(), st.data())
def test_operator_matches_engine(t, data):
    G, k, f = t
    j = data.draw(st.integers(0, G.dim - 1))
    op = dunkl_T(G, k, unit(G, j))
    assert op.apply(f) == RatFun.from_poly(G, DunklEngine(G, k).T(j, f))


@given(setting(), st.data())
def test_operator_product_is_composition(t, data):
    G, k, f = t
    i, j = data.draw(st.integers(0, G.dim - 1)), data.draw(st.integers(0, G.dim - 1))
    A, B = dunkl_T(G, k, unit(G, i)), dunkl_T(G, k, unit(G, j))
    w = data.draw(st.integers(0, G.order - 1))
    W = DiffReflOp.group_element(G, w)
    assert op_mul(op_mul(A, W), B).apply(f) == A.apply(W.apply(B.apply(f)))
