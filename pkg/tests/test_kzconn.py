from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cherednik.exactnum import Cyc
from cherednik.groups import Multiplicity, WRepresentation
from cherednik.kzconn import (KZConnection, Section, check_flatness, check_residues, codim2_flats,
                              kz_derivative, kz_residues)
from cherednik.polyalg import Poly, RatFun

from conftest import cyclic, dihedral, gmpn, symmetric


def test_trivial_rep_residues_vanish():
    G = gmpn(3, 1, 2)
    k = Multiplicity(G, [[0, 2], [0, 1, 3]])
    for B in kz_residues(G, k, WRepresentation.trivial(G)):
        assert all(not x for r in B for x in r)


def test_z2_det_residue():
    G = cyclic(2)
    kk = Fraction(5, 3)
    B = kz_residues(G, Multiplicity.scalar(G, kk), WRepresentation.det(G))
    assert [[x for x in r] for r in B[0]] == [[Cyc(2, 2 * kk)]]
    s = Section.pure(G, Poly.const(2, 1, 1), [Cyc(2, 1)])
    out = kz_derivative(G, Multiplicity.scalar(G, kk), WRepresentation.det(G), (Cyc(2, 1),), s)
    assert out.comps[0] == RatFun.inverse_alpha(G, 0) * (2 * kk)


def test_constant_section_with_zero_residues():
    G = symmetric(3)
    tau = WRepresentation.trivial(G)
    s = Section.pure(G, Poly.const(2, 3, 1), [Cyc(2, 1)])
    assert kz_derivative(G, Multiplicity.scalar(G, 1), tau, (1, 0, 0), s).is_zero()


def test_rank_one_is_vacuous():
    G = cyclic(4)
    r = check_flatness(G, Multiplicity(G, [[0, 1, 2, 3]]), WRepresentation.reflection(G), 3)
    assert r.passed and r.checked == 0


def test_s3_standard():
    G = symmetric(3)
    tau = WRepresentation.standard(G)
    k = Multiplicity.scalar(G, 1)
    r = check_flatness(G, k, tau, 3)
    assert r.passed and r.extra["residue_criterion"]
    assert check_residues(G, k, tau).passed


def test_g312_reflection():
    G = gmpn(3, 1, 2)
    k = Multiplicity(G, [[0, Fraction(1, 2)], [0, Fraction(-2, 3), Fraction(7, 5)]])
    tau = WRepresentation.reflection(G)
    assert check_flatness(G, k, tau, 2).passed
    assert check_residues(G, k, tau).passed


def test_codim2_flats_s3():
    # in C^3 all three hyperplanes of S3 contain the line x1 = x2 = x3
    assert codim2_flats(symmetric(3)) == [(0, 1, 2)]
    assert len(codim2_flats(gmpn(2, 1, 2))) == 1


def test_broken_residues_are_detected():
    G = symmetric(3)
    tau = WRepresentation.standard(G)
    conn = KZConnection(G, Multiplicity.scalar(G, 1), tau)
    zero = tuple(tuple(Cyc(2, 0) for _ in r) for r in conn.B[0])
    conn.B = [zero] + list(conn.B[1:])
    s = Section.pure(G, Poly.const(2, 3, 1), [Cyc(2, 1), Cyc(2, 0)])
    bad = any(not conn.curvature(i, j, s).is_zero() or
              not conn.curvature(i, j, Section.pure(G, Poly.const(2, 3, 1), [Cyc(2, 0), Cyc(2, 1)])).is_zero()
              for i in range(3) for j in range(i + 1, 3))
    assert bad


@settings(max_examples=15)
@given(st.sampled_from(["reflection", "standard", "det"]), st.integers(-4, 4), st.integers(1, 3),
       st.sampled_from([symmetric(3), dihedral(4), dihedral(5)]))
def test_flatness_for_rational_k(rep, a, b, G):
    k = Multiplicity(G, [[Fraction(0), Fraction(a, b)] for _ in G.orbits])
    tau = WRepresentation.by_name(G, rep)
    assert check_flatness(G, k, tau, 1).passed
    assert check_residues(G, k, tau).passed
