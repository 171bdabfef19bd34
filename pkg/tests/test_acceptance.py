"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed at the end of
the pytest run (see conftest.py) and when this file is run as a script.
"""
import io
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from cherednik import cli, derham, dunkl, kzconn, quasiinv
from cherednik.errors import SingularParameter
from cherednik.groups import Multiplicity, WRepresentation, joint_spectrum, spectrum
from cherednik.polyalg import Poly, parse_poly

from conftest import cyclic, dihedral, gmpn, symmetric

RESULTS = {}

GRID = ([cyclic(n) for n in range(2, 7)] + [dihedral(m) for m in range(3, 7)]
        + [symmetric(3), symmetric(4), gmpn(2, 1, 2), gmpn(3, 1, 2)])


def record(n, title, ok, detail=""):
    line = f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {title}"
    if detail:
        line += f" :: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def random_k(G, seed):
    rng = random.Random(seed)
    return Multiplicity(G, [[Fraction(0)] + [Fraction(rng.randint(-9, 9), rng.randint(2, 7))
                                             for _ in range(n - 1)] for n in G.orbit_orders])


def k_grid(G, idx):
    ks = [Multiplicity.scalar(G, c) for c in (0, 1, 2)]
    return ks + [random_k(G, 1000 + idx)]


def run_grid(check, D):
    failures, timings = [], {}
    for idx, G in enumerate(GRID):
        t = time.perf_counter()
        for k in k_grid(G, idx):
            r = check(G, k, D)
            if not r.passed:
                failures.append((G.describe(), k.to_json(), r.witness))
        timings[G.describe()] = time.perf_counter() - t
    return failures, timings


def slowest(timings):
    name = max(timings, key=timings.get)
    return f"slowest {name} {timings[name]:.1f}s"


def test_criterion_01_commutativity():
    failures, timings = run_grid(dunkl.check_commutativity, 8)
    ok = not failures and max(timings.values()) < 60
    record(1, "Dunkl operators commute on all monomials of degree <= 8", ok,
           f"{len(GRID)} groups x 4 k, {slowest(timings)}; failures={failures[:1]}")
    assert ok


def test_criterion_02_equivariance():
    failures, timings = run_grid(dunkl.check_equivariance, 8)
    ok = not failures
    record(2, "w T_xi w^-1 = T_{w xi} on all monomials of degree <= 8", ok,
           f"{slowest(timings)}; failures={failures[:1]}")
    assert ok


def test_criterion_03_relations():
    failures, _ = run_grid(dunkl.check_cherednik_relations, 6)
    G = cyclic(2)
    s = G.generators[0]
    x = parse_poly("x1", 2, 1)
    z2_ok = True
    for kk in (Fraction(1), Fraction(2), Fraction(-3, 7)):
        eng = dunkl.DunklEngine(G, Multiplicity.scalar(G, kk))
        for m in range(7):
            f = Poly.monomial(2, (m,))
            if eng.T(0, x * f) - x * eng.T(0, f) != f - G.act_poly(s, f).scale(2 * kk):
                z2_ok = False
    ok = not failures and z2_ok
    record(3, "[xi, x] relation on degree <= 6; Z/2 gives [T, x] = 1 - 2ks", ok,
           f"failures={failures[:1]}, z2={z2_ok}")
    assert ok


def test_criterion_04_calogero_moser():
    coxeter = [G for G in GRID if G.is_coxeter() and dunkl._is_real_orthogonal(G)]
    bad = []
    for idx, G in enumerate(coxeter):
        rng = random.Random(2000 + idx)
        for c in ([1] * len(G.orbits), [2] * len(G.orbits),
                  [Fraction(rng.randint(-7, 7), rng.randint(2, 5)) for _ in G.orbits]):
            r = dunkl.check_cm_identity(G, [Fraction(x) for x in c])
            if not (r.passed and r.extra["cleared_polynomial_identity"]):
                bad.append((G.describe(), c))
    S3 = symmetric(3)
    p2, p3 = parse_poly("p2", 2, 3), parse_poly("p3", 2, 3)
    comm_ok = all(dunkl.cm_commutator(S3, k, p2, p3).is_zero()
                  for k in (Multiplicity.scalar(S3, 1), Multiplicity.scalar(S3, 2), random_k(S3, 7)))
    ok = not bad and comm_ok
    record(4, "restrict(|nabla(c)|^2) = Calogero-Moser operator; [L_p2, L_p3] = 0 for S3", ok,
           f"{len(coxeter)} Coxeter groups {[G.describe() for G in coxeter]}; bad={bad}")
    assert ok


def test_criterion_05_de_rham():
    def both(G, k, D):
        h = derham.check_homotopy(G, k, D)
        if not h.passed:
            return h
        r = derham.check_d_squared(G, k, D)
        if G.dim >= 2 and r.passed and not r.extra.get("commutator_cross_check"):
            r.fail("cross-check missing")
        return r
    failures, timings = run_grid(both, 8)
    ok = not failures
    record(5, "E(k) = Kd(k) + d(k)K and d(k)^2 = 0 for l + m <= 8, with the K^0 commutator cross-check",
           ok, f"{slowest(timings)}; failures={failures[:1]}")
    assert ok


def test_criterion_06_central_element():
    bad = []
    for G in GRID:
        js = joint_spectrum(G)
        if not all(c >= 0 and c.denominator == 1 for coeffs, _ in js for c in coeffs.values()):
            bad.append((G.describe(), "coefficients"))
        for kk in range(4):
            k = Multiplicity.scalar(G, kk)
            z = G.central_element(k)
            if z.certificate is None:
                bad.append((G.describe(), "central"))
            spec = spectrum(z)
            pred = {}
            for coeffs, m in js:
                v = sum((k.value(o, i) * c for (o, i), c in coeffs.items()), Fraction(0))
                pred[v] = pred.get(v, 0) + m
            if pred != spec:
                bad.append((G.describe(), kk))
            if G.describe() == "symmetric(n=3)" and not set(spec) <= {0, 3 * kk, 6 * kk}:
                bad.append(("S3 spectrum", kk))
    ok = not bad
    record(6, "z(k) central; regular spectrum linear in k with nonnegative integer coefficients; "
              "S3 spectrum in {0, 3k, 6k}", ok, f"bad={bad}")
    assert ok


def test_criterion_07_intertwiner():
    bad, checked, singular = [], 0, 0
    for idx, G in enumerate(GRID):
        for k in [Multiplicity.scalar(G, 1), Multiplicity.scalar(G, 2), random_k(G, 3000 + idx)]:
            spec = spectrum(G.central_element(k))
            expect_singular = any(-c >= 1 and (-c).denominator == 1 for c in spec)
            try:
                S = derham.Intertwiner(G, k, 6)
            except SingularParameter:
                singular += 1
                if not expect_singular:
                    bad.append((G.describe(), k.to_json(), "unexpected singular"))
                continue
            checked += 1
            r = S.verify()
            if expect_singular or not r.passed:
                bad.append((G.describe(), k.to_json(), r.witness))
    G = cyclic(2)
    try:
        derham.Intertwiner(G, Multiplicity.scalar(G, Fraction(-1, 2)), 6)
        z2 = False
    except SingularParameter as exc:
        z2 = exc.eigenvalue == -1
    ok = not bad and z2
    record(7, "S(k) exists with d(k)S = S d(0) up to total degree 6; Z/2 at k = -1/2 is singular", ok,
           f"verified={checked}, singular={singular}, bad={bad[:1]}")
    assert ok


def test_criterion_08_kz():
    S3, G312 = symmetric(3), gmpn(3, 1, 2)
    cases = [(S3, k, WRepresentation.standard(S3)) for k in (Multiplicity.scalar(S3, 1), random_k(S3, 11))]
    cases += [(G312, k, WRepresentation.reflection(G312))
              for k in (Multiplicity.scalar(G312, 1), random_k(G312, 12))]
    bad = []
    for G, k, tau in cases:
        f = kzconn.check_flatness(G, k, tau, 3)
        r = kzconn.check_residues(G, k, tau)
        if not (f.passed and f.extra["residue_criterion"] and r.passed):
            bad.append((G.describe(), k.to_json(), f.witness, r.witness))
    ok = not bad
    record(8, "KZ curvature vanishes for S3 (standard) and G(3,1,2) (reflection); residue criterion", ok,
           f"bad={bad}")
    assert ok


def test_criterion_09_quasi_invariants():
    bad = []
    for n in (2, 3, 4):
        G = cyclic(n)
        for tail in product(range(4), repeat=n - 1):
            k = (0,) + tail
            dims = quasiinv.QuasiModule(G, Multiplicity(G, [list(k)])).dims(12)
            if dims != [int(d >= n * k[d % n] + d % n) for d in range(13)]:
                bad.append(("slices", n, k))
    timings = {}
    cases = [(cyclic(3), Multiplicity(cyclic(3), [[0, 1, 2]])), (cyclic(4), Multiplicity(cyclic(4), [[0, 3, 0, 1]]))]
    for G in (symmetric(3), gmpn(2, 1, 2)):
        cases += [(G, Multiplicity.scalar(G, 1)), (G, Multiplicity.scalar(G, 2))]
    numerators = {}
    for G, k in cases:
        t = time.perf_counter()
        cap = max(12, quasiinv.default_cap(G, k))
        cert = quasiinv.freeness_certificate(G, k, cap)
        h = cert.hilbert
        timings[(G.describe(), str(k.to_json()))] = time.perf_counter() - t
        numerators[f"{G.describe()} k={k.to_json()['orbits']}"] = h.numerator_str()
        if not (h.passed and h.p1 == G.order and all(c >= 0 for c in h.numerator) and cert.passed):
            bad.append((G.describe(), k.to_json(), h.status))
    b2 = max(v for (name, _), v in timings.items() if name.startswith("G(m=2"))
    ok = not bad and b2 < 300
    record(9, "Z/n slices follow x^(n k_i + i) C[x^n]; Hilbert numerators certified with p(1) = |W| "
              "and Nakayama generators", ok, f"B2 max {b2:.1f}s; {numerators}; bad={bad}")
    assert ok


def test_criterion_10_bold_and_uk():
    bad = []
    cases = [(cyclic(2), [[0, 1]]), (cyclic(3), [[0, 1, 2]]), (cyclic(4), [[0, 1, 0, 2]]),
             (dihedral(3), None), (dihedral(4), None)]
    for G, orbits in cases:
        k = Multiplicity(G, orbits) if orbits else Multiplicity.scalar(G, 1)
        r = quasiinv.check_bold_stability(G, k, 8)
        if not (r.passed and r.extra["symmetrization"] and r.extra["dunkl"]):
            bad.append(("bold", G.describe(), r.witness))
    Z2 = cyclic(2)
    k1 = Multiplicity.scalar(Z2, 1)
    L = dunkl.L_P(Z2, k1, parse_poly("x1^2", 2, 1))
    if not L.apply(parse_poly("x1^3", 2, 1)).is_zero():
        bad.append(("witness L(x^3)",))
    for G, k in [(Z2, k1), (symmetric(3), Multiplicity.scalar(symmetric(3), 1)),
                 (dihedral(4), Multiplicity.scalar(dihedral(4), 1)), (gmpn(2, 1, 2), Multiplicity.scalar(gmpn(2, 1, 2), 2))]:
        r = quasiinv.check_uk_stability(G, k, parse_poly("p2", G.N, G.dim), 8)
        if not r.passed:
            bad.append(("uk", G.describe(), r.witness))
    ok = not bad
    record(10, "CW-valued quasi-invariants: symmetrization per degree <= 8, Dunkl stability; "
               "Q_k stable under L_p2 (Z/2: L(x^3) = 0)", ok, f"bad={bad}")
    assert ok


def test_criterion_11_invariant_theory():
    bad = []
    expected = {"symmetric(n=3)": [1, 2, 3], "G(m=2,n=2,p=1)": [2, 4]}
    for G in GRID:
        degs = G.degrees(max(G.order, 12))
        prod = 1
        for d in degs:
            prod *= d
        if prod != G.order:
            bad.append((G.describe(), degs))
        if G.family == "cyclic" and degs != [G.order]:
            bad.append((G.describe(), degs))
        if G.describe() in expected and degs != expected[G.describe()]:
            bad.append((G.describe(), degs))
        if G.order <= 12:
            k0 = Multiplicity.zero(G)
            cert = quasiinv.freeness_certificate(G, k0, quasiinv.default_cap(G, k0))
            if not (cert.passed and len(cert.generators) == G.order):
                bad.append((G.describe(), "coinvariants"))
    ok = not bad
    record(11, "Molien degrees and prod d_i = |W|; Q_0 freeness yields |W| coinvariant generators", ok,
           f"bad={bad}")
    assert ok


def test_criterion_12_determinism():
    outs = []
    for jobs in ("1", "4"):
        buf = io.StringIO()
        code = cli.run(["suite", "--family", "symmetric", "--n", "3", "--k", "1", "--max-degree", "6",
                        "--out", "json", "--jobs", jobs], stdout=buf)
        outs.append((code, buf.getvalue().encode()))
    ok = outs[0] == outs[1] and outs[0][0] == 0
    record(12, "suite JSON is byte-identical for --jobs 1 and --jobs 4", ok,
           f"{len(outs[0][1])} bytes, exit {outs[0][0]}")
    assert ok


if __name__ == "__main__":
    import sys
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
