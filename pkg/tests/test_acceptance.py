"""Acceptance criteria 1-8.

Each test records one ``criterion N: PASS/FAIL`` line; the lines are printed
by the terminal-summary hook in ``conftest.py`` and also when this file is run
directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from gencluster.extorus import QSeries, SkewForm
from gencluster.fixtures import example
from gencluster.gca import ClassicalEngine, ClassicalFPoly
from gencluster.gqca import BracketBase, QuantumEngine, QuantumFPoly, cocycle_holds
from gencluster.patterns import inner, path_data
from gencluster.qcoeff import QCoeff
from gencluster.seedfile import SeedFile
from gencluster.seedcore import mutate_exchange_classical, mutate_pair, principal_lift, skew_symmetrizer
from gencluster.verify import (
    check_duality,
    check_gbbc,
    random_classical_instance,
    random_exchange_matrix,
    random_path,
    random_quantum_instance,
)

RESULTS: dict[int, str] = {}

EX1_PATH = (1, 2, 1, 2)
G2_PATH = (1, 2, 1, 2, 1, 2, 1, 2)
CORPUS_SIZE = 60
QUANTUM_SIZE = 20


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(RESULTS[n])
    assert ok, RESULTS[n]


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(20240601)
    out = []
    seen = set()
    while len(out) < CORPUS_SIZE:
        sf, path = random_classical_instance(rng, ranks=(2, 3), max_r=3, max_len=6)
        key = (str(sf.to_dict()), tuple(path))
        if key not in seen:
            seen.add(key)
            out.append((sf, path))
    return out


@pytest.fixture(scope="module")
def quantum_corpus():
    rng = random.Random(777)
    return [random_quantum_instance(rng, max_len=4, max_degree=8) for _ in range(QUANTUM_SIZE)]


# -- 1 -----------------------------------------------------------------------------


def test_criterion_1_ex1_golden():
    t0 = time.perf_counter()
    sf = example("rank2")
    eng = ClassicalEngine(sf.B, sf.md)
    pd = eng.path_data(EX1_PATH)
    checks = {}
    checks["c"] = pd.c == ((1, 0), (2, 1), (1, 1), (0, 1))
    checks["chat"] = pd.chat == ((0, -1), (1, -2), (1, -1), (1, 0))
    checks["g"] = pd.g == ((-1, 2), (-1, 1), (-1, 0), (0, -1))

    d0r = eng.d0r
    d = [Fraction(1, d0r[k - 1]) for k in EX1_PATH]
    checks["d"] = d == [Fraction(1, 2)] * 4

    def ip(u, j):
        return inner(u, [d[j] * v for v in pd.c[j]], d0r)

    printed_chat = {(1, 0): 1, (2, 0): 1, (2, 1): 1, (3, 0): 1, (3, 1): 2, (3, 2): 1}
    printed_g = {(1, 0): -1, (2, 0): -1, (2, 1): -2, (3, 0): 0, (3, 1): -1, (3, 2): -1}
    got_chat = {(l, j): ip(pd.chat[l], j) for (l, j) in printed_chat}
    gs = [eng.path_data(EX1_PATH[: l + 1]).g[-1] for l in range(4)]
    got_g = {(l, j): ip(gs[l], j) for (l, j) in printed_g}
    checks["12 inner products"] = got_chat == printed_chat and got_g == printed_g

    checks["L"] = eng.format_L(EX1_PATH) == [
        "1 + z*y1 + y1^2",
        "1 + y1^2*y2*L1^-1",
        "1 + z*y1*y2*L1^-1*L2^-1 + (y1*y2*L1^-1*L2^-1)^2",
        "1 + y2*L1^-1*L2^-2*L3^-1",
    ]

    # the printed L's, multiplied as printed, against all three engine routes
    y1, y2, z = sympy.symbols("y1 y2 z")
    L1 = 1 + z * y1 + y1**2
    L2 = 1 + y1**2 * y2 / L1
    u = y1 * y2 / (L1 * L2)
    L3 = 1 + z * u + u**2
    L4 = 1 + y2 / (L1 * L2**2 * L3)
    products = [L1, L1 * L2, L1 * L2**2 * L3, L2 * L3 * L4]
    printed_F = [
        1 + z * y1 + y1**2,
        None,  # printed as 1 + z y1 y1^2 + y1^2 y2, which is not L1 L2 (see the next check)
        1 + z * y1 + y1**2 + z * y1 * y2 + 2 * y1**2 * y2 + y1**2 * y2**2,
        1 + y2,
    ]
    routes = [
        (eng.f_poly_direct(p), eng.gupta_product(p), eng.gupta_expansion(p))
        for p in (EX1_PATH[: j + 1] for j in range(4))
    ]
    # the budget covers the library work; the sympy oracle below is not timed
    elapsed = time.perf_counter() - t0

    fok = True
    for j in range(4):
        want = sympy.expand(sympy.cancel(products[j]))
        if printed_F[j] is not None:
            fok &= sympy.expand(printed_F[j] - want) == 0
        for F in routes[j]:
            fok &= sympy.expand(F.as_expr() - want) == 0
    checks["F"] = fok
    # L1 L2 = 1 + z y1 + y1^2 + y1^2 y2; the printed middle term z y1 y1^2 is a misprint of z y1
    literal = ClassicalFPoly.from_expr(1 + z * y1 * y1**2 + y1**2 * y2, 2)
    checks["F2 misprint"] = routes[1][1] != literal and str(routes[1][1]) == "1 + z*y1 + y1^2 + y1^2*y2"
    bad = [k for k, v in checks.items() if not v]
    record(1, not bad and elapsed < 1.0, f"{len(checks) - len(bad)}/{len(checks)} groups exact, {elapsed:.2f}s < 1s"
           + (f"; failed {bad}" if bad else ""))


# -- 2 -----------------------------------------------------------------------------

# Paper display, transcribed literally: exponent of Yhat -> coefficient.
G2_PRINTED = {
    1: {(3, 0): "q^(-3/2)", (2, 0): "h*q^(-1)", (1, 0): "h*q^(-1/2)", (0, 0): "1"},
    2: {(3, 2): "q^(-1/2)", (3, 0): "q^(-3/2)", (2, 0): "h*q^(-1)", (1, 0): "h*q^(-1/2)", (0, 0): "1"},
    3: {
        (6, 0): "q^(-6)",
        (5, 0): "h*q^(-11/2) + h*q^(-9/2)",
        (4, 0): "h*q^(-5) + h*q^(-3) + h^2*q^(-4)",
        (3, 0): "q^(-9/2) + q^(-3/2) + h*q^(-7/2) + h*q^(-5/2)",
        (2, 0): "h*q^(-3) + h*q^(-1) + h*q^(-2)",
        (1, 0): "h*q^(-3/2) + h*q^(-1/2)",
        (6, 1): "q^(-11/2) + q^(-9/2) + q^(-7/2)",
        (5, 1): "h*q^(-9/2) + 2*h*q^(-7/2) + h*q^(-5/2)",
        (4, 1): "h*q^(-7/2) + h*q^(-5/2) + h*q^(-3/2) + h^2*q^(-5/2)",
        (3, 1): "q^(-5/2) + q^(-3/2) + q^(-1/2) + h^2*q^(-3/2)",
        (2, 1): "h*q^(-1/2)",
        (6, 2): "q^(-4) + q^(-3) + q^(-2)",
        (5, 2): "h*q^(-5/2) + h*q^(-3/2)",
        (4, 2): "h*q^(-1)",
        (6, 3): "q^(-3/2)",
        (0, 0): "1",
    },
    4: {(3, 0): "q^(-3/2)", (2, 0): "h*q^(-1)", (1, 0): "h*q^(-1/2)", (3, 1): "q^(-3/2) + q^(-1/2)",
        (2, 1): "h*q^(-1/2)", (3, 2): "q^(-1/2)", (0, 0): "1"},
    5: {(3, 0): "q^(-3/2)", (2, 0): "h*q^(-1)", (1, 0): "h*q^(-1/2)", (3, 1): "q^(-5/2) + q^(-3/2) + q^(-1/2)",
        (2, 1): "h*q^(-3/2) + h*q^(-1/2)", (1, 1): "h*q^(-1/2)", (3, 2): "q^(-5/2) + q^(-3/2) + q^(-1/2)",
        (2, 2): "h*q^(-1)", (3, 3): "q^(-3/2)", (0, 0): "1"},
    6: {(0, 1): "q^(-1/2)", (0, 0): "1"},
    7: {(0, 0): "1"},
    8: {(0, 0): "1"},
}

# Misprints in the display, each forced by the exact exchange relations and by q = 1.
G2_CORRECTIONS = {
    # top monomial of F_{2;t2} is Yhat^(3e1+e2); the printed 3e1+2e2 breaks the exchange relation
    2: ({(3, 2)}, {(3, 1): "q^(-1/2)"}),
    3: (set(), {
        # Yhat^(3e1): the h-part is h^2 (q^(-7/2) + q^(-5/2)), printed with h
        (3, 0): "q^(-9/2) + q^(-3/2) + h^2*q^(-7/2) + h^2*q^(-5/2)",
        # Yhat^(2e1): the middle term is h^2 q^(-2), printed h q^(-2)
        (2, 0): "h*q^(-3) + h*q^(-1) + h^2*q^(-2)",
    }),
}

G2_G = [(-1, 3), (-1, 2), (-2, 3), (-1, 1), (-1, 0), (0, -1), (1, 0), (0, 1)]


def g2_expected(t):
    terms = dict(G2_PRINTED[t])
    drop, fix = G2_CORRECTIONS.get(t, (set(), {}))
    for k in drop:
        del terms[k]
    terms.update(fix)
    return terms


def test_criterion_2_g2_golden():
    t0 = time.perf_counter()
    sf = example("g2")
    eng = QuantumEngine(sf.pair(), sf.md)
    pd = path_data(sf.Btilde, sf.md.r, G2_PATH, sf.Lambda)
    ok_g = list(pd.gtilde) == G2_G and list(pd.g) == G2_G
    fpolys, max_level, mismatches = [], 0, []
    for t in range(1, 9):
        p = G2_PATH[:t]
        cdeg = eng.classical_fpoly(p).degree()
        F = eng.extract_fpoly(p, start=cdeg, delta=1, margin=0, max_bound=10)
        max_level = max(max_level, *F.certificate.levels)
        # the certified value is the full product at the top level, not a re-truncation
        top = eng.gupta_product_quantum(p, max(F.certificate.levels))
        if top.terms != F.terms:
            mismatches.append(f"t{t} product")
        want = QuantumFPoly(eng.form, {a: QCoeff.parse(c) for a, c in g2_expected(t).items()})
        if F != want:
            mismatches.append(f"t{t}")
        fpolys.append(F)
    sep = eng.separation_check_quantum(G2_PATH, fpolys)["steps"] == 8
    t3_terms = sum(len(c) for c in fpolys[2].terms.values())
    elapsed = time.perf_counter() - t0
    ok = ok_g and not mismatches and sep and max_level <= 10 and elapsed < 10
    record(2, ok, f"8 g-vectors {'ok' if ok_g else 'WRONG'}, 8/8 expansions exact with 3 misprints corrected"
           f" (t3: {len(fpolys[2].terms)} monomials, {t3_terms} coefficient terms), separation {sep},"
           f" max truncation {max_level}, {elapsed:.2f}s < 10s" + (f"; mismatches {mismatches}" if mismatches else ""))


def test_g2_literal_display_is_refuted():
    # the uncorrected t2 and t3 displays fail the exact exchange relations
    sf = example("g2")
    eng = QuantumEngine(sf.pair(), sf.md)
    good = eng.fpolys_along(G2_PATH[:3])
    for t in (2, 3):
        literal = QuantumFPoly(eng.form, {a: QCoeff.parse(c) for a, c in G2_PRINTED[t].items()})
        fs = list(good)
        fs[t - 1] = literal
        with pytest.raises(Exception):
            eng.separation_check_quantum(G2_PATH[:t], fs[:t])
        with pytest.raises(Exception):
            eng.specialize_q1(G2_PATH[:t], literal)


# -- 3 -----------------------------------------------------------------------------


def test_criterion_3_triple_equality(corpus):
    t0 = time.perf_counter()
    bad = []
    prefixes = 0
    for sf, path in corpus:
        eng = ClassicalEngine(sf.B, sf.md)
        for j in range(1, len(path) + 1):
            p = path[:j]
            a = eng.f_poly_direct(p)
            b = eng.gupta_product(p)
            c = eng.gupta_expansion(p, degree_bound=a.degree())
            prefixes += 1
            if not (a == b == c):
                bad.append((sf.to_dict(), p))
    ranks = {sf.n for sf, _ in corpus}
    rmax = max(max(sf.md.r) for sf, _ in corpus)
    ok = not bad and len(corpus) >= 50 and ranks == {2, 3} and rmax <= 3
    record(3, ok, f"{len(corpus)} seeds, {prefixes} prefixes, ranks {sorted(ranks)}, r <= {rmax},"
           f" {len(bad)} disagreements, {time.perf_counter() - t0:.1f}s")


# -- 4 -----------------------------------------------------------------------------


def test_criterion_4_duality(corpus, quantum_corpus):
    vertices = 0
    bad = []
    for sf, path in list(corpus) + list(quantum_corpus):
        for res in (check_duality(sf, path), check_gbbc(sf, path)):
            if res.status != "pass":
                bad.append(res.as_dict())
        vertices += len(path) + 1
    # quantum lifts of the classical corpus as well
    for sf, path in corpus:
        pair = principal_lift(sf.B, skew_symmetrizer(sf.B))
        lifted = SeedFile(pair.Btilde, sf.md, pair.Lambda, "quantum")
        for res in (check_duality(lifted, path), check_gbbc(lifted, path)):
            if res.status != "pass":
                bad.append(res.as_dict())
        vertices += len(path) + 1
    record(4, not bad, f"{vertices} vertices, tropical/inner-product/D-form duality and GB = BC exact,"
           f" sign-coherent throughout, {len(bad)} failures")


# -- 5 and 6 -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def quantum_fpolys(quantum_corpus):
    out = []
    g2 = example("g2")
    out.append((QuantumEngine(g2.pair(), g2.md), G2_PATH))
    lift = example("rank2-quantum")
    out.append((QuantumEngine(lift.pair(), lift.md), (1, 2, 1, 2)))
    out.append((QuantumEngine(lift.pair(), lift.md), (2, 1, 2, 1)))
    for sf, path in quantum_corpus:
        out.append((QuantumEngine(sf.pair(), sf.md), tuple(path)))
    return [(eng, path, eng.fpolys_along(path)) for eng, path in out]


def test_criterion_5_q1_bridge(quantum_fpolys):
    n = 0
    bad = []
    for eng, path, Fs in quantum_fpolys:
        for j, F in enumerate(Fs, 1):
            n += 1
            try:
                eng.specialize_q1(path[:j], F)
            except Exception as exc:  # noqa: BLE001
                bad.append((path[:j], str(exc)))
    record(5, not bad, f"{n} quantum F-polynomials over {len(quantum_fpolys)} instances equal the classical"
           f" ones at q = 1, {len(bad)} failures")


def test_criterion_6_structure(quantum_fpolys, corpus):
    n = 0
    bad = []
    for eng, path, Fs in quantum_fpolys:
        for j, F in enumerate(Fs, 1):
            n += 1
            rep = F.structure_report()
            if not (F.structure_ok() and rep["polynomial"]):
                bad.append((path[:j], rep))
    for sf, path in corpus:
        eng = ClassicalEngine(sf.B, sf.md)
        for j in range(1, len(path) + 1):
            n += 1
            if not eng.gupta_product(path[:j]).structure_ok():
                bad.append(path[:j])
    record(6, not bad, f"{n} F-polynomials: constant term 1, unique maximal monomial dividing all others,"
           f" no negative exponents; {len(bad)} failures")


# -- 7 -----------------------------------------------------------------------------


def test_criterion_7_involution_and_sign():
    rng = random.Random(99)
    checks = 0
    bad = 0
    while checks < 500:
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n)
        r = tuple(rng.randint(1, 3) for _ in range(n))
        pair = principal_lift(B, skew_symmetrizer(B))
        # move away from the principal shape before testing
        for k in random_path(rng, n, rng.randint(0, 3)):
            pair = mutate_pair(pair, r, k, rng.choice((1, -1)))
            if max(abs(int(v)) for v in pair.Btilde.flat) > 40:
                break
        k = rng.randint(1, n)
        e = rng.choice((1, -1))
        once = mutate_pair(pair, r, k, e)
        ok = once == mutate_pair(pair, r, k, -e) and mutate_pair(once, r, k, rng.choice((1, -1))) == pair
        Bk = mutate_exchange_classical(pair.Btilde, r, k, e)
        ok &= np.array_equal(Bk, mutate_exchange_classical(pair.Btilde, r, k, -e))
        ok &= np.array_equal(mutate_exchange_classical(Bk, r, k, rng.choice((1, -1))), pair.Btilde)
        ok &= np.array_equal(Bk, once.Btilde)
        checks += 1
        bad += not ok
    record(7, bad == 0, f"{checks} randomized double-mutation and eps-flip checks, {bad} failures")


# -- 8 -----------------------------------------------------------------------------


def test_criterion_8_cocycle():
    rng = random.Random(8)
    form = SkewForm([[0, 1], [-1, 0]])
    bad = []
    for i in range(100):
        r = rng.randint(1, 3)
        half = [QCoeff.const(1)] + [QCoeff({(rng.randint(-2, 2), rng.randint(0, 1)): rng.randint(1, 2)})
                                    for _ in range(r // 2)]
        h = [half[min(s, r - s)] if min(s, r - s) < len(half) else half[-1] for s in range(r + 1)]
        h[0] = h[-1] = QCoeff.const(1)
        z = QSeries(form, {(1, 0): 1, (0, 1): QCoeff.q_half(rng.randint(-2, 2))}, 8)
        a, a2, b = rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 3)
        if not cocycle_holds(BracketBase(h, b, z), a, a2):
            bad.append((a, a2, b))
    record(8, not bad, f"100 random (a, a', b) instances at truncation 8, {len(bad)} failures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
