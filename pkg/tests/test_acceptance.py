"""One test per acceptance criterion; each records a PASS/FAIL line.

Two criteria cannot be met as stated and are marked xfail(strict=True), so a
surprise pass would turn the suite red. The analysis is in the decisions
ledger and the README.
"""

import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from theta_forge.charspace import (
    HalfChar,
    all_even_gopel_groups,
    enumerate_gopel_groups,
    even_chars,
    odd_chars,
    vanishing_even_set,
)
from theta_forge.classify import FundamentalThetas, thetanulls_g2, v4_fundamental_test, v4_theta_test
from theta_forge.cyclic import (
    SixthThetaTriple,
    case2_constraint,
    case2_inverse,
    genus4_case2_reduction,
    picard_ratios,
    sixth_char_quasi_periodicity,
)
from theta_forge.errors import DomainError
from theta_forge.identities import genus2_suite, genus3_suite, random_siegel, verify_identities
from theta_forge.igusa import (
    D8_POLY,
    D12_POLYS,
    L2_FACTOR_CONSTANT,
    L2_POLY,
    BinarySextic,
    evaluate,
    igusa,
    l2_factorization_ratio,
)
from theta_forge.periods import period_matrix
from theta_forge.theta import parity_residual, quasi_periodicity_residual, theta, theta_closed_form
from theta_forge.thomae import (
    frobenius_residual,
    genus2_curve,
    genus3_branch_points,
    genus3_curve,
    picard_branch_points,
    verify_thomae,
)

RESULTS: dict = {}


def record(n, ok, detail, seconds):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {detail}"
    print(RESULTS[n])
    return ok


def test_criterion_01_censuses():
    t = time.perf_counter()
    got = {g: (len(even_chars(g)), len(odd_chars(g))) for g in (2, 3, 4)}
    dt = time.perf_counter() - t
    ok = got == {2: (10, 6), 3: (36, 28), 4: (136, 120)} and dt < 1
    assert record(1, ok, f"even/odd {got}", dt)


@pytest.mark.xfail(strict=True, reason="24 all-even groups at g=3 is not attainable; the count is 30 (see ledger)")
def test_criterion_02_gopel_counts():
    t = time.perf_counter()
    n22 = len(enumerate_gopel_groups(2, 2))
    n33 = len(enumerate_gopel_groups(3, 3))
    e22 = len(all_even_gopel_groups(2, 2))
    e33 = len(all_even_gopel_groups(3, 3))
    dt = time.perf_counter() - t
    ok = (n22, n33, e22, e33) == (15, 135, 6, 24) and dt < 30
    detail = f"groups {n22}/{n33}, all-even {e22}/{e33} (stated 15/135, 6/24)"
    assert record(2, ok, detail, dt)


def test_criterion_03_theta_evaluator():
    t = time.perf_counter()
    rng = np.random.default_rng(3)
    closed = max(abs(theta(np.zeros(g), 1j * np.eye(g), HalfChar.zero(g)) - theta_closed_form(g)) for g in (1, 2, 3))
    qp = par = 0.0
    for _ in range(100):
        tau = random_siegel(2, rng)
        z = (rng.normal(size=2) + 1j * rng.normal(size=2)) * 0.3
        ch = HalfChar.from_key(2, int(rng.integers(16)))
        m, n = rng.integers(-2, 3, size=2), rng.integers(-2, 3, size=2)
        qp = max(qp, quasi_periodicity_residual(z, tau, ch, m, n))
        par = max(par, parity_residual(z, tau, ch))
    dt = time.perf_counter() - t
    ok = closed < 1e-10 and qp < 1e-9 and par < 1e-9
    assert record(3, ok, f"closed form {closed:.1e}, quasi-periodicity {qp:.1e}, parity {par:.1e}", dt)


def test_criterion_04_identity_suites():
    t = time.perf_counter()
    rng = np.random.default_rng(4)
    g2 = [i for v in genus2_suite().values() for i in v]
    g3 = genus3_suite()
    r2 = max(verify_identities(g2, random_siegel(2, rng)) for _ in range(10))
    r3 = max(verify_identities(g3, random_siegel(3, rng)) for _ in range(5))
    dt = time.perf_counter() - t
    ok = len(g2) == 36 and len(g3) == 14 and r2 < 1e-9 and r3 < 1e-8 and dt < 120
    assert record(4, ok, f"{len(g2)} genus-2 at {r2:.1e}, {len(g3)} genus-3 at {r3:.1e}", dt)


def test_criterion_05_thomae_forward():
    t = time.perf_counter()
    c = genus2_curve(2, 3, 5)
    rep = verify_thomae(c, period_matrix(c))
    dt = time.perf_counter() - t
    ok = len(rep.residuals) == 10 and rep.max_residual < 1e-6 and dt < 30
    assert record(5, ok, f"10 equations, one A, max residual {rep.max_residual:.1e}", dt)


def _rational_triples(n, seed):
    rnd = random.Random(seed)
    out = []
    while len(out) < n:
        v = [F(rnd.randint(-40, 40), rnd.randint(1, 8)) for _ in range(3)]
        pts = {0, 1, *v}
        if len(pts) == 5 and min(abs(a - b) for a in pts for b in pts if a != b) > F(1, 10):
            out.append(tuple(v))
    return out


def test_criterion_06_picard_round_trip():
    t = time.perf_counter()
    worst = 0.0
    for lam, mu, nu in _rational_triples(20, 6):
        sol = picard_branch_points(period_matrix(genus2_curve(lam, mu, nu)).tau)
        for got, want in zip(sol.values, (lam, mu, nu)):
            worst = max(worst, abs(got - float(want)) / abs(float(want)))
    dt = time.perf_counter() - t
    ok = worst < 1e-5 and dt < 300
    assert record(6, ok, f"20 triples, worst relative error {worst:.1e}", dt)


def test_criterion_07_genus3_pipeline():
    t = time.perf_counter()
    a = [F(9), F(-3), F(5, 2), F(7, 3), F(-1, 2)]
    c = genus3_curve(a)
    pd = period_matrix(c)
    rep = verify_thomae(c, pd)
    sol = genus3_branch_points(pd.tau)
    rt = max(abs(x - float(y)) / abs(float(y)) for x, y in zip(sol.values, a))
    d = sol.diagnostics
    dt = time.perf_counter() - t
    ok = (
        d["theta12_abs"] < 1e-6
        and len(rep.residuals) == 35
        and rep.max_residual < 1e-5
        and rt < 1e-5
        and d["column_disagreement"] < 1e-5
    )
    detail = (
        f"|theta12| {d['theta12_abs']:.1e}, 35-row fit {rep.max_residual:.1e}, "
        f"round trip {rt:.1e}, columns {d['column_disagreement']:.1e}"
    )
    assert record(7, ok, detail, dt)


def test_criterion_08_vanishing_counts():
    t = time.perf_counter()
    got = [len(vanishing_even_set(g)) for g in (2, 3, 4)]
    dt = time.perf_counter() - t
    assert record(8, got == [0, 1, 10], f"sizes {got}", dt)


def test_criterion_09_igusa_loci():
    t = time.perf_counter()
    J6 = igusa(BinarySextic((-1, 0, 0, 0, 0, 0, 1)))
    J8 = igusa(BinarySextic((0, -1, 0, 0, 0, 1)))
    on6 = evaluate(L2_POLY, J6) == 0 and all(evaluate(p, J6) == 0 for p in D12_POLYS)
    on8 = evaluate(L2_POLY, J8) == 0 and evaluate(D8_POLY, J8) == 0
    rnd = random.Random(9)
    seen = []
    while len(seen) < 20:
        v = [F(rnd.randint(-30, 30), rnd.randint(1, 9)) for _ in range(3)]
        if len({0, 1, *v}) != 5:
            continue
        r = l2_factorization_ratio(*v)
        if r is not None:
            seen.append(r)
    ratios = set(seen)
    dt = time.perf_counter() - t
    ok = on6 and on8 and ratios == {L2_FACTOR_CONSTANT} and dt < 10
    detail = f"x^6-1 on L2+D12 {on6}, x(x^4-1) on L2+D8 {on8}, ratio over {len(seen)} points {sorted(ratios)}"
    assert record(9, ok, detail, dt)



def test_criterion_10_v4_theta_locus():
    t = time.perf_counter()
    rng = np.random.default_rng(10)
    r1 = r2 = fr = 0.0
    for a, b in ((2, 3), (F(5, 2), -2), (-3, F(4, 3)), (F(7, 5), 4), (-F(1, 2), -5)):
        # y^2 = x(x-1)(x-a)(x-b)(x-ab), read as (a1, a2, a3) = (a, b, ab)
        tau = period_matrix(genus2_curve(a * b, b, a)).tau
        th = thetanulls_g2(tau)
        r1 = max(r1, v4_theta_test(th))
        r2 = max(r2, v4_fundamental_test(FundamentalThetas.from_thetas(th)))
        z = [(rng.normal(size=2) + 1j * rng.normal(size=2)) * 0.2 for _ in range(3)]
        z.append(-sum(z))
        bb = [[F(int(rng.integers(-3, 4)), 6) for _ in range(4)] for _ in range(3)]
        bb.append([-sum(col) for col in zip(*bb)])
        fr = max(fr, abs(frobenius_residual(tau, z, bb)))
    dt = time.perf_counter() - t
    ok = r1 < 1e-6 and r2 < 1e-6 and fr < 1e-7
    assert record(10, ok, f"locus1 {r1:.1e}, locus2 {r2:.1e}, Frobenius {fr:.1e}", dt)


@pytest.mark.xfail(strict=True, reason="the displayed case-2 inverse and constraint fail on forward images (see ledger)")
def test_criterion_11_property_substitutes():
    t = time.perf_counter()
    rng = np.random.default_rng(11)
    qp = 0.0
    for _ in range(20):
        tau = random_siegel(3, rng)
        z = (rng.normal(size=3) + 1j * rng.normal(size=3)) * 0.2
        qp = max(qp, sixth_char_quasi_periodicity(tau, z, rng.integers(-1, 2, 3), rng.integers(-1, 2, 3)))
    tri = SixthThetaTriple.at(random_siegel(3, rng))
    s0, t0 = picard_ratios(tri)
    homog = 0.0
    for c in (2.0, -0.5 + 3j, 1e-3j, 700 - 20j):
        s1, t1 = picard_ratios(tri.scaled(c))
        homog = max(homog, abs(s1 - s0) / abs(s0), abs(t1 - t0) / abs(t0))

    rnd = random.Random(11)
    samples = []
    while len(samples) < 20:
        r1, r2 = (F(rnd.randint(-30, 30), rnd.randint(1, 12)) for _ in range(2))
        try:
            samples.append(genus4_case2_reduction(r1 * r1, r2 * r2, roots=(r1, r2)))
        except DomainError:
            continue

    def trips(formula):
        n = 0
        for red in samples:
            try:
                n += case2_inverse(red.betas, formula) == (red.alpha1, red.alpha2)
            except DomainError:
                pass
        return n

    def zeros(formula):
        return sum(case2_constraint(red.betas, formula) == 0 for red in samples)

    printed_rt, printed_zero = trips("printed"), zeros("printed")
    derived_rt, derived_zero = trips("derived"), zeros("derived")
    dt = time.perf_counter() - t
    ok = qp < 1e-9 and homog < 1e-9 and printed_rt == 20 and printed_zero == 20
    detail = (
        f"quasi-periodicity {qp:.1e}, homogeneity {homog:.1e}; displayed inverse round-trips "
        f"{printed_rt}/20, displayed constraint vanishes {printed_zero}/20 "
        f"(derived forms: {derived_rt}/20, {derived_zero}/20)"
    )
    # the parts that are attainable must hold regardless
    assert qp < 1e-9 and homog < 1e-9 and derived_rt == 20 and derived_zero == 20
    assert record(11, ok, detail, dt)
