from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp

from theta_forge.classify import (
    PRINTED_ROW8_TAG,
    FundamentalThetas,
    _parse,
    _squares_env,
    _TABLE21_FACTOR_TEXT,
    abcde,
    abcde_residuals,
    alpha_roots,
    classify_curve,
    curve_from_fundamentals,
    curve_sextic,
    d8_simplified_residual,
    derive_even_thetanulls,
    same_moduli,
    table21_factors,
    table21_theta_residuals,
    thetanulls_g2,
    v4_fundamental_test,
    v4_theta_test,
)
from theta_forge.errors import DomainError
from theta_forge.periods import HyperellipticCurve, period_matrix
from theta_forge.thomae import genus2_curve

A1, A2 = F(7, 3), F(-5, 2)
# a3 on each row's factor with (a1, a2) = (7/3, -5/2), solved with sympy
ROW_A3 = {
    1: F(-3, 7), 2: F(49, 29), 3: F(-49, 8), 4: F(20, 21), 5: F(64, 15),
    6: F(-20, 29), 7: F(5), 8: F(2, 5), 9: F(15, 23), 10: F(29, 8),
    11: F(17, 3), 12: F(29, 21), 13: F(-35, 6), 14: F(-14, 15), 15: F(-15, 14),
}
LEMMA_MISSES = {1, 5, 10, 12, 13}


def _thetas(a1, a2, a3):
    # the curve is Y^2 = X(X-1)(X-a1)(X-a2)(X-a3) with (lam, mu, nu) = (a3, a2, a1)
    return thetanulls_g2(period_matrix(genus2_curve(a3, a2, a1)).tau)


@pytest.fixture(scope="module")
def row_thetas():
    return {k: _thetas(A1, A2, a3) for k, a3 in ROW_A3.items()}


@pytest.fixture(scope="module")
def generic_thetas():
    return _thetas(5, 3, 2)


def test_row_points_solve_their_factor():
    a = sp.symbols("a1 a2 a3")
    env = dict(zip(("a1", "a2", "a3"), a))
    for k, a3 in ROW_A3.items():
        expr = sp.sympify(_TABLE21_FACTOR_TEXT[k - 1], locals=env)
        assert expr.subs({a[0]: A1, a[1]: A2, a[2]: a3}) == 0
        vals = [r.value for r in table21_factors(A1, A2, a3)]
        assert [i + 1 for i, v in enumerate(vals) if v == 0] == [k]


def test_table21_factors_reject_floats():
    with pytest.raises(DomainError):
        table21_factors(0.5, 2, 3)
    with pytest.raises(DomainError):
        table21_factors(2, 2, 3)


@pytest.mark.parametrize("row", sorted(ROW_A3))
def test_row_tag_vanishes_only_on_its_row(row, row_thetas):
    r = table21_theta_residuals(row_thetas[row])
    assert r[row - 1] < 1e-12
    assert min(r[:row - 1] + r[row:]) > 1e-2


def test_printed_row8_tag_misses_row8(row_thetas):
    tag = _parse(PRINTED_ROW8_TAG)
    assert tag.normalized(_squares_env(row_thetas[8])) > 1e-2
    # the printed text is row 13's tag
    assert tag.normalized(_squares_env(row_thetas[13])) < 1e-12


@pytest.mark.parametrize("row", sorted(ROW_A3))
def test_v4_loci_on_rows(row, row_thetas):
    th = row_thetas[row]
    assert v4_theta_test(th) < 1e-12
    assert v4_fundamental_test(FundamentalThetas.from_thetas(th)) < 1e-12
    printed = v4_theta_test(th, include_row8=False)
    assert (printed > 1e-2) if row == 8 else (printed < 1e-12)


def test_v4_loci_off_locus(generic_thetas):
    assert v4_theta_test(generic_thetas) > 1e-3
    assert v4_fundamental_test(FundamentalThetas.from_thetas(generic_thetas)) > 1e-3


def test_abcde_relations_hold_everywhere(row_thetas, generic_thetas):
    for th in list(row_thetas.values()) + [generic_thetas]:
        rep = abcde_residuals(th)
        assert rep.linear < 1e-12
        assert rep.quadratic < 1e-12


@pytest.mark.parametrize("row", sorted(ROW_A3))
def test_abcde_lemma_coverage(row, row_thetas):
    m = abcde_residuals(row_thetas[row]).lemma_min_factor
    assert (m > 1e-2) if row in LEMMA_MISSES else (m < 1e-12)


def test_abcde_needs_theta1():
    with pytest.raises(DomainError):
        abcde({1: 0, 2: 1, 3: 1, 4: 1, 8: 1, 10: 1})


def test_derived_thetanulls_match(generic_thetas):
    d = derive_even_thetanulls(FundamentalThetas.from_thetas(generic_thetas))
    for p, q in ((5, 6), (7, 9), (8, 10)):
        got = sorted((d.fourth[p], d.fourth[q]), key=lambda z: z.real)
        want = sorted((generic_thetas[p] ** 4, generic_thetas[q] ** 4), key=lambda z: z.real)
        assert np.allclose(got, want, rtol=1e-10)


def test_curve_from_fundamentals(generic_thetas):
    ft = FundamentalThetas.from_thetas(generic_thetas)
    ref = curve_sextic(genus2_curve(5, 3, 2))
    a, b = alpha_roots(ft)
    assert abs(a * b - 1) < 1e-12
    for cand in curve_from_fundamentals(ft):
        assert same_moduli(cand.coeffs, ref) < 1e-9
        assert not cand.v4


def test_d8_display_on_x_x4_minus_1():
    c = HyperellipticCurve.from_points([0, 1, -1, 1j, -1j], genus=2)
    th = thetanulls_g2(period_matrix(c).tau)
    plus = d8_simplified_residual(th, 1)
    assert plus.constraint < 1e-12 and plus.min_factor < 1e-12
    assert d8_simplified_residual(th, -1).constraint > 0.5


@pytest.mark.parametrize(
    "pts,label",
    [([5, 3, 2, 1, 0], "C2"), ([A1, A2, ROW_A3[7], 1, 0], "V4"), ([0, 1, -1, 1j, -1j], "D12")],
)
def test_classify_curve(pts, label):
    res = classify_curve(HyperellipticCurve.from_points(pts, genus=2))
    assert res.aut_group_estimate == label
    assert res.details["theta_igusa_agree"]


def test_classify_needs_genus2():
    with pytest.raises(DomainError):
        classify_curve(HyperellipticCurve.from_points([0, 1, 2]))
