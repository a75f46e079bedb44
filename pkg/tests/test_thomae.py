from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from theta_forge.charspace import eta_preimages
from theta_forge.errors import DimensionError, DomainError
from theta_forge.identities import random_siegel
from theta_forge.periods import period_matrix
from theta_forge.tables import GENUS2
from theta_forge.thomae import (
    frobenius_residual,
    genus2_curve,
    genus3_branch_points,
    genus3_curve,
    picard_branch_points,
    thomae_rhs,
    thomae_rhs_exact,
    verify_thomae,
)

NU, MU, LAM = sp.symbols("nu mu lam")

# generated right-hand sides (A omitted), points ordered (nu, mu, lam, 1, 0, inf)
GENUS2_RHS = {
    1: -LAM * NU * (LAM - NU) * (MU - 1),
    2: -MU * (LAM - NU) * (MU - 1),
    3: -LAM * MU * (LAM - MU) * (NU - 1),
    4: -NU * (LAM - MU) * (NU - 1),
    5: -LAM * (MU - 1) * (MU - NU) * (NU - 1),
    6: -(LAM - MU) * (LAM - NU) * (MU - NU),
    7: -MU * (LAM - 1) * (LAM - NU) * (NU - 1),
    8: -MU * NU * (LAM - 1) * (MU - NU),
    9: -NU * (LAM - 1) * (LAM - MU) * (MU - 1),
    10: -LAM * (LAM - 1) * (MU - NU),
}


@pytest.fixture(scope="module")
def curve235():
    c = genus2_curve(5, 3, 2)
    return c, period_matrix(c)


def test_generated_rows_are_frozen():
    pre = eta_preimages(2)
    for k, ref in GENUS2_RHS.items():
        got = thomae_rhs_exact(pre[GENUS2[k]], [NU, MU, LAM, 1, 0])
        assert sp.expand(got - ref) == 0


def test_exact_rhs_matches_numeric(curve235):
    c, _ = curve235
    for T in ([], [1, 2], [2, 5]):
        assert thomae_rhs(T, c) == thomae_rhs_exact(T, [2, 3, 5, 1, 0])


def test_thomae_fit_235(curve235):
    c, pd = curve235
    rep = verify_thomae(c, pd)
    assert rep.max_residual < 1e-6
    assert len(rep.residuals) == 10


def test_signed_variant_does_not_fit(curve235):
    c, pd = curve235
    assert verify_thomae(c, pd, sign="mumford").max_residual > 1e-2


def test_rhs_errors(curve235):
    c, _ = curve235
    with pytest.raises(DomainError):
        thomae_rhs([1], c)
    with pytest.raises(DomainError):
        thomae_rhs([1, 9], c)
    with pytest.raises(DomainError):
        thomae_rhs([], c, sign="other")


@pytest.mark.parametrize("lam,mu,nu", [(5, 3, 2), (Fraction(7, 2), Fraction(-4, 3), Fraction(9, 5)), (4, Fraction(1, 3), -2)])
def test_picard_round_trip(lam, mu, nu):
    pd = period_matrix(genus2_curve(lam, mu, nu))
    sol = picard_branch_points(pd.tau)
    for got, want in zip(sol.values, (lam, mu, nu)):
        assert abs(got - float(want)) < 1e-5 * abs(float(want))
    assert sol.diagnostics["thomae_residual"] < 1e-6


def test_picard_needs_genus2():
    with pytest.raises(DimensionError):
        picard_branch_points(1j * np.eye(3))


def test_genus3_pipeline():
    a = [Fraction(9), Fraction(-3), Fraction(5, 2), Fraction(7, 3), Fraction(-1, 2)]
    c = genus3_curve(a)
    pd = period_matrix(c)
    assert verify_thomae(c, pd).max_residual < 1e-5
    sol = genus3_branch_points(pd.tau)
    d = sol.diagnostics
    assert d["theta12_abs"] < 1e-6
    assert d["column_disagreement"] < 1e-5
    for got, want in zip(sol.values, a):
        assert abs(got - float(want)) < 1e-5 * abs(float(want))


def test_theta12_not_zero_off_locus(rng):
    sol = genus3_branch_points(random_siegel(3, rng))
    assert sol.diagnostics["theta12_abs"] > 1e-3


def _frob_inputs(rng, g):
    z = [rng.normal(size=g) * 0.3 + 1j * rng.normal(size=g) * 0.3 for _ in range(3)]
    z.append(-sum(z))
    b = [[Fraction(int(rng.integers(-3, 4)), 6) for _ in range(2 * g)] for _ in range(3)]
    b.append([-sum(col) for col in zip(*b)])
    return z, b


@pytest.mark.parametrize("g", [1, 2])
def test_frobenius_identity_random(rng, g):
    for _ in range(3):
        z, b = _frob_inputs(rng, g)
        assert abs(frobenius_residual(random_siegel(g, rng), z, b)) < 1e-9


def test_frobenius_input_checks(rng):
    z, b = _frob_inputs(rng, 2)
    tau = random_siegel(2, rng)
    with pytest.raises(DomainError):
        frobenius_residual(tau, [z[0], z[1], z[2], z[3] + 1], b)
    bad = [list(v) for v in b]
    bad[0][0] += 1
    with pytest.raises(DomainError):
        frobenius_residual(tau, z, bad)
