import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from theta_forge.errors import DomainError
from theta_forge.igusa import (
    D8_POLY,
    D12_POLYS,
    L2_FACTOR_CONSTANT,
    L2_POLY,
    BinarySextic,
    absolute_invariants,
    absolute_invariants_numeric,
    discriminant,
    evaluate,
    has_repeated_root,
    igusa,
    igusa_numeric,
    l2_factorization_check,
    l2_factorization_ratio,
    locus_membership,
    weight,
)

X = sp.Symbol("x")


def _sym(f):
    return sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(f.coeffs))


def test_x6_minus_1_known_values():
    # Igusa-Clebsch invariants of y^2 = x^6 - 1 as tabulated in the literature
    J = igusa(BinarySextic((-1, 0, 0, 0, 0, 0, 1)))
    assert J.as_tuple() == (240, 1620, 119880, 46656)


def test_j10_is_the_discriminant():
    rnd = random.Random(3)
    for _ in range(5):
        f = BinarySextic([Fraction(rnd.randint(-6, 6)) for _ in range(6)] + [1])
        assert igusa(f).J10 == sp.discriminant(_sym(f), X)
        assert discriminant(f) != 0 or has_repeated_root(f)


def test_polys_are_homogeneous():
    assert weight(L2_POLY) == {30}
    assert len(weight(D8_POLY)) == 1
    for p in D12_POLYS:
        assert len(weight(p)) == 1


def test_special_loci():
    m6 = locus_membership(igusa(BinarySextic((-1, 0, 0, 0, 0, 0, 1))))
    assert m6["L2"] and m6["D12"] and not m6["generic"]
    m8 = locus_membership(igusa(BinarySextic((0, -1, 0, 0, 0, 1))))
    assert m8["L2"] and m8["D8"]
    gen = locus_membership(igusa(BinarySextic.from_roots([0, 1, 2, 3, 7])))
    assert gen == {"generic": True, "L2": False, "D8": False, "D12": False}


def test_l2_factorization_constant():
    rnd = random.Random(11)
    seen = 0
    while seen < 8:
        a = [Fraction(rnd.randint(-20, 20), rnd.randint(1, 9)) for _ in range(3)]
        if len({0, 1, *a}) != 5:
            continue
        assert l2_factorization_ratio(*a) == L2_FACTOR_CONSTANT
        seen += 1
    assert L2_FACTOR_CONSTANT == -(2**11) * 3**9


def test_l2_on_factor_zero():
    # a1 a2 = a3 kills one factor, so the curve lies on L2
    assert l2_factorization_ratio(2, 3, 6) is None
    assert l2_factorization_check(2, 3, 6)
    assert evaluate(L2_POLY, igusa(BinarySextic.from_roots([0, 1, 2, 3, 6]))) == 0
    with pytest.raises(DomainError):
        l2_factorization_ratio(2, 2, 5)


def test_numeric_matches_exact():
    f = BinarySextic.from_roots([0, 1, 2, 5, Fraction(-1, 3)])
    ex = igusa(f).as_tuple()
    num = igusa_numeric([float(c) for c in f.coeffs])
    for a, b in zip(ex, num):
        assert abs(complex(b) - float(a)) < 1e-9 * abs(float(a))


def test_sextic_validation():
    with pytest.raises(DomainError):
        BinarySextic((0, 0, 0))
    with pytest.raises(DomainError):
        BinarySextic((1,) * 8)
    with pytest.raises(DomainError):
        absolute_invariants_numeric([0] * 7)


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(small, min_size=7, max_size=7), small.filter(lambda u: u != 0))
def test_scaling_covariance(coeffs, u):
    # J_k(f(uX, Z)) = u^(3k) J_k(f) and J_k(c f) = c^k J_k(f)
    if not any(coeffs):
        return
    f = BinarySextic(coeffs)
    J = igusa(f).as_tuple()
    Ju = igusa(f.substitute(u)).as_tuple()
    Jc = igusa(f.scale(u)).as_tuple()
    for k, a, b, c in zip((2, 4, 6, 10), J, Ju, Jc):
        assert b == u ** (3 * k) * a
        assert c == u**k * a


@given(st.lists(small, min_size=7, max_size=7))
def test_swap_preserves_invariants(coeffs):
    if not any(coeffs):
        return
    f = BinarySextic(coeffs)
    # X <-> Z has determinant -1, an even power for every weight here
    assert igusa(f.swap()) == igusa(f)


@given(st.integers(-4, 4).filter(lambda t: t not in (0, 1, 2, 3, 5)))
def test_absolute_invariants_under_moebius(t):
    # translating a root set leaves the isomorphism class unchanged
    roots = [0, 1, 2, 3, 5]
    f = BinarySextic.from_roots(roots)
    g = BinarySextic.from_roots([r + t for r in roots])
    assert absolute_invariants(igusa(f)) == absolute_invariants(igusa(g))
