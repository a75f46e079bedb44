import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from theta_forge.charspace import (
    INF,
    HalfChar,
    all_chars,
    all_even_gopel_groups,
    char_product,
    enumerate_gopel_groups,
    eta,
    eta_assignment,
    eta_preimages,
    eta_T,
    even_chars,
    expected_gopel_count,
    expected_system_census,
    gopel_group_from_generators,
    gopel_systems,
    odd_chars,
    pairing,
    parity,
    system_census,
    triple_syzygy,
    vanishing_even_set,
)
from theta_forge.errors import DimensionError, DomainError
from theta_forge.tables import GENUS2, GENUS3, index_of


def chars(g):
    return st.integers(0, (1 << (2 * g)) - 1).map(lambda k: HalfChar.from_key(g, k))


@pytest.mark.parametrize("g,even,odd", [(1, 3, 1), (2, 10, 6), (3, 36, 28), (4, 136, 120)])
def test_parity_census(g, even, odd):
    assert len(even_chars(g)) == even
    assert len(odd_chars(g)) == odd
    assert len(all_chars(g)) == 4**g


def test_closed_form_census():
    for g in range(1, 5):
        assert len(even_chars(g)) == 2 ** (g - 1) * (2**g + 1)


def test_index_tables_are_complete_and_ordered():
    for tab, g, n_even in ((GENUS2, 2, 10), (GENUS3, 3, 36)):
        assert len(tab) == 4**g
        assert len(set(tab.values())) == 4**g
        assert all(tab[k].is_even for k in range(1, n_even + 1))
        assert not any(tab[k].is_even for k in range(n_even + 1, 4**g + 1))


def test_table_entries_from_text():
    assert GENUS2[10] == HalfChar(2, (1, 1), (1, 1))
    assert GENUS3[12] == HalfChar(3, (1, 1, 1), (1, 0, 1))
    assert index_of(HalfChar(2, (0, 1), (1, 0))) == 9


def test_json_round_trip():
    m = HalfChar(2, (0, 1), (1, 1))
    assert HalfChar.from_json(m.to_json()) == m
    assert m.to_json() == {"g": 2, "top": [0, 1], "bottom": [1, 1]}


@given(chars(3), chars(3), chars(3))
def test_product_is_group_law(a, b, c):
    assert char_product(a, b) == char_product(b, a)
    assert (a * b) * c == a * (b * c)
    assert (a * a).is_zero()


@given(chars(3), chars(3), chars(3))
def test_pairing_and_syzygy(a, b, c):
    assert pairing(a, b) == pairing(b, a)
    assert pairing(a, a) == 0
    # parity of a product: |ab| = |a| + |b| + |a,b|
    pa = {"even": 0, "odd": 1}
    assert pa[parity(a * b)] == (pa[parity(a)] + pa[parity(b)] + pairing(a, b)) % 2
    assert triple_syzygy(a, b, c) == (pa[parity(a)] + pa[parity(b)] + pa[parity(c)] + pa[parity(a * b * c)]) % 2


def test_genus_mismatch_raises():
    with pytest.raises(DimensionError):
        char_product(HalfChar.zero(2), HalfChar.zero(3))
    with pytest.raises(DimensionError):
        HalfChar(2, (0,), (0, 0))
    with pytest.raises(DomainError):
        HalfChar(2, (0, 2), (0, 0))


@pytest.mark.parametrize("g,r,count", [(2, 1, 15), (2, 2, 15), (3, 3, 135), (3, 1, 63)])
def test_gopel_counts(g, r, count):
    assert expected_gopel_count(g, r) == count
    groups = enumerate_gopel_groups(g, r)
    assert len(groups) == count
    assert len({G.elements for G in groups}) == count


def _singular_space_count(g):
    # maximal totally singular subspaces of the even quadratic form on F_2^{2g}
    out = 1
    for i in range(g):
        out *= 2**i + 1
    return out


@pytest.mark.parametrize("g", [2, 3])
def test_all_even_counts(g):
    assert len(all_even_gopel_groups(g, g)) == _singular_space_count(g)


def test_all_even_count_brute_force_g3():
    vecs = list(itertools.product((0, 1), repeat=6))

    def q(v):
        return (v[0] * v[3] + v[1] * v[4] + v[2] * v[5]) % 2

    def add(a, b):
        return tuple((x + y) % 2 for x, y in zip(a, b))

    sing = [v for v in vecs if any(v) and q(v) == 0]
    spaces = set()
    for a, b, c in itertools.combinations(sing, 3):
        span = {a, b, c, add(a, b), add(a, c), add(b, c), add(add(a, b), c), (0,) * 6}
        if len(span) == 8 and all(q(v) == 0 for v in span):
            spaces.add(frozenset(span))
    assert len(spaces) == 30


def test_groups_avoiding_theta12():
    groups = all_even_gopel_groups(3, 3)
    assert sum(GENUS3[12] not in G.elements for G in groups) == 24


def test_gopel_group_properties():
    for G in enumerate_gopel_groups(2, 2):
        for a, b in itertools.combinations(G.elements, 2):
            assert pairing(a, b) == 0
            assert a * b in G.elements


def test_generators_must_be_syzygetic():
    with pytest.raises(DomainError):
        gopel_group_from_generators([HalfChar(2, (1, 0), (0, 0)), HalfChar(2, (0, 0), (1, 0))])


@pytest.mark.parametrize("g,r", [(2, 1), (2, 2), (3, 2), (3, 3)])
def test_system_census(g, r):
    for G in enumerate_gopel_groups(g, r)[:5]:
        systems = gopel_systems(G)
        assert len(systems) == 2 ** (2 * g - r)
        if G.is_all_even():
            assert system_census(G) == expected_system_census(g, r)


def test_all_even_group_has_one_even_coset_g2():
    G = all_even_gopel_groups(2, 2)[0]
    assert system_census(G) == {"all_even": 1, "all_odd": 0, "mixed": 3}


def test_eta_map_is_bijective_on_even_subsets():
    for g in (1, 2, 3):
        pre = eta_preimages(g)
        assert len(pre) == 4**g
        for m, T in pre.items():
            assert eta_T(eta_assignment(g), T) == m


def test_eta_values():
    assert eta(2, INF).is_zero()
    assert eta(2, 5) == HalfChar(2, (0, 0), (1, 1))
    assert eta(2, 1) == HalfChar(2, (1, 0), (0, 0))
    with pytest.raises(DomainError):
        eta(2, 6)


@pytest.mark.parametrize("g,n", [(1, 0), (2, 0), (3, 1), (4, 10)])
def test_vanishing_even_counts(g, n):
    assert len(vanishing_even_set(g)) == n


def test_genus3_vanishing_is_theta12():
    assert vanishing_even_set(3) == {GENUS3[12]}
