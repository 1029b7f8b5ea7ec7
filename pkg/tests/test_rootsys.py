from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wmds.rootsys import (
    TwistParams,
    build_root_system,
    dot_action,
    element_from_word,
    inverse,
    inversion_set,
    long_element,
    multiply,
    weyl_enumerate,
    weyl_order,
)

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "D4"]


def test_a2_n2_roots():
    rs = build_root_system("A2", n=2)
    assert set(rs.pos_roots) == {(1, 0), (0, 1), (1, 1)}
    assert all(rs.length_sq[a] == 1 for a in rs.pos_roots)
    assert all(rs.m[a] == 2 for a in rs.pos_roots)


def test_g2_long_root_norm():
    rs = build_root_system("G2", n=2)
    lengths = sorted(rs.simple_length_sq(i) for i in range(2))
    assert lengths == [1, 3]
    assert all(rs.m[a] == 2 for a in rs.pos_roots)


def test_b2_n2_multipliers():
    rs = build_root_system("B2", n=2)
    for a in rs.pos_roots:
        assert rs.m[a] == (1 if rs.length_sq[a] == 2 else 2)


@pytest.mark.parametrize("code,order", [("A2", 6), ("G2", 12), ("B3", 48), ("C3", 48), ("A3", 24), ("A1xA1", 4)])
def test_weyl_orders(code, order):
    rs = build_root_system(code)
    elems = weyl_enumerate(rs)
    assert len(elems) == order == weyl_order(rs)
    assert len({w.matrix for w in elems}) == order


def test_a2_length_multiset():
    assert Counter(w.length for w in weyl_enumerate(build_root_system("A2"))) == Counter([0, 1, 1, 2, 2, 3])


def test_inversion_sets_a2():
    rs = build_root_system("A2")
    assert inversion_set(element_from_word(rs, []), rs) == frozenset()
    assert inversion_set(element_from_word(rs, [0]), rs) == {(1, 0)}
    w0 = long_element(rs)
    assert inversion_set(w0, rs) == set(rs.pos_roots)


@pytest.mark.parametrize("code", ["A2", "B2", "G2", "A3", "B3"])
def test_rho_minus_winv_rho(code):
    # rho - w^{-1} rho = sum of inverted roots; in root coordinates rho = half the sum of positive roots
    rs = build_root_system(code)
    two_rho = [sum(a[k] for a in rs.pos_roots) for k in range(rs.rank)]
    for w in weyl_enumerate(rs):
        winv = inverse(rs, w)
        lhs = [x - y for x, y in zip(two_rho, winv.act(two_rho))]
        rhs = [2 * sum(a[k] for a in inversion_set(w, rs)) for k in range(rs.rank)]
        assert lhs == rhs


@pytest.mark.parametrize("code", ["A2", "B2", "G2", "A3"])
def test_inversion_set_grows_by_one_root(code):
    rs = build_root_system(code)
    for w in weyl_enumerate(rs):
        for i in range(rs.rank):
            sw = multiply(rs, element_from_word(rs, [i]), w)
            if sw.length == w.length + 1:
                winv_ai = inverse(rs, w).act(rs.simple_root(i))
                assert inversion_set(sw, rs) == inversion_set(w, rs) | {winv_ai}


def test_dot_action_examples():
    rs = build_root_system("A2")
    s1 = element_from_word(rs, [0])
    assert dot_action(element_from_word(rs, []), (3, -1), TwistParams((1, 2)), rs) == (3, -1)
    assert dot_action(s1, (0, 0), TwistParams((0, 0)), rs) == (1, 0)
    assert dot_action(s1, (0, 0), TwistParams((2, 0)), rs) == (3, 0)


def test_bad_codes():
    for bad in ["H2", "A0", "", "Q7"]:
        with pytest.raises(ValueError):
            build_root_system(bad)


def test_budget_refuses_e8(monkeypatch):
    with pytest.raises(ValueError):
        weyl_enumerate(build_root_system("E8"))


@given(st.sampled_from(TYPES[:-1]), st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_word_action_is_composition(code, word, lam):
    rs = build_root_system(code)
    word = [i % rs.rank for i in word]
    lam = tuple(lam[: rs.rank])
    w = element_from_word(rs, word)
    expect = lam
    for i in reversed(word):
        expect = rs.reflect(expect, i)
    assert w.act(lam) == expect


@given(st.sampled_from(TYPES), st.integers(1, 6))
def test_m_divides_n(code, n):
    rs = build_root_system(code, n=n)
    for a in rs.pos_roots:
        assert n % rs.m[a] == 0
        assert rs.m[a] * rs.length_sq[a] % n == 0
