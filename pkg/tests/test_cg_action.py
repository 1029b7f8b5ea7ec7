import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wmds.cg_action import ActionParams, apply_sigma, apply_word, mu, p_factor, q_factor, random_monomial, verify_relations
from wmds.laurent import GradedRational, LaurentPoly
from wmds.rootsys import TwistParams, build_root_system, dot_reflect


def params(code, n, ell=None):
    return ActionParams.make(build_root_system(code, n=n), ell)


def test_mu_examples():
    rs = build_root_system("A2")
    assert mu((0, 0), 0, TwistParams((0, 0)), rs) == 1
    assert mu((1, 0), 0, TwistParams((0, 0)), rs) == -1
    assert mu((0, 0), 0, TwistParams((2, 0)), rs) == 3


def test_p_factor_examples():
    p = params("A2", 2)
    f = p_factor((0, 0), 0, p)
    ring = p.ring
    # mu(0) = 1 and (1)_2 = 1, so the exponent is l + 1 - 1 = 0
    expect = LaurentPoly.monomial(ring, 2, (0, 0), ring.one() - ring.q_pow(-1))
    assert f.numer == expect and f.denom == {(1, (2, 0)): 1}
    p1 = params("A2", 1, (2, 0))
    assert set(p_factor((0, 0), 0, p1).numer.terms) == {(3, 0)}
    assert set(p_factor((5, 1), 0, p1).numer.terms) == {(3, 0)}


def test_q_factor_examples():
    p = params("A2", 2)
    ring = p.ring
    beta = dot_reflect((0, 0), 0, p.tp, p.rs)
    got = q_factor(beta, 0, p)
    mono = LaurentPoly.monomial(ring, 2, (-1, 0), -ring.gamma(1), qexp=-1)
    assert got.numer == mono * LaurentPoly.binomial(ring, 2, 2, (2, 0))
    p1 = params("A2", 1)
    # n = 1: coefficient -gamma(0) = 1 and m = 1
    got = q_factor((0, 0), 0, p1)
    assert got.numer == LaurentPoly.binomial(p1.ring, 2, 1, (1, 0))
    assert got.denom == {(0, (1, 0)): 1}


@pytest.mark.parametrize("code", ["A2", "B2", "G2", "A1xA1"])
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("ell", [(0, 0), (1, 0), (2, 1)])
def test_involution(code, n, ell):
    p = params(code, n, ell)
    rng = random.Random(11)
    for _ in range(5):
        f = random_monomial(rng, p)
        for i in range(2):
            assert apply_word(f, [i, i], p).equals(GradedRational(f))


def test_braid_a2():
    p = params("A2", 3, (1, 0))
    rng = random.Random(3)
    for _ in range(20):
        f = random_monomial(rng, p)
        assert apply_word(f, [0, 1, 0], p, cancel=True).equals(apply_word(f, [1, 0, 1], p, cancel=True))


@pytest.mark.parametrize("code,words", [("B2", ([0, 1, 0, 1], [1, 0, 1, 0])), ("G2", ([0, 1] * 3, [1, 0] * 3))])
def test_long_element_words_agree(code, words):
    p = params(code, 2)
    rng = random.Random(5)
    for _ in range(5):
        f = random_monomial(rng, p)
        assert apply_word(f, words[0], p, cancel=True).equals(apply_word(f, words[1], p, cancel=True))


def test_empty_word():
    p = params("B2", 2)
    f = LaurentPoly.monomial(p.ring, 2, (2, -1))
    assert apply_word(f, [], p).equals(GradedRational(f))


def test_one_sigma_reads_off_p_plus_q():
    p = params("A2", 2)
    got = apply_sigma(LaurentPoly.one(p.ring, 2), 0, p)
    want = p_factor((0, 0), 0, p) + q_factor(dot_reflect((0, 0), 0, p.tp, p.rs), 0, p)
    assert got.equals(want)


@pytest.mark.parametrize(
    "code,n,ell", [("A2", 3, (1, 1)), ("B2", 2, (0, 0)), ("G2", 2, (0, 0)), ("B3", 2, (0, 1, 0)), ("G2", 6, (2, 1))]
)
def test_relations_report(code, n, ell):
    rep = verify_relations(params(code, n, ell), sample_count=20, seed=0)
    assert rep["status"] == "pass"
    assert all({"i", "j", "order", "samples", "status"} <= set(r) for r in rep["relations"])


def test_relations_reject_zero_samples():
    with pytest.raises(ValueError):
        verify_relations(params("A2", 2), sample_count=0)


def test_twist_length_must_match_rank():
    with pytest.raises(ValueError):
        params("A2", 2, (0, 0, 0))


@given(st.integers(-4, 4), st.integers(-4, 4), st.sampled_from(["A2", "B2", "G2"]), st.integers(1, 4))
def test_action_is_linear(a, b, code, n):
    p = params(code, n)
    f = LaurentPoly.monomial(p.ring, 2, (a, b))
    g = LaurentPoly.monomial(p.ring, 2, (b, a), p.ring.q_pow(1))
    for i in range(2):
        lhs = apply_sigma(GradedRational(f + g), i, p)
        assert lhs.equals(apply_sigma(GradedRational(f), i, p) + apply_sigma(GradedRational(g), i, p))
