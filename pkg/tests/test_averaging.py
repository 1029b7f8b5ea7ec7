import pytest

from wmds.averaging import (
    TheoremViolation,
    average_h,
    axis_closed_form,
    axis_specialization,
    d_poly,
    delta_poly,
    j_cocycle,
    j_via_delta,
    regularity_report,
    specialize_q1,
    sum_j_equals_delta,
    verify_cocycle,
    weyl_character,
    weyl_character_oracle,
    weyl_dimension,
)
from wmds.cg_action import ActionParams
from wmds.laurent import GradedRational, LaurentPoly
from wmds.rootsys import build_root_system, element_from_word, long_element, weyl_enumerate
from wmds.scalars import SymbolicRing, gamma, numeric_gamma_context


def run(code, n, ell=None, check=True):
    return average_h(ActionParams.make(build_root_system(code, n=n), ell), check_invariance=check)


def mono(ring, exp, c=None, qexp=0):
    return LaurentPoly.monomial(ring, len(exp), tuple(exp), c, qexp=qexp)


def test_a1_n2():
    r = SymbolicRing(2)
    res = run("A1", 2, (0,))
    assert res.N == LaurentPoly.one(r, 1) + mono(r, (1,), gamma(1, 2), qexp=1)


def test_a2_n2_frozen():
    r = SymbolicRing(2)
    g = gamma(1, 2)
    want = (
        LaurentPoly.one(r, 2)
        + mono(r, (0, 1), g, 1)
        + mono(r, (1, 0), g, 1)
        - mono(r, (1, 2), g, 2)
        - mono(r, (2, 1), g, 2)
        - mono(r, (2, 2), None, 2)
    )
    assert run("A2", 2).N == want


def test_a2_n1_is_d():
    res = run("A2", 1)
    assert res.N == res.dpoly
    assert len(res.N) == 7
    r = SymbolicRing(1)
    assert res.N.coeff((1, 1)) == r.one() - r.q_pow(1)


def test_j_examples():
    for code, n in [("A2", 2), ("B2", 2), ("G2", 3)]:
        rs = build_root_system(code, n=n)
        r = SymbolicRing(n)
        assert j_cocycle(element_from_word(rs, []), rs) == LaurentPoly.one(r, 2)
        for i in range(2):
            m = rs.simple_m(i)
            e = [0, 0]
            e[i] = m
            assert j_cocycle(element_from_word(rs, [i]), rs) == mono(r, e, -r.one(), qexp=m)
    rs = build_root_system("A2", n=1)
    assert j_cocycle(long_element(rs), rs) == mono(SymbolicRing(1), (2, 2), -SymbolicRing(1).one(), qexp=4)


@pytest.mark.parametrize("code,n", [("A1", 1), ("A1", 3), ("A2", 1), ("A2", 2), ("B2", 2), ("G2", 2), ("A3", 2)])
def test_sum_j_is_delta(code, n):
    assert sum_j_equals_delta(build_root_system(code, n=n))["status"] == "pass"


def test_sum_j_a1():
    rs = build_root_system("A1", n=4)
    r = SymbolicRing(4)
    assert delta_poly(rs) == LaurentPoly.one(r, 1) - mono(r, (4,), qexp=4)


@pytest.mark.parametrize("code", ["A2", "B2", "G2", "A1xA1"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_cocycle(code, n):
    rs = build_root_system(code, n=n)
    rep = verify_cocycle(rs)
    assert rep["status"] == "pass"
    for w in weyl_enumerate(rs):
        assert j_via_delta(w, rs) == j_cocycle(w, rs)


@pytest.mark.parametrize("code,n", [(c, n) for c in ("A2", "B2", "G2") for n in (1, 2, 3)] + [("A3", 1), ("A3", 2)])
@pytest.mark.parametrize("ell", [(0, 0), (1, 0), (1, 2)])
def test_invariance_and_polynomiality(code, n, ell):
    ell = (ell + (0,))[: build_root_system(code).rank]
    res = run(code, n, ell)
    c = res.certificates
    assert all(c["invariance"].values())
    assert c["polynomial"] and c["constant_term_one"]
    assert regularity_report(res)["irregular"] == []


def test_constant_term_b3():
    assert run("B3", 2, (1, 0, 0), check=False).certificates["constant_term_one"]


@pytest.mark.parametrize("code,n,i", [("A2", 2, 0), ("A2", 2, 1), ("G2", 2, 0), ("G2", 2, 1), ("A3", 3, 1), ("B2", 2, 1)])
def test_axis_when_m_at_least_two(code, n, i):
    res = run(code, n, check=False)
    assert res.params.rs.simple_m(i) >= 2
    assert axis_specialization(res, i).equals(axis_closed_form(res.params, i))


@pytest.mark.parametrize("code,n,i", [("B2", 2, 0), ("G2", 3, 1), ("A2", 1, 0)])
def test_axis_is_one_when_m_is_one(code, n, i):
    res = run(code, n, check=False)
    assert res.params.rs.simple_m(i) == 1
    got = axis_specialization(res, i)
    assert got.equals(GradedRational(LaurentPoly.one(res.params.ring, res.params.rank)))
    assert not got.equals(axis_closed_form(res.params, i))


def test_axis_requires_zero_twist():
    with pytest.raises(ValueError):
        axis_specialization(run("A2", 2, (1, 0), check=False), 0)


@pytest.mark.parametrize("ell,dim", [((0, 0), 8), ((1, 0), 15), ((1, 1), 27)])
def test_oracle_dims_a2(ell, dim):
    _, d = weyl_character_oracle(ell, build_root_system("A2"))
    assert d == dim


@pytest.mark.parametrize("k", range(5))
def test_oracle_dims_a1(k):
    assert weyl_character_oracle((k,), build_root_system("A1"))[1] == k + 2


def test_oracle_rejects_metaplectic():
    with pytest.raises(ValueError):
        weyl_character_oracle((0, 0), build_root_system("A2", n=2))


@pytest.mark.parametrize("code,weight", [("B2", (1, 0)), ("B2", (0, 1)), ("G2", (1, 0)), ("G2", (0, 1)), ("A3", (1, 0, 1))])
def test_character_dimension_matches_formula(code, weight):
    rs = build_root_system(code)
    assert sum(specialize_q1(weyl_character(rs, weight)).values()) == weyl_dimension(rs, weight)


def _q1_poly(f, rank):
    r = SymbolicRing(1)
    return LaurentPoly(r, rank, {k: r.const(v) for k, v in specialize_q1(f).items()})


@pytest.mark.parametrize(
    "code,ell",
    [("A1", (0,)), ("A1", (3,)), ("A2", (0, 0)), ("A2", (1, 0)), ("A2", (1, 1)), ("B2", (0, 0)), ("B2", (1, 2)), ("G2", (1, 0)), ("A3", (1, 0, 1))],
)
def test_h_at_q1_is_character_of_ell(code, ell):
    # at q = 1, N / D is the character of highest weight sum l_i omega_i read in x_i = e^{-alpha_i}
    res = run(code, 1, ell, check=False)
    rs = res.params.rs
    char = weyl_character(rs, ell)
    flipped = LaurentPoly(char.ring, rs.rank, {tuple(-x for x in k): c for k, c in char.terms.items()})
    assert _q1_poly(res.N, rs.rank) == _q1_poly(res.dpoly, rs.rank) * flipped


def test_n_vanishes_at_one_when_q_is_one():
    # D(1, .., 1) = 0 at q = 1, so the literal dimension count cannot hold
    for code, ell in [("A2", (0, 0)), ("A1", (3,)), ("B2", (0, 0))]:
        assert sum(specialize_q1(run(code, 1, ell, check=False).N).values()) == 0


def test_numeric_mode_matches_symbolic():
    ctx = numeric_gamma_context(13, 3)
    rs = build_root_system("A2", n=3)
    sym = average_h(ActionParams.make(rs, (1, 0)), check_invariance=False).N
    num = average_h(ActionParams.make(rs, (1, 0), ctx), check_invariance=False).N
    assert set(sym.terms) == set(num.terms)
    for k, c in sym.terms.items():
        assert abs(ctx.evaluate(c) - num.terms[k]) < 1e-9


def test_theorem_violation_is_assertion():
    assert issubclass(TheoremViolation, AssertionError)
