"""Averaging over W: Delta, D, the j-cocycle, h(x; l) and the p-part N(x; l).

    h = Delta^-1 sum_w j(w, x) (1|w)(x),     N = h D.

N is extracted by bringing the sum over a common denominator and dividing
out, factor by factor, with certified exact division.  The n = 1 character
oracle at the bottom is independent of all of this.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cg_action import ActionParams, apply_sigma
from .laurent import ExactDivisionError, GradedRational, LaurentPoly, exact_divide, substitute_weyl
from .rootsys import (
    RootSystem,
    WeylElement,
    height,
    inversion_set,
    is_nonnegative,
    multiply,
    weyl_enumerate,
)
from .scalars import GammaScalar, SymbolicRing


class TheoremViolation(AssertionError):
    """A certified identity failed; carries whatever residual is available."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


def delta_factors(rs: RootSystem) -> list:
    """(e, v) for the factors 1 - q^{m d(a)} x^{m a} of Delta."""
    return [(rs.m[a] * height(a), tuple(rs.m[a] * x for x in a)) for a in rs.pos_roots]


def d_factors(rs: RootSystem) -> list:
    """(e, v) for the factors 1 - q^{m d(a) - 1} x^{m a} of D."""
    return [(rs.m[a] * height(a) - 1, tuple(rs.m[a] * x for x in a)) for a in rs.pos_roots]


def _product(ring, rank, factors) -> LaurentPoly:
    out = LaurentPoly.one(ring, rank)
    for e, v in factors:
        out = out * LaurentPoly.binomial(ring, rank, e, v)
    return out


def delta_poly(rs: RootSystem, ring=None) -> LaurentPoly:
    ring = SymbolicRing(rs.n) if ring is None else ring
    return _product(ring, rs.rank, delta_factors(rs))


def d_poly(rs: RootSystem, ring=None) -> LaurentPoly:
    ring = SymbolicRing(rs.n) if ring is None else ring
    return _product(ring, rs.rank, d_factors(rs))


def j_exponent(w: WeylElement, rs: RootSystem) -> tuple:
    """beta = sum over Phi(w) of m(a) a."""
    beta = [0] * rs.rank
    for a in inversion_set(w, rs):
        for t in range(rs.rank):
            beta[t] += rs.m[a] * a[t]
    return tuple(beta)


def j_cocycle(w: WeylElement, rs: RootSystem, ring=None) -> LaurentPoly:
    """j(w, x) = sgn(w) q^{d(beta)} x^beta."""
    ring = SymbolicRing(rs.n) if ring is None else ring
    beta = j_exponent(w, rs)
    return LaurentPoly.monomial(ring, rs.rank, beta, ring.const(w.sign), qexp=height(beta))


@dataclass
class AveragingResult:
    params: ActionParams
    h: GradedRational
    N: LaurentPoly
    delta: LaurentPoly
    dpoly: LaurentPoly
    per_w_terms: dict  # word -> GradedRational
    certificates: dict = field(default_factory=dict)

    def coefficients(self) -> dict:
        return dict(self.N.terms)


_ONE_CACHE: dict = {}


def one_action(w: WeylElement, params: ActionParams) -> GradedRational:
    """1|w, built along the reduced word; prefixes of least reduced words are least."""
    key = (params.rs.code, params.rs.n, params.tp.ell, id(params.ring), w.word)
    hit = _ONE_CACHE.get(key)
    if hit is not None:
        return hit
    if not w.word:
        out = GradedRational(LaurentPoly.one(params.ring, params.rank))
    else:
        prev = WeylElement(w.word[:-1], None, w.length - 1)
        out = apply_sigma(one_action(prev, params), w.word[-1], params).cancel()
    _ONE_CACHE[key] = out
    return out


def clear_cache():
    _ONE_CACHE.clear()


def _divide_all(f: LaurentPoly, factors, what: str) -> LaurentPoly:
    for e, v in factors:
        try:
            f = exact_divide(f, e, v)
        except ExactDivisionError as err:
            raise TheoremViolation(f"{what}: not divisible by 1 - q^{e} x^{v}", err.remainder) from err
    return f


def average_h(params: ActionParams, check_invariance: bool = True) -> AveragingResult:
    rs, ring = params.rs, params.ring
    if not ring.symbolic:
        # average exactly, then evaluate; floating cancellation in the sum over W
        # is far too large for a tolerance-based exact division
        exact = average_h(ActionParams(rs, params.tp), check_invariance)
        ev = params.ctx.evaluate
        return AveragingResult(
            params,
            exact.h.map_coeffs(ev, ring),
            exact.N.map_coeffs(ev, ring),
            delta_poly(rs, ring),
            d_poly(rs, ring),
            {w: t.map_coeffs(ev, ring) for w, t in exact.per_w_terms.items()},
            dict(exact.certificates),
        )
    elements = weyl_enumerate(rs)
    per_w = {}
    total = GradedRational(LaurentPoly.zero(ring, rs.rank))
    for w in elements:
        term = one_action(w, params) * j_cocycle(w, rs, ring)
        per_w[w.word] = term
        total = total + term

    dfac = Counter(d_factors(rs))
    extra = total.denom - dfac  # denominators of the sum not already in D
    numer = total.numer * total.factor_poly(dfac - total.denom)
    N = _divide_all(numer, sorted(extra.elements()), "cleared sum")
    N = _divide_all(N, delta_factors(rs), "Delta")

    certs = {
        "divided_by_delta": [list(v) for _, v in delta_factors(rs)],
        "extra_factors": [[e, list(v)] for e, v in sorted(extra.elements())],
        "constant_term_one": N.coeff((0,) * rs.rank) == ring.one()
        if ring.symbolic
        else ring.is_zero(N.coeff((0,) * rs.rank) - 1),
        "polynomial": N.is_polynomial(),
    }
    h = GradedRational(N, dfac)
    result = AveragingResult(params, h, N, delta_poly(rs, ring), d_poly(rs, ring), per_w, certs)
    if check_invariance:
        certs["invariance"] = invariance_report(result)
    return result


def invariance_report(result: AveragingResult) -> dict:
    """h|sigma_i == h for every generator, as cross-multiplied identities."""
    out = {}
    for i in range(result.params.rank):
        out[i] = apply_sigma(result.h, i, result.params).equals(result.h)
    return out


def regularity_report(result: AveragingResult) -> dict:
    """Each per-w term has numerator support >= 0 over a denominator invertible at 0."""
    bad = []
    for word, term in result.per_w_terms.items():
        ok = term.numer.is_polynomial() and all(is_nonnegative(v) for (_, v) in term.denom)
        if not ok:
            bad.append(list(word))
    return {"terms": len(result.per_w_terms), "irregular": bad}


# ----------------------------------------------------------------------------
# axis specialization and the denominator identity


def axis_specialization(result: AveragingResult, i: int) -> GradedRational:
    """h(0,..,x_i,..,0) as a one-variable fraction (still written in r variables)."""
    if any(result.params.tp.ell):
        raise ValueError("the axis specialization is only defined for l = 0")
    num = result.N.restrict(lambda k: all(x == 0 for t, x in enumerate(k) if t != i))
    den = Counter({f: c for f, c in result.h.denom.items() if all(x == 0 for t, x in enumerate(f[1]) if t != i)})
    return GradedRational(num, den)


def axis_closed_form(params: ActionParams, i: int) -> GradedRational:
    """(1 + gamma(|a_i|^2) q x_i) / (1 - q^{m-1} x_i^m)."""
    rs, ring = params.rs, params.ring
    m = rs.simple_m(i)
    e = [0] * rs.rank
    e[i] = 1
    num = LaurentPoly.one(ring, rs.rank) + LaurentPoly.monomial(
        ring, rs.rank, tuple(e), ring.gamma(rs.simple_length_sq(i)), qexp=1
    )
    return GradedRational(num, {(m - 1, tuple(m * x for x in e)): 1})


def sum_j_equals_delta(rs: RootSystem, ring=None) -> dict:
    ring = SymbolicRing(rs.n) if ring is None else ring
    total = LaurentPoly.zero(ring, rs.rank)
    for w in weyl_enumerate(rs):
        total = total + j_cocycle(w, rs, ring)
    delta = delta_poly(rs, ring)
    diff = total - delta
    if not diff.is_zero():
        raise TheoremViolation("sum of j(w) differs from Delta", diff)
    return {"type": rs.code, "n": rs.n, "terms": len(delta), "status": "pass"}


def j_via_delta(w: WeylElement, rs: RootSystem, ring=None) -> LaurentPoly:
    """Delta(x)/Delta(wx), computed by exact division (independent of j_cocycle)."""
    ring = SymbolicRing(rs.n) if ring is None else ring
    # 1/Delta(wx), reoriented, is (unit)^-1 / Delta(x); its numerator is the answer
    sub = GradedRational(LaurentPoly.one(ring, rs.rank), Counter(delta_factors(rs))).substitute_weyl(w, rs)
    if sub.denom != Counter(delta_factors(rs)):
        raise TheoremViolation("Delta(wx) does not have the factors of Delta")
    return sub.numer


# ----------------------------------------------------------------------------
# n = 1: q = 1 specialization and the Weyl character oracle


def specialize_q1(f: LaurentPoly) -> dict:
    """Exponent -> integer value at q = 1 (n = 1, so no gamma symbols)."""
    out = {}
    for k, c in f.terms.items():
        if not isinstance(c, GammaScalar) or c.n != 1:
            raise ValueError("q = 1 specialization needs symbolic n = 1 coefficients")
        v = sum(c.terms.values(), Fraction(0))
        if v:
            out[k] = int(v) if Fraction(v).denominator == 1 else v
    return out


def weyl_character(rs: RootSystem, weight) -> LaurentPoly:
    """Character of the irreducible module of highest weight ``weight`` (omega coordinates).

    Returned as Q(x) in the root-lattice variables x = e^{alpha}, with
    char = e^{weight} Q(x); Q has support <= 0 and constant term 1.
    Computed as sum_w sgn(w) e^{w(lam+rho) - (lam+rho)} / prod_{a>0}(1 - e^{-a}).
    """
    lam = tuple(int(x) for x in weight)
    if len(lam) != rs.rank or any(x < 0 for x in lam):
        raise ValueError("highest weight must be dominant")
    ring = SymbolicRing(1)
    r = rs.rank
    num = LaurentPoly.zero(ring, r)
    for w in weyl_enumerate(rs):
        a = [x + 1 for x in lam]  # lam + rho in omega coordinates
        shift = [0] * r
        for j in reversed(w.word):
            aj = a[j]
            shift[j] -= aj
            a = [a[k] - aj * rs.cartan[j][k] for k in range(r)]
        num = num + LaurentPoly.monomial(ring, r, tuple(shift), ring.const(w.sign))
    for alpha in rs.pos_roots:
        num = exact_divide(num, 0, tuple(-x for x in alpha))
    return num


def weyl_dimension(rs: RootSystem, weight) -> int:
    """prod_{a>0} <lam+rho, a^v> / <rho, a^v>."""
    lam = [int(x) for x in weight]
    num = Fraction(1)
    for alpha in rs.pos_roots:
        na = rs.norm_sq(alpha)
        top = sum(Fraction(k * (l + 1) * rs.simple_length_sq(j)) / na for j, (k, l) in enumerate(zip(alpha, lam)))
        bot = sum(Fraction(k * rs.simple_length_sq(j)) / na for j, k in enumerate(alpha))
        num *= top / bot
    if num.denominator != 1:
        raise AssertionError("Weyl dimension formula gave a non-integer")
    return int(num)


def weyl_character_oracle(ell, rs: RootSystem) -> tuple:
    """(character, dim V_theta) for theta = sum (l_i + 1) omega_i; requires n = 1."""
    if rs.n != 1:
        raise ValueError("the character oracle is only defined for n = 1")
    theta = [l + 1 for l in ell]
    char = weyl_character(rs, theta)
    dim = sum(specialize_q1(char).values())
    return char, dim


def verify_cocycle(rs: RootSystem, ring=None) -> dict:
    """j(w w', x) = j(w, w'x) j(w', x) for all pairs, and j(w, x) = Delta(x)/Delta(wx)."""
    ring = SymbolicRing(rs.n) if ring is None else ring
    elements = weyl_enumerate(rs)
    js = {w.word: j_cocycle(w, rs, ring) for w in elements}
    by_matrix = {w.matrix: w for w in elements}
    bad_pairs = []
    for w in elements:
        for wp in elements:
            ww = by_matrix[multiply(rs, w, wp).matrix]
            lhs = js[ww.word]
            rhs = substitute_weyl(js[w.word], wp, rs) * js[wp.word]
            if not (lhs - rhs).is_zero():
                bad_pairs.append([list(w.word), list(wp.word)])
    bad_delta = [list(w.word) for w in elements if not (j_via_delta(w, rs, ring) - js[w.word]).is_zero()]
    ok = not bad_pairs and not bad_delta
    return {
        "type": rs.code,
        "n": rs.n,
        "pairs": len(elements) ** 2,
        "cocycle_failures": bad_pairs,
        "delta_ratio_failures": bad_delta,
        "status": "pass" if ok else "fail",
    }
