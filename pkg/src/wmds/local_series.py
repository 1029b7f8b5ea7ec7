"""Prime-power coefficient tables, one-variable slices, and the local functional equation.

For a direction i and exponent vector k, the slice N^{(k)}(x) collects the
coefficients of N(x; l) whose off-axis exponents equal k_j and whose i-th
exponent is congruent to k_i mod m = m(alpha_i).  With k' = sigma_i . k,

    f^{(k)}(x) = [N^{(k)} - delta * g_t q^{(k_i - k'_i - 1)_m} x^{(k_i - k'_i)_m} N^{(k')}]
                 / (1 - q^{m-1} x^m),

g_t = q gamma(t), t = |alpha_i|^2 (k_i - k'_i), and delta = 0 when k_i = k'_i mod m.
The claim checked here is f(x) = (qx)^e f(1/(q^2 x)).  With the exponent as
usually stated, e = l_i + 1 - (k'_i - k_i)_m (or l_i + 1 - m), the identity only
holds when s = -sum_{j != i} k_j c(j, i) vanishes: freezing x_j = 1 after the
reflection leaves a factor (qx)^s behind.  ``exponent="shifted"`` adds s.
"""

from __future__ import annotations

from dataclasses import dataclass

from .averaging import average_h
from .cg_action import ActionParams
from .laurent import GradedRational, LaurentPoly
from .rootsys import RootSystem, TwistParams, build_root_system, remainder

_TABLES: dict = {}


@dataclass(frozen=True)
class HTable:
    code: str
    n: int
    ell: tuple
    coeffs: dict  # exponent tuple -> scalar
    ring: object

    def get(self, beta):
        return self.coeffs.get(tuple(beta), self.ring.zero())

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly(self.ring, len(self.ell), self.coeffs)


def h_table(params: ActionParams) -> HTable:
    """H(p^beta; p^l) = the x^beta coefficient of N(x; l)."""
    key = (params.rs.code, params.rs.n, params.tp.ell, params.ring)
    hit = _TABLES.get(key)
    if hit is None:
        res = average_h(params, check_invariance=False)
        hit = HTable(params.rs.code, params.rs.n, params.tp.ell, dict(res.N.terms), params.ring)
        _TABLES[key] = hit
    return hit


def k_prime(k, i: int, tp: TwistParams, rs: RootSystem) -> tuple:
    """k with k_i replaced by -k_i + l_i + 1 - sum_{j != i} k_j c(j, i)."""
    out = list(k)
    out[i] = -k[i] + tp.ell[i] + 1 - sum(k[j] * rs.cartan[j][i] for j in range(rs.rank) if j != i)
    return tuple(out)


@dataclass(frozen=True)
class LocalSlice:
    i: int
    k: tuple
    m: int
    poly: LaurentPoly  # one variable


def _line(ring, n: int) -> RootSystem:
    return build_root_system("A1", n=n)


def local_slice(table: HTable, k, i: int, m: int | None = None) -> LocalSlice:
    rs = build_root_system(table.code, n=table.n)
    m = rs.simple_m(i) if m is None else m
    k = tuple(k)
    r = remainder(k[i], m)
    terms = {}
    for beta, c in table.coeffs.items():
        if all(beta[j] == k[j] for j in range(len(k)) if j != i) and beta[i] >= 0 and remainder(beta[i], m) == r:
            terms[(beta[i],)] = c
    return LocalSlice(i, k, m, LaurentPoly(table.ring, 1, terms))


@dataclass(frozen=True)
class LocalF:
    i: int
    k: tuple
    kprime: tuple
    m: int
    delta: int
    f: GradedRational  # one variable, denominator 1 - q^{m-1} x^m


def local_f(table: HTable, k, i: int, params: ActionParams, variant: str = "twisted") -> LocalF:
    """f^{(k)} for direction i.

    ``variant="twisted"`` uses the gamma index |alpha_i|^2 (k_i - k'_i);
    ``variant="root"`` uses gamma(-delta) (qx)^{m-delta} with delta = (k'_i - k_i)_m.
    """
    rs, tp, ring = params.rs, params.tp, params.ring
    k = tuple(k)
    kp = k_prime(k, i, tp, rs)
    m = rs.simple_m(i)
    nk = local_slice(table, k, i, m).poly
    nkp = local_slice(table, kp, i, m).poly
    diff = k[i] - kp[i]
    delta = 0 if remainder(diff, m) == 0 else 1
    num = nk
    if delta:
        if variant == "twisted":
            g = ring.gamma(rs.simple_length_sq(i) * diff) * ring.q_pow(1)
            shift = remainder(diff, m)
            mono = LaurentPoly.monomial(ring, 1, (shift,), g, qexp=remainder(diff - 1, m))
        elif variant == "root":
            d = remainder(-diff, m)
            mono = LaurentPoly.monomial(ring, 1, (m - d,), ring.gamma(-d), qexp=m - d)
        else:
            raise ValueError(f"unknown variant {variant!r}")
        num = nk - mono * nkp
    f = GradedRational(num, {(m - 1, (m,)): 1})
    return LocalF(i, k, kp, m, delta, f)


def off_axis_shift(k, i: int, rs: RootSystem) -> int:
    return -sum(k[j] * rs.cartan[j][i] for j in range(rs.rank) if j != i)


def fe_exponent(lf: LocalF, params: ActionParams, exponent: str = "stated") -> int:
    r = remainder(lf.kprime[lf.i] - lf.k[lf.i], lf.m)
    e = params.tp.ell[lf.i] + 1 - (r if r else lf.m)
    if exponent == "shifted":
        e += off_axis_shift(lf.k, lf.i, params.rs)
    elif exponent != "stated":
        raise ValueError(f"unknown exponent mode {exponent!r}")
    return e


def verify_local_fe(
    table: HTable, k, i: int, params: ActionParams, variant: str = "twisted", exponent: str = "stated"
) -> dict:
    """Check f(x) = (qx)^e f(1/(q^2 x)) as a cross-multiplied identity."""
    lf = local_f(table, k, i, params, variant)
    e = fe_exponent(lf, params, exponent)
    report = {"i": i, "k": list(lf.k), "kprime": list(lf.kprime), "delta": lf.delta, "exponent": e}
    if lf.f.is_zero():
        report["status"] = "zero"
        return report
    line = _line(params.ring, params.n)
    flipped = lf.f.substitute_sigma(0, line)
    rhs = flipped * LaurentPoly.monomial(params.ring, 1, (e,), qexp=e)
    lcm = lf.f.denom | rhs.denom
    resid = lf.f.over(lcm) - rhs.over(lcm)
    report["status"] = "pass" if resid.is_zero() else "fail"
    if not resid.is_zero():
        report["residual_terms"] = len(resid)
    return report


def sweep_local_fe(
    params: ActionParams, k_range: int | None = None, variant: str = "twisted", exponent: str = "stated"
) -> dict:
    """All directions i and all k in [0, 2m)^r (or [0, k_range)^r)."""
    table = h_table(params)
    rs = params.rs
    results = []
    for i in range(rs.rank):
        top = 2 * rs.simple_m(i) if k_range is None else k_range
        for k in _box(rs.rank, top):
            results.append(verify_local_fe(table, k, i, params, variant, exponent))
    fails = [r for r in results if r["status"] == "fail"]
    return {
        "type": rs.code,
        "n": rs.n,
        "ell": list(params.tp.ell),
        "variant": variant,
        "exponent": exponent,
        "checked": sum(r["status"] == "pass" for r in results),
        "zero": sum(r["status"] == "zero" for r in results),
        "branches": sorted({r["delta"] for r in results if r["status"] == "pass"}),
        "failures": fails,
        "status": "fail" if fails else "pass",
    }


def _box(rank: int, top: int):
    if rank == 0:
        yield ()
        return
    for head in range(top):
        for tail in _box(rank - 1, top):
            yield (head,) + tail
