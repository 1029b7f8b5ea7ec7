"""Arithmetic over F_q[t]: residue symbols, Gauss sums, H(c; m) and truncated Z.

Only prime q is supported, with q = 1 mod 2n.  Then (-1) is an n-th power
in every residue field, monic reciprocity is trivial, and Psi = 1 is
admissible.  Polynomials are tuples of coefficients, lowest degree first.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import re
from dataclasses import dataclass, field

import numpy as np

from .cg_action import ActionParams
from .local_series import h_table
from .rootsys import RootSystem, TwistParams
from .scalars import _is_prime, smallest_generator

GAUSS_DEGREE_BOUND = 4
FACTOR_DEGREE_BOUND = 6


# ----------------------------------------------------------------------------
# polynomials over F_p


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def deg(a: tuple) -> int:
    return len(a) - 1


def p_add(a, b, p):
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def p_sub(a, b, p):
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))


def p_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(v % p for v in out)


def p_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            quot[i - db] = c
            for j in range(len(b)):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(quot), trim(a[:db] if db else [])


def p_mod(a, b, p):
    return p_divmod(a, b, p)[1]


def p_powmod(a, e: int, m, p):
    result = (1,)
    base = p_mod(a, m, p)
    while e:
        if e & 1:
            result = p_mod(p_mul(result, base, p), m, p)
        base = p_mod(p_mul(base, base, p), m, p)
        e >>= 1
    return result


def p_gcd(a, b, p):
    while b:
        a, b = b, p_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple(x * inv % p for x in a)
    return a


def monic_polys(q: int, d: int):
    """All monic polynomials of degree d, in lexicographic order of coefficients."""
    for low in itertools.product(range(q), repeat=d):
        yield tuple(low) + (1,)


def residues(q: int, d: int):
    """All polynomials of degree < d (residues mod a degree-d modulus)."""
    for c in itertools.product(range(q), repeat=d):
        yield trim(c)


@dataclass(frozen=True)
class FFPoly:
    """A polynomial over F_q, coefficients lowest degree first."""

    q: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", trim(int(c) % self.q for c in self.coeffs))

    @property
    def degree(self) -> int:
        return deg(self.coeffs)

    @property
    def monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def norm(self) -> int:
        return self.q ** self.degree

    def __mul__(self, other: "FFPoly") -> "FFPoly":
        return FFPoly(self.q, p_mul(self.coeffs, other.coeffs, self.q))

    def __str__(self):
        return format_poly(self.coeffs)

    @classmethod
    def parse(cls, text: str, q: int) -> "FFPoly":
        return cls(q, parse_poly(text, q))


def format_poly(c: tuple) -> str:
    if not c:
        return "0"
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        coef = str(a) if (a != 1 or i == 0) else ""
        parts.append(coef + mono)
    return "+".join(parts)


def parse_poly(text: str, q: int) -> tuple:
    """Parse strings like "t^2+3t+1" or "2"."""
    text = text.replace(" ", "").replace("-", "+-")
    coeffs: dict = {}
    for term in filter(None, text.split("+")):
        mt = re.fullmatch(r"(-?\d*)\*?(t(?:\^(\d+))?)?", term)
        if not mt:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        c, tpart, e = mt.groups()
        if tpart is None:
            power, coef = 0, int(c)
        else:
            power = int(e) if e else 1
            coef = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
        coeffs[power] = coeffs.get(power, 0) + coef
    if not coeffs:
        return ()
    top = max(coeffs)
    return trim(coeffs.get(i, 0) % q for i in range(top + 1))


# ----------------------------------------------------------------------------
# context: epsilon, factorization, residue symbols


class FFContext:
    """F_q[t] with a fixed embedding of the n-th roots of unity of F_q into C."""

    def __init__(self, q: int, n: int, gauss_bound: int = GAUSS_DEGREE_BOUND, factor_bound: int = FACTOR_DEGREE_BOUND):
        if not _is_prime(q):
            raise ValueError(f"q={q}: only prime fields are supported")
        if (q - 1) % (2 * n):
            raise ValueError(f"q={q} must be congruent to 1 mod 2n={2 * n}")
        self.q = q
        self.n = n
        self.g0 = smallest_generator(q)
        self.zeta = pow(self.g0, (q - 1) // n, q)  # maps to exp(2 pi i / n)
        self._zeta_log = {pow(self.zeta, e, q): e for e in range(n)}
        self.gauss_bound = gauss_bound
        self.factor_bound = factor_bound
        self._irreducibles: dict = {}
        self._factor_cache: dict = {}
        self._residue_tables: dict = {}
        self._gauss_cache: dict = {}
        self._log_arrays: dict = {}

    def __repr__(self):
        return f"FFContext(q={self.q}, n={self.n})"

    def root_of_unity(self, e: int) -> complex:
        return cmath.exp(2j * math.pi * (e % self.n) / self.n)

    # irreducibles and factorization -----------------------------------------
    def irreducibles(self, d: int) -> list:
        if d in self._irreducibles:
            return self._irreducibles[d]
        out = []
        for f in monic_polys(self.q, d):
            if all(p_mod(f, g, self.q) for e in range(1, d // 2 + 1) for g in self.irreducibles(e)):
                out.append(f)
        self._irreducibles[d] = out
        return out

    def factor(self, c) -> tuple:
        """((prime, multiplicity), ...) for a monic c, primes in degree then lex order."""
        c = _coeffs(c)
        if not c or c[-1] != 1:
            raise ValueError("can only factor monic polynomials")
        hit = self._factor_cache.get(c)
        if hit is not None:
            return hit
        if deg(c) > self.factor_bound:
            raise ValueError(f"degree {deg(c)} exceeds the factorization bound {self.factor_bound}")
        out = []
        rest = c
        d = 1
        while deg(rest) > 0:
            if 2 * d > deg(rest):
                out.append((rest, 1))
                break
            for g in self.irreducibles(d):
                mult = 0
                while True:
                    qt, r = p_divmod(rest, g, self.q)
                    if r:
                        break
                    rest, mult = qt, mult + 1
                if mult:
                    out.append((g, mult))
            d += 1
        out.sort(key=lambda t: (deg(t[0]), t[0]))
        result = tuple(out)
        self._factor_cache[c] = result
        return result

    # residue symbols --------------------------------------------------------
    def _log_table(self, pi) -> dict:
        """Residue -> symbol exponent for every unit mod pi, by walking a generator."""
        size = self.q ** deg(pi) - 1
        primes = [f for f in range(2, size + 1) if size % f == 0 and _is_prime(f)]
        for cand in residues(self.q, deg(pi)):
            if deg(cand) < 1 and deg(pi) > 1:
                continue
            if not cand or any(p_powmod(cand, size // f, pi, self.q) == (1,) for f in primes):
                continue
            g = cand
            break
        else:  # pragma: no cover
            raise AssertionError("no generator found")
        # eps((g/pi)) is zeta^{e0}; then (g^j / pi) = zeta^{j e0}
        u = p_powmod(g, size // self.n, pi, self.q)
        e0 = self._zeta_log[u[0]]
        table = {}
        x = (1,)
        for j in range(size):
            table[x] = j * e0 % self.n
            x = p_mod(p_mul(x, g, self.q), pi, self.q)
        return table

    def log_array(self, pi) -> np.ndarray:
        """Symbol exponents indexed by sum c_k q^k over residues c; -1 marks zero."""
        hit = self._log_arrays.get(pi)
        if hit is None:
            self.residue_exp_prime((1,), pi)
            hit = np.full(self.q ** deg(pi), -1, dtype=np.int64)
            for res, e in self._residue_tables[pi].items():
                hit[sum(c * self.q**k for k, c in enumerate(res))] = e
            self._log_arrays[pi] = hit
        return hit

    def residue_exp_prime(self, a, pi) -> int | None:
        """e with (a/pi) = zeta^e, or None when pi divides a."""
        a = p_mod(_coeffs(a), pi, self.q)
        if not a:
            return None
        table = self._residue_tables.get(pi)
        if table is None and deg(pi) <= self.gauss_bound:
            table = self._residue_tables[pi] = self._log_table(pi)
        if table is None:
            table = self._residue_tables.setdefault(pi, {})
        hit = table.get(a)
        if hit is None:
            u = p_powmod(a, (self.q ** deg(pi) - 1) // self.n, pi, self.q)
            if len(u) != 1 or u[0] not in self._zeta_log:
                raise AssertionError("power residue did not land in mu_n")
            hit = table[a] = self._zeta_log[u[0]]
        return hit

    def residue_exp(self, a, b) -> int | None:
        """Exponent of (a/b) for monic b, additive over the factorization of b."""
        b = _coeffs(b)
        if not b or b[-1] != 1:
            raise ValueError("the lower argument of a residue symbol must be monic")
        total = 0
        for pi, mult in self.factor(b):
            e = self.residue_exp_prime(a, pi)
            if e is None:
                return None
            total += mult * e
        return total % self.n


def _coeffs(a) -> tuple:
    if isinstance(a, FFPoly):
        return a.coeffs
    return trim(a)


def residue_symbol(a, b, ctx: FFContext) -> complex:
    e = ctx.residue_exp(a, b)
    return 0j if e is None else ctx.root_of_unity(e)


# ----------------------------------------------------------------------------
# Gauss sums


def psi(r: tuple, c: tuple, p: int) -> complex:
    """psi(r/c) for deg r < deg c, c monic: exp(2 pi i (t^-1 coefficient) / p)."""
    d = deg(c)
    top = r[d - 1] if len(r) >= d else 0
    return cmath.exp(2j * math.pi * top / p)


def gauss_sum(a, c, t: int, ctx: FFContext) -> complex:
    """g(a, c; eps^t) = sum_{d mod c} eps^t((d/c)) psi(a d / c)."""
    a, c = _coeffs(a), _coeffs(c)
    if not c or c[-1] != 1:
        raise ValueError("modulus must be monic")
    if deg(c) > ctx.gauss_bound:
        raise ValueError(f"degree {deg(c)} exceeds the Gauss sum bound {ctx.gauss_bound}")
    key = (a, c, t % ctx.n)
    hit = ctx._gauss_cache.get(key)
    if hit is not None:
        return hit
    if deg(c) == 0:
        ctx._gauss_cache[key] = 1 + 0j
        return 1 + 0j
    p = ctx.q
    dc = deg(c)
    D = _residue_matrix(p, dc)
    valid = np.ones(len(D), dtype=bool)
    e = np.zeros(len(D), dtype=np.int64)
    for pi, mult in ctx.factor(c):
        arr = ctx.log_array(pi)
        red = D @ _reduction_matrix(dc, pi, p) % p
        ep = arr[red @ (p ** np.arange(deg(pi), dtype=np.int64))]
        valid &= ep >= 0
        e += mult * ep
    ad = D @ _reduction_matrix(dc, c, p, a) % p
    top = ad[:, dc - 1]
    phases = t * e[valid] / ctx.n + top[valid] / p
    total = complex(np.exp(2j * np.pi * phases).sum())
    ctx._gauss_cache[key] = total
    return total


_RESIDUE_MATRICES: dict = {}


def _residue_matrix(p: int, d: int) -> np.ndarray:
    """Coefficient vectors (lowest degree first) of every residue of degree < d."""
    hit = _RESIDUE_MATRICES.get((p, d))
    if hit is None:
        hit = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)[:, ::-1]
        hit = _RESIDUE_MATRICES[(p, d)] = np.ascontiguousarray(hit)
    return hit


def _reduction_matrix(d: int, modulus: tuple, p: int, a: tuple = (1,)) -> np.ndarray:
    """Rows k = coefficients of a t^k mod ``modulus``, so that r -> a r mod modulus is linear."""
    k = deg(modulus)
    out = np.zeros((d, k), dtype=np.int64)
    for row in range(d):
        r = p_mod(p_mul(a, (0,) * row + (1,), p), modulus, p)
        out[row, : len(r)] = r
    return out


def gamma_at(pi, i: int, ctx: FFContext) -> complex:
    """gamma_pi(i) = g(1, pi; eps^i)/|pi|, and -1 for i = 0 mod n."""
    if i % ctx.n == 0:
        return -1 + 0j
    pi = _coeffs(pi)
    return gauss_sum((1,), pi, i, ctx) / ctx.q ** deg(pi)


# ----------------------------------------------------------------------------
# twisted multiplicativity


def _inner2(rs: RootSystem, i: int, j: int) -> int:
    v = 2 * rs.gram[i][j]
    if v.denominator != 1:
        raise AssertionError("2<a_i,a_j> should be an integer")
    return int(v)


def xi_exponent(c, cp, ctx: FFContext, rs: RootSystem) -> int:
    r = rs.rank
    c = [_coeffs(x) for x in c]
    cp = [_coeffs(x) for x in cp]
    prod_c = (1,)
    prod_cp = (1,)
    for x in c:
        prod_c = p_mul(prod_c, x, ctx.q)
    for x in cp:
        prod_cp = p_mul(prod_cp, x, ctx.q)
    if deg(p_gcd(prod_c, prod_cp, ctx.q)) > 0:
        raise ValueError("xi needs coprime argument tuples")

    def sym(a, b):
        e = ctx.residue_exp(a, b)
        if e is None:
            raise AssertionError("unexpected zero residue symbol")
        return e

    total = 0
    for i in range(r):
        li = rs.simple_length_sq(i)
        total += li * (sym(c[i], cp[i]) + sym(cp[i], c[i]))
    for i in range(r):
        for j in range(i + 1, r):
            s = _inner2(rs, i, j)
            if s:
                total += s * (sym(c[i], cp[j]) + sym(cp[i], c[j]))
    return total % ctx.n


def xi_factor(c, cp, ctx: FFContext, rs: RootSystem) -> complex:
    return ctx.root_of_unity(xi_exponent(c, cp, ctx, rs))


@dataclass
class HEvaluator:
    """H(c; m) from prime-power blocks of symbolic N tables, folded with xi."""

    ctx: FFContext
    rs: RootSystem
    _blocks: dict = field(default_factory=dict)

    def table(self, ell: tuple):
        return h_table(ActionParams.make(self.rs, ell))

    def block(self, pi: tuple, beta: tuple, ell: tuple) -> complex:
        """H(pi^beta; pi^ell) with q = |pi| and gamma = gamma_pi."""
        key = (pi, beta, ell)
        hit = self._blocks.get(key)
        if hit is None:
            coeff = self.table(ell).coeffs.get(beta)
            if coeff is None:
                hit = 0j
            else:
                gam = {i: gamma_at(pi, i, self.ctx) for i in range(1, self.rs.n // 2 + 1)}
                hit = coeff.evaluate(self.ctx.q ** deg(pi), gam)
            self._blocks[key] = hit
        return hit

    def prime_blocks(self, c, m) -> list:
        """[(pi, beta, value)] with the twist reduced at pi, primes in canonical order."""
        ctx, rs = self.ctx, self.rs
        c = [_coeffs(x) for x in c]
        m = [_coeffs(x) for x in m]
        primes = sorted({pi for x in c for pi, _ in ctx.factor(x)}, key=lambda t: (deg(t), t))
        out = []
        for pi in primes:
            beta = tuple(dict(ctx.factor(x)).get(pi, 0) for x in c)
            ell = tuple(dict(ctx.factor(x)).get(pi, 0) for x in m)
            val = self.block(pi, beta, ell)
            # twist away from pi: prod_j (m'_j / pi^beta_j)^(-|a_j|^2)
            e = 0
            for j in range(rs.rank):
                if not beta[j]:
                    continue
                mprime = m[j]
                for _ in range(ell[j]):
                    mprime = p_divmod(mprime, pi, ctx.q)[0]
                s = ctx.residue_exp_prime(mprime, pi)
                if s is None:
                    raise AssertionError("twist cofactor not coprime to pi")
                e -= rs.simple_length_sq(j) * beta[j] * s
            out.append((pi, beta, val * ctx.root_of_unity(e)))
        return out

    def fold(self, blocks) -> complex:
        ctx, rs = self.ctx, self.rs
        acc_c = [(1,)] * rs.rank
        acc = 1 + 0j
        for pi, beta, val in blocks:
            bc = [p_powmod_plain(pi, b, ctx.q) for b in beta]
            acc = acc * val * xi_factor(acc_c, bc, ctx, rs)
            acc_c = [p_mul(x, y, ctx.q) for x, y in zip(acc_c, bc)]
        return acc

    def __call__(self, c, m=None) -> complex:
        if m is None:
            m = [(1,)] * self.rs.rank
        for x in list(c) + list(m):
            x = _coeffs(x)
            if not x or x[-1] != 1:
                raise ValueError("arguments and twists must be monic")
        return self.fold(self.prime_blocks(c, m))


def p_powmod_plain(a: tuple, e: int, p: int) -> tuple:
    out = (1,)
    for _ in range(e):
        out = p_mul(out, a, p)
    return out


def H_general(c, m, ctx: FFContext, rs: RootSystem, evaluator: HEvaluator | None = None) -> complex:
    ev = HEvaluator(ctx, rs) if evaluator is None else evaluator
    return ev(c, m)


def H_shuffled(c, m, ctx: FFContext, rs: RootSystem, rng: random.Random, evaluator: HEvaluator | None = None) -> complex:
    """H(c; m) with the prime blocks folded in a random order."""
    ev = HEvaluator(ctx, rs) if evaluator is None else evaluator
    blocks = ev.prime_blocks(c, [(1,)] * rs.rank if m is None else m)
    rng.shuffle(blocks)
    return ev.fold(blocks)


# ----------------------------------------------------------------------------
# truncated Z


@dataclass
class TruncatedZ:
    code: str
    n: int
    q: int
    twist: tuple
    bound: int
    coeffs: dict  # degree tuple -> complex

    def to_json(self) -> dict:
        return {
            "params": {
                "type": self.code,
                "n": self.n,
                "q": self.q,
                "twist": [format_poly(t) for t in self.twist],
                "maxdeg": self.bound,
            },
            "coeffs": [
                {"deg": list(d), "re": _clean(v.real), "im": _clean(v.imag)}
                for d, v in sorted(self.coeffs.items())
            ],
        }


def _clean(x: float) -> float:
    x = round(x, 10)
    return 0.0 if x == 0 else x


def degree_vectors(rank: int, bound: int):
    for d in itertools.product(range(bound + 1), repeat=rank):
        if sum(d) <= bound:
            yield d


def assemble_Z(m, bound: int, ctx: FFContext, rs: RootSystem, max_bound: int = 6) -> TruncatedZ:
    if bound > max_bound:
        raise ValueError(f"degree bound {bound} exceeds the configured maximum {max_bound}")
    m = tuple(_coeffs(x) for x in m)
    ev = HEvaluator(ctx, rs)
    coeffs = {}
    for d in degree_vectors(rs.rank, bound):
        total = 0j
        for c in itertools.product(*(list(monic_polys(ctx.q, di)) for di in d)):
            total += ev(c, m)
        coeffs[d] = total
    return TruncatedZ(rs.code, rs.n, ctx.q, m, bound, coeffs)


def is_squarefree(c, ctx: FFContext) -> bool:
    return all(mult == 1 for _, mult in ctx.factor(c))


# ----------------------------------------------------------------------------
# advisory: compare Z with the local p-part


def self_similarity_probe(ctx: FFContext, rs: RootSystem, bound: int, powers=range(-3, 4)) -> dict:
    """Search x_i -> q^{s_i} u_i making Z's coefficients match N at a degree-one prime."""
    twist = tuple((1,) for _ in range(rs.rank))
    z = assemble_Z(twist, bound, ctx, rs)
    ev = HEvaluator(ctx, rs)
    pi = (0, 1)
    local = {}
    for d in degree_vectors(rs.rank, bound):
        local[d] = ev.block(pi, d, (0,) * rs.rank)
    best = None
    candidates = []
    for s in itertools.product(powers, repeat=rs.rank):
        resid = max(
            abs(z.coeffs[d] * ctx.q ** sum(si * di for si, di in zip(s, d)) - local[d]) for d in local
        )
        candidates.append({"shift": list(s), "max_residual": _clean(resid)})
        if best is None or resid < best["max_residual"]:
            best = {"shift": list(s), "max_residual": resid}
    best["max_residual"] = _clean(best["max_residual"])
    return {
        "type": rs.code,
        "n": rs.n,
        "q": ctx.q,
        "bound": bound,
        "best": best,
        "match": best["max_residual"] < 1e-9,
        "candidates": candidates,
        "advisory": True,
    }


# ----------------------------------------------------------------------------
# identity checks


def _random_monic(rng: random.Random, q: int, max_degree: int, min_degree: int = 1) -> tuple:
    d = rng.randint(min_degree, max_degree)
    return tuple(rng.randrange(q) for _ in range(d)) + (1,)


def _coprime_pair(rng, ctx, max_degree):
    while True:
        a = _random_monic(rng, ctx.q, max_degree)
        b = _random_monic(rng, ctx.q, max_degree)
        if deg(a) + deg(b) <= ctx.gauss_bound and deg(p_gcd(a, b, ctx.q)) == 0:
            return a, b


def verify_gauss(ctx: FFContext, samples: int = 50, seed: int = 0, max_degree: int = 3) -> dict:
    """Residuals of the Gauss sum identities on seeded random coprime monic data.

    mult:    g(m, ab) = g(m, a) g(m, b) eps^t((a/b)(b/a))
    twist:   g(a m, b) = eps^-t((a/b)) g(m, b)
    norm:    g(1, pi; eps^t) g(1, pi; eps^-t) = |pi| at primes, t != 0 mod n
    recip:   (a/b) = (b/a) for coprime monics
    """
    rng = random.Random(seed)
    q, n = ctx.q, ctx.n
    res = {"mult": 0.0, "twist": 0.0, "norm": 0.0, "recip": 0}
    for _ in range(samples):
        t = rng.randrange(1, n)
        a, b = _coprime_pair(rng, ctx, max_degree)
        m = tuple(rng.randrange(q) for _ in range(rng.randint(1, 3)))
        m = trim(m) or (1,)
        lhs = gauss_sum(m, p_mul(a, b, q), t, ctx)
        e = ctx.residue_exp(a, b) + ctx.residue_exp(b, a)
        rhs = gauss_sum(m, a, t, ctx) * gauss_sum(m, b, t, ctx) * ctx.root_of_unity(t * e)
        res["mult"] = max(res["mult"], abs(lhs - rhs))

        a2, b2 = _coprime_pair(rng, ctx, max_degree)
        lhs = gauss_sum(p_mul(a2, m, q), b2, t, ctx)
        rhs = ctx.root_of_unity(-t * ctx.residue_exp(a2, b2)) * gauss_sum(m, b2, t, ctx)
        res["twist"] = max(res["twist"], abs(lhs - rhs))

        d = rng.randint(1, max_degree)
        pi = rng.choice(ctx.irreducibles(d))
        val = gauss_sum((1,), pi, t, ctx) * gauss_sum((1,), pi, -t, ctx)
        res["norm"] = max(res["norm"], abs(val - q ** d))

        if ctx.residue_exp(a, b) != ctx.residue_exp(b, a):
            res["recip"] += 1
    base = None
    if n == 2:
        base = abs(gauss_sum((1,), (0, 1), 1, ctx) - math.sqrt(q))
    worst = max(res["mult"], res["twist"], res["norm"], base or 0.0)
    return {
        "q": q,
        "n": n,
        "seed": seed,
        "samples": samples,
        "max_degree": max_degree,
        "residuals": {k: _clean(v) if isinstance(v, float) else v for k, v in res.items()},
        "g1t_minus_sqrt_q": None if base is None else _clean(base),
        "max_residual": worst,
        "status": "pass" if worst < 1e-9 and res["recip"] == 0 else "fail",
    }


def verify_multiplicativity(
    ctx: FFContext, rs: RootSystem, tuples: int = 25, seed: int = 0, max_degree: int = 3, orders: int = 3
) -> dict:
    """H order independence under shuffled prime folding (and, for A1 with n = 2,
    H(c) = g(1, c) on all monic squarefree c of degree <= max_degree)."""
    rng = random.Random(seed)
    ev = HEvaluator(ctx, rs)
    worst = 0.0
    for _ in range(tuples):
        c = [_random_monic(rng, ctx.q, max_degree, 0) for _ in range(rs.rank)]
        m = [_random_monic(rng, ctx.q, 1, 0) for _ in range(rs.rank)]
        base = ev(c, m)
        for _ in range(orders):
            worst = max(worst, abs(H_shuffled(c, m, ctx, rs, rng, ev) - base))
    out = {
        "type": rs.code,
        "n": rs.n,
        "q": ctx.q,
        "seed": seed,
        "tuples": tuples,
        "order_residual": _clean(worst),
    }
    ok = worst < 1e-10
    if rs.code == "A1" and rs.n == 2:
        sq = 0.0
        count = 0
        for d in range(0, max_degree + 1):
            for c in monic_polys(ctx.q, d):
                if is_squarefree(c, ctx):
                    sq = max(sq, abs(ev([c]) - gauss_sum((1,), c, 1, ctx)))
                    count += 1
        out["squarefree_checked"] = count
        out["squarefree_residual"] = _clean(sq)
        ok = ok and sq < 1e-9
    out["status"] = "pass" if ok else "fail"
    return out
