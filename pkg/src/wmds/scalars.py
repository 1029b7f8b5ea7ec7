"""Coefficient rings: symbolic q / gamma(i) arithmetic and numeric Gauss sums.

The symbolic ring is the Laurent ring over Q in q and the generators
gamma_1, ..., gamma_{floor(n/2)} with the relations gamma(0) = -1 and
gamma(i) gamma(-i) = 1/q.  For i > n/2 we rewrite gamma(i) as
q^-1 gamma(n-i)^-1; for even n the middle generator satisfies
gamma_{n/2}^2 = q^-1, so its exponent is kept in {0, 1}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

NUMERIC_TOL = 1e-10


def _reduce_key(key: tuple, n: int) -> tuple:
    """Normalize the exponent of gamma_{n/2} into {0, 1} for even n."""
    if n % 2 or n < 2:
        return key
    e = key[-1]
    if 0 <= e <= 1:
        return key
    r = e % 2
    t = (e - r) // 2
    return (key[0] - t,) + key[1:-1] + (r,)


class GammaScalar:
    """An element of the symbolic coefficient ring, as {monomial key: rational}.

    A monomial key is ``(qexp, g_1, ..., g_k)`` with k = floor(n/2).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        self.terms = dict(terms) if terms else {}

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, n: int, c) -> "GammaScalar":
        if c == 0:
            return cls(n)
        return cls(n, {(0,) * (n // 2 + 1): c})

    @classmethod
    def monomial(cls, n: int, qexp: int = 0, gexp=None, coeff=1) -> "GammaScalar":
        k = n // 2
        g = tuple(gexp) if gexp is not None else (0,) * k
        if len(g) != k:
            raise ValueError("wrong number of gamma exponents")
        if coeff == 0:
            return cls(n)
        return cls(n, {_reduce_key((qexp,) + g, n): coeff})

    # ring operations --------------------------------------------------------
    def _coerce(self, other) -> "GammaScalar":
        if isinstance(other, GammaScalar):
            if other.n != self.n:
                raise ValueError("mixing scalars of different n")
            return other
        if isinstance(other, (int, Fraction)):
            return GammaScalar.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return GammaScalar(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return GammaScalar(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return GammaScalar(self.n)
            return GammaScalar(self.n, {k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.n
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _reduce_key(tuple(a + b for a, b in zip(k1, k2)), n)
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return GammaScalar(n, out)

    __rmul__ = __mul__

    def invert(self) -> "GammaScalar":
        if len(self.terms) != 1:
            raise ValueError("only single-term symbolic scalars can be inverted")
        (k, c), = self.terms.items()
        key = _reduce_key(tuple(-e for e in k), self.n)
        inv = Fraction(1) / c
        return GammaScalar(self.n, {key: int(inv) if inv.denominator == 1 else inv})

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        out = GammaScalar.const(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaScalar.const(self.n, other)
        if not isinstance(other, GammaScalar):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # evaluation / display ---------------------------------------------------
    def evaluate(self, q, gammas) -> complex:
        """Substitute numbers for q and gamma_1..gamma_k (gammas indexed by i)."""
        total = 0j
        for k, c in self.terms.items():
            v = complex(c) * (q ** k[0])
            for idx, e in enumerate(k[1:], start=1):
                if e:
                    v *= gammas[idx] ** e
            total += v
        return total

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "qexp": k[0], "gexp": list(k[1:])}
            for k, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, n: int, data) -> "GammaScalar":
        out = {}
        for t in data:
            out[_reduce_key((t["qexp"],) + tuple(t["gexp"]), n)] = Fraction(t["coeff"])
        return cls(n, {k: (int(v) if v.denominator == 1 else v) for k, v in out.items()})

    def __repr__(self):
        return f"GammaScalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kv: (kv[0][1:], kv[0][0])):
            fac = []
            if k[0]:
                fac.append("q" if k[0] == 1 else f"q^{k[0]}")
            for idx, e in enumerate(k[1:], start=1):
                if e:
                    fac.append(f"g{idx}" if e == 1 else f"g{idx}^{e}")
            mono = "*".join(fac)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class SymbolicRing:
    """Factory for symbolic scalars of a fixed degree n."""

    symbolic = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.k = n // 2

    def __repr__(self):
        return f"SymbolicRing(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, SymbolicRing) and other.n == self.n

    def __hash__(self):
        return hash(("sym", self.n))

    def zero(self):
        return GammaScalar(self.n)

    def one(self):
        return GammaScalar.const(self.n, 1)

    def const(self, c):
        return GammaScalar.const(self.n, c)

    def q_pow(self, e: int):
        return GammaScalar.monomial(self.n, qexp=e)

    def is_zero(self, c) -> bool:
        return not c.terms

    def gamma(self, i: int) -> GammaScalar:
        return gamma(i, self.n)


@lru_cache(maxsize=None)
def _gamma_cached(i: int, n: int) -> GammaScalar:
    i %= n
    if i == 0:
        return GammaScalar.const(n, -1)
    k = n // 2
    g = [0] * k
    if i <= n // 2:
        g[i - 1] = 1
        return GammaScalar.monomial(n, 0, g)
    # gamma(i) = q^-1 gamma(n-i)^-1
    g[n - i - 1] = -1
    return GammaScalar.monomial(n, -1, g)


def gamma(i: int, n: int) -> GammaScalar:
    """gamma(i) for i taken mod n, in canonical form."""
    return _gamma_cached(i, n)


def canonicalize(s: GammaScalar) -> GammaScalar:
    return GammaScalar(s.n, {_reduce_key(k, s.n): c for k, c in s.terms.items()})


# ----------------------------------------------------------------------------
# numeric mode


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def smallest_generator(p: int) -> int:
    """Least primitive root mod the prime p."""
    phi = p - 1
    factors = {d for d in range(2, phi + 1) if phi % d == 0 and _is_prime(d)}
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    return 1  # p == 2


@dataclass(frozen=True)
class NumericGammaContext:
    """Numerical gamma(i) = g(1, pi; eps^i)/q at a degree-one prime of F_q[t]."""

    q: int
    n: int
    generator: int
    gamma_values: tuple

    def gammas_by_generator(self) -> dict:
        """Values of the canonical generators gamma_1..gamma_{floor(n/2)}."""
        return {i: self.gamma_values[i] for i in range(1, self.n // 2 + 1)}

    def evaluate(self, s: GammaScalar) -> complex:
        return s.evaluate(self.q, self.gammas_by_generator())


def numeric_gamma_context(q: int, n: int, generator_choice: int | None = None) -> NumericGammaContext:
    """Brute-force Gauss sums over F_q for a fixed character of exact order n.

    The multiplicative character sends the generator g0 to exp(2 pi i / n);
    the additive character is x -> exp(2 pi i x / q).  Only prime q is supported.
    """
    if not _is_prime(q):
        raise ValueError(f"q={q}: only prime fields are supported")
    if (q - 1) % (2 * n):
        raise ValueError(f"q={q} must be congruent to 1 mod 2n={2 * n}")
    g0 = smallest_generator(q) if generator_choice is None else generator_choice
    # discrete log table
    log = {}
    x = 1
    for e in range(q - 1):
        log[x] = e
        x = x * g0 % q
    vals = [complex(-1.0)]
    for i in range(1, n):
        total = 0j
        for d in range(1, q):
            chi = cmath.exp(2j * math.pi * i * log[d] / n)
            total += chi * cmath.exp(2j * math.pi * d / q)
        vals.append(total / q)
    return NumericGammaContext(q=q, n=n, generator=g0, gamma_values=tuple(vals))


class NumericRing:
    """Coefficient ring where q and every gamma(i) are complex numbers."""

    symbolic = False

    def __init__(self, ctx: NumericGammaContext, tol: float = NUMERIC_TOL):
        self.ctx = ctx
        self.n = ctx.n
        self.tol = tol

    def __repr__(self):
        return f"NumericRing(q={self.ctx.q}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, NumericRing) and other.ctx == self.ctx

    def __hash__(self):
        return hash(("num", self.ctx))

    def zero(self):
        return 0j

    def one(self):
        return 1 + 0j

    def const(self, c):
        return complex(c)

    def q_pow(self, e: int):
        return complex(float(self.ctx.q) ** e)

    def is_zero(self, c) -> bool:
        return abs(c) < self.tol

    def gamma(self, i: int) -> complex:
        return self.ctx.gamma_values[i % self.n]


def scalar_to_json(c):
    if isinstance(c, GammaScalar):
        return c.to_json()
    c = complex(c)
    return {"re": c.real, "im": c.imag}
