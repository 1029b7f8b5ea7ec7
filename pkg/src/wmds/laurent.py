"""Sparse Laurent polynomials on the root lattice and binomial-denominator fractions.

A ``LaurentPoly`` maps exponent tuples (simple-root coordinates) to scalars
of a coefficient ring (symbolic or numeric, see ``wmds.scalars``).  A
``GradedRational`` is a Laurent numerator over a multiset of binomial
factors ``1 - q^e x^v``; this covers every fraction the averaging
construction produces, so no general gcd machinery is needed.
"""

from __future__ import annotations

import heapq
from collections import Counter
from typing import Iterable, Mapping

from .rootsys import RootSystem, WeylElement, inverse
from .scalars import GammaScalar, SymbolicRing


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""

    def __init__(self, message: str, remainder: "LaurentPoly"):
        super().__init__(message)
        self.remainder = remainder


def _order_key(k: tuple) -> tuple:
    return (sum(k), k)


def _is_positive(v: tuple) -> bool:
    return _order_key(v) > _order_key((0,) * len(v))


def _times_q(ring, c, e: int):
    if e == 0:
        return c
    if isinstance(c, GammaScalar):
        return GammaScalar(c.n, {(k[0] + e,) + k[1:]: x for k, x in c.terms.items()})
    return c * ring.q_pow(e)


class LaurentPoly:
    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring, rank: int, terms: Mapping | None = None):
        self.ring = ring
        self.rank = rank
        self.terms = dict(terms) if terms else {}

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, ring, rank):
        return cls(ring, rank)

    @classmethod
    def one(cls, ring, rank):
        return cls.monomial(ring, rank, (0,) * rank)

    @classmethod
    def monomial(cls, ring, rank, exp, coeff=None, qexp: int = 0):
        c = ring.one() if coeff is None else coeff
        c = _times_q(ring, c, qexp)
        if ring.is_zero(c):
            return cls(ring, rank)
        return cls(ring, rank, {tuple(exp): c})

    @classmethod
    def binomial(cls, ring, rank, e: int, v: tuple):
        """1 - q^e x^v."""
        out = cls.one(ring, rank)
        t = cls.monomial(ring, rank, v, -ring.one(), qexp=e)
        return out + t

    # basic protocol ---------------------------------------------------------
    def copy(self):
        return LaurentPoly(self.ring, self.rank, self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set:
        return set(self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.zero())

    def __len__(self):
        return len(self.terms)

    def _new(self, terms):
        return LaurentPoly(self.ring, self.rank, terms)

    def __add__(self, other: "LaurentPoly"):
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        iz = self.ring.is_zero
        for k, c in other.terms.items():
            if k in out:
                v = out[k] + c
                if iz(v):
                    del out[k]
                else:
                    out[k] = v
            else:
                out[k] = c
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return self._new({})
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        out: dict = {}
        iz = self.ring.is_zero
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                if k in out:
                    out[k] = out[k] + c1 * c2
                else:
                    out[k] = c1 * c2
        return self._new({k: c for k, c in out.items() if not iz(c)})

    def scale(self, c):
        if self.ring.is_zero(c) if not isinstance(c, int) else c == 0:
            return self._new({})
        iz = self.ring.is_zero
        return self._new({k: v * c for k, v in self.terms.items() if not iz(v * c)})

    def shift(self, exp, c=None, qexp: int = 0):
        """Multiply by the monomial c q^qexp x^exp."""
        out = {}
        for k, v in self.terms.items():
            nv = v if c is None else v * c
            nv = _times_q(self.ring, nv, qexp)
            out[tuple(x + y for x, y in zip(k, exp))] = nv
        return self._new(out)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("LaurentPoly is unhashable")

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=_order_key):
            mono = "*".join(
                (f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}") for i, e in enumerate(k) if e
            )
            c = self.terms[k]
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # structure --------------------------------------------------------------
    def min_exponents(self) -> tuple:
        return tuple(min(k[i] for k in self.terms) for i in range(self.rank))

    def is_polynomial(self) -> bool:
        return all(all(e >= 0 for e in k) for k in self.terms)

    def map_coeffs(self, fn, ring=None):
        ring = self.ring if ring is None else ring
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not ring.is_zero(v):
                out[k] = v
        return LaurentPoly(ring, self.rank, out)

    def restrict(self, pred) -> "LaurentPoly":
        return self._new({k: c for k, c in self.terms.items() if pred(k)})

    def to_json(self) -> list:
        from .scalars import scalar_to_json

        return [
            {"exponent": list(k), "scalar": scalar_to_json(self.terms[k])}
            for k in sorted(self.terms, key=_order_key)
        ]


def poly_product(polys: Iterable[LaurentPoly], ring, rank) -> LaurentPoly:
    out = LaurentPoly.one(ring, rank)
    for p in polys:
        out = out * p
    return out


# ----------------------------------------------------------------------------
# Weyl change of variables


def substitute_matrix(f: LaurentPoly, inv_matrix: tuple) -> LaurentPoly:
    """f(wx) given the matrix of w^-1: x^b -> q^{d(w^-1 b - b)} x^{w^-1 b}."""
    out = {}
    for k, c in f.terms.items():
        nk = tuple(sum(row[j] * k[j] for j in range(len(k))) for row in inv_matrix)
        out[nk] = _times_q(f.ring, c, sum(nk) - sum(k))
    return LaurentPoly(f.ring, f.rank, out)


def substitute_sigma(f: LaurentPoly, i: int, rs: RootSystem) -> LaurentPoly:
    """f(sigma_i x), using sigma_i^-1 = sigma_i."""
    out = {}
    for k, c in f.terms.items():
        p = rs.pairing(k, i)
        if p:
            nk = list(k)
            nk[i] -= p
            out[tuple(nk)] = _times_q(f.ring, c, -p)
        else:
            out[k] = c
    return LaurentPoly(f.ring, f.rank, out)


def substitute_weyl(f: LaurentPoly, w: WeylElement, rs: RootSystem) -> LaurentPoly:
    """The change of variables f -> f(wx); a right action: (f.w1).w2 = f.(w1 w2)."""
    return substitute_matrix(f, inverse(rs, w).matrix)


# ----------------------------------------------------------------------------
# the lattice Lambda' and the grading by Lambda / Lambda'


def _hermite_rows(vectors: list[list[int]], rank: int) -> list[list[int]]:
    """Row-echelon Hermite basis of the integer span of ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    while rows and col < rank:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col] != 0]) > 1:
            nz = sorted((r for r in rows if r[col] != 0), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                qt = r[col] // piv[col]
                for t in range(rank):
                    r[t] -= qt * piv[t]
            rows = [r for r in rows if any(r)]
        piv = next(r for r in rows if r[col] != 0)
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
        col += 1
    # reduce entries above pivots for a canonical basis
    for a in range(len(basis)):
        pc = next(t for t in range(rank) if basis[a][t])
        for b in range(a):
            qt = basis[b][pc] // basis[a][pc]
            if qt:
                basis[b] = [x - qt * y for x, y in zip(basis[b], basis[a])]
    return basis


class Grading:
    """nu: Lambda -> Lambda / Lambda', with Lambda' spanned by {m(alpha) alpha}."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        gens = [[rs.m[a] * x for x in a] for a in rs.pos_roots]
        self.basis = _hermite_rows(gens, rs.rank)
        if len(self.basis) != rs.rank:
            raise AssertionError("Lambda' should have full rank")
        self.pivots = [next(t for t in range(rs.rank) if row[t]) for row in self.basis]
        self._cache: dict = {}

    def index(self) -> int:
        out = 1
        for row, p in zip(self.basis, self.pivots):
            out *= row[p]
        return out

    def canonical(self, beta) -> tuple:
        beta = tuple(beta)
        hit = self._cache.get(beta)
        if hit is not None:
            return hit
        v = list(beta)
        for row, p in zip(self.basis, self.pivots):
            qt = v[p] // row[p]
            if qt:
                for t in range(len(v)):
                    v[t] -= qt * row[t]
        out = tuple(v)
        self._cache[beta] = out
        return out

    def in_sublattice(self, beta) -> bool:
        return not any(self.canonical(beta))


_GRADINGS: dict = {}


def grading_for(rs: RootSystem) -> Grading:
    key = (rs.code, rs.n)
    g = _GRADINGS.get(key)
    if g is None:
        g = _GRADINGS[key] = Grading(rs)
    return g


def grade_decompose(f: LaurentPoly, rs: RootSystem) -> dict:
    """Split f into pieces indexed by canonical class representatives in Lambda/Lambda'."""
    gr = grading_for(rs)
    parts: dict = {}
    for k, c in f.terms.items():
        parts.setdefault(gr.canonical(k), {})[k] = c
    return {cls: LaurentPoly(f.ring, f.rank, t) for cls, t in parts.items()}


# ----------------------------------------------------------------------------
# exact division by a binomial


def exact_divide(f: LaurentPoly, e: int, v: tuple) -> LaurentPoly:
    """Return g with g * (1 - q^e x^v) == f, or raise ExactDivisionError.

    Eliminates the lowest remaining term under the (height, lex) order; a
    term that would have to push the quotient beyond the top of f's support
    certifies a nonzero remainder.
    """
    v = tuple(v)
    if not any(v):
        raise ValueError("binomial exponent vector must be nonzero")
    ring = f.ring
    if not f.terms:
        return f
    if not _is_positive(v):
        # 1 - c x^v = -c x^v (1 - c^-1 x^-v)
        g = exact_divide(f, -e, tuple(-x for x in v))
        return g.shift(tuple(-x for x in v), -ring.one(), qexp=-e)

    rem = dict(f.terms)
    top = max(_order_key(k) for k in rem)
    heap = [(_order_key(k), k) for k in rem]
    heapq.heapify(heap)
    quot = {}
    iz = ring.is_zero
    while heap:
        _, k = heapq.heappop(heap)
        if k not in rem:
            continue
        a = rem.pop(k)
        if iz(a):
            continue
        nk = tuple(x + y for x, y in zip(k, v))
        if _order_key(nk) > top:
            rem[k] = a
            remainder = LaurentPoly(ring, f.rank, {kk: c for kk, c in rem.items() if not iz(c)})
            raise ExactDivisionError(
                f"not divisible by 1 - q^{e} x^{v}; remainder has {len(remainder)} terms",
                remainder,
            )
        quot[k] = a
        add = _times_q(ring, a, e)
        if nk in rem:
            s = rem[nk] + add
            if iz(s):
                del rem[nk]
            else:
                rem[nk] = s
        else:
            rem[nk] = add
            heapq.heappush(heap, (_order_key(nk), nk))
    return LaurentPoly(ring, f.rank, quot)


# ----------------------------------------------------------------------------
# fractions with binomial denominators


def normalize_factor(e: int, v: tuple):
    """Return (e', v', unit) with 1 - q^e x^v = unit * (1 - q^e' x^v') and v' positive.

    ``unit`` is None or a triple (sign, qexp, xexp) describing the monomial.
    """
    v = tuple(v)
    if _is_positive(v):
        return e, v, None
    return -e, tuple(-x for x in v), (-1, e, v)


class GradedRational:
    """numer / prod (1 - q^e x^v)^mult, every v lying in Lambda'."""

    __slots__ = ("numer", "denom")

    def __init__(self, numer: LaurentPoly, denom: Mapping | None = None):
        self.numer = numer
        self.denom = Counter(denom) if denom else Counter()

    @classmethod
    def from_poly(cls, f: LaurentPoly) -> "GradedRational":
        return cls(f)

    @classmethod
    def build(cls, numer: LaurentPoly, factors: Iterable[tuple]) -> "GradedRational":
        """Fraction over arbitrary factors (e, v); orientation is normalized."""
        num = numer
        den: Counter = Counter()
        for e, v in factors:
            e2, v2, unit = normalize_factor(e, v)
            if unit is not None:
                # 1/(1 - q^e x^v) = -q^-e x^-v / (1 - q^-e x^-v)
                num = num.shift(tuple(-x for x in v), -num.ring.one(), qexp=-e)
            den[(e2, v2)] += 1
        return cls(num, den)

    @property
    def ring(self):
        return self.numer.ring

    @property
    def rank(self):
        return self.numer.rank

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def factor_poly(self, factors: Mapping) -> LaurentPoly:
        out = LaurentPoly.one(self.ring, self.rank)
        for (e, v), mult in sorted(factors.items()):
            b = LaurentPoly.binomial(self.ring, self.rank, e, v)
            for _ in range(mult):
                out = out * b
        return out

    def denom_poly(self) -> LaurentPoly:
        return self.factor_poly(self.denom)

    def _lift(self, target: Counter) -> LaurentPoly:
        missing = target - self.denom
        return self.numer * self.factor_poly(missing)

    def __add__(self, other: "GradedRational") -> "GradedRational":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lcm = self.denom | other.denom
        return GradedRational(self._lift(lcm) + other._lift(lcm), lcm)

    def __neg__(self):
        return GradedRational(-self.numer, self.denom)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return GradedRational(self.numer * other, self.denom)
        return GradedRational(self.numer * other.numer, self.denom + other.denom)

    def scale(self, c):
        return GradedRational(self.numer.scale(c), self.denom)

    def equals(self, other: "GradedRational") -> bool:
        """Equality as a cross-multiplied polynomial identity."""
        lcm = self.denom | other.denom
        return (self._lift(lcm) - other._lift(lcm)).is_zero()

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = GradedRational(other)
        if not isinstance(other, GradedRational):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        raise TypeError("GradedRational is unhashable")

    def over(self, target: Counter) -> LaurentPoly:
        """Numerator when rewritten over the (larger) denominator ``target``."""
        if self.denom - target:
            raise ValueError("target denominator does not contain this one")
        return self._lift(target)

    def cancel(self) -> "GradedRational":
        """Remove denominator factors that divide the numerator exactly."""
        num = self.numer
        den = Counter(self.denom)
        for (e, v), mult in sorted(self.denom.items()):
            for _ in range(mult):
                try:
                    num = exact_divide(num, e, v)
                except ExactDivisionError:
                    break
                den[(e, v)] -= 1
        return GradedRational(num, +den)

    def to_poly(self) -> LaurentPoly:
        """Exact division of the numerator by every denominator factor."""
        num = self.numer
        for (e, v), mult in sorted(self.denom.items()):
            for _ in range(mult):
                num = exact_divide(num, e, v)
        return num

    def substitute_sigma(self, i: int, rs: RootSystem) -> "GradedRational":
        """f(sigma_i x) for the whole fraction."""
        num = substitute_sigma(self.numer, i, rs)
        factors = []
        for (e, v), mult in self.denom.items():
            p = rs.pairing(v, i)
            nv = list(v)
            nv[i] -= p
            factors.extend([(e - p, tuple(nv))] * mult)
        return GradedRational.build(num, factors)

    def substitute_weyl(self, w: WeylElement, rs: RootSystem) -> "GradedRational":
        inv = inverse(rs, w).matrix
        num = substitute_matrix(self.numer, inv)
        factors = []
        for (e, v), mult in self.denom.items():
            nv = tuple(sum(row[j] * v[j] for j in range(len(v))) for row in inv)
            factors.extend([(e + sum(nv) - sum(v), nv)] * mult)
        return GradedRational.build(num, factors)

    def map_coeffs(self, fn, ring) -> "GradedRational":
        """Apply a ring homomorphism to the numerator (denominators carry only q)."""
        return GradedRational(self.numer.map_coeffs(fn, ring), self.denom)

    def __repr__(self):
        den = " * ".join(f"(1 - q^{e} x^{v})^{m}" for (e, v), m in sorted(self.denom.items()))
        return f"GradedRational(({self.numer}) / ({den or '1'}))"


def symbolic_one(rs: RootSystem) -> LaurentPoly:
    return LaurentPoly.one(SymbolicRing(rs.n), rs.rank)
