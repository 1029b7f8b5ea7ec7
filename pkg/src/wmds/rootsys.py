"""Root systems and Weyl groups in the simple-root basis.

Everything is stored in coordinates with respect to the simple roots, so
weights of the root lattice are plain integer tuples.  Squared lengths
use the normalization where short roots have squared length 1.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Weight = tuple  # integer tuple (k_1, ..., k_r) in the simple-root basis

DEFAULT_WEYL_BUDGET = 60000
_BUDGET_ENV = "WMDS_WEYL_BUDGET"

_POSITIVE_ROOT_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": {6: 36, 7: 63, 8: 120},
    "F": {4: 24},
    "G": {2: 6},
}


def height(lam: Sequence[int]) -> int:
    return sum(lam)


def remainder(k: int, m: int) -> int:
    """(k)_m, the representative of k mod m in {0, ..., m-1}."""
    return k % m


def is_nonnegative(lam: Sequence[int]) -> bool:
    return all(k >= 0 for k in lam)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scale(a, c):
    return tuple(c * x for x in a)


def _gram_for(cartan_type: str, rank: int) -> list[list[Fraction]]:
    """Inner products <alpha_i, alpha_j> of the simple roots (Bourbaki labels)."""
    half = Fraction(1, 2)
    lengths = [Fraction(1)] * rank
    edges: list[tuple[int, int, Fraction]] = []

    if cartan_type == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        edges = [(i, i + 1, -half) for i in range(rank - 1)]
    elif cartan_type == "B":
        if rank < 2:
            raise ValueError("type B needs rank >= 2")
        lengths = [Fraction(2)] * (rank - 1) + [Fraction(1)]
        edges = [(i, i + 1, Fraction(-1)) for i in range(rank - 1)]
    elif cartan_type == "C":
        if rank < 2:
            raise ValueError("type C needs rank >= 2")
        lengths = [Fraction(1)] * (rank - 1) + [Fraction(2)]
        edges = [(i, i + 1, -half) for i in range(rank - 2)]
        edges.append((rank - 2, rank - 1, Fraction(-1)))
    elif cartan_type == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        edges = [(i, i + 1, -half) for i in range(rank - 2)]
        edges.append((rank - 3, rank - 1, -half))
    elif cartan_type == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # Bourbaki: 1-3-4-5-6(-7-8), 2-4
        chain = [0, 2, 3] + list(range(4, rank))
        edges = [(a, b, -half) for a, b in zip(chain, chain[1:])]
        edges.append((1, 3, -half))
    elif cartan_type == "F":
        if rank != 4:
            raise ValueError("type F needs rank 4")
        lengths = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
        edges = [(0, 1, Fraction(-1)), (1, 2, Fraction(-1)), (2, 3, -half)]
    elif cartan_type == "G":
        if rank != 2:
            raise ValueError("type G needs rank 2")
        lengths = [Fraction(1), Fraction(3)]
        edges = [(0, 1, Fraction(-3, 2))]
    else:
        raise ValueError(f"unknown Cartan type {cartan_type!r}")

    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = lengths[i]
    for i, j, v in edges:
        gram[i][j] = gram[j][i] = v
    return gram


def parse_code(code: str) -> list[tuple[str, int]]:
    """Split a code like ``"B3"`` or ``"A1xA1"`` into irreducible factors."""
    parts = [p for p in re.split(r"[x×]", code.strip()) if p]
    if not parts:
        raise ValueError(f"empty root system code {code!r}")
    out = []
    for p in parts:
        mt = re.fullmatch(r"([A-Ga-g])(\d+)", p.strip())
        if not mt:
            raise ValueError(f"cannot parse root system code {p!r}")
        out.append((mt.group(1).upper(), int(mt.group(2))))
    return out


@dataclass(frozen=True)
class RootSystem:
    """Cartan data, positive roots and the multipliers m(alpha) for a degree n."""

    code: str
    components: tuple
    gram: tuple  # tuple of tuples of Fraction
    cartan: tuple  # cartan[i][j] = 2<a_i,a_j>/<a_j,a_j>
    n: int
    pos_roots: tuple = field(repr=False)
    length_sq: dict = field(repr=False)
    m: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def cartan_type(self) -> str:
        return self.code

    def simple_root(self, i: int) -> Weight:
        e = [0] * self.rank
        e[i] = 1
        return tuple(e)

    def simple_length_sq(self, i: int) -> int:
        return int(self.gram[i][i])

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        r = self.rank
        return sum(
            (a[i] * b[j] * self.gram[i][j] for i in range(r) for j in range(r) if a[i] and b[j]),
            Fraction(0),
        )

    def norm_sq(self, a: Sequence[int]) -> Fraction:
        return self.inner(a, a)

    def pairing(self, lam: Sequence[int], j: int) -> int:
        """<lam, alpha_j^vee> for lam in the root lattice."""
        return sum(k * self.cartan[i][j] for i, k in enumerate(lam) if k)

    def reflect(self, lam: Sequence[int], j: int) -> Weight:
        """sigma_j(lam) = lam - <lam, alpha_j^vee> alpha_j."""
        c = self.pairing(lam, j)
        if c == 0:
            return tuple(lam)
        out = list(lam)
        out[j] -= c
        return tuple(out)

    def m_of(self, alpha: Sequence[int]) -> int:
        """m(alpha) = n / gcd(n, |alpha|^2) for any root, positive or negative."""
        a = tuple(alpha)
        if a in self.m:
            return self.m[a]
        return self.m[tuple(-x for x in a)]

    def simple_m(self, i: int) -> int:
        return self.m[self.simple_root(i)]

    def coxeter_order(self, i: int, j: int) -> int:
        """r(i,j) with (sigma_i sigma_j)^{r(i,j)} = 1."""
        if i == j:
            return 1
        p = self.cartan[i][j] * self.cartan[j][i]
        return {0: 2, 1: 3, 2: 4, 3: 6}[p]

    def with_n(self, n: int) -> "RootSystem":
        return build_root_system(self.code, n=n)

    @property
    def rho_shift_root(self) -> Weight:
        """2 rho written in the simple-root basis (sum of positive roots)."""
        total = (0,) * self.rank
        for a in self.pos_roots:
            total = _add(total, a)
        return total


def build_root_system(cartan_type: str, rank: int | None = None, n: int = 1) -> RootSystem:
    """Build a root system from a type letter and rank, or from a code like ``"G2"``.

    Reducible codes such as ``"A1xA1"`` give block-diagonal Cartan data.
    """
    if n < 1:
        raise ValueError("series degree n must be >= 1")
    if rank is None:
        comps = parse_code(cartan_type)
    else:
        comps = [(cartan_type.upper(), int(rank))]
    code = "x".join(f"{t}{r}" for t, r in comps)

    total = sum(r for _, r in comps)
    gram = [[Fraction(0)] * total for _ in range(total)]
    off = 0
    for t, r in comps:
        g = _gram_for(t, r)
        for i in range(r):
            for j in range(r):
                gram[off + i][off + j] = g[i][j]
        off += r

    cartan = []
    for i in range(total):
        row = []
        for j in range(total):
            c = 2 * gram[i][j] / gram[j][j]
            if c.denominator != 1:
                raise AssertionError("non-integral Cartan entry")
            row.append(int(c))
        cartan.append(tuple(row))
    cartan = tuple(cartan)

    # positive roots: W-orbit of the simple roots, keep the positive half
    simple = []
    for i in range(total):
        e = [0] * total
        e[i] = 1
        simple.append(tuple(e))
    seen = set(simple)
    frontier = list(simple)

    def refl(lam, j):
        c = sum(k * cartan[i][j] for i, k in enumerate(lam) if k)
        out = list(lam)
        out[j] -= c
        return tuple(out)

    while frontier:
        nxt = []
        for lam in frontier:
            for j in range(total):
                mu = refl(lam, j)
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    pos = sorted((a for a in seen if all(k >= 0 for k in a)), key=lambda a: (sum(a), a))

    expected = 0
    for t, r in comps:
        cnt = _POSITIVE_ROOT_COUNT[t]
        expected += cnt(r) if callable(cnt) else cnt[r]
    if len(pos) != expected:
        raise AssertionError(f"{code}: found {len(pos)} positive roots, expected {expected}")

    gram_t = tuple(tuple(row) for row in gram)
    length_sq = {}
    mult = {}
    for a in pos:
        ls = sum(
            (a[i] * a[j] * gram[i][j] for i in range(total) for j in range(total)),
            Fraction(0),
        )
        if ls.denominator != 1:
            raise AssertionError("non-integral squared length")
        ls = int(ls)
        length_sq[a] = ls
        mult[a] = n // gcd(n, ls)

    return RootSystem(
        code=code,
        components=tuple(comps),
        gram=gram_t,
        cartan=cartan,
        n=n,
        pos_roots=tuple(pos),
        length_sq=length_sq,
        m=mult,
    )


@dataclass(frozen=True)
class TwistParams:
    """The twisting parameter ell; theta = sum (l_i + 1) omega_i stays implicit."""

    ell: tuple

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(int(x) for x in self.ell))
        if any(x < 0 for x in self.ell):
            raise ValueError("twisting parameters must be nonnegative")

    @classmethod
    def zero(cls, rank: int) -> "TwistParams":
        return cls((0,) * rank)


def dot_reflect(lam: Sequence[int], i: int, tp: TwistParams, rs: RootSystem) -> Weight:
    """sigma_i . lam = sigma_i lam + (l_i + 1) alpha_i."""
    out = list(rs.reflect(lam, i))
    out[i] += tp.ell[i] + 1
    return tuple(out)


# ----------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylElement:
    word: tuple
    matrix: tuple  # row-major tuple of tuples, acts on column vectors
    length: int

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, lam: Sequence[int]) -> Weight:
        return tuple(sum(row[j] * lam[j] for j in range(len(lam))) for row in self.matrix)

    def np_matrix(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)


def generator_matrix(rs: RootSystem, j: int) -> np.ndarray:
    """Matrix of sigma_j on the root lattice: alpha_i -> alpha_i - c(i,j) alpha_j."""
    r = rs.rank
    s = np.eye(r, dtype=np.int64)
    for i in range(r):
        s[j, i] -= rs.cartan[i][j]
    return s


def _as_key(mat: np.ndarray) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in mat)


def weyl_budget() -> int:
    return int(os.environ.get(_BUDGET_ENV, DEFAULT_WEYL_BUDGET))


def weyl_order(rs: RootSystem) -> int:
    order = 1
    # |W| = product of (degree) over components; computed from root counts
    table = {
        "A": lambda r: _fact(r + 1),
        "B": lambda r: 2**r * _fact(r),
        "C": lambda r: 2**r * _fact(r),
        "D": lambda r: 2 ** (r - 1) * _fact(r),
        "E": lambda r: {6: 51840, 7: 2903040, 8: 696729600}[r],
        "F": lambda r: 1152,
        "G": lambda r: 12,
    }
    for t, r in rs.components:
        order *= table[t](r)
    return order


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


_WEYL_CACHE: dict = {}


def weyl_enumerate(rs: RootSystem, budget: int | None = None) -> list[WeylElement]:
    """All elements of W, sorted by (length, lexicographically least reduced word).

    Breadth-first closure under right multiplication by the generators; the
    identity comes first.
    """
    budget = weyl_budget() if budget is None else budget
    size = weyl_order(rs)
    if size > budget:
        raise ValueError(f"|W({rs.code})| = {size} exceeds the Weyl group budget {budget}")
    key = (rs.code, rs.cartan)
    if key in _WEYL_CACHE:
        return _WEYL_CACHE[key]

    r = rs.rank
    gens = [generator_matrix(rs, j) for j in range(r)]
    ident = np.eye(r, dtype=np.int64)
    words = {_as_key(ident): ()}
    mats = {_as_key(ident): ident}
    level = [_as_key(ident)]
    elements = [WeylElement((), _as_key(ident), 0)]
    length = 0
    while level:
        length += 1
        cand: dict = {}
        for k in level:
            base = mats[k]
            w = words[k]
            for j in range(r):
                prod = base @ gens[j]
                pk = _as_key(prod)
                if pk in words:
                    continue
                word = w + (j,)
                if pk not in cand or word < cand[pk][0]:
                    cand[pk] = (word, prod)
        level = sorted(cand, key=lambda k: cand[k][0])
        for k in level:
            words[k] = cand[k][0]
            mats[k] = cand[k][1]
            elements.append(WeylElement(cand[k][0], k, length))
    if len(elements) != size:
        raise AssertionError(f"enumerated {len(elements)} elements, expected {size}")
    _WEYL_CACHE[key] = elements
    return elements


def element_from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Group element for an arbitrary word (length computed from the inversion set)."""
    word = tuple(word)
    mat = np.eye(rs.rank, dtype=np.int64)
    for j in word:
        mat = mat @ generator_matrix(rs, j)
    key = _as_key(mat)
    length = sum(1 for a in rs.pos_roots if not is_nonnegative(_apply(key, a)))
    return WeylElement(word, key, length)


def _apply(mat: tuple, lam) -> Weight:
    return tuple(sum(row[j] * lam[j] for j in range(len(lam))) for row in mat)


def multiply(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    return element_from_word(rs, a.word + b.word)


def inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    return element_from_word(rs, tuple(reversed(w.word)))


def lookup(rs: RootSystem, w: WeylElement) -> WeylElement:
    """Canonical (enumerated) representative with the same matrix."""
    for e in weyl_enumerate(rs):
        if e.matrix == w.matrix:
            return e
    raise KeyError("element not found")


def inversion_set(w: WeylElement, rs: RootSystem) -> frozenset:
    """Phi(w) = {alpha > 0 : w alpha < 0}."""
    return frozenset(a for a in rs.pos_roots if not is_nonnegative(w.act(a)))


def dot_action(w: WeylElement, lam: Sequence[int], tp: TwistParams, rs: RootSystem) -> Weight:
    """w . lam = w(lam - theta) + theta, applied generator by generator.

    The word is applied right to left, so that (w1 w2) . lam = w1 . (w2 . lam).
    """
    out = tuple(lam)
    for j in reversed(w.word):
        out = dot_reflect(out, j, tp, rs)
    return out


def long_element(rs: RootSystem) -> WeylElement:
    return weyl_enumerate(rs)[-1]
