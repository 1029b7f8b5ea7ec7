"""n = 1: compare N(x; l) at q = 1 with Weyl characters.

Reports N(1,..,1) at q = 1 (always 0, since D vanishes there), the dimension of
V_theta with theta = sum (l_i + 1) omega_i, and whether N / D equals the character
of highest weight sum l_i omega_i read in x_i = e^{-alpha_i}.
"""

import argparse
import itertools

from wmds.averaging import average_h, specialize_q1, weyl_character, weyl_character_oracle, weyl_dimension
from wmds.cg_action import ActionParams
from wmds.laurent import LaurentPoly
from wmds.rootsys import build_root_system
from wmds.scalars import SymbolicRing


def q1(f, rank):
    r = SymbolicRing(1)
    return LaurentPoly(r, rank, {k: r.const(v) for k, v in specialize_q1(f).items()})


def check(code: str, ell: tuple) -> dict:
    rs = build_root_system(code, n=1)
    res = average_h(ActionParams.make(rs, ell), check_invariance=False)
    char = weyl_character(rs, ell)
    flipped = LaurentPoly(char.ring, rs.rank, {tuple(-x for x in k): c for k, c in char.terms.items()})
    return {
        "N(1)": sum(specialize_q1(res.N).values()),
        "dim V_theta": weyl_character_oracle(ell, rs)[1],
        "dim V_l": weyl_dimension(rs, ell),
        "h = char_l": q1(res.N, rs.rank) == q1(res.dpoly, rs.rank) * flipped,
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--types", default="A1,A2,B2,G2,A3")
    ap.add_argument("--max-l", type=int, default=1)
    a = ap.parse_args()
    for code in a.types.split(","):
        rank = build_root_system(code).rank
        for ell in itertools.product(range(a.max_l + 1), repeat=rank):
            print(code, ell, check(code, ell))
