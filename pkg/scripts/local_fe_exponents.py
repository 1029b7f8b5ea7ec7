"""Compare the stated and the shifted exponent in the one-variable functional equation.

For each (type, n, l) prints how many (i, k) tuples pass under each exponent and
whether the failures of the stated form are exactly the tuples with a nonzero
off-axis shift s = -sum_{j != i} k_j c(j, i).
"""

import argparse
import itertools
from dataclasses import dataclass

from wmds.cg_action import ActionParams
from wmds.local_series import h_table, off_axis_shift, sweep_local_fe, verify_local_fe
from wmds.rootsys import build_root_system


@dataclass
class FEConfig:
    types: tuple = ("A2", "B2")
    ns: tuple = (2, 3)
    max_l: int = 2
    variant: str = "twisted"


def main(cfg: FEConfig) -> None:
    print(f"{'type':5s} {'n':>2s} {'l':8s} {'stated':>8s} {'shifted':>8s} {'zero':>5s}  fails iff s != 0")
    for code in cfg.types:
        for n in cfg.ns:
            rs = build_root_system(code, n=n)
            for ell in itertools.product(range(cfg.max_l + 1), repeat=rs.rank):
                p = ActionParams.make(rs, ell)
                st = sweep_local_fe(p, variant=cfg.variant, exponent="stated")
                sh = sweep_local_fe(p, variant=cfg.variant, exponent="shifted")
                tab = h_table(p)
                agree = True
                for i in range(rs.rank):
                    for k in itertools.product(range(2 * rs.simple_m(i)), repeat=rs.rank):
                        r = verify_local_fe(tab, k, i, p, cfg.variant, "stated")["status"]
                        if r != "zero" and (r == "fail") != (off_axis_shift(k, i, rs) != 0):
                            agree = False
                total = st["checked"] + len(st["failures"])
                print(f"{code:5s} {n:2d} {str(ell):8s} {st['checked']:4d}/{total:<3d} {sh['checked']:4d}/{total:<3d} {st['zero']:5d}  {agree}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--types", default="A2,B2")
    ap.add_argument("--ns", default="2,3")
    ap.add_argument("--max-l", type=int, default=2)
    ap.add_argument("--variant", choices=("twisted", "root"), default="twisted")
    a = ap.parse_args()
    main(FEConfig(tuple(a.types.split(",")), tuple(int(x) for x in a.ns.split(",")), a.max_l, a.variant))
