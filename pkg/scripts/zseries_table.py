"""Print |coefficients| of the degree-truncated Z over F_q(t), optionally with the
advisory comparison against the local p-part."""

import argparse

from wmds.global_ff import FFContext, assemble_Z, parse_poly, self_similarity_probe
from wmds.rootsys import build_root_system

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", default="A2")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--twist", default=None)
    ap.add_argument("--maxdeg", type=int, default=3)
    ap.add_argument("--probe", action="store_true")
    a = ap.parse_args()
    rs = build_root_system(a.type, n=a.n)
    ctx = FFContext(a.q, a.n)
    twist = [parse_poly(t, a.q) for t in (a.twist or ",".join(["1"] * rs.rank)).split(",")]
    z = assemble_Z(twist, a.maxdeg, ctx, rs)
    for d, v in sorted(z.coeffs.items()):
        print(d, f"{abs(v):.6f}", f"{v.real:+.6f}{v.imag:+.6f}i")
    if a.probe:
        rep = self_similarity_probe(ctx, rs, a.maxdeg)
        print("probe best shift", rep["best"], "match" if rep["match"] else "no match")
