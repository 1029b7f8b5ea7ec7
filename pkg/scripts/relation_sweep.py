"""Sweep the Coxeter relations for the twisted action over types, degrees and twists.

    python3 scripts/relation_sweep.py --types A2,B2,G2 --ns 1,2,3 --out relations.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from wmds.cg_action import ActionParams, verify_relations
from wmds.cli import write_atomic
from wmds.rootsys import build_root_system


@dataclass
class SweepConfig:
    types: tuple = ("A1xA1", "A2", "B2", "G2", "A3", "B3", "C3")
    ns: tuple = (1, 2, 3, 4, 6)
    samples: int = 20
    seed: int = 0


def twists(rank):
    return [(0,) * rank, ((1,) + (0,) * rank)[:rank], ((2, 1) + (0,) * rank)[:rank]]


def run(cfg: SweepConfig) -> dict:
    rows = []
    for code in cfg.types:
        for n in cfg.ns:
            rs = build_root_system(code, n=n)
            for ell in twists(rs.rank):
                t0 = time.perf_counter()
                rep = verify_relations(ActionParams.make(rs, ell), cfg.samples, cfg.seed)
                rows.append({"type": code, "n": n, "ell": list(ell), "status": rep["status"],
                             "relations": len(rep["relations"]), "seconds": round(time.perf_counter() - t0, 2)})
                print(f"{code:6s} n={n} l={ell}: {rep['status']} ({rows[-1]['seconds']}s)")
    return {"config": asdict(cfg), "rows": rows, "status": "pass" if all(r["status"] == "pass" for r in rows) else "fail"}


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--types", default=",".join(SweepConfig.types))
    ap.add_argument("--ns", default="1,2,3,4,6")
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    a = ap.parse_args()
    cfg = SweepConfig(tuple(a.types.split(",")), tuple(int(x) for x in a.ns.split(",")), a.samples, a.seed)
    result = run(cfg)
    # timings vary between runs, so this file is not byte-reproducible
    if a.out:
        write_atomic(a.out, json.dumps(result, sort_keys=True, indent=2) + "\n")
    print(result["status"])
