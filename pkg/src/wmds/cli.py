"""Command-line front end: compute-n, verify, zseries."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass

from . import __version__
from .averaging import (
    average_h,
    axis_closed_form,
    axis_specialization,
    regularity_report,
    sum_j_equals_delta,
    verify_cocycle,
)
from .cg_action import ActionParams, verify_relations
from .global_ff import (
    FFContext,
    assemble_Z,
    parse_poly,
    self_similarity_probe,
    verify_gauss,
    verify_multiplicativity,
)
from .local_series import sweep_local_fe
from .rootsys import build_root_system, parse_code
from .scalars import numeric_gamma_context, scalar_to_json

SUITES = (
    "relations",
    "invariance",
    "polynomiality",
    "axis",
    "local-fe",
    "cocycle",
    "sumj",
    "gauss",
    "multiplicativity",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    type: str = "A2"
    n: int = 1
    ell: tuple | None = None
    mode: str = "symbolic"
    q: int | None = None
    seed: int = 0
    samples: int = 20
    maxdeg: int = 4
    twist: str | None = None
    suites: tuple = ()
    fe_exponent: str = "shifted"
    fmt: str = "json"
    out: str | None = None

    def ell_for(self, rank: int) -> tuple:
        ell = (0,) * rank if self.ell is None else self.ell
        if len(ell) != rank:
            raise SystemExit(f"error: --ell needs {rank} entries for type {self.type}")
        return ell


def _parse_ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _root_system(cfg: RunConfig):
    try:
        parse_code(cfg.type)
        return build_root_system(cfg.type, n=cfg.n)
    except ValueError as err:
        raise SystemExit(f"error: {err}") from err


def write_atomic(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _meta(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d.pop("out")
    d["ell"] = None if cfg.ell is None else list(cfg.ell)
    d["suites"] = list(cfg.suites)
    d["tool"] = f"wmds {__version__}"
    return d


# ----------------------------------------------------------------------------
# compute-n


def cmd_compute_n(cfg: RunConfig) -> int:
    rs = _root_system(cfg)
    ell = cfg.ell_for(rs.rank)
    try:
        res = average_h(ActionParams.make(rs, ell), check_invariance=False)
    except ValueError as err:
        raise SystemExit(f"error: {err}") from err
    terms = []
    if cfg.mode == "numeric":
        if cfg.q is None:
            raise SystemExit("error: numeric mode needs --q")
        try:
            ctx = numeric_gamma_context(cfg.q, cfg.n)
        except ValueError as err:
            raise SystemExit(f"error: {err}") from err
        for k in sorted(res.N.terms, key=lambda k: (sum(k), k)):
            terms.append({"exponent": list(k), "scalar": scalar_to_json(ctx.evaluate(res.N.terms[k]))})
    else:
        terms = res.N.to_json()
        for t, k in zip(terms, sorted(res.N.terms, key=lambda k: (sum(k), k))):
            t["text"] = str(res.N.terms[k])
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for t in terms:
            sc = t["scalar"]
            txt = t.get("text") or f"{sc['re']:.12g}{sc['im']:+.12g}j"
            w.writerow([" ".join(map(str, t["exponent"])), txt])
        write_atomic(cfg.out, buf.getvalue())
    else:
        write_atomic(cfg.out, dump_json({"params": _meta(cfg), "terms": terms}))
    return 0


# ----------------------------------------------------------------------------
# verify


def _suite(cfg: RunConfig, name: str) -> dict:
    if name == "gauss":
        return verify_gauss(FFContext(cfg.q or 5, cfg.n), max(cfg.samples, 50), cfg.seed)
    if name == "multiplicativity":
        rs = _root_system(cfg)
        return verify_multiplicativity(FFContext(cfg.q or 5, cfg.n), rs, seed=cfg.seed)
    rs = _root_system(cfg)
    params = ActionParams.make(rs, cfg.ell_for(rs.rank))
    if name == "relations":
        return verify_relations(params, cfg.samples, cfg.seed)
    if name == "cocycle":
        return verify_cocycle(rs)
    if name == "sumj":
        return sum_j_equals_delta(rs)
    if name == "local-fe":
        return sweep_local_fe(params, exponent=cfg.fe_exponent)
    res = average_h(params, check_invariance=name == "invariance")
    if name == "invariance":
        inv = {str(i): ok for i, ok in res.certificates["invariance"].items()}
        return {"generators": inv, "status": "pass" if all(inv.values()) else "fail"}
    if name == "polynomiality":
        c = res.certificates
        reg = regularity_report(res)
        ok = c["polynomial"] and c["constant_term_one"] and not reg["irregular"]
        return {
            "constant_term_one": c["constant_term_one"],
            "polynomial": c["polynomial"],
            "divided_by_delta": c["divided_by_delta"],
            "regularity": reg,
            "status": "pass" if ok else "fail",
        }
    if name == "axis":
        out = {}
        for i in range(rs.rank):
            got = axis_specialization(res, i)
            out[str(i)] = {
                "m": rs.simple_m(i),
                "equal": got.equals(axis_closed_form(params, i)),
                "numerator": str(got.numer),
            }
        return {"roots": out, "status": "pass" if all(v["equal"] for v in out.values()) else "fail"}
    raise SystemExit(f"error: unknown suite {name!r}")


def cmd_verify(cfg: RunConfig) -> int:
    reports = {}
    ok = True
    for name in cfg.suites:
        try:
            rep = _suite(cfg, name)
        except AssertionError as err:  # theorem violations are data here
            rep = {"status": "fail", "error": str(err)}
        reports[name] = rep
        ok = ok and rep.get("status") == "pass"
    write_atomic(cfg.out, dump_json({"params": _meta(cfg), "reports": reports, "status": "pass" if ok else "fail"}))
    return 0 if ok else 1


# ----------------------------------------------------------------------------
# zseries


def cmd_zseries(cfg: RunConfig, probe: bool = False) -> int:
    rs = _root_system(cfg)
    if cfg.q is None:
        raise SystemExit("error: zseries needs --q")
    try:
        ctx = FFContext(cfg.q, cfg.n)
    except ValueError as err:
        raise SystemExit(f"error: {err}") from err
    twist_text = cfg.twist or ",".join(["1"] * rs.rank)
    twist = tuple(parse_poly(t, cfg.q) for t in twist_text.split(","))
    if len(twist) != rs.rank or any(not t or t[-1] != 1 for t in twist):
        raise SystemExit(f"error: --twist needs {rs.rank} monic polynomials")
    try:
        z = assemble_Z(twist, cfg.maxdeg, ctx, rs)
    except ValueError as err:
        raise SystemExit(f"error: {err}") from err
    data = z.to_json()
    data["params"]["seed"] = cfg.seed
    if probe:
        data["advisory"] = self_similarity_probe(ctx, rs, cfg.maxdeg)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["deg", "re", "im"])
        for row in data["coeffs"]:
            w.writerow([" ".join(map(str, row["deg"])), repr(row["re"]), repr(row["im"])])
        write_atomic(cfg.out, buf.getvalue())
    else:
        write_atomic(cfg.out, dump_json(data))
    return 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wmds", description="p-parts of Weyl group multiple Dirichlet series")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, q_required=False):
        p.add_argument("--type", default="A2", help="root system code, e.g. A2, B3, G2, A1xA1")
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--ell", type=_parse_ints, default=None, help="twisting parameter, e.g. 1,0")
        p.add_argument("--q", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)

    p = sub.add_parser("compute-n", help="write the coefficient table of N(x; l)")
    common(p)
    p.add_argument("--mode", choices=("symbolic", "numeric"), default="symbolic")

    p = sub.add_parser("verify", help="run verification suites; exit 0 iff all pass")
    common(p)
    p.add_argument("--suite", action="append", required=True, help=f"one of {', '.join(SUITES)} (repeatable)")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--fe-exponent", choices=("stated", "shifted"), default="shifted")

    p = sub.add_parser("zseries", help="degree-truncated coefficients of Z over F_q(t)")
    common(p)
    p.add_argument("--twist", default=None, help='comma-separated monic polynomials, e.g. "1,t+1"')
    p.add_argument("--maxdeg", type=int, default=4)
    p.add_argument("--probe", action="store_true", help="add the advisory self-similarity probe")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    suites = ()
    if args.command == "verify":
        names = [s for item in args.suite for s in item.split(",")]
        bad = [s for s in names if s not in SUITES]
        if bad:
            raise SystemExit(f"error: unknown suite(s) {bad}; choose from {', '.join(SUITES)}")
        suites = tuple(names)
    cfg = RunConfig(
        command=args.command,
        type=args.type,
        n=args.n,
        ell=args.ell,
        mode=getattr(args, "mode", "symbolic"),
        q=args.q,
        seed=args.seed,
        samples=getattr(args, "samples", 20),
        maxdeg=getattr(args, "maxdeg", 4),
        twist=getattr(args, "twist", None),
        suites=suites,
        fe_exponent=getattr(args, "fe_exponent", "shifted"),
        fmt=args.fmt,
        out=args.out,
    )
    if cfg.command == "compute-n":
        return cmd_compute_n(cfg)
    if cfg.command == "verify":
        return cmd_verify(cfg)
    return cmd_zseries(cfg, probe=args.probe)


if __name__ == "__main__":
    sys.exit(main())
