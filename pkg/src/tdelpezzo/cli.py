"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import markov, qgdeform, quotsing, toric
from .corpus import CorpusConfig, generate_corpus, verify_corpus
from .errors import BoundViolation, TDPError

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _dump(obj, out):
    out.write(json.dumps(obj))
    out.write("\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_resolve(args, out):
    g = quotsing.normalize(args.r, args.a)
    _dump(
        {
            "r": g.r,
            "a": g.a,
            "chain": quotsing.hj_expansion(g),
            "gorenstein_index": quotsing.gorenstein_index(g),
            "du_val": g.is_du_val,
        },
        out,
    )
    return EXIT_OK


def cmd_tclass(args, out):
    g = quotsing.normalize(args.r, args.a)
    w = quotsing.t_data(g)
    if w is None:
        _dump({"t": False, "d": None, "n": None, "aprime": None, "milnor": None}, out)
    else:
        c = quotsing.SingularityClass.from_germ(g)
        _dump({"t": True, "d": w.d, "n": w.n, "aprime": w.aprime, "milnor": c.milnor}, out)
    return EXIT_OK


def _surface_text(surf: toric.ToricSurface) -> str:
    sings = ", ".join(str(c) for c in surf.singularities) or "none"
    defect = surf.noether_defect
    lines = [
        "rays:        " + " ".join(f"({v.x},{v.y})" for v in surf.fan.rays),
        f"singular:    {sings}",
        f"rho:         {surf.rho}",
        f"K^2:         {surf.k2}",
        f"del Pezzo:   {'yes' if surf.del_pezzo else 'no'}",
        f"s:           {surf.s}",
        f"Noether:     {'n/a (non-T point)' if defect is None else defect}",
    ]
    return "\n".join(lines) + "\n"


def cmd_fan(args, out):
    surf = toric.ToricSurface(toric.parse_rays(args.rays))
    if args.json:
        _dump(surf.report(), out)
    else:
        out.write(_surface_text(surf))
    return EXIT_OK


def cmd_wps(args, out):
    surf = toric.ToricSurface(toric.wps_fan(args.w0, args.w1, args.w2))
    if args.json:
        rep = surf.report()
        rep["weights"] = [args.w0, args.w1, args.w2]
        _dump(rep, out)
    else:
        out.write(f"weights:     ({args.w0},{args.w1},{args.w2})\n")
        out.write(_surface_text(surf))
    return EXIT_OK


def cmd_markov(args, out):
    eq = markov.MarkovEquation(args.k, args.m)
    rows = []
    for t in markov.enumerate_solutions(eq, args.bound):
        try:
            weights = list(markov.triple_to_weights(eq, t))
        except TDPError:
            weights = None
        rows.append({"a": t.a, "b": t.b, "c": t.c, "weights": weights})
    if args.json:
        _dump(rows, out)
    else:
        for row in rows:
            out.write(f"{row['a']} {row['b']} {row['c']}  weights={row['weights']}\n")
    return EXIT_OK


def _load_record(path: str) -> qgdeform.SurfaceRecord:
    if path == "-":
        return qgdeform.SurfaceRecord.from_json(json.load(sys.stdin))
    with open(path) as fh:
        return qgdeform.SurfaceRecord.from_json(json.load(fh))


def cmd_deform(args, out):
    rec = _load_record(args.record)
    before = rec.noether_defect
    new = qgdeform.deform(rec, qgdeform.DeformationStep(args.point, tuple(args.partition), args.case))
    _dump(new.to_json(), out)
    if before is not None and new.noether_defect != before:
        print("Noether defect changed under deformation", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_example7(args, out):
    if len(args.triple) != 3:
        raise UsageError("--triple needs three integers a,b,c")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = qgdeform.markov_family_example(tuple(args.triple))
    records = []
    status = EXIT_OK
    for rec in res.records:
        row = rec.to_json()
        try:
            row["bound"] = qgdeform.bound_report(rec)
        except BoundViolation:
            status = EXIT_VIOLATION
            row["bound"] = qgdeform.bound_report(rec, strict=False)
        if rec.noether_defect != 0:
            status = EXIT_VIOLATION
        records.append(row)
    payload = {
        "triple": list(res.triple),
        "alpha": res.alpha,
        "third_point": res.third_point.to_json(),
        "base": res.base.to_json(),
        "records": records,
        "warning": res.warning,
    }
    if res.warning:
        print(f"warning: {res.warning}", file=sys.stderr)
    _dump(payload, out)
    return status


def cmd_corpus(args, out):
    cfg = CorpusConfig(
        max_rays=args.max_rays,
        coord_bound=args.coord_bound,
        require_del_pezzo=not args.any_fan,
        require_all_T=not args.any_singularities,
        deformation_depth=args.depth,
    )
    if args.verify:
        report = verify_corpus(cfg)
        _dump(report.to_json(), out)
        return EXIT_OK if report.failed == 0 else EXIT_VIOLATION
    for rec in generate_corpus(cfg):
        _dump(rec.to_json(), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tdp", description="del Pezzo surfaces with T-singularities")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("resolve", help="Hirzebruch-Jung chain of 1/R(1,A)")
    s.add_argument("r", type=int)
    s.add_argument("a", type=int)
    s.add_argument("--json", action="store_true", help="accepted; output is always JSON")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("tclass", help="T-singularity test for 1/R(1,A)")
    s.add_argument("r", type=int)
    s.add_argument("a", type=int)
    s.add_argument("--json", action="store_true", help="accepted; output is always JSON")
    s.set_defaults(func=cmd_tclass)

    s = sub.add_parser("fan", help="invariants of the toric surface of a fan")
    s.add_argument("--rays", required=True, help='"x,y;x,y;..."')
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fan)

    s = sub.add_parser("wps", help="weighted projective plane P(W0,W1,W2)")
    s.add_argument("w0", type=int)
    s.add_argument("w1", type=int)
    s.add_argument("w2", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_wps)

    s = sub.add_parser("markov", help="Markov-type equations")
    msub = s.add_subparsers(dest="action", parser_class=_Parser)
    msub.required = True
    e = msub.add_parser("enumerate", help="solutions up to a bound")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--bound", type=int, required=True)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_markov)

    s = sub.add_parser("deform", help="deform one singular point of a record")
    s.add_argument("--record", required=True, help="record JSON file, or - for stdin")
    s.add_argument("--point", type=int, required=True)
    s.add_argument("--partition", type=_int_list, required=True)
    s.add_argument("--case", choices=["A", "B"], required=True)
    s.add_argument("--json", action="store_true", help="accepted; output is always JSON")
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("example7", help="the four deformations of P(a^2,b^2,5c^2)")
    s.add_argument("--triple", type=_int_list, required=True)
    s.add_argument("--json", action="store_true", help="accepted; output is always JSON")
    s.set_defaults(func=cmd_example7)

    s = sub.add_parser("corpus", help="generate or verify the fan corpus")
    s.add_argument("--max-rays", type=int, default=6)
    s.add_argument("--coord-bound", type=int, default=8)
    s.add_argument("--depth", type=int, default=0, choices=[0, 1, 2])
    s.add_argument("--verify", action="store_true")
    s.add_argument("--any-fan", action="store_true", help="drop the del Pezzo filter (slow)")
    s.add_argument("--any-singularities", action="store_true", help="drop the all-T filter")
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except BoundViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (TDPError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
