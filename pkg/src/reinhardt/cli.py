"""Command-line interface.

Exit codes: 0 success, 1 runtime failure (budget exhausted, cache damage,
self-check mismatch), 2 usage error (bad flags, unparsable composition,
infeasible n).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import construct as cons
from .cache import CacheError
from .classify import E0_formula, classify
from .composition import (
    InvalidComposition,
    canonicalize,
    expand_runlength,
    format_composition,
    is_reinhardt,
    parse_composition,
)
from .decompose import decompose, has_trivial_decomposition
from .enumeration import DEFAULT_BUDGET as ENUM_BUDGET
from .enumeration import SearchBudgetExceeded, count_summary
from .geometry import realize
from .svg import LAYERS, SvgStyle, render_svg

DEFAULT_CACHE_DIR = ".reinhardt-cache"

# published sporadic counts for n = p*q*r: (n, r, E1(n), C(n))
TABLE1 = (
    (30, 2, 3, 3), (42, 2, 9, 9), (45, 3, 144, 144), (60, 4, 4392, 3492),
    (63, 3, 1308, 1308), (66, 2, 93, 93), (70, 2, 27, 27), (75, 5, 153660, 107400),
    (78, 2, 315, 315), (84, 4, 161028, 150444), (90, 6, 5385768, 3371568),
    (99, 3, 192324, 192324), (102, 2, 3855, 3855), (110, 2, 279, 279),
    (114, 2, 13797, 13797), (117, 3, 2587284, 2587284), (130, 2, 945, 945),
    (140, 4, 633528, 478548), (154, 2, 837, 837), (170, 2, 11565, 11565),
    (182, 2, 2835, 2835), (190, 2, 41391, 41391), (238, 2, 34695, 34695),
    (286, 2, 29295, 29295),
)


class CliError(Exception):
    """Runtime failure reported with exit code 1."""


class UsageError(Exception):
    """Bad input reported with exit code 2."""


# -- output ------------------------------------------------------------------


def _emit(out, fmt: str, record: dict, rows: list[dict] | None = None, columns: list[str] | None = None, text: str = ""):
    if fmt == "json":
        out.write(json.dumps(record, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            rows, columns = [record], list(record)
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(v) for k, v in row.items()})
        out.write(buf.getvalue())
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if isinstance(v, bool):
        return str(v).lower()
    return v


def _composition(text: str):
    try:
        return parse_composition(text)
    except InvalidComposition as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------


def cmd_enumerate(args, out):
    res = _count(args)
    polys = [{"parts": list(p), "kind": cl.kind, "periods": list(cl.periods)} for p, cl in res.polygons]
    record = {"n": res.n, "E": res.counts.E, "E0": res.counts.E0, "E1": res.counts.E1, "polygons": polys}
    lines = [f"n={res.n}  E={res.counts.E}  E0={res.counts.E0}  E1={res.counts.E1}"]
    for p in polys:
        extra = f" periods={','.join(map(str, p['periods']))}" if p["periods"] else ""
        lines.append(f"{format_composition(p['parts'])}  {p['kind']}{extra}")
    _emit(out, args.format, record, polys, ["parts", "kind", "periods"], "\n".join(lines))


def _count(args):
    cache_dir = None if args.no_cache else args.cache_dir
    try:
        return count_summary(args.n, cache_dir=cache_dir, threads=args.threads, budget=args.budget or ENUM_BUDGET)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_count(args, out):
    res = _count(args)
    formula = E0_formula(args.n)
    record = {"n": res.n, "E": res.counts.E, "E0": res.counts.E0, "E1": res.counts.E1, "E0_formula": formula}
    text = f"n={res.n}  E={res.counts.E}  E0={res.counts.E0}  E1={res.counts.E1}  E0_formula={formula}"
    _emit(out, args.format, record, text=text)
    if formula != res.counts.E0:
        raise CliError(f"periodic count {res.counts.E0} disagrees with formula value {formula}")


def cmd_classify(args, out):
    c = _composition(args.composition)
    ok = is_reinhardt(c)
    record = {"composition": list(c.parts), "n": c.n, "reinhardt": ok, "canonical": list(canonicalize(c).parts)}
    if ok:
        cl = classify(c)
        record.update(kind=cl.kind, periods=list(cl.periods))
        text = f"{c}  n={c.n}  Reinhardt, {cl.kind}"
        if cl.periods:
            text += f" (periods {', '.join(map(str, cl.periods))})"
    else:
        record.update(kind=None, periods=[])
        text = f"{c}  n={c.n}  not Reinhardt"
    text += f"\ncanonical form {format_composition(record['canonical'])}"
    _emit(out, args.format, record, text=text)


def cmd_construct(args, out):
    given = [args.p, args.q, args.r]
    if any(v is not None for v in given) and not all(v is not None for v in given):
        raise UsageError("--p, --q and --r must be given together")
    grids = None if args.all_factorizations or args.p is None else [tuple(given)]
    policy = cons.MUST_CONTAIN_ZERO if args.require_zero_in_s else cons.ALL_NONTRIVIAL
    try:
        res = cons.construct_sporadic(
            args.n, grids=grids, s_policy=policy, threads=args.threads, budget=args.budget or cons.DEFAULT_BUDGET
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comps = [list(c) for c in res.compositions]
    record = {
        "n": res.n,
        "C": res.C,
        "s_policy": policy,
        "grids": [
            {"p": g.p, "q": g.q, "r": g.r, "raw": g.raw_count, "periodic": g.periodic, "classes": len(g.classes)}
            for g in res.grids
        ],
        "compositions": comps,
    }
    lines = [f"n={res.n}  C={res.C}  ({policy})"]
    for g in record["grids"]:
        lines.append(f"  p={g['p']} q={g['q']} r={g['r']}: {g['raw']} built, {g['periodic']} periodic, {g['classes']} sporadic classes")
    lines += [format_composition(c) for c in comps]
    rows = [{"parts": c} for c in comps]
    _emit(out, args.format, record, rows, ["parts"], "\n".join(lines))


def cmd_decompose(args, out):
    c = _composition(args.composition)
    if not is_reinhardt(c):
        raise UsageError(f"{c} is not a Reinhardt composition")
    try:
        d = decompose(c, args.p, args.q)
        sides = has_trivial_decomposition(c, args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f1 = [d.f1[i] for i in range(args.q)]
    f2 = [d.f2[i] for i in range(args.p)]
    record = {"p": args.p, "q": args.q, "f1": f1, "f2": f2, "trivial": d.trivial, "p_side": sides.p_side, "q_side": sides.q_side}
    text = (
        f"f1 = {d.f1!r}\nf2 = {d.f2!r}\ntrivial: {d.trivial}\n"
        f"Phi_p(-z^q) divides F: {sides.p_side}\nPhi_q(-z^p) divides F: {sides.q_side}"
    )
    _emit(out, args.format, record, text=text)


def cmd_render(args, out):
    c = _composition(args.composition)
    layers = tuple(x.strip() for x in args.layers.split(",") if x.strip())
    try:
        style = SvgStyle(size=args.size, layers=layers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rz = realize(c)
    svg = render_svg(rz, style)
    Path(args.output).write_text(svg, encoding="utf-8")
    record = {"composition": list(c.parts), "output": str(args.output), "closure_residual": float(f"{rz.closure_residual:.3g}")}
    _emit(out, args.format, record, text=f"wrote {args.output}  closure residual {rz.closure_residual:.3g}")


def cmd_tables(args, out):
    budget = args.budget or cons.DEFAULT_BUDGET
    rows = []
    for n, r, e1, c_pub in TABLE1:
        grids = cons.factorizations(n)
        grids = [g for g in grids if g[2] == r]
        row = {"n": n, "r": r, "E1_published": e1, "C_published": c_pub, "C": None, "match": None, "status": "ok"}
        need = sum(len(cons.subsets(g[0])) << (g[1] * (g[2] - 1) - 1) for g in grids)
        if need > budget:
            row["status"] = f"skipped: needs {need} > budget {budget}"
        else:
            res = cons.construct_sporadic(n, grids=grids, threads=args.threads, budget=budget)
            row.update(C=res.C, match=res.C == c_pub)
        rows.append(row)
        if args.format == "text":
            shown = row["C"] if row["C"] is not None else "-"
            flag = "" if row["match"] is None else ("  ok" if row["match"] else "  MISMATCH")
            out.write(f"n={n:<4d} r={r}  C={shown!s:>8}  published={c_pub:>8}{flag}  {'' if row['status'] == 'ok' else row['status']}".rstrip() + "\n")
            out.flush()
    columns = ["n", "r", "E1_published", "C_published", "C", "match", "status"]
    if args.format != "text":
        _emit(out, args.format, {"table": 1, "rows": rows}, rows, columns)
    if any(row["match"] is False for row in rows):
        raise CliError("computed C(n) differs from the published value")


def cmd_expand(args, out):
    try:
        parts = expand_runlength(args.text)
    except InvalidComposition as exc:
        raise UsageError(str(exc)) from None
    _emit(out, args.format, {"parts": list(parts), "n": sum(parts)}, text=format_composition(parts))


# -- parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument(
        "--cache-dir",
        default=os.environ.get("REINHARDT_CACHE_DIR", DEFAULT_CACHE_DIR),
        help="enumeration cache directory (env REINHARDT_CACHE_DIR)",
    )
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--budget", type=_positive, help="work limit before giving up")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)

    parser = argparse.ArgumentParser(prog="reinhardt", description="Reinhardt polygon toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list every Reinhardt n-gon")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="E, E0, E1 with the closed-form periodic count")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="Reinhardt test and periodic/sporadic class")
    p.add_argument("composition")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="sporadic polygons built from n = p*q*r")
    p.add_argument("n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--all-factorizations", action="store_true", help="use every (p, q, r) even if one is given")
    p.add_argument("--require-zero-in-s", action="store_true", help="only subsets S containing 0")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", parents=[common], help="split F over the two generators for n = p*q")
    p.add_argument("composition")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("render", parents=[common], help="write an SVG drawing")
    p.add_argument("composition")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--layers", default="polygon", help=f"comma list from {','.join(LAYERS)}")
    p.add_argument("--size", type=_positive, default=480)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("tables", parents=[common], help="recompute a published table")
    p.add_argument("--table", type=int, choices=(1,), required=True)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("expand", parents=[common], help="expand run-length composition notation")
    p.add_argument("text")
    p.set_defaults(func=cmd_expand)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"reinhardt: error: {exc}\n")
        return 2
    except SearchBudgetExceeded as exc:
        err.write(f"reinhardt: budget exhausted: {exc}\n")
        return 1
    except CacheError as exc:
        err.write(f"reinhardt: cache error: {exc}\n")
        return 1
    except CliError as exc:
        err.write(f"reinhardt: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
