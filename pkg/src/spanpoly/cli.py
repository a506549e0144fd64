"""Command-line driver: compose, check, burnside, eval, validate.

All output is deterministic for fixed inputs and seeds; JSON output uses
sorted keys.  Exit status: 0 success / all checks passed, 1 a check suite
failed, 2 bad input.  Malformed inputs produce a structured error object,
never a bare traceback.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .errors import SpanPolyError
from .finact import terminal_gset
from .mackey import (
    BurnsideMackey,
    FixedPointMackey,
    burnside_table,
    burnside_table_bruteforce,
    eval_span,
)
from .poly import compose_poly
from .report import Report
from .semirings import builtin_semiring
from .spans import compose_spans, span_canonical_form
from .suites import SUITES, run_suite
from .tambara import BurnsideTambara, SemiringTambara, eval_poly
from .util_linear import mat_apply
from .workspace import (
    Workspace,
    builtin_workspace,
    dump_json,
    load_dir,
    poly_to_obj,
    span_to_obj,
)


def _workspace(args) -> Workspace:
    if getattr(args, "workspace", None):
        return load_dir(args.workspace)
    return builtin_workspace()


def _emit(args, text_rendering: str, obj: dict) -> None:
    if args.format == "json":
        sys.stdout.write(dump_json(obj))
    else:
        sys.stdout.write(text_rendering + "\n")


def _emit_report(args, rep: Report) -> int:
    _emit(args, rep.render_text(), rep.to_dict())
    return 0 if rep.passed else 1


def cmd_validate(args) -> int:
    ws = _workspace(args)
    for x in ws.gsets.values():
        x.validate()
    for f in ws.gmaps.values():
        f.validate()
    counts = {k: len(getattr(ws, k)) for k in
              ("groups", "gsets", "gmaps", "spans", "polys", "classes")}
    _emit(args, "workspace ok: " +
          ", ".join(f"{v} {k}" for k, v in sorted(counts.items())),
          {"ok": True, "counts": counts})
    return 0


def cmd_compose(args) -> int:
    ws = _workspace(args)
    if args.kind == "span":
        p, q = ws.span(args.lhs), ws.span(args.rhs)
        out = compose_spans(p, q)
        obj = span_to_obj(out)
        obj["canonical_form"] = span_canonical_form(out)
        text = (f"composed span: {out.src.size} <- {out.apex.size} -> {out.tgt.size}\n"
                f"canonical form: {obj['canonical_form']}")
    else:
        p, q = ws.poly(args.lhs), ws.poly(args.rhs)
        out, transcript = compose_poly(p, q)
        obj = poly_to_obj(out)
        obj["transcript"] = transcript
        text = (f"composed polynomial: {out.src.size} <- {out.r.dom.size} "
                f"-> {out.n.cod.size} -> {out.tgt.size}\n"
                + "\n".join(f"  {s['rule']} @ {s['pos']}: {' '.join(s['after'])}"
                            for s in transcript))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(obj))
    _emit(args, text, obj)
    return 0


def cmd_check(args) -> int:
    ws = _workspace(args)
    group = ws.group(args.group)
    rclass = None
    if args.morphism_class:
        rclass = ws.morphism_class(args.morphism_class)
    if args.suite == "all":
        from .report import merge_reports
        reps = [run_suite(name, group, args.seed, args.max_size, rclass)
                for name in sorted(SUITES)]
        return _emit_report(args, merge_reports("all-suites", reps))
    return _emit_report(args, run_suite(args.suite, group, args.seed,
                                        args.max_size, rclass))


def cmd_burnside(args) -> int:
    group = _workspace(args).group(args.group)
    table = burnside_table(group)
    if args.cross_check:
        other = burnside_table_bruteforce(group)
        if table.entries != other.entries:
            raise SpanPolyError("burnside table routes disagree")
    _emit(args, table.render_text(), table.to_dict())
    return 0


def cmd_eval(args) -> int:
    ws = _workspace(args)
    group = ws.group(args.group)
    if args.functor != "tambara-burnside":
        if args.input is None:
            raise SpanPolyError("this functor needs --input with a JSON value vector")
        value = json.loads(args.input)
    if args.functor == "burnside":
        m = BurnsideMackey(group)
    elif args.functor == "fixed-point":
        coords = ws.gset(args.module) if args.module else terminal_gset(group)
        m = FixedPointMackey(group, coords)
    elif args.functor in ("semiring:naturals", "semiring:booleans"):
        sr = builtin_semiring(args.functor.split(":", 1)[1])
        t = SemiringTambara(sr)
        p = ws.poly(args.poly)
        out = eval_poly(t, p, tuple(value))
        _emit(args, f"value: {list(out)}", {"value": list(out)})
        return 0
    elif args.functor == "tambara-burnside":
        if not args.poly or not args.slice_input:
            raise SpanPolyError(
                "tambara-burnside evaluation needs --poly and --slice-input <gmap name>")
        t = BurnsideTambara(group)
        p = ws.poly(args.poly)
        probe = ws.gmap(args.slice_input)
        if probe.cod != p.src:
            raise SpanPolyError("slice input must map into the polynomial's source")
        from .finact import SliceObject as _Slice, slice_canonical_form
        from .mackey import canonical_slice
        out = eval_poly(t, p, canonical_slice(_Slice(probe)))
        form = slice_canonical_form(out)
        _emit(args, f"value class: {form}",
              {"value_class": form, "total_size": out.size})
        return 0
    else:
        raise SpanPolyError(f"unknown functor {args.functor!r}")
    if not args.span:
        raise SpanPolyError("mackey evaluation needs --span")
    p = ws.span(args.span)
    mat = eval_span(m, p)
    vec = mat_apply(mat, tuple(value))
    gens = m.value_gens(p.tgt)
    _emit(args, f"value: {list(vec)} over generators {list(map(str, gens))}",
          {"value": list(vec), "generators": [str(g) for g in gens]})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spanpoly",
        description="spans, polynomials, and functor evaluation over finite group actions")
    ap.add_argument("--version", action="version", version=f"spanpoly {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--workspace", help="directory of JSON definition files")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="load and validate a workspace")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("compose", help="compose two named spans or polynomials")
    common(p)
    p.add_argument("--kind", choices=("span", "poly"), required=True)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--out", help="write the composite (and transcript) to a JSON file")
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("check", help="run a law-check suite")
    common(p)
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--group", default="C2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--class", dest="morphism_class", default=None,
                   help="extra morphism class to certify (builtin or workspace name)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("burnside", help="multiplication table of the Burnside ring")
    common(p)
    p.add_argument("--group", default="C2")
    p.add_argument("--cross-check", action="store_true",
                   help="recompute by raw orbit counting and compare")
    p.set_defaults(fn=cmd_burnside)

    p = sub.add_parser("eval", help="evaluate a functor on a span or polynomial")
    common(p)
    p.add_argument("--functor", required=True,
                   help="burnside | fixed-point | semiring:naturals | semiring:booleans")
    p.add_argument("--group", default="C2")
    p.add_argument("--span", help="span name (mackey functors)")
    p.add_argument("--poly", help="polynomial name (semiring functors)")
    p.add_argument("--module", help="coordinate G-set name for fixed-point")
    p.add_argument("--input", help="JSON value vector")
    p.add_argument("--slice-input", dest="slice_input",
                   help="gmap name whose slice class is the probe (tambara-burnside)")
    p.set_defaults(fn=cmd_eval)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SpanPolyError as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if getattr(args, "format", "text") == "json":
            sys.stdout.write(dump_json(err))
        else:
            sys.stdout.write(f"error [{type(exc).__name__}]: {exc}\n")
        return 2
    except json.JSONDecodeError as exc:
        err = {"error": {"type": "JSONDecodeError", "message": str(exc)}}
        if getattr(args, "format", "text") == "json":
            sys.stdout.write(dump_json(err))
        else:
            sys.stdout.write(f"error [JSONDecodeError]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
