"""``polyext`` command line.

Exit codes: 0 success, 1 sound negative verdict, 2 bad input.
Input files may also be named ``@NAME`` to load a shipped fixture.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from importlib import resources
from typing import List, Optional

from . import serialize as ser
from .errors import PolyextError
from .extension import (check_condition3, cyclic_sides, eventual_core, gurarii_counterexample,
                        search_extendability)
from .partiso import validate
from .rational import format_rat
from .space import (DEFAULT_VERTEX_CAP, dual, isometry_group, isometry_order, l1_sum, linf_sum,
                    quotient_space, subspace_space)

OK, NEGATIVE, BAD_INPUT = 0, 1, 2

log = logging.getLogger("polyext")


class InputError(Exception):
    pass


def _read(name: str):
    if name.startswith("@"):
        ref = resources.files("polyext") / "fixtures" / f"{name[1:]}.json"
        if not ref.is_file():
            raise InputError(f"no shipped fixture named {name[1:]!r}")
        text = ref.read_text(encoding="utf-8")
    else:
        try:
            with open(name, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{name}: {exc.strerror}") from None
    try:
        return ser.load_json(text, name)
    except ser.FormatError as exc:
        raise InputError(str(exc)) from None


def _inputs(args, count: int) -> list:
    files = args.inputs or []
    if len(files) != count:
        raise InputError(f"expected {count} --in file(s), got {len(files)}")
    return [_read(f) for f in files]


def _parse(fn, obj, name):
    try:
        return fn(obj)
    except ser.FormatError as exc:
        raise InputError(f"{name}: {exc}") from None


class Output:
    def __init__(self, args):
        self.args = args
        self.lines: List[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def finish(self, payload: Optional[dict], file_payload: bool = False):
        """Print text, or JSON under ``--json``; ``--out`` always gets the JSON."""
        if payload is not None and self.args.out:
            with open(self.args.out, "w", encoding="utf-8") as fh:
                fh.write(ser.dumps(payload))
        if payload is not None and (self.args.json or file_payload) and not self.args.out:
            sys.stdout.write(ser.dumps(payload))
        elif not self.args.json and self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_space(args) -> int:
    out = Output(args)
    op = args.op
    if op == "dual":
        (obj,) = _inputs(args, 1)
        res = dual(_parse(ser.parse_space, obj, args.inputs[0]))
    elif op in ("l1sum", "linfsum"):
        objs = _inputs(args, 2)
        a, b = (_parse(ser.parse_space, o, n) for o, n in zip(objs, args.inputs))
        res = l1_sum(a, b) if op == "l1sum" else linf_sum(a, b)
    else:
        (obj,) = _inputs(args, 1)
        if not args.sub:
            raise InputError(f"space {op} needs --sub FILE")
        s = _parse(ser.parse_space, obj, args.inputs[0])
        sub = _parse(lambda o: ser.parse_subspace(o, ambient_dim=s.dim), _read(args.sub), args.sub)
        res = quotient_space(s, sub)[0] if op == "quotient" else subspace_space(s, sub)
    out.finish(ser.space_json(res), file_payload=True)
    return OK


def cmd_partiso(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    o = _parse(ser.parse_partiso, obj, args.inputs[0])
    v = validate(o)
    payload = {"kind": "validation", "valid": v.ok}
    if v.ok:
        out.text("valid partial isometry")
    else:
        payload["reason"] = v.reason
        out.text(f"invalid: {v.reason}")
        if v.witness is not None:
            payload["witness"] = ser.vec_json(v.witness)
            out.text("witness: (" + ", ".join(map(format_rat, v.witness)) + ")")
        if v.detail:
            payload["detail"] = v.detail
            out.text(v.detail)
    out.finish(payload)
    return OK if v.ok else NEGATIVE


def _report_lines(out: Output, o, r):
    if r.holds:
        out.text(f"n = {r.n}: holds; extension of dim {r.system.space.dim}, order {r.system.order}")
    else:
        out.text(f"n = {r.n}: fails; lhs = {format_rat(r.lhs)}, rhs = {format_rat(r.rhs)}")
        for i, p in enumerate(r.witness_points(o)):
            out.text(f"  a_{i} = (" + ", ".join(map(format_rat, p)) + ")")


def cmd_check(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    o = _parse(ser.parse_partiso, obj, args.inputs[0])
    r = check_condition3(o, args.n)
    _report_lines(out, o, r)
    out.finish(ser.report_json(r, o))
    return OK if r.holds else NEGATIVE


def cmd_search(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    o = _parse(ser.parse_partiso, obj, args.inputs[0])
    res = search_extendability(o, args.n_max)
    for r in res.reports:
        _report_lines(out, o, r)
    out.text(f"extends at n = {res.n}" if res.n else f"unknown up to {args.n_max}")
    out.finish(ser.search_json(res, o, args.n_max))
    return OK if res.n else NEGATIVE


def cmd_demo(args) -> int:
    out = Output(args)
    o = gurarii_counterexample()
    rows = []
    out.text(f"{'n':>3}  {'holds':<6} {'lhs':>4}  rhs")
    for n in range(1, args.n_max + 1):
        r = check_condition3(o, n)
        pts = [(Fraction(1, 2 ** i), 0) for i in range(n)]
        lhs, rhs = cyclic_sides(o, pts)
        rows.append({"n": n, "holds": r.holds, "lhs": format_rat(lhs), "rhs": format_rat(rhs),
                     "found_lhs": format_rat(r.lhs), "found_rhs": format_rat(r.rhs)})
        out.text(f"{n:>3}  {str(r.holds).lower():<6} {format_rat(lhs):>4}  {format_rat(rhs)}")
    out.finish({"kind": "demo", "name": "gurarii", "rows": rows})
    return OK


def verify_payload(obj) -> tuple:
    """``(sound, message)`` for any certificate or data file."""
    kind = ser.kind_of(obj)
    if kind == "condition3":
        r, o = ser.parse_report(obj)
        if not validate(o):
            return False, "the partial isometry is invalid"
        if r.recheck(o):
            return True, f"condition3 at n = {r.n}: {'holds' if r.holds else 'fails'}, certificate sound"
        return False, f"condition3 certificate at n = {r.n} does not re-verify"
    if kind == "search":
        n, n_max, reports, o = ser.parse_search(obj)
        if not validate(o):
            return False, "the partial isometry is invalid"
        ns = [r.n for r in reports]
        if n is None:
            shape_ok = ns == list(range(1, n_max + 1)) and not any(r.holds for r in reports)
        else:
            shape_ok = (ns == list(range(1, n + 1)) and reports[-1].holds
                        and not any(r.holds for r in reports[:-1]))
        if not shape_ok:
            return False, "search reports do not match the claimed verdict"
        for r in reports:
            if not r.recheck(o):
                return False, f"report at n = {r.n} does not re-verify"
        return True, f"search: {'extends at n = %d' % n if n else 'unknown up to %d' % n_max}, sound"
    if kind == "isometry_system":
        sys_ = ser.parse_system(obj)
        bad = sys_.failures()
        return (not bad), ("isometry system sound" if not bad else "; ".join(bad))
    if kind == "partiso":
        v = validate(ser.parse_partiso(obj))
        return v.ok, ("valid partial isometry" if v.ok else f"invalid: {v.reason}")
    if kind == "space":
        s = ser.parse_space(obj)
        return s.check(), "space consistent"
    raise ser.FormatError("$.kind", f"nothing to verify for kind {json.dumps(kind)}")


def cmd_verify(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    sound, msg = _parse(verify_payload, obj, args.inputs[0])
    out.text(msg)
    out.finish({"kind": "verification", "sound": sound, "message": msg})
    return OK if sound else NEGATIVE


def cmd_isogroup(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    s = _parse(ser.parse_space, obj, args.inputs[0])
    group = isometry_group(s, vertex_cap=args.vertex_cap)
    out.text(f"{len(group)} isometries")
    items = []
    for g in group:
        order = isometry_order(s, g)
        items.append({"map": ser.map_json(g), "order": order})
        rows = "; ".join(" ".join(format_rat(x) for x in row) for row in g.data)
        out.text(f"  [{rows}]  order {order}")
    out.finish({"kind": "isometry_group", "size": len(group), "elements": items})
    return OK


def cmd_core(args) -> int:
    out = Output(args)
    (obj,) = _inputs(args, 1)
    o = _parse(ser.parse_partiso, obj, args.inputs[0])
    c = eventual_core(o)
    out.text(f"core of dim {c.core.dim} after {c.steps} step(s)")
    for b in c.core.basis:
        out.text("  (" + ", ".join(map(format_rat, b)) + ")")
    out.finish({"kind": "core", "core": ser.subspace_json(c.core),
                "restricted": ser.map_json(c.restricted), "steps": c.steps})
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", metavar="FILE",
                        help="input file (repeatable); @NAME loads a shipped fixture")
    common.add_argument("--out", metavar="FILE", help="write the JSON result here")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="polyext",
                                description="Exact polyhedral norms and partial isometries.")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("space", parents=[common], help="space algebra")
    sp.add_argument("op", choices=["dual", "l1sum", "linfsum", "quotient", "subspace"])
    sp.add_argument("--sub", metavar="FILE", help="subspace file for quotient/subspace")
    sp.set_defaults(func=cmd_space)

    pp = sub.add_parser("partiso", parents=[common], help="partial isometry tools")
    pp.add_argument("op", choices=["validate"])
    pp.set_defaults(func=cmd_partiso)

    cp = sub.add_parser("check", parents=[common], help="cyclic inequality at one n")
    cp.add_argument("--n", type=int, required=True)
    cp.set_defaults(func=cmd_check)

    se = sub.add_parser("search", parents=[common], help="least n up to a bound")
    se.add_argument("--n-max", type=int, required=True)
    se.set_defaults(func=cmd_search)

    dp = sub.add_parser("demo", parents=[common], help="built-in demonstrations")
    dp.add_argument("name", choices=["gurarii"])
    dp.add_argument("--n-max", type=int, default=8)
    dp.set_defaults(func=cmd_demo)

    vp = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    vp.set_defaults(func=cmd_verify)

    ip = sub.add_parser("isogroup", parents=[common], help="isometry group of a space")
    ip.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    ip.set_defaults(func=cmd_isogroup)

    kp = sub.add_parser("core", parents=[common], help="eventual core of a partial isometry")
    kp.set_defaults(func=cmd_core)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    for flag in ("n", "n_max"):
        if getattr(args, flag, 1) < 1:
            print(f"polyext: error: --{flag.replace('_', '-')} must be at least 1", file=sys.stderr)
            return BAD_INPUT
    try:
        return args.func(args)
    except (InputError, PolyextError) as exc:
        print(f"polyext: error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
