"""Command-line front end.

Exit codes: 0 success or relation holds, 1 type error or relation fails,
2 parse or validation error, 3 internal error or exhausted fuel.
"""
from __future__ import annotations

import argparse
import json
import sys

from capc import automata
from capc.evaluator import FuelExhausted, evaluate
from capc.parser import BranchError, ParseError, parse_context, parse_source, parse_type, render_term, render_type
from capc.relations import ENGINES, Engine, default_engine_name
from capc.typechecker import ErrorKind, TypeCheckError, tc, validate
from capc.types import SortError, check_sort

OK, FALSE, BAD_INPUT, INTERNAL = 0, 1, 2, 3

JSON_SCHEMA = {
    "type": "object",
    "required": ["ok"],
    "additionalProperties": False,
    "properties": {
        "ok": {"type": "boolean"},
        "type": {"type": "string"},
        "value": {"type": "string"},
        "error": {
            "type": "object",
            "required": ["kind", "path", "message"],
            "additionalProperties": False,
            "properties": {
                "kind": {"type": "string"},
                "path": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "message": {"type": "string"},
            },
        },
        "stats": {
            "type": "object",
            "required": ["universe", "iterations", "invalidations"],
            "properties": {
                "universe": {"type": "integer", "minimum": 0},
                "iterations": {"type": "integer", "minimum": 0},
                "invalidations": {"type": "integer", "minimum": 0},
            },
        },
    },
}

# validation failures are input errors, not type errors
_INPUT_KINDS = {ErrorKind.SortError, ErrorKind.InvalidPattern}


class _Out:
    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.want_stats = getattr(args, "stats", False)

    def emit(self, code, *, ok, text=None, type_=None, value=None, error=None, engine=None):
        if self.json:
            doc = {"ok": ok}
            if type_ is not None:
                doc["type"] = type_
            if value is not None:
                doc["value"] = value
            if error is not None:
                kind, path, msg = error
                doc["error"] = {"kind": kind, "path": list(path), "message": msg}
            if self.want_stats and engine is not None:
                doc["stats"] = _stats(engine)
            print(json.dumps(doc, ensure_ascii=False))
            return code
        if error is not None:
            kind, path, msg = error
            where = f" at {list(path)}" if path else ""
            print(f"error: {kind}{where}: {msg}", file=sys.stderr)
        elif text is not None:
            print(text)
        if self.want_stats and engine is not None:
            s = _stats(engine)
            print("stats: " + " ".join(f"{k}={v}" for k, v in s.items()))
        return code


def _stats(engine: Engine) -> dict:
    s = engine.stats
    out = {
        "universe": s.get("universe", 0),
        "iterations": s.get("iterations", 0),
        "invalidations": s.get("invalidations", 0),
    }
    if engine.name == "naive":
        out["calls"] = s.get("calls", 0)
    return out


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_error(out, e: ParseError):
    kind = "InvalidPattern" if isinstance(e, BranchError) else "ParseError"
    return out.emit(BAD_INPUT, ok=False, error=(kind, (), str(e)))


def cmd_check(args) -> int:
    out = _Out(args)
    try:
        gamma = parse_context(_read(args.ctx)) if args.ctx else {}
        header, term = parse_source(_read(args.file))
    except ParseError as e:
        return _parse_error(out, e)
    gamma.update(header)
    engine = Engine(args.engine)
    try:
        validate(term, gamma)
        ty = tc(gamma, term, engine)
    except TypeCheckError as e:
        code = BAD_INPUT if e.kind in _INPUT_KINDS else FALSE
        return out.emit(code, ok=False, error=(e.kind.value, e.path, e.detail), engine=engine)
    return out.emit(OK, ok=True, text=render_type(ty), type_=render_type(ty), engine=engine)


def cmd_eval(args) -> int:
    out = _Out(args)
    try:
        _, term = parse_source(_read(args.file))
    except ParseError as e:
        return _parse_error(out, e)
    try:
        nf = evaluate(term, args.max_steps)
    except FuelExhausted as e:
        return out.emit(INTERNAL, ok=False, error=("FuelExhausted", (), str(e)))
    s = render_term(nf)
    return out.emit(OK, ok=True, text=s, value=s)


def _two_types(args, out):
    try:
        a, b = parse_type(args.left), parse_type(args.right)
    except ParseError as e:
        return None, _parse_error(out, e)
    for t in (a, b):
        try:
            check_sort(t)
        except SortError as e:
            return None, out.emit(BAD_INPUT, ok=False, error=("SortError", (), str(e)))
    return (a, b), None


def _relation(args, which) -> int:
    out = _Out(args)
    pair, code = _two_types(args, out)
    if pair is None:
        return code
    engine = Engine(args.engine)
    holds = engine.subtype(*pair) if which == "sub" else engine.equivalent(*pair)
    return out.emit(OK if holds else FALSE, ok=holds, text="true" if holds else "false", engine=engine)


def cmd_dump(args) -> int:
    out = _Out(args)
    try:
        t = parse_type(args.type)
        check_sort(t)
    except ParseError as e:
        return _parse_error(out, e)
    except SortError as e:
        return out.emit(BAD_INPUT, ok=False, error=("SortError", (), str(e)))
    m = automata.compile_type(t, dedup=not args.no_dedup)
    return out.emit(OK, ok=True, text=m.dump(), value=m.dump())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="capc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, engine=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if engine:
            p.add_argument("--engine", choices=ENGINES, default=default_engine_name())
            p.add_argument("--stats", action="store_true", help="report engine counters")

    p = sub.add_parser("check", help="type-check a source file")
    p.add_argument("file")
    p.add_argument("--ctx", help="file of 'name : Type' bindings")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="reduce a term to normal form")
    p.add_argument("file")
    p.add_argument("--max-steps", type=int, default=10_000)
    common(p, engine=False)
    p.set_defaults(func=cmd_eval)

    for name, helptext in (("sub", "decide A <= B"), ("eq", "decide A == B")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("left")
        p.add_argument("right")
        common(p)
        p.set_defaults(func=lambda a, n=name: _relation(a, n))

    p = sub.add_parser("dump", help="print the term automaton of a type")
    p.add_argument("type")
    p.add_argument("--no-dedup", action="store_true", help="keep duplicate union siblings")
    common(p, engine=False)
    p.set_defaults(func=cmd_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, RecursionError, RuntimeError) as e:
        out = _Out(args)
        return out.emit(INTERNAL, ok=False, error=("InternalError", (), str(e)))


if __name__ == "__main__":
    sys.exit(main())
