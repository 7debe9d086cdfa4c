"""Command line front end.

Exit codes: 0 ok, 1 invariant/acceptance failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fuzz, harness, interpreter, persistence
from .demos import build_demo
from .errors import (
    EventError,
    LexError,
    ParseError,
    ReferentialError,
    TraceParseError,
    UdappError,
    UnknownFunctionError,
    UnknownIdError,
    VersionError,
)

# bad demo names, expressions, or input files; event failures stay exit 1
_USAGE_ERRORS = (
    TraceParseError,
    ParseError,
    LexError,
    UnknownFunctionError,
    UnknownIdError,
    VersionError,
    ReferentialError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udapp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", help="build a demo headlessly and print its scene hash")
    p.add_argument("name", help="calculator | personaldata | functions")
    p.add_argument("--layout", help="layout file to load after building")

    p = sub.add_parser("replay", help="replay a JSONL event trace against a demo")
    p.add_argument("name")
    p.add_argument("trace", help="trace file, one JSON event per line")
    p.add_argument("--layout", help="layout file to load before replaying")
    p.add_argument("--save-layout", help="write the final layout here")
    p.add_argument("--svg", help="write an SVG snapshot of the final scene here")
    p.add_argument("--json", action="store_true", help="print a JSON report instead of the bare hash")

    p = sub.add_parser("eval", help="evaluate an expression at a point")
    p.add_argument("expr")
    p.add_argument("--at", type=float, default=0.0, metavar="X")

    p = sub.add_parser("verify", help="run the invariant fuzz suite for a demo")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=20260810)
    p.add_argument("--steps", type=int, default=120)
    return parser


def _load_into(app, path: str) -> None:
    state = persistence.read_layout(path, app.scene)
    app.apply_app_state(state)
    app.mover.sync_registration()


def _cmd_demo(args) -> int:
    app = build_demo(args.name)
    if args.layout:
        _load_into(app, args.layout)
    print(harness.scene_hash(app))
    return 0


def _cmd_replay(args) -> int:
    import os

    app = build_demo(args.name)
    if args.layout:
        _load_into(app, args.layout)
    with open(args.trace, "r", encoding="utf-8") as f:
        events = harness.parse_trace(f.read())
    session = harness.Session(app, base_dir=os.path.dirname(os.path.abspath(args.trace)))
    for i, ev in enumerate(events):
        try:
            session.apply(ev)
        except UdappError as e:
            raise EventError(i, e) from e
    digest = session.hash()
    if args.save_layout:
        persistence.write_layout(args.save_layout, app.scene, app.app_state())
    svg = harness.render_svg(app.scene)
    if args.svg:
        with open(args.svg, "wb") as f:
            f.write(svg)
    if args.json:
        report = {
            "hash": digest,
            "cursor": app.mover.cursor_hint(session.last_point).value,
            "context": session.last_context,
            "app": app.app_state(),
            "svg": svg.decode("utf-8"),
        }
        print(json.dumps(report, sort_keys=True))
    else:
        print(digest)
    return 0


def _cmd_eval(args) -> int:
    ast = interpreter.parse_expression(args.expr)
    print(repr(interpreter.evaluate(ast, args.at)))
    return 0


def _cmd_verify(args) -> int:
    problems = fuzz.verify_demo(args.name, seed=args.seed, steps=args.steps)
    if problems:
        for line in problems:
            print(f"FAIL {args.name}: {line}")
        return 1
    print(f"PASS {args.name}: invariants, catch oracle, determinism, persistence")
    return 0


_DISPATCH = {"demo": _cmd_demo, "replay": _cmd_replay, "eval": _cmd_eval, "verify": _cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return _DISPATCH[args.command](args)
    except _USAGE_ERRORS as e:
        print(f"udapp: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"udapp: {e}", file=sys.stderr)
        return 2
    except UdappError as e:
        print(f"udapp: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
