"""Command line front end.

``run`` evaluates a worksheet and prints its outputs, ``render`` re-emits
the worksheet with output blocks appended to each cell, ``repl`` keeps a
session open interactively, ``serve`` starts the HTTP service.  All of
them drive the same engine the service wraps.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .document import split_cells
from .errors import MathparError
from .render import DISPLAY, SOURCE, render_cell_result, render_output
from .session import CellResult, Env, eval_cell, reset_session, set_unknown

_OUT_LINE = re.compile(r'^\s*"(OUT|ERR): .*"\s*$')


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _result_dict(result: CellResult) -> dict:
    return {
        "ok": result.ok,
        "outputs": [
            {
                "label": str(o.label) if o.label is not None else None,
                "display": render_output(None, o.value, DISPLAY),
                "source": render_output(None, o.value, SOURCE),
            }
            for o in result.outputs
        ],
        "diagnostics": [
            {
                "severity": d.severity,
                "code": d.code,
                "message": d.message,
                "span": list(d.span.as_tuple()) if d.span is not None else None,
            }
            for d in result.diagnostics
        ],
    }


def _make_env(args: argparse.Namespace) -> Env:
    env = Env()
    env.precision = args.precision
    set_unknown(env, args.unknown)
    return env


def _strip_out_blocks(cell: str) -> str:
    kept = [line for line in cell.split("\n") if not _OUT_LINE.match(line)]
    return "\n".join(kept).strip("\n")


def cmd_run(args: argparse.Namespace) -> int:
    try:
        source = _read_source(args.file)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    env = _make_env(args)
    results = [eval_cell(env, cell) for cell in split_cells(source)]
    if args.format == "json":
        print(json.dumps([_result_dict(r) for r in results], indent=2))
    else:
        mode = DISPLAY if args.format == "latex" else SOURCE
        for result in results:
            for line in render_cell_result(result, mode):
                print(line)
    return 0 if all(r.ok for r in results) else 1


def cmd_render(args: argparse.Namespace) -> int:
    try:
        source = _read_source(args.file)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    env = _make_env(args)
    pieces: list[str] = []
    ok = True
    for cell in split_cells(source):
        cell = _strip_out_blocks(cell)
        if not cell:
            continue
        result = eval_cell(env, cell)
        ok = ok and result.ok
        block = [cell]
        for output in result.outputs:
            line = render_output(output.label, output.value, DISPLAY)
            block.append(f'"OUT: ${line}$"')
        for diag in result.diagnostics:
            block.append(f'"ERR: {diag.render()}"')
        pieces.append("\n".join(block))
    text = "\n\n".join(pieces) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if ok else 1


def cmd_repl(args: argparse.Namespace) -> int:
    env = _make_env(args)
    print("mathpar repl: one statement per line, :reset :precision N :unknown NAME :quit")
    while True:
        try:
            line = input("> ")
        except EOFError:
            print()
            return 0
        line = line.strip()
        if not line:
            continue
        if line in (":quit", ":q"):
            return 0
        if line == ":reset":
            reset_session(env)
            continue
        if line.startswith(":precision"):
            try:
                env.precision = int(line.split()[1])
            except (IndexError, ValueError):
                print("usage: :precision N")
            continue
        if line.startswith(":unknown"):
            try:
                set_unknown(env, line.split()[1])
            except (IndexError, MathparError) as err:
                print(f"error: {err}")
            continue
        result = eval_cell(env, line)
        for out in render_cell_result(result, DISPLAY):
            print(out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mathpar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--precision", type=int, default=2,
                       help="decimal places for \\value (default 2)")
        p.add_argument("--unknown", default="x",
                       help="variable \\solve solves for (default x)")

    run = sub.add_parser("run", help="evaluate a worksheet and print outputs")
    run.add_argument("file", help="worksheet path, or - for stdin")
    run.add_argument("--format", choices=("latex", "plain", "json"),
                     default="latex", help="output format (default latex)")
    common(run)
    run.set_defaults(func=cmd_run)

    render = sub.add_parser("render", help="re-emit a worksheet with OUT blocks")
    render.add_argument("file", help="worksheet path, or - for stdin")
    render.add_argument("-o", "--output", default="-",
                        help="output path (default stdout)")
    common(render)
    render.set_defaults(func=cmd_render)

    repl = sub.add_parser("repl", help="interactive session")
    common(repl)
    repl.set_defaults(func=cmd_repl)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int,
                       default=int(os.environ.get("MATHPAR_PORT", "8377")))
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MathparError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
