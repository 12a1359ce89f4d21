"""Command-line driver: check, solve, query, render, and serve.

Results go to stdout; diagnostics and errors go to stderr, so output can be
piped safely. Exit codes: 0 success, 1 program diagnostics or processing
errors, 2 usage errors (including unreadable input files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .display import compile_source
from .errors import (
    DisplayValidationError,
    LexError,
    ParseError,
    SortCheckError,
    SparcError,
)
from .grounding import DEFAULT_GROUND_CAP, ground
from .parser import parse
from .queries import parse_query, render_query_result, run_query
from .solver import answer_sets, render_answer_sets
from .sortcheck import check_sorts, diagnose


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SparcError as exc:
        for line in _diagnostic_lines(exc):
            print(line, file=sys.stderr)
        return 1
    except OSError as exc:
        print(exc, file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparclab",
        description="Check, solve, query, and render SPARC programs, or run the service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def limits(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--ground-cap",
            type=int,
            default=DEFAULT_GROUND_CAP,
            metavar="N",
            help="maximum ground rule instances (0 disables the cap)",
        )
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            metavar="N",
            help="search step budget for the solver",
        )

    p = sub.add_parser("check", help="parse and sort-check a program")
    p.add_argument("file", help="program file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("solve", help="print the program's answer sets")
    p.add_argument("file", help="program file")
    p.add_argument(
        "--max-models", type=int, default=None, metavar="N", help="stop after N answer sets"
    )
    limits(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("query", help="answer a query against the program")
    p.add_argument("file", help="program file")
    p.add_argument("-q", "--query", required=True, metavar="LITERALS", help="query literals")
    limits(p)
    p.set_defaults(handler=_cmd_query)

    p = sub.add_parser("render", help="compile draw/animate atoms to an HTML document")
    p.add_argument("file", help="program file")
    p.add_argument("-o", "--output", metavar="PATH", help="write the document here")
    limits(p)
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8080, metavar="P")
    p.add_argument("--data-root", default="sparclab-data", metavar="DIR")
    p.add_argument(
        "--max-models", type=int, default=None, metavar="N", help="answer set limit per request"
    )
    limits(p)
    p.set_defaults(handler=_cmd_serve)

    return parser


def _cmd_check(args: argparse.Namespace) -> int:
    diagnostics = diagnose(parse(_read(args.file)))
    if diagnostics:
        for diagnostic in diagnostics:
            print(diagnostic, file=sys.stderr)
        return 1
    print("ok")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    checked = check_sorts(parse(_read(args.file)))
    result = answer_sets(
        ground(checked, _cap(args)), limit=args.max_models, budget=args.budget
    )
    sys.stdout.write(render_answer_sets(result))
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    checked = check_sorts(parse(_read(args.file)))
    result = answer_sets(ground(checked, _cap(args)), budget=args.budget)
    outcome = run_query(checked, result.answer_sets, parse_query(args.query))
    sys.stdout.write(render_query_result(outcome))
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    _, document = compile_source(_read(args.file), _cap(args), args.budget)
    if args.output:
        Path(args.output).write_text(document.text, encoding="utf-8")
    else:
        sys.stdout.write(document.text)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(
        port=args.port,
        data_root=args.data_root,
        ground_cap=_cap(args),
        budget=args.budget,
        max_models=args.max_models,
    )
    return 0


def _cap(args: argparse.Namespace) -> int | None:
    return args.ground_cap if args.ground_cap > 0 else None


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _diagnostic_lines(exc: SparcError) -> list[str]:
    if isinstance(exc, (SortCheckError, DisplayValidationError)):
        return [str(d) for d in exc.diagnostics]
    if isinstance(exc, (LexError, ParseError)):
        return [str(exc.to_diagnostic())]
    return [f"{exc.code}: {exc}"]


if __name__ == "__main__":
    sys.exit(main())
