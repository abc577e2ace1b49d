"""Command-line front end.

Exit codes: 0 success, 1 the cover data fail validation, 2 a pipeline
integrity check failed, 3 the input could not be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .document import BUILTINS, CoverDocument, DocumentError, builtin_text, load_builtin, load_document
from .errors import AdaptedBasisError, IntegrityError, InvalidCoverError, TransversalError
from .pipeline import STAGES, analyze
from .report import to_json, to_text, trace_json

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTEGRITY = 2
EXIT_IO = 3


def _load(source: str) -> CoverDocument:
    # built-in names work wherever a path does
    if not Path(source).exists() and source.removesuffix(".json") in BUILTINS:
        return load_builtin(source.removesuffix(".json"))
    return load_document(source)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _split_order(text: str) -> list[str]:
    # basis names contain commas (S_{d,c}), so commas only separate indices
    tokens = text.split()
    if len(tokens) == 1 and all(part.strip().isdigit() for part in tokens[0].split(",")):
        tokens = tokens[0].split(",")
    return tokens


def cmd_validate(args) -> int:
    try:
        doc = _load(args.spec)
    except InvalidCoverError as exc:
        print(str(exc.report) if exc.report else f"invalid: {exc}")
        return EXIT_INVALID
    spec = doc.spec
    print(f"valid; genus {spec.genus}")
    print(f"signature {spec.signature}, group of order {spec.n}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        doc = _load(args.spec)
    except InvalidCoverError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    order = doc.basis_order
    if args.basis_order:
        order = _split_order(args.basis_order)
    try:
        a = analyze(doc.spec, doc.transversal, args.stage, order)
    except TransversalError as exc:
        print(f"transversal: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except IntegrityError as exc:
        print(f"homology: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except AdaptedBasisError as exc:
        print(f"pipeline: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ValueError as exc:
        print(f"basis order: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.dump_trace and a.trace is not None:
        Path(args.dump_trace).write_text(json.dumps(trace_json(a.trace), indent=2) + "\n")
    if args.format == "json":
        _emit(json.dumps(to_json(a, doc.echo()), indent=2) + "\n", args.output)
    else:
        _emit(to_text(a), args.output)
    if a.fixed_points is not None and not a.fixed_points.consistent:
        bad = ", ".join(doc.spec.group.name(r.element) for r in a.fixed_points.mismatches())
        print(f"homology: Lefschetz counts disagree with the oracle for {bad}", file=sys.stderr)
        return EXIT_INTEGRITY
    return EXIT_OK


def cmd_examples(args) -> int:
    if not args.name:
        for name, summary in BUILTINS.items():
            print(f"{name}  {summary}")
        return EXIT_OK
    name = args.name.removesuffix(".json")
    if name not in BUILTINS:
        print(f"unknown example {args.name!r}; choose from {', '.join(BUILTINS)}", file=sys.stderr)
        return EXIT_IO
    _emit(builtin_text(name), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptedbasis",
        description="Homology actions and adapted bases for branched covers of surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a cover specification and print its genus")
    p.add_argument("spec", help="JSON document or built-in example name")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run the pipeline and print a report")
    p.add_argument("spec", help="JSON document or built-in example name")
    p.add_argument("--stage", choices=STAGES, default="full")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--dump-trace", metavar="FILE", help="write the Tietze replay log as JSON")
    p.add_argument("--basis-order", metavar="LIST", help="basis permutation: indices or names, comma separated")
    p.add_argument("-o", "--output", metavar="FILE", help="write the report to FILE")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("examples", help="list the built-in examples or write one out")
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
