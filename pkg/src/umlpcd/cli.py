"""Command-line front end: ``umlpcd parse|check|conform|consistency``.

Exit codes: 0 when every check passes, 1 when violations were found, 2 for
unusable input (unreadable files, malformed system models, oversized
bounds) and 3 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path
from typing import Iterable, TextIO

from . import abstract as ab
from .consistency import Bounds, BoundsTooLarge, bounded_consistency
from .diagnostics import Diagnostic, DiagnosticError
from .lowering import to_abstract
from .parser import parse_cd
from .semantics import IllFormedDiagram, check_conformance
from .sysmodel import SystemModelError, dump_system_model, load_system_model
from .wellformed import check_context_conditions, code_matches

OK, VIOLATIONS, INPUT_ERROR, INTERNAL_ERROR = 0, 1, 2, 3


class InputError(Exception):
    """Input the tool cannot work with; maps to exit status 2."""


class _Output:
    def __init__(self, machine: bool, out: TextIO, err: TextIO):
        self.machine = machine
        self.out = out
        self.err = err

    def record(self, record: dict) -> None:
        self.out.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def diagnostics(self, filename: str, found: Iterable[Diagnostic]) -> None:
        for d in found:
            if self.machine:
                self.record(d.to_json(filename))
            else:
                self.err.write(d.format(filename) + "\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise InputError(f"{path}: cannot read: {err}") from err


def _diagrams(files: list[str], output: _Output) -> list[tuple[str, ab.ClassDiagram]] | None:
    """Parse and lower every file; ``None`` if any of them had errors."""
    texts = [(f, _read(f)) for f in files]
    out, failed = [], False
    for filename, text in texts:
        try:
            cd = to_abstract(parse_cd(text))
        except DiagnosticError as err:
            output.diagnostics(filename, err.diagnostics)
            failed = True
            continue
        output.diagnostics(filename, cd.notes)
        out.append((filename, cd))
    return None if failed else out


def _ill_formed(diagrams, output: _Output) -> bool:
    bad = False
    for filename, cd in diagrams:
        found = check_context_conditions(cd)
        if any(d.is_error for d in found):
            output.diagnostics(filename, found)
            bad = True
    return bad


def cmd_parse(args, output: _Output) -> int:
    status = OK
    for filename in args.files:
        text = _read(filename)
        try:
            tree = parse_cd(text)
            if args.dump_ast:
                cd = to_abstract(tree)
                output.diagnostics(filename, cd.notes)
                output.out.write(ab.dump(cd))
        except DiagnosticError as err:
            output.diagnostics(filename, err.diagnostics)
            status = VIOLATIONS
    return status


def cmd_check(args, output: _Output) -> int:
    selection = [c.strip() for c in (args.select or "").split(",") if c.strip()]
    diagrams = _diagrams(args.files, output)
    if diagrams is None:
        return VIOLATIONS
    status = OK
    for filename, cd in diagrams:
        found = check_context_conditions(cd)
        if selection:
            found = [d for d in found if code_matches(d.code, selection)]
        output.diagnostics(filename, found)
        if any(d.is_error for d in found):
            status = VIOLATIONS
    return status


def cmd_conform(args, output: _Output) -> int:
    diagrams = _diagrams(args.files, output)
    if diagrams is None:
        return VIOLATIONS
    try:
        model = load_system_model(_read(args.system), lenient=args.lenient)
    except SystemModelError as err:
        raise InputError(f"{args.system}: {err.kind} at {err.path}: {err.message}") from err
    for warning in model.warnings:
        output.err.write(f"{args.system}: warning: {warning}\n")
    if _ill_formed(diagrams, output):
        return VIOLATIONS
    report = check_conformance([cd for _, cd in diagrams], model)
    if output.machine:
        for record in report.records():
            output.record(record)
    else:
        output.out.write(report.to_text())
    return OK if report.aggregate else VIOLATIONS


def parse_carrier(text: str) -> tuple[str, int]:
    name, sep, size = text.partition("=")
    if not sep or not name or not size.isdigit():
        raise argparse.ArgumentTypeError(f"expected TYPE=N, got {text!r}")
    return name, int(size)


def bounds_from_args(args) -> Bounds:
    config = {}
    if args.bounds:
        try:
            config = json.loads(_read(args.bounds))
        except json.JSONDecodeError as err:
            raise InputError(f"{args.bounds}: not valid JSON: {err}") from err
        if not isinstance(config, dict):
            raise InputError(f"{args.bounds}: expected a JSON object")
        unknown = set(config) - {"maxOidsPerClass", "maxStates", "carrierSizes", "maxLinksPerAssoc"}
        if unknown:
            raise InputError(f"{args.bounds}: unknown bounds keys {sorted(unknown)}")
    carriers = dict(config.get("carrierSizes", {}))
    carriers.update(dict(args.carrier or ()))
    pick = lambda flag, key, default: flag if flag is not None else config.get(key, default)
    try:
        return Bounds(
            max_oids_per_class=pick(args.max_oids, "maxOidsPerClass", 1),
            max_states=pick(args.max_states, "maxStates", 1),
            carrier_sizes=carriers,
            max_links_per_assoc=pick(args.max_links, "maxLinksPerAssoc", 2),
        )
    except ValueError as err:
        raise InputError(f"invalid bounds: {err}") from err


def cmd_consistency(args, output: _Output) -> int:
    bounds = bounds_from_args(args)
    diagrams = _diagrams(args.files, output)
    if diagrams is None:
        return VIOLATIONS
    if _ill_formed(diagrams, output):
        return VIOLATIONS
    try:
        result = bounded_consistency([cd for _, cd in diagrams], bounds,
                                     allow_empty_trace=args.allow_empty_trace, ceiling=args.ceiling)
    except BoundsTooLarge as err:
        raise InputError(f"bounds too large: {err}") from err
    if result.consistent and args.out:
        try:
            Path(args.out).write_text(dump_system_model(result.witness), encoding="utf-8")
        except OSError as err:
            raise InputError(f"{args.out}: cannot write: {err}") from err
    if output.machine:
        output.record({
            "verdict": "consistent" if result.consistent else "inconsistent",
            "bounds": bounds.to_json(),
            "examined": result.examined,
            "witness": args.out if result.consistent and args.out else None,
        })
    else:
        output.out.write(result.verdict_text() + "\n")
        output.out.write(f"examined {result.examined} models in {result.elapsed:.2f}s\n")
        if result.consistent and args.out:
            output.out.write(f"witness written to {args.out}\n")
    return OK if result.consistent else VIOLATIONS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umlpcd", description="Class diagram checker.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse diagrams")
    p.add_argument("files", nargs="+")
    p.add_argument("--dump-ast", action="store_true", help="print the canonical abstract syntax")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("check", parents=[common], help="check context conditions")
    p.add_argument("files", nargs="+")
    p.add_argument("--select", help="comma-separated codes or prefixes to report")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("conform", parents=[common], help="check a system model against diagrams")
    p.add_argument("files", nargs="+")
    p.add_argument("--system", required=True, help="system model document (JSON)")
    p.add_argument("--lenient", action="store_true", help="warn on unknown keys instead of failing")
    p.set_defaults(run=cmd_conform)

    p = sub.add_parser("consistency", parents=[common], help="search for a conforming model")
    p.add_argument("files", nargs="+")
    p.add_argument("--bounds", help="JSON document with bounds")
    p.add_argument("--max-oids", type=int)
    p.add_argument("--max-states", type=int)
    p.add_argument("--max-links", type=int)
    p.add_argument("--carrier", type=parse_carrier, action="append", metavar="TYPE=N")
    p.add_argument("--allow-empty-trace", action="store_true")
    p.add_argument("--ceiling", type=float, default=2_000_000, help="largest search space to attempt")
    p.add_argument("--out", help="where to write a witness model")
    p.set_defaults(run=cmd_consistency)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return INPUT_ERROR if exit_.code else OK
    output = _Output(args.format == "machine", out, err)
    try:
        return args.run(args, output)
    except InputError as error:
        err.write(f"umlpcd: error: {error}\n")
        return INPUT_ERROR
    except IllFormedDiagram as error:
        for d in error.diagnostics:
            err.write(d.format("<input>") + "\n")
        return VIOLATIONS
    except Exception:
        err.write("umlpcd: internal error\n")
        traceback.print_exc(file=err)
        return INTERNAL_ERROR


def main_exit() -> None:
    sys.exit(main())
