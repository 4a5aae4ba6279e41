from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, TypeVar

from . import _env
from .dsl.lexer import ParseError, TokenKind, tokenize
from .dsl.parser import parse_fps, parse_ftm
from .dsl.serializer import format_fuzzy_multiset
from .ftm.acceptance import accept_degree, fuzzy_language, ranked_language
from .ftm.configuration import InputRejected
from .ftm.machine import Machine
from .fuzzy.norms import NormKind
from .fuzzy.sets import format_degree, to_degree
from .logger import set_log_level
from .psystem.engine import run
from .psystem.system import PSystem
from .violations import ValidationFailure

__all__ = ("CLIError", "build_parser", "cli_entrypoint", "main")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

EMPTY_WORD = "ε"

T = TypeVar("T")


@dataclass(frozen=True)
class CLIError(RuntimeError):
    """Command failure carrying the process exit code."""

    message: str
    exit_code: int = EXIT_INPUT

    def __str__(self) -> str:
        return self.message


def _count(minimum: int) -> Callable[[str], int]:
    """Argument type for integers of at least `minimum`."""
    kind = "positive" if minimum == 1 else "nonnegative"

    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"expected a {kind} integer, got {value}")
        return value

    return parse


def _degree(text: str) -> float:
    try:
        return to_degree(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a degree in [0,1], got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    """Build the argparse command router."""
    parser = argparse.ArgumentParser(
        prog="fuzzym",
        description=(
            "Fuzzy Turing machines and fuzzy P-systems.\n\n"
            "Examples:\n"
            "  fuzzym validate two_path.ftm\n"
            "  fuzzym run two_path.ftm --input a\n"
            "  fuzzym language two_path.ftm --max-len 3 --cutoff 0.5\n"
            "  fuzzym psystem decay.fps --max-ticks 50 --json\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", default=False, help="Log engine progress to stderr.")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="Emit a JSON record instead of text.")
    steps = argparse.ArgumentParser(add_help=False)
    steps.add_argument(
        "--max-steps",
        type=_count(1),
        default=_env.DEFAULT_MAX_STEPS,
        help=f"Longest computational path considered (default: {_env.DEFAULT_MAX_STEPS}).",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    validate_parser = subparsers.add_parser(
        "validate", parents=[common], help="Parse and validate a .ftm or .fps description"
    )
    validate_parser.add_argument("path", help="Description file")
    validate_parser.set_defaults(handler=cmd_validate)

    run_parser = subparsers.add_parser(
        "run", parents=[common, output, steps], help="Acceptance degree of one input word"
    )
    run_parser.add_argument("path", help="Machine description (.ftm)")
    run_parser.add_argument("--input", "-i", default="", help="Input word (default: the empty word).")
    run_parser.set_defaults(handler=cmd_run)

    language_parser = subparsers.add_parser(
        "language", parents=[common, output, steps], help="Fuzzy language up to a word length"
    )
    language_parser.add_argument("path", help="Machine description (.ftm)")
    language_parser.add_argument("--max-len", type=_count(0), required=True, help="Longest word listed.")
    language_parser.add_argument(
        "--cutoff",
        type=_degree,
        default=_env.DEFAULT_CUTOFF,
        help="List only words accepted with a higher degree (default: 0).",
    )
    language_parser.set_defaults(handler=cmd_language)

    psystem_parser = subparsers.add_parser("psystem", parents=[common, output], help="Run a fuzzy P-system")
    psystem_parser.add_argument("path", help="P-system description (.fps)")
    psystem_parser.add_argument(
        "--max-ticks",
        type=_count(1),
        default=_env.DEFAULT_MAX_TICKS,
        help=f"Tick budget (default: {_env.DEFAULT_MAX_TICKS}).",
    )
    psystem_parser.set_defaults(handler=cmd_psystem)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, dispatch to a command and map failures to exit codes.

    Returns:
        0 on success, 2 on an input or validation error, 3 on an I/O error.
    """
    namespace = build_parser().parse_args(list(argv) if argv is not None else None)
    if namespace.verbose:
        set_log_level("INFO")
    try:
        return int(namespace.handler(namespace))
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def cli_entrypoint() -> None:
    """Console-script entrypoint."""
    raise SystemExit(main())


# Helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CLIError(f"cannot read {path}: {exc}", exit_code=EXIT_IO) from exc


def _load(path: str, parse: Callable[[str], T]) -> T:
    text = _read(path)
    try:
        return parse(text)
    except (ParseError, ValidationFailure) as exc:
        raise CLIError(f"{path}: {exc}") from exc


def _override() -> Optional[NormKind]:
    if (name := _env.norm_override()) is None:
        return None
    try:
        return NormKind.parse(name)
    except ValueError as exc:
        raise CLIError(f"{_env.NORM_OVERRIDE_VAR}: {exc}") from exc


def _load_machine(path: str) -> Machine:
    machine = _load(path, parse_ftm)
    return machine.with_norm(norm) if (norm := _override()) else machine


def _load_system(path: str) -> PSystem:
    system = _load(path, parse_fps)
    return dataclasses.replace(system, norm=norm) if (norm := _override()) else system


def _emit_json(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False))


def _flag(value: bool) -> str:
    return "true" if value else "false"


# Commands


def cmd_validate(args: argparse.Namespace) -> int:
    """Parse and validate a description; the first keyword tells machines from P-systems."""
    text = _read(args.path)
    try:
        first = tokenize(text)[0]
        if first.kind is TokenKind.NAME and first.text == "machine":
            kind, name = "machine", parse_ftm(text).name
        elif first.kind is TokenKind.NAME and first.text == "psystem":
            kind, name = "psystem", parse_fps(text).name
        else:
            raise ParseError(first.span, "keyword 'machine' or 'psystem'", first.describe())
    except (ParseError, ValidationFailure) as exc:
        raise CLIError(f"{args.path}: {exc}") from exc
    print(f"ok: {kind} {name}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    """Acceptance degree of `--input`, with a witness path."""
    machine = _load_machine(args.path)
    try:
        result = accept_degree(machine, args.input, args.max_steps)
    except InputRejected as exc:
        raise CLIError(str(exc)) from exc

    if args.json:
        _emit_json({"input": args.input, **result.model_dump(mode="json")})
        return EXIT_OK
    print(f"e(w) = {format_degree(result.degree)}")
    for transition, degree in result.witness:
        print(f"  {transition} @ {format_degree(degree)}")
    if result.truncated:
        print(f"truncated = true (some paths were cut at {args.max_steps} steps)")
    return EXIT_OK


def cmd_language(args: argparse.Namespace) -> int:
    """Words up to `--max-len` accepted above `--cutoff`, best first."""
    machine = _load_machine(args.path)
    entries = ranked_language(fuzzy_language(machine, args.max_len, args.max_steps, args.cutoff))
    if args.json:
        _emit_json([entry.model_dump(mode="json") for entry in entries])
        return EXIT_OK
    for entry in entries:
        print(f"{entry.word or EMPTY_WORD} {format_degree(entry.degree)}")
    return EXIT_OK


def cmd_psystem(args: argparse.Namespace) -> int:
    """Run a P-system and report the cardinality of its output compartment."""
    system = _load_system(args.path)
    outcome = run(system, args.max_ticks)
    if args.json:
        _emit_json(outcome.model_dump(mode="json"))
        return EXIT_OK
    print(f"result = {format_degree(outcome.result)}")
    print(f"halted = {_flag(outcome.halted)}")
    print(f"ticks_used = {outcome.ticks_used}")
    print(f"output = {format_fuzzy_multiset(outcome.output_contents)}")
    return EXIT_OK
