"""Command line entry point.

    skolem decide FILE            truth of a sentence
    skolem eval --assign x=7 FILE truth of a formula at positive integers
    skolem compile [--json] FILE  semiskolemian representation
    skolem selftest               compare against the brute-force oracle

``FILE`` defaults to standard input (also selected by ``-``).  Every option
falls back to an environment variable ``SKOLEM_<OPTION>``.

Exit status: 0 for any computed answer (``false`` included), 1 when the
self-test finds a discrepancy, 2 for usage or syntax errors, 3 when a
resource cap is hit, 4 for values outside the positive integers.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from . import battery
from .config import limits
from .errors import DomainError, ParseError, ResourceLimitError
from .frontend import compile_formula, decide, eval_ground, free_variables, parse
from .oracle import bounded_eval
from .skolemian import render_semi, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_DOMAIN = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class CliConfig:
    max_disjuncts: int = 100_000
    max_formula_nodes: int = 100_000
    output_format: str = "text"
    oracle_bound: int = 64

    def __post_init__(self):
        if min(self.max_disjuncts, self.max_formula_nodes, self.oracle_bound) < 1:
            raise ValueError("caps and oracle bound must be >= 1")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-disjuncts", type=int, default=None)
    common.add_argument("--max-formula-nodes", type=int, default=None)
    common.add_argument("--format", choices=("text", "json"), default=None, dest="output_format")
    common.add_argument("--json", action="store_const", const="json", dest="output_format",
                        help="shorthand for --format json")
    common.add_argument("--oracle-bound", type=int, default=None)

    parser = argparse.ArgumentParser(prog="skolem", description="Decision procedure for Skolem arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("decide", "decide a sentence"),
                            ("eval", "evaluate a formula at positive integers"),
                            ("compile", "print the semiskolemian representation")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", nargs="?", default="-")
        if name == "eval":
            p.add_argument("--assign", action="append", default=[], metavar="VAR=VALUE")
    sub.add_parser("selftest", parents=[common], help="run the oracle battery")
    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    def pick(flag, env, default):
        return flag if flag is not None else _env_int(env, default)

    fmt = args.output_format or os.environ.get("SKOLEM_FORMAT", "text")
    try:
        return CliConfig(
            max_disjuncts=pick(args.max_disjuncts, "SKOLEM_MAX_DISJUNCTS", 100_000),
            max_formula_nodes=pick(args.max_formula_nodes, "SKOLEM_MAX_FORMULA_NODES", 100_000),
            output_format=fmt,
            oracle_bound=pick(args.oracle_bound, "SKOLEM_ORACLE_BOUND", 64),
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _parse_assignments(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--assign expects VAR=VALUE, got {item!r}")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--assign {item!r}: value is not an integer") from None
    return out


def _emit_bool(value: bool, cfg: CliConfig, out: TextIO) -> None:
    if cfg.output_format == "json":
        out.write(json.dumps({"result": value}) + "\n")
    else:
        out.write(("true" if value else "false") + "\n")


def selftest(cfg: CliConfig, out: TextIO) -> tuple[int, int]:
    """Compare compiled evaluation with bounded brute force; returns (passed, failed)."""
    passed = failed = 0
    top = min(cfg.oracle_bound, 30)
    for name, (params, text) in battery.PREDICATES.items():
        f = parse(text)
        ref = battery.REFERENCE[name]
        bad = 0
        grid = [(a,) for a in range(1, top + 1)] if len(params) == 1 else \
            [(a, b) for a in range(1, min(top, 12) + 1) for b in range(1, min(top, 12) + 1)]
        for point in grid:
            env = dict(zip(params, point))
            got = eval_ground(f, env)
            if got != bounded_eval(f, env, cfg.oracle_bound) or got != ref(*point):
                bad += 1
        if bad:
            failed += 1
            out.write(f"FAIL predicate {name}: {bad} disagreements\n")
        else:
            passed += 1
            out.write(f"ok   predicate {name} ({len(grid)} points)\n")
    for s in battery.SENTENCES:
        got = decide(s.formula)
        if got == s.expected:
            passed += 1
            out.write(f"ok   sentence {s.text}\n")
        else:
            failed += 1
            out.write(f"FAIL sentence {s.text}: got {got}, expected {s.expected}\n")
    out.write(f"selftest: {passed} passed, {failed} failed\n")
    return passed, failed


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = _config(args)
        with limits(max_disjuncts=cfg.max_disjuncts, max_formula_nodes=cfg.max_formula_nodes):
            if args.command == "selftest":
                _, failed = selftest(cfg, stdout)
                return EXIT_FAIL if failed else EXIT_OK
            text = _read(args.file, stdin)
            f = parse(text)
            if args.command == "decide":
                free = free_variables(f)
                if free:
                    raise UsageError(f"decide needs a sentence; free variables: {', '.join(free)}")
                _emit_bool(decide(f), cfg, stdout)
            elif args.command == "eval":
                assignment = _parse_assignments(args.assign)
                free = set(free_variables(f))
                if set(assignment) != free:
                    raise UsageError(f"--assign must bind exactly: {', '.join(sorted(free)) or '(nothing)'}")
                _emit_bool(eval_ground(f, assignment), cfg, stdout)
            else:
                result = compile_formula(f)
                if cfg.output_format == "json":
                    payload = to_json(result)
                    payload["variables"] = list(free_variables(f))
                    stdout.write(json.dumps(payload) + "\n")
                else:
                    stdout.write(render_semi(result) + "\n")
        return EXIT_OK
    except ParseError as e:
        stderr.write(f"{args.file if hasattr(args, 'file') else '<input>'}:{e.line}:{e.column}: "
                     f"syntax error: {e.message}\n")
        return EXIT_USAGE
    except UsageError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except ResourceLimitError as e:
        stderr.write(f"resource limit: {e}\n")
        return EXIT_RESOURCE
    except DomainError as e:
        stderr.write(f"domain error: {e}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
