"""``hyperlim`` command line.

Every subcommand prints one result per line, as text or as JSON objects with
the fields ``query``, ``kind``, ``value``, ``left``, ``right``, ``series``
(only with ``--show-series``) and ``diagnostics``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .errors import HyperlimError, InvalidInput, ParseError
from .expr import eval_hyper, parse, to_text
from .extreal import ExtendedReal, format_ext, parse_ext
from .hyperfield import DEFAULT_WINDOW, div, format_hyper, from_real, monomial, sub
from .limits import (
    DEFAULT_TOLERANCE,
    TWO_SIDED,
    DoesNotExist,
    Indeterminate,
    LimitTarget,
    Value,
    standard_part_with_retry,
    check_case,
    counterexample_poly,
    derivative_at,
    limit,
    parse_target,
    read_corpus,
    substitution,
)

WINDOW_ENV = "HYPERLIM_WINDOW"


@dataclass(frozen=True)
class Config:
    window: Fraction = DEFAULT_WINDOW
    tolerance: float = DEFAULT_TOLERANCE
    output: str = "text"
    show_series: bool = False

    def __post_init__(self):
        if self.window < 2:
            raise InvalidInput("window must be at least 2")
        if not 0 < self.tolerance <= 1e-3:
            raise InvalidInput("tolerance must lie in (0, 1e-3]")
        if self.output not in ("text", "json"):
            raise InvalidInput("output is text or json")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _window(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational window: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--window", type=_window, default=None, help="exponent span kept past the leading term (default 8)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="relative agreement tolerance")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--show-series", action="store_true", help="also print the truncated series")

    parser = _Parser(prog="hyperlim", description="Limits and derivatives through infinitesimal series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("limit", parents=[common], help="limit of an expression in x")
    p.add_argument("expression")
    p.add_argument("--at", required=True, help="x->r, x->r+, x->r-, x->+inf or x->-inf")

    p = sub.add_parser("st", parents=[common], help="standard part of an expression in dx")
    p.add_argument("expression")

    p = sub.add_parser("derive", parents=[common], help="derivative at a point")
    p.add_argument("expression")
    p.add_argument("--at", required=True, type=float)

    p = sub.add_parser("counterexample", parents=[common], help="function through samples with a prescribed limit")
    p.add_argument("--points", required=True, help="file of 'x y' pairs, one per line")
    p.add_argument("--at", required=True, type=float)
    p.add_argument("--limit", required=True, dest="limit_value")

    p = sub.add_parser("check", parents=[common], help="run a regression corpus")
    p.add_argument("corpus")
    return parser


def _config(args) -> Config:
    window = args.window
    if window is None:
        env = os.environ.get(WINDOW_ENV)
        window = _window(env) if env else DEFAULT_WINDOW
    return Config(window, args.tolerance, args.output, args.show_series)


# --------------------------------------------------------------------------
# rendering


def _json_number(x: Optional[ExtendedReal]):
    if x is None:
        return None
    return x.value if x.is_finite else format_ext(x)


def _record(query: str, result, series=None, diagnostics=()) -> dict:
    record = {"query": query, "kind": result.kind, "value": None, "left": None, "right": None}
    diagnostics = list(diagnostics)
    if isinstance(result, Value):
        record["value"] = _json_number(result.value)
    elif isinstance(result, DoesNotExist):
        record["left"] = _json_number(result.left)
        record["right"] = _json_number(result.right)
    elif isinstance(result, Indeterminate):
        diagnostics.append(result.reason)
        if result.interval is not None:
            lo, hi = result.interval
            diagnostics.append(f"interval [{format_ext(ExtendedReal(lo))}, {format_ext(ExtendedReal(hi))}]")
    if series is not None:
        record["series"] = series
    record["diagnostics"] = diagnostics
    return record


class _Out:
    def __init__(self, config: Config, stream: TextIO):
        self.config = config
        self.stream = stream

    def emit(self, text: str, record: dict):
        if self.config.output == "json":
            self.stream.write(json.dumps(record) + "\n")
        else:
            self.stream.write(text + "\n")
            if "series" in record:
                for line in record["series"]:
                    self.stream.write(f"  {line}\n")


def _series_lines(e, target: LimitTarget, window) -> list:
    targets = [target]
    if target.kind == TWO_SIDED:
        targets = [LimitTarget.from_left(target.point), LimitTarget.from_right(target.point)]
    lines = []
    for tg in targets:
        try:
            lines.append(f"{tg}: {format_hyper(eval_hyper(e, substitution(tg, window)))}")
        except HyperlimError as exc:
            lines.append(f"{tg}: {type(exc).__name__}: {exc}")
    return lines


# --------------------------------------------------------------------------
# subcommands


def _cmd_limit(args, config: Config, out: _Out) -> int:
    e = parse(args.expression)
    target = parse_target(args.at)
    result = limit(e, target, config.window, tolerance=config.tolerance)
    series = _series_lines(e, target, config.window) if config.show_series else None
    out.emit(str(result), _record(f"limit {args.expression} at {target}", result, series))
    return 0


def _cmd_st(args, config: Config, out: _Out) -> int:
    e = parse(args.expression, variable="dx")
    values = []
    for sign in (1.0, -1.0):
        values.append(standard_part_with_retry(lambda w, s=sign: eval_hyper(e, monomial(s, 1, w)), config.window))
    positive, negative = values
    result = positive if isinstance(positive, Indeterminate) else Value(positive)
    text = str(result)
    diagnostics = []
    if not isinstance(negative, Indeterminate) and not isinstance(positive, Indeterminate):
        if negative != positive:
            text += f" (negative orientation: {format_ext(negative)})"
            diagnostics.append(f"negative orientation gives {format_ext(negative)}")
    elif isinstance(negative, Indeterminate) != isinstance(positive, Indeterminate):
        text += f" (negative orientation: {negative})"
        diagnostics.append(f"negative orientation gives {negative}")
    series = None
    if config.show_series:
        series = []
        for label, sign in (("dx>0", 1.0), ("dx<0", -1.0)):
            try:
                series.append(f"{label}: {format_hyper(eval_hyper(e, monomial(sign, 1, config.window)))}")
            except HyperlimError as exc:
                series.append(f"{label}: {type(exc).__name__}: {exc}")
    record = _record(f"st {args.expression}", result, series, diagnostics)
    if not isinstance(negative, Indeterminate):
        record["left"] = _json_number(negative)
    if not isinstance(positive, Indeterminate):
        record["right"] = _json_number(positive)
    out.emit(text, record)
    return 0


def _cmd_derive(args, config: Config, out: _Out) -> int:
    e = parse(args.expression)
    result = derivative_at(e, args.at, config.window, tolerance=config.tolerance)
    series = None
    if config.show_series:
        series = []
        base = from_real(args.at, config.window)
        for label, sign in (("h<0", -1.0), ("h>0", 1.0)):
            h = monomial(sign, 1, config.window)
            try:
                quotient = div(sub(eval_hyper(e, base + h), eval_hyper(e, base)), h)
                series.append(f"{label}: {format_hyper(quotient)}")
            except HyperlimError as exc:
                series.append(f"{label}: {type(exc).__name__}: {exc}")
    out.emit(str(result), _record(f"derive {args.expression} at {args.at!r}", result, series))
    return 0


def read_points(path) -> list:
    points = []
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].replace(",", " ").replace(";", " ").strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InvalidInput(f"{path}:{number}: expected two numbers")
        try:
            points.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise InvalidInput(f"{path}:{number}: expected two numbers") from None
    return points


def _cmd_counterexample(args, config: Config, out: _Out) -> int:
    try:
        L = parse_ext(args.limit_value)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    e = counterexample_poly(read_points(args.points), args.at, L)
    text = to_text(e)
    record = {
        "query": f"counterexample at {args.at!r} with limit {format_ext(L)}",
        "kind": "function",
        "value": text,
        "left": None,
        "right": None,
        "diagnostics": [],
    }
    out.emit(text, record)
    return 0


def _cmd_check(args, config: Config, out: _Out) -> int:
    cases = read_corpus(args.corpus)
    failed = 0
    for case in cases:
        outcome = check_case(case, config.window, tolerance=config.tolerance)
        status = "PASS" if outcome.passed else "FAIL"
        failed += not outcome.passed
        got = str(outcome.result) if outcome.result is not None else outcome.error
        if outcome.result is not None:
            record = _record(case.text, outcome.result)
        else:
            record = {"query": case.text, "kind": "error", "value": None, "left": None, "right": None, "diagnostics": [outcome.error]}
        record["diagnostics"].append(status)
        out.emit(f"{status} line {case.line}: {case.text} -> {got}", record)
    summary = f"{len(cases) - failed} passed, {failed} failed"
    out.emit(summary, {"query": str(args.corpus), "kind": "summary", "value": len(cases) - failed, "left": None, "right": None, "diagnostics": [summary]})
    return 1 if failed else 0


_COMMANDS = {
    "limit": _cmd_limit,
    "st": _cmd_st,
    "derive": _cmd_derive,
    "counterexample": _cmd_counterexample,
    "check": _cmd_check,
}


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        config = _config(args)
    except _UsageError as exc:
        stderr.write(parser.format_usage() + str(exc) + "\n")
        return 2
    except (InvalidInput, argparse.ArgumentTypeError) as exc:
        stderr.write(f"hyperlim: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, config, _Out(config, stdout))
    except (ParseError, InvalidInput) as exc:
        stderr.write(f"hyperlim: error: {exc}\n")
        return 2
    except (HyperlimError, OSError) as exc:
        stderr.write(f"hyperlim: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))

