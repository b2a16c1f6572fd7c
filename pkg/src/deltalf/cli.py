"""Command line interface: ``deltalf check``, ``repl``, ``eval`` and ``metacheck``."""

import asyncio
from dataclasses import dataclass
import json
import logging
import sys
from typing import Any

import click

from . import const
from .errors import DeltaLFError, KernelError, OutOfFuelError, ParseError
from .frontend.printer import print_term
from .frontend.session import (
    FileReport,
    Session,
    SessionEvent,
    SessionSettings,
    check_files,
    evaluate_expression,
)
from .kernel.essence import BudgetExhausted
from .kernel.reduction import Redex
from .metacheck.suites import run_suites
from .types import EventType, KernelSettings

EXIT_OK = 0
EXIT_KERNEL = 1
EXIT_PARSE = 2
EXIT_FUEL = 3


@dataclass(frozen=True)
class CliOptions:
    settings: SessionSettings
    as_json: bool


def exit_code(error: BaseException | None) -> int:
    """Exit status for the first failure of a run."""
    match error:
        case None:
            return EXIT_OK
        case OSError() | ParseError():
            return EXIT_PARSE
        case OutOfFuelError() | KernelError(verdict=BudgetExhausted()):
            return EXIT_FUEL
    return EXIT_KERNEL


def _show(term: Any, scope: tuple[str, ...]) -> str | None:
    if term is None:
        return None
    return print_term(term, scope=scope)


def error_payload(error: BaseException) -> dict[str, Any]:
    """Machine readable form of an error: rule, span, message, expected, actual."""
    span = getattr(error, "span", None)
    payload: dict[str, Any] = {
        "rule": None,
        "span": None,
        "message": getattr(error, "message", None) or str(error),
        "expected": None,
        "actual": None,
    }
    if span is not None:
        payload["span"] = {
            "file": span.file,
            "start": span.start,
            "end": span.end,
            "line": span.line,
            "column": span.column,
        }
    if isinstance(error, KernelError):
        payload["rule"] = error.rule.value
        payload["expected"] = _show(error.expected, error.scope)
        payload["actual"] = _show(error.actual, error.scope)
    elif isinstance(error, ParseError):
        payload["expected"] = list(error.expected) or None
        payload["actual"] = error.token
    elif isinstance(error, OSError):
        payload["message"] = f"{error.filename}: {error.strerror}"
    return payload


def render_error(error: BaseException) -> str:
    payload = error_payload(error)
    span = getattr(error, "span", None)
    prefix = f"{span}: " if span is not None else ""
    rule = f"{payload['rule']} " if payload["rule"] else ""
    lines = [f"{prefix}error: {rule}{payload['message']}"]
    if payload["expected"]:
        expected = payload["expected"]
        if isinstance(expected, list):
            expected = ", ".join(expected)
        lines.append(f"  expected: {expected}")
    if payload["actual"]:
        lines.append(f"  actual:   {payload['actual']}")
    verdict = getattr(error, "verdict", None)
    if isinstance(verdict, BudgetExhausted):
        lines.append(f"  essence comparison gave up after {verdict.steps_used} steps")
    return "\n".join(lines)


def format_step(redex: Redex, term: Any) -> str:
    position = ".".join(str(index) for index in redex.position) or "root"
    return f"{redex.rule.value} at {position}: {print_term(term)}"


def _report_error(options: CliOptions, error: BaseException) -> None:
    if options.as_json:
        click.echo(json.dumps(error_payload(error), ensure_ascii=False))
    else:
        click.echo(render_error(error), err=True)


@click.group()
@click.option(
    "--fuel",
    type=click.IntRange(min=1),
    default=const.DEFAULT_FUEL,
    show_default=True,
    help="Maximum reduction steps per normalization.",
)
@click.option(
    "--essence-fuel",
    type=click.IntRange(min=1),
    default=const.DEFAULT_ESSENCE_FUEL,
    show_default=True,
    help="Maximum β steps per essence comparison.",
)
@click.option("--json", "as_json", is_flag=True, help="Report errors as JSON objects.")
@click.option("--trace", is_flag=True, help="Print every reduction step of Eval.")
@click.option(
    "--emit-coercion", is_flag=True, help="Print Subtype answers as loadable definitions."
)
@click.option("-v", "--verbose", count=True, help="Increase logging verbosity.")
@click.version_option(package_name="deltalf")
@click.pass_context
def cli(
    ctx: click.Context,
    fuel: int,
    essence_fuel: int,
    as_json: bool,
    trace: bool,
    emit_coercion: bool,
    verbose: int,
) -> None:
    """Kernel, REPL and metatheory harness for deltalf."""
    if verbose:
        logging.basicConfig(level=logging.INFO if verbose == 1 else logging.DEBUG)
    settings = SessionSettings(
        kernel=KernelSettings(fuel=fuel, essence_fuel=essence_fuel),
        trace=trace,
        emit_coercion=emit_coercion,
    )
    ctx.obj = CliOptions(settings, as_json)


@cli.command()
@click.argument("files", nargs=-1, required=True)
@click.pass_obj
def check(options: CliOptions, files: tuple[str, ...]) -> None:
    """Check source files; exit with the status of the first failing file."""
    reports: list[FileReport] = asyncio.run(check_files(list(files), options.settings))
    first_error = None
    for report in reports:
        steps = iter(report.steps)
        pending = next(steps, None)
        for position, output in enumerate([*report.outputs, ""]):
            while pending is not None and pending[0] == position:
                click.echo(format_step(pending[1], pending[2]))
                pending = next(steps, None)
            if output:
                click.echo(output)
        if report.error is not None:
            _report_error(options, report.error)
            first_error = first_error or report.error
    sys.exit(exit_code(first_error))


@cli.command()
@click.pass_obj
def repl(options: CliOptions) -> None:
    """Read commands from standard input until Quit or end of input."""
    session = Session("repl", options.settings)

    def on_event(event_type: EventType, data: SessionEvent | None) -> None:
        if data is not None and event_type is EventType.STEP:
            click.echo(format_step(data["redex"], data["term"]))

    session.subscribe(on_event, EventType.STEP)
    buffer = ""
    stdin = click.get_text_stream("stdin")
    interactive = stdin.isatty()
    while not session.halted:
        if interactive:
            click.echo("deltalf> " if not buffer else "   ...> ", nl=False)
        line = stdin.readline()
        if not line:
            break
        buffer += line
        if not buffer.rstrip().endswith("."):
            continue
        try:
            for output in session.run_source(buffer):
                if output:
                    click.echo(output)
        except DeltaLFError as err:
            _report_error(options, err)
        buffer = ""
    sys.exit(EXIT_OK)


@cli.command(name="eval")
@click.option("-e", "--expression", required=True, help="Expression to normalize.")
@click.option("--load", "loads", multiple=True, help="Source file to load first.")
@click.pass_obj
def eval_command(options: CliOptions, expression: str, loads: tuple[str, ...]) -> None:
    """Normalize an expression, reading unknown names as constants."""
    session = Session("eval", options.settings)
    try:
        for path in loads:
            session.run_file(path)
        on_step = None
        if options.settings.trace:

            def on_step(redex: Redex, term: Any) -> None:
                click.echo(format_step(redex, term))

        click.echo(evaluate_expression(session.state, expression, on_step))
    except (DeltaLFError, OSError) as err:
        _report_error(options, err)
        sys.exit(exit_code(err))
    sys.exit(EXIT_OK)


@cli.command()
@click.option("--seeds", type=click.IntRange(min=1), default=100, show_default=True)
@click.option(
    "--size", type=click.IntRange(min=0), default=const.DEFAULT_FUZZ_SIZE, show_default=True
)
@click.pass_obj
def metacheck(options: CliOptions, seeds: int, size: int) -> None:
    """Run the property suites over fuzzed well-typed terms."""
    reports = run_suites(seeds, size, options.settings.kernel)
    failed = False
    for report in reports:
        click.echo(
            f"{report.name}: {report.passed} passed, {report.failed} failed, "
            f"{report.skipped} skipped"
        )
        for rule, counts in sorted(report.step_counts.items()):
            summary = ", ".join(f"{steps}:{count}" for steps, count in sorted(counts.items()))
            click.echo(f"  {rule} steps {summary}")
        for counterexample in report.counterexamples:
            click.echo(f"  counterexample: {counterexample}")
        failed = failed or report.failed > 0
    sys.exit(EXIT_KERNEL if failed else EXIT_OK)
