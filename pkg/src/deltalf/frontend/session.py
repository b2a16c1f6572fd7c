"""Execute commands against a growing signature."""

import asyncio
from asyncio.coroutines import iscoroutinefunction
from collections.abc import Callable
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
import logging
import os
from types import NoneType
from typing import Iterator, NotRequired, TypedDict

from lark import Tree

from ..errors import (
    DeltaLFError,
    KernelError,
    NotDerivableError,
    NotSimpleTypeError,
    OutOfFuelError,
    ParseError,
    SyntaxCategoryError,
)
from ..kernel.checker import Checker
from ..kernel.essence import essence
from ..kernel import pure
from ..kernel.reduction import Redex, StepCallback, normalize
from ..kernel.syntax import (
    Context,
    RelArrowFam,
    Signature,
    SignatureEntry,
    Term,
    classify,
)
from ..subtyping.coerce import coercion
from ..subtyping.decide import decide_sub
from ..subtyping.models import NotDerivable, from_family
from ..types import Category, EventType, KernelSettings, Rule, SourceSpan
from .parser import (
    Axiom,
    Check,
    Command,
    Definition,
    Essence,
    Eval,
    Load,
    Quit,
    SetFuel,
    Subtype,
    parse,
    parse_expression,
)
from .printer import print_term
from .resolve import Resolved, resolve

_EMPTY = Context()


@dataclass(frozen=True)
class SessionSettings:
    """Settings of a session.

    :param kernel: Step budgets of the kernel
    :param trace: Report every reduction step of ``Eval``
    :param emit_coercion: Print ``Subtype`` answers as loadable definitions
    """

    kernel: KernelSettings = field(default_factory=KernelSettings)
    trace: bool = False
    emit_coercion: bool = False


@dataclass(frozen=True)
class SessionState:
    """Everything a command can read or change.

    :param directory: Base for relative ``Load`` paths
    :param coercions: Number of coercions emitted so far
    :param loading: Files currently being loaded, innermost last
    """

    signature: Signature = field(default_factory=Signature)
    settings: SessionSettings = field(default_factory=SessionSettings)
    directory: str | None = None
    coercions: int = 0
    halted: bool = False
    loading: tuple[str, ...] = ()


class SessionEvent(TypedDict):
    """Session event as emitted to subscribers."""

    type: EventType
    command: NotRequired[Command]
    output: NotRequired[str]
    redex: NotRequired[Redex]
    term: NotRequired[Term]
    error: NotRequired[DeltaLFError]


EventCallBackType = Callable[[EventType, SessionEvent | None], None]
EventSubscriptionType = tuple[EventCallBackType, "tuple[EventType] | None"]

_EVENTS: dict[type, EventType] = {
    Axiom: EventType.DECLARED,
    Definition: EventType.DECLARED,
    Check: EventType.CHECKED,
    Eval: EventType.EVALUATED,
    Essence: EventType.ESSENCE,
    Subtype: EventType.SUBTYPE,
    Load: EventType.LOADED,
}


@contextmanager
def _located(fallback: SourceSpan, resolved: Resolved | None = None) -> Iterator[None]:
    """Attach a source span to errors escaping the block."""
    try:
        yield
    except (KernelError, SyntaxCategoryError) as err:
        if err.span is None:
            located = resolved.locate(err.path) if resolved is not None else None
            err.span = located or fallback
        raise
    except (OutOfFuelError, NotSimpleTypeError, NotDerivableError) as err:
        if getattr(err, "span", None) is None:
            err.span = fallback
        raise


def _resolve(state: SessionState, tree: Tree, span: SourceSpan, expect: Category) -> Resolved:
    resolved = resolve(tree, state.signature, file=span.file, expect=expect)
    with _located(span, resolved):
        classify(resolved.term)
    return resolved


def _declare(
    state: SessionState, name: str, classifier: Term, definition: Term | None
) -> Signature:
    checker = Checker(state.signature, state.settings.kernel)
    if classify(classifier) is Category.OBJECT:
        raise SyntaxCategoryError(f"classifier of {name} must be a kind or a family")
    entry = SignatureEntry(
        name, classifier, classify(classifier) is Category.KIND, definition=definition
    )
    return checker.declare(entry)


def _check(state: SessionState, command: Check) -> str:
    resolved = _resolve(state, command.term, command.span, Category.OBJECT)
    checker = Checker(state.signature, state.settings.kernel)
    with _located(command.span, resolved):
        if classify(resolved.term) is Category.KIND:
            checker.check_kind(_EMPTY, resolved.term)
            return "Kind"
        result = checker.typed(_EMPTY, resolved.term)
    return print_term(result.normal_form, state.signature)


def _evaluate(state: SessionState, command: Eval, on_step: StepCallback | None) -> str:
    resolved = _resolve(state, command.term, command.span, Category.OBJECT)
    checker = Checker(state.signature, state.settings.kernel)
    with _located(command.span, resolved):
        if classify(resolved.term) is Category.KIND:
            checker.check_kind(_EMPTY, resolved.term)
        else:
            checker.typed(_EMPTY, resolved.term)
        unfolded = state.signature.unfold(resolved.term)
        result = normalize(unfolded, state.settings.kernel.fuel, on_step)
    return print_term(result, state.signature)


def _essence(state: SessionState, command: Essence) -> str:
    resolved = _resolve(state, command.term, command.span, Category.OBJECT)
    checker = Checker(state.signature, state.settings.kernel)
    with _located(command.span, resolved):
        checker.typed(_EMPTY, resolved.term)
        return pure.show(essence(state.signature.unfold(resolved.term)))


def _subtype(state: SessionState, command: Subtype) -> tuple[SessionState, str]:
    lhs = _resolve(state, command.lhs, command.span, Category.FAMILY)
    rhs = _resolve(state, command.rhs, command.span, Category.FAMILY)
    checker = Checker(state.signature, state.settings.kernel)
    with _located(command.span):
        checker.check_is_type(_EMPTY, lhs.term, (), Rule.CONV)
        checker.check_is_type(_EMPTY, rhs.term, (), Rule.CONV)
        derivation = decide_sub(
            state.signature,
            from_family(lhs.term, state.signature),
            from_family(rhs.term, state.signature),
        )
        if isinstance(derivation, NotDerivable):
            if state.settings.emit_coercion:
                raise NotDerivableError(
                    f"{print_term(lhs.term)} <= {print_term(rhs.term)} is not derivable"
                )
            return state, "not derivable"
        witness = coercion(derivation)
        checker.check_type(_EMPTY, witness, RelArrowFam(lhs.term, rhs.term))
    text = print_term(witness, state.signature)
    if not state.settings.emit_coercion:
        return state, text
    count = state.coercions + 1
    arrow = print_term(RelArrowFam(lhs.term, rhs.term), state.signature)
    return replace(state, coercions=count), f"Definition coerce_{count} : {arrow} := {text}."


def _load(
    state: SessionState, command: Load, on_step: StepCallback | None
) -> tuple[SessionState, str]:
    base = state.directory
    if command.span.file is not None:
        base = os.path.dirname(command.span.file)
    path = os.path.normpath(os.path.join(base or os.getcwd(), command.path))
    if path in state.loading:
        raise ParseError(f"{command.path} is already being loaded", command.span)
    try:
        with open(path, encoding="utf-8") as source:
            text = source.read()
    except OSError as err:
        raise ParseError(f"cannot read {command.path}: {err.strerror}", command.span) from err
    inner = replace(state, loading=state.loading + (path,))
    outputs = []
    for loaded in parse(text, path):
        inner, output = repl_step(inner, loaded, on_step)
        if output:
            outputs.append(output)
        if inner.halted:
            break
    return replace(inner, loading=state.loading, halted=False), "\n".join(outputs)


def repl_step(
    state: SessionState, command: Command, on_step: StepCallback | None = None
) -> tuple[SessionState, str]:
    """Run one command.

    :param on_step: Receives every reduction step of ``Eval`` when tracing
    :returns: The new state and the text to show
    :raises DeltaLFError: With a source span; the caller keeps the old state
    """
    if not state.settings.trace:
        on_step = None
    match command:
        case Axiom(name, classifier, span):
            resolved = _resolve(state, classifier, span, Category.FAMILY)
            with _located(span, resolved):
                signature = _declare(state, name, resolved.term, None)
            return replace(state, signature=signature), f"{name} is declared"
        case Definition(name, classifier, body, span):
            defined = _resolve(state, body, span, Category.OBJECT)
            with _located(span, defined):
                if classifier is None:
                    checker = Checker(state.signature, state.settings.kernel)
                    declared = checker.typed(_EMPTY, defined.term).classifier
                else:
                    declared = _resolve(state, classifier, span, Category.FAMILY).term
                signature = _declare(state, name, declared, defined.term)
            return replace(state, signature=signature), f"{name} is defined"
        case Check():
            return state, _check(state, command)
        case Eval():
            return state, _evaluate(state, command, on_step)
        case Essence():
            return state, _essence(state, command)
        case Subtype():
            return _subtype(state, command)
        case Load():
            return _load(state, command, on_step)
        case SetFuel(kind, amount):
            kernel = replace(state.settings.kernel, **{kind: amount})
            settings = replace(state.settings, kernel=kernel)
            return replace(state, settings=settings), f"{kind} set to {amount}"
        case Quit():
            return replace(state, halted=True), ""
    raise TypeError(f"Unknown command {command!r}")


def evaluate_expression(
    state: SessionState, text: str, on_step: StepCallback | None = None
) -> str:
    """Normalize a standalone expression.

    Names the signature does not declare are read as constants. The
    expression is only type-checked when it has none of them.
    """
    span = SourceSpan(None, 0, len(text), 1, 1)
    resolved = resolve(parse_expression(text), state.signature, open_constants=True)
    with _located(span, resolved):
        term = resolved.term
        if not resolved.opened:
            checker = Checker(state.signature, state.settings.kernel)
            if classify(term) is Category.KIND:
                checker.check_kind(_EMPTY, term)
            else:
                checker.typed(_EMPTY, term)
        result = normalize(state.signature.unfold(term), state.settings.kernel.fuel, on_step)
    return print_term(result, state.signature)


class Session:
    """Mutable wrapper around a session state that reports what happens."""

    def __init__(
        self,
        name: str = "deltalf",
        settings: SessionSettings | None = None,
        directory: str | None = None,
    ):
        self.logger = logging.getLogger(f"{__package__}[{name}]")
        self.state = SessionState(settings=settings or SessionSettings(), directory=directory)
        self._subscribers: list[EventSubscriptionType] = []

    @property
    def signature(self) -> Signature:
        return self.state.signature

    @property
    def halted(self) -> bool:
        return self.state.halted

    def subscribe(
        self,
        callback: EventCallBackType,
        event_filter: EventType | tuple[EventType] | None = None,
    ) -> Callable:
        """
        Subscribe to events emitted

        Parameters:
            - `callback` - callback function to call when an event emits.
            - `event_filter` - Optionally provide an EventType as filter.

        Returns:
            function to unsubscribe.
        """
        if not isinstance(event_filter, NoneType | tuple):
            event_filter = (event_filter,)
        subscription = (callback, event_filter)

        def unsubscribe():
            self._subscribers.remove(subscription)

        self._subscribers.append(subscription)
        return unsubscribe

    def emit(self, event_type: EventType, data: SessionEvent | None = None) -> None:
        """Emit event to all listeners."""
        for callback, event_filter in self._subscribers:
            try:
                if event_filter is not None and event_type not in event_filter:
                    continue
                if iscoroutinefunction(callback):
                    asyncio.create_task(callback(event_type, data))
                else:
                    callback(event_type, data)
            except Exception:
                self.logger.exception("Unhandled exception in a session subscriber")

    def _on_step(self, redex: Redex, term: Term) -> None:
        self.emit(EventType.STEP, {"type": EventType.STEP, "redex": redex, "term": term})

    def execute(self, command: Command) -> str:
        """Run a command, keeping the previous state when it fails."""
        try:
            self.state, output = repl_step(self.state, command, self._on_step)
        except DeltaLFError as err:
            self.logger.debug("Command failed: %s", err)
            self.emit(
                EventType.ERROR, {"type": EventType.ERROR, "command": command, "error": err}
            )
            raise
        event_type = _EVENTS.get(type(command))
        if event_type is EventType.DECLARED:
            self.logger.info("Accepted %s", command.name)
        if event_type is not None:
            self.emit(event_type, {"type": event_type, "command": command, "output": output})
        return output

    def run_source(self, text: str, file: str | None = None) -> list[str]:
        """Run every command of ``text`` until the first failure or ``Quit``."""
        try:
            commands = parse(text, file)
        except ParseError as err:
            self.emit(EventType.ERROR, {"type": EventType.ERROR, "error": err})
            raise
        outputs = []
        for command in commands:
            outputs.append(self.execute(command))
            if self.halted:
                break
        return outputs

    def run_file(self, path: str) -> list[str]:
        with open(path, encoding="utf-8") as source:
            text = source.read()
        self.logger.info("Checking %s", path)
        return self.run_source(text, path)


@dataclass
class FileReport:
    """Outcome of checking one file.

    :param outputs: Text of every successful command, in order
    :param steps: Traced reduction steps, each with the number of outputs before it
    :param error: First failure, if any
    """

    path: str
    outputs: list[str] = field(default_factory=list)
    steps: list[tuple[int, Redex, Term]] = field(default_factory=list)
    error: DeltaLFError | OSError | None = None


def check_file(path: str, settings: SessionSettings | None = None) -> FileReport:
    session = Session(os.path.basename(path), settings)
    report = FileReport(path)

    def record(event_type: EventType, data: SessionEvent | None) -> None:
        if event_type is EventType.STEP:
            report.steps.append((len(report.outputs), data["redex"], data["term"]))
        elif data is not None and "output" in data:
            report.outputs.append(data["output"])

    session.subscribe(record)
    try:
        session.run_file(path)
    except (DeltaLFError, OSError) as err:
        report.error = err
    return report


async def check_files(paths: list[str], settings: SessionSettings | None = None) -> list[FileReport]:
    """Check independent files concurrently, one session per file."""
    return list(
        await asyncio.gather(*[asyncio.to_thread(check_file, path, settings) for path in paths])
    )
