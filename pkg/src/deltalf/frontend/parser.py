"""Parse source text into commands whose terms are still surface trees."""

from dataclasses import dataclass
from functools import cache
import logging

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..errors import ParseError
from ..types import SourceSpan
from ..util import parse_fuel_setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Axiom:
    name: str
    classifier: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Definition:
    name: str
    classifier: Tree | None
    body: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Check:
    term: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Eval:
    term: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Essence:
    term: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Subtype:
    lhs: Tree
    rhs: Tree
    span: SourceSpan


@dataclass(frozen=True)
class Load:
    path: str
    span: SourceSpan


@dataclass(frozen=True)
class SetFuel:
    kind: str
    amount: int
    span: SourceSpan


@dataclass(frozen=True)
class Quit:
    span: SourceSpan


Command = Axiom | Definition | Check | Eval | Essence | Subtype | Load | SetFuel | Quit


@cache
def _parser() -> Lark:
    return Lark.open(
        "deltalf.lark",
        rel_to=__file__,
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=True,
        start=["start", "expr"],
    )


def span_of(node: Tree | Token, file: str | None = None) -> SourceSpan:
    if isinstance(node, Token):
        return SourceSpan(file, node.start_pos, node.end_pos, node.line, node.column)
    meta = node.meta
    if meta.empty:
        return SourceSpan(file, 0, 0, 1, 1)
    return SourceSpan(file, meta.start_pos, meta.end_pos, meta.line, meta.column)


def _as_tree(node: Tree | Token) -> Tree:
    """Bare names are inlined by the grammar; wrap them so every term is a tree."""
    if isinstance(node, Token):
        return Tree("name", [node], meta=None)
    return node


def _unquote(token: Token) -> str:
    return token[1:-1].replace('\\"', '"').replace("\\\\", "\\")


def _translate(error: UnexpectedInput, text: str, file: str | None) -> ParseError:
    position = error.pos_in_stream or 0
    span = SourceSpan(file, position, position + 1, error.line, error.column)
    match error:
        case UnexpectedToken(token=token):
            expected = error.accepts or error.expected
            return ParseError(
                f"unexpected {token!r} at {span}", span, expected=expected, token=str(token)
            )
        case UnexpectedCharacters():
            character = text[position] if position < len(text) else ""
            return ParseError(
                f"unexpected character {character!r} at {span}",
                span,
                expected=error.allowed or (),
                token=character,
            )
        case UnexpectedEOF():
            return ParseError(f"unexpected end of input at {span}", span, expected=error.expected)
    return ParseError(str(error), span)


def _command(tree: Tree, file: str | None) -> Command:
    span = span_of(tree, file)
    children = tree.children
    match tree.data:
        case "axiom":
            return Axiom(str(children[0]), _as_tree(children[1]), span)
        case "definition":
            classifier = None if children[1] is None else _as_tree(children[1])
            return Definition(str(children[0]), classifier, _as_tree(children[2]), span)
        case "check":
            return Check(_as_tree(children[0]), span)
        case "eval":
            return Eval(_as_tree(children[0]), span)
        case "essence":
            return Essence(_as_tree(children[0]), span)
        case "subtype":
            return Subtype(_as_tree(children[0]), _as_tree(children[1]), span)
        case "load":
            return Load(_unquote(children[0]), span)
        case "set_fuel":
            name, amount = str(children[0]), int(children[1])
            try:
                parse_fuel_setting(name, amount)
            except ValueError as err:
                raise ParseError(str(err), span, token=name) from err
            return SetFuel(name, amount, span)
        case "quit":
            return Quit(span)
    raise ParseError(f"unknown command {tree.data}", span)


def parse(text: str, file: str | None = None) -> list[Command]:
    """Parse a whole source file.

    :raises ParseError: On the first syntax error, with its location
    """
    try:
        tree = _parser().parse(text, start="start")
    except UnexpectedInput as err:
        raise _translate(err, text, file) from err
    commands = [_command(child, file) for child in tree.children]
    logger.debug("Parsed %d commands from %s", len(commands), file or "<input>")
    return commands


def parse_expression(text: str, file: str | None = None) -> Tree:
    try:
        return _as_tree(_parser().parse(text, start="expr"))
    except UnexpectedInput as err:
        raise _translate(err, text, file) from err
