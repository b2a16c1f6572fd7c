from typing import TYPE_CHECKING, Any, Iterable

if TYPE_CHECKING:  # pragma: no cover
    from .types import Rule, SourceSpan


class DeltaLFError(Exception):
    pass


class ParseError(DeltaLFError):
    """Source text does not follow the grammar.

    :param message: Human readable description
    :param span: Location of the offending token, when known
    :param expected: Terminals the parser would have accepted
    :param token: Text of the offending token
    """

    def __init__(
        self,
        message: str,
        span: "SourceSpan | None" = None,
        expected: Iterable[str] = (),
        token: str | None = None,
    ):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = tuple(sorted(expected))
        self.token = token


class ScopeError(ParseError):
    """A name is unbound, or a binder shadows a signature constant."""


class SyntaxCategoryError(DeltaLFError):
    """A node mixes kinds, families and objects illegally."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        super().__init__(message)
        self.message = message
        self.path = path
        self.span: "SourceSpan | None" = None


class KernelError(DeltaLFError):
    """First failing premise of a typing rule.

    :param rule: Tag of the rule whose premise failed
    :param message: Human readable description of the premise
    :param path: Position of the offending subterm inside the judged term
    :param expected: Classifier the premise required, if any
    :param actual: Classifier that was found, if any
    :param verdict: Essence verdict for proof-functional side-conditions
    :param scope: Names of the context the classifiers live in, outermost first
    """

    def __init__(
        self,
        rule: "Rule",
        message: str,
        path: tuple[int, ...] = (),
        expected: Any = None,
        actual: Any = None,
        verdict: Any = None,
        scope: tuple[str, ...] = (),
    ):
        super().__init__(f"{rule.value} {message}")
        self.rule = rule
        self.message = message
        self.path = path
        self.expected = expected
        self.actual = actual
        self.verdict = verdict
        self.scope = scope
        self.span: "SourceSpan | None" = None


class DuplicateDeclaration(KernelError):
    pass


class OutOfFuelError(DeltaLFError):
    """Normalization gave up after ``fuel`` steps."""

    def __init__(self, fuel: int):
        super().__init__(f"normalization did not terminate within {fuel} steps")
        self.fuel = fuel
        self.span: "SourceSpan | None" = None


class NotSimpleTypeError(DeltaLFError):
    """A family uses dependencies, relevant arrows or applications."""

    def __init__(self, message: str):
        super().__init__(message)
        self.span: "SourceSpan | None" = None


class NotDerivableError(DeltaLFError):
    pass
