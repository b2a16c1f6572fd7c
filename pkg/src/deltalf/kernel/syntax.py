"""Raw term language shared by kinds, families and objects.

Variables are de Bruijn indices. Binders keep the user's name only as a
printing hint, so structural equality of two terms is α-equivalence.
"""

from dataclasses import dataclass, field, fields, replace
from functools import cache
from typing import Iterator, Optional

from ..errors import DuplicateDeclaration, SyntaxCategoryError
from ..types import Category, Rule

Path = tuple[int, ...]


@dataclass(frozen=True)
class Term:
    """Base class of every node of the term tree."""


# Kinds


@dataclass(frozen=True)
class Sort(Term):
    """The kind ``Type``."""


@dataclass(frozen=True)
class PiKind(Term):
    domain: Term
    body: Term
    hint: str = field(default="x", compare=False)


# Families


@dataclass(frozen=True)
class ConstFam(Term):
    name: str


@dataclass(frozen=True)
class PiFam(Term):
    domain: Term
    body: Term
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class RelArrowFam(Term):
    """Relevant arrow; the codomain never depends on the argument."""

    domain: Term
    codomain: Term


@dataclass(frozen=True)
class FamApp(Term):
    fam: Term
    arg: Term


@dataclass(frozen=True)
class InterFam(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class UnionFam(Term):
    left: Term
    right: Term


# Objects


@dataclass(frozen=True)
class ConstObj(Term):
    name: str


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Lam(Term):
    domain: Term
    body: Term
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class RelLam(Term):
    domain: Term
    body: Term
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class RelApp(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class SPair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class SCoPair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class ProjL(Term):
    term: Term


@dataclass(frozen=True)
class ProjR(Term):
    term: Term


@dataclass(frozen=True)
class InjL(Term):
    """Left injection; ``other`` is the right summand of the union."""

    other: Term
    term: Term


@dataclass(frozen=True)
class InjR(Term):
    """Right injection; ``other`` is the left summand of the union."""

    other: Term
    term: Term


BINDERS = (PiKind, PiFam, Lam, RelLam)
KIND_NODES = (Sort, PiKind)
FAMILY_NODES = (ConstFam, PiFam, RelArrowFam, FamApp, InterFam, UnionFam)
_ATOMIC_FIELDS = frozenset({"name", "index", "hint"})


@cache
def _child_fields(cls: type) -> tuple[str, ...]:
    return tuple(f.name for f in fields(cls) if f.name not in _ATOMIC_FIELDS)


def children(term: Term) -> tuple[Term, ...]:
    """Direct subterms in field order."""
    return tuple(getattr(term, name) for name in _child_fields(type(term)))


def with_children(term: Term, new: tuple[Term, ...]) -> Term:
    names = _child_fields(type(term))
    if all(getattr(term, name) is child for name, child in zip(names, new)):
        return term
    return replace(term, **dict(zip(names, new)))


def binds(term: Term, position: int) -> bool:
    """Determine if the child at ``position`` sits under the node's binder."""
    return position == 1 and isinstance(term, BINDERS)


def _map(term: Term, func) -> Term:
    kids = children(term)
    if not kids:
        return term
    return with_children(
        term, tuple(func(child, int(binds(term, pos))) for pos, child in enumerate(kids))
    )


def shift(term: Term, amount: int, cutoff: int = 0) -> Term:
    """Add ``amount`` to every variable at or above ``cutoff``."""
    if amount == 0:
        return term
    match term:
        case Var(index):
            if index < cutoff:
                return term
            if index + amount < 0:
                raise ValueError(f"Shifting variable {index} by {amount} escapes its scope")
            return Var(index + amount)
    return _map(term, lambda child, bound: shift(child, amount, cutoff + bound))


def subst(term: Term, target: int, value: Term) -> Term:
    """Replace variable ``target`` by ``value`` and drop it from the scope.

    ``value`` lives in the scope of ``term`` with ``target`` removed; the
    variables above ``target`` move down by one.
    """

    def walk(node: Term, depth: int) -> Term:
        match node:
            case Var(index):
                if index == target + depth:
                    return shift(value, depth)
                if index > target + depth:
                    return Var(index - 1)
                return node
        return _map(node, lambda child, bound: walk(child, depth + bound))

    return walk(term, 0)


def instantiate(body: Term, value: Term) -> Term:
    """Substitute ``value`` for the bound variable of ``body`` in place.

    ``value`` may itself mention variable 0 of the surrounding scope; the
    result lives in a scope of the same length as ``body``.
    """
    return subst(shift(body, 1, 1), 0, value)


class _Escapes(Exception):
    pass


def abstract_occurrences(term: Term, pattern: Term) -> Optional[Term]:
    """Replace every occurrence of ``pattern`` by variable 0.

    Both arguments share a scope whose variable 0 is consumed by the
    abstraction. Returns None when that variable also occurs outside the
    pattern.
    """
    patterns: dict[int, Term] = {}

    def walk(node: Term, depth: int) -> Term:
        if depth not in patterns:
            patterns[depth] = shift(pattern, depth)
        if node == patterns[depth]:
            return Var(depth)
        match node:
            case Var(index) if index == depth:
                raise _Escapes
        return _map(node, lambda child, bound: walk(child, depth + bound))

    try:
        return walk(term, 0)
    except _Escapes:
        return None


def free_vars(term: Term) -> frozenset[int]:
    match term:
        case Var(index):
            return frozenset({index})
    found: set[int] = set()
    for pos, child in enumerate(children(term)):
        inner = free_vars(child)
        if binds(term, pos):
            inner = frozenset(index - 1 for index in inner if index > 0)
        found |= inner
    return frozenset(found)


def constants(term: Term) -> frozenset[str]:
    match term:
        case ConstFam(name) | ConstObj(name):
            return frozenset({name})
    found: frozenset[str] = frozenset()
    for child in children(term):
        found |= constants(child)
    return found


def term_size(term: Term) -> int:
    return 1 + sum(term_size(child) for child in children(term))


def subterms(term: Term, path: Path = (), depth: int = 0) -> Iterator[tuple[Path, Term, int]]:
    """Every subterm with its path and the number of binders above it."""
    yield path, term, depth
    for pos, child in enumerate(children(term)):
        yield from subterms(child, path + (pos,), depth + int(binds(term, pos)))


def subterm_at(term: Term, path: Path) -> Term:
    for pos in path:
        term = children(term)[pos]
    return term


def replace_at(term: Term, path: Path, value: Term) -> Term:
    if not path:
        return value
    kids = list(children(term))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], value)
    return with_children(term, tuple(kids))


def rename_hints(term: Term, rename) -> Term:
    """Apply ``rename`` to every binder hint; the result is α-equivalent."""
    renamed = _map(term, lambda child, _: rename_hints(child, rename))
    if isinstance(renamed, BINDERS):
        return replace(renamed, hint=rename(renamed.hint))
    return renamed


def classify(term: Term, path: Path = ()) -> Category:
    """Syntactic category of a node, checking its children agree.

    :raises SyntaxCategoryError: When a child has the wrong category
    """

    def expect(child_pos: int, *allowed: Category) -> Category:
        found = classify(children(term)[child_pos], path + (child_pos,))
        if found not in allowed:
            names = " or ".join(category.value for category in allowed)
            raise SyntaxCategoryError(
                f"expected {names} but found {found.value}", path + (child_pos,)
            )
        return found

    match term:
        case Sort():
            return Category.KIND
        case PiKind():
            expect(0, Category.FAMILY)
            expect(1, Category.KIND)
            return Category.KIND
        case ConstFam():
            return Category.FAMILY
        case PiFam() | RelArrowFam() | InterFam() | UnionFam():
            expect(0, Category.FAMILY)
            expect(1, Category.FAMILY)
            return Category.FAMILY
        case FamApp():
            expect(0, Category.FAMILY)
            expect(1, Category.OBJECT)
            return Category.FAMILY
        case ConstObj() | Var():
            return Category.OBJECT
        case Lam() | RelLam() | InjL() | InjR():
            expect(0, Category.FAMILY)
            expect(1, Category.OBJECT)
            return Category.OBJECT
        case App() | RelApp() | SPair() | SCoPair():
            expect(0, Category.OBJECT)
            expect(1, Category.OBJECT)
            return Category.OBJECT
        case ProjL() | ProjR():
            expect(0, Category.OBJECT)
            return Category.OBJECT
    raise SyntaxCategoryError(f"unknown node {type(term).__name__}", path)


@dataclass(frozen=True)
class SignatureEntry:
    """Declaration of a constant.

    :param name: Name of the constant
    :param classifier: Kind of a family constant, or family of an object constant
    :param is_family: True when the constant names a family
    :param definition: Body of a definition, None for axioms
    :param unfolded: Definition with every earlier definition expanded
    """

    name: str
    classifier: Term
    is_family: bool
    definition: Term | None = None
    unfolded: Term | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Signature:
    """Ordered declarations of family and object constants."""

    entries: tuple[SignatureEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "_index", {entry.name: entry for entry in self.entries})

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> frozenset[str]:
        return frozenset(self._index)

    def lookup(self, name: str) -> Optional[SignatureEntry]:
        return self._index.get(name)

    def extend(self, entry: SignatureEntry) -> "Signature":
        """Append a declaration, expanding its definition against this prefix."""
        if entry.name in self:
            raise DuplicateDeclaration(
                Rule.KIND_DECL if entry.is_family else Rule.TYPE_DECL,
                f"{entry.name} is already declared",
            )
        if entry.definition is not None:
            entry = replace(entry, unfolded=self.unfold(entry.definition))
        return Signature(self.entries + (entry,))

    def has_definitions(self) -> bool:
        return any(entry.definition is not None for entry in self.entries)

    def unfold(self, term: Term) -> Term:
        """Expand every defined constant in ``term``."""
        if not self.has_definitions():
            return term

        def walk(node: Term) -> Term:
            match node:
                case ConstFam(name) | ConstObj(name):
                    entry = self._index.get(name)
                    if entry is None or entry.definition is None:
                        return node
                    if entry.unfolded is not None:
                        return entry.unfolded
                    return walk(entry.definition)
            return _map(node, lambda child, _: walk(child))

        return walk(term)


@dataclass(frozen=True)
class Binding:
    name: str
    family: Term


@dataclass(frozen=True)
class Context:
    """Variable declarations, outermost first."""

    bindings: tuple[Binding, ...] = ()

    def __len__(self) -> int:
        return len(self.bindings)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(binding.name for binding in self.bindings)

    def push(self, name: str, family: Term) -> "Context":
        return Context(self.bindings + (Binding(name, family),))

    def lookup(self, index: int) -> Optional[Term]:
        """Family of variable ``index``, shifted into the full context."""
        if index < 0 or index >= len(self.bindings):
            return None
        return shift(self.bindings[-1 - index].family, index + 1)


def well_scoped(signature: Signature, context: Context, term: Term) -> bool:
    """Determine if every constant is declared and every variable is bound."""
    for _, node, depth in subterms(term):
        match node:
            case Var(index) if index - depth >= len(context):
                return False
            case ConstFam(name):
                entry = signature.lookup(name)
                if entry is None or not entry.is_family:
                    return False
            case ConstObj(name):
                entry = signature.lookup(name)
                if entry is None or entry.is_family:
                    return False
    return True
