"""Turn surface trees into de Bruijn terms against a signature and context."""

from dataclasses import dataclass, field
from typing import Optional

from lark import Token, Tree
from lark.visitors import Interpreter

from ..errors import ScopeError
from ..kernel.syntax import (
    App,
    ConstFam,
    ConstObj,
    Context,
    FamApp,
    InjL,
    InjR,
    InterFam,
    Lam,
    Path,
    PiFam,
    PiKind,
    ProjL,
    ProjR,
    RelApp,
    RelArrowFam,
    RelLam,
    SCoPair,
    Signature,
    Sort,
    SPair,
    Term,
    UnionFam,
    Var,
)
from ..types import Category, SourceSpan
from .parser import parse_expression, span_of

_FAMILY = Category.FAMILY
_OBJECT = Category.OBJECT


@dataclass(frozen=True, eq=False)
class Resolved:
    """A resolved term and where each of its subterms came from.

    :param spans: Source span of every subterm, by path
    :param opened: Unknown names that were accepted as constants
    """

    term: Term
    spans: dict[Path, SourceSpan] = field(default_factory=dict)
    opened: dict[str, Category] = field(default_factory=dict)

    def locate(self, path: Path) -> Optional[SourceSpan]:
        """Span of the innermost recorded subterm on ``path``."""
        for length in range(len(path), -1, -1):
            span = self.spans.get(path[:length])
            if span is not None:
                return span
        return None


class Resolver(Interpreter):
    """Resolve names, picking the node category from the surrounding syntax.

    Application builds a family application when its head is a family
    constant, and an arrow builds a kind when its body is one.
    """

    def __init__(
        self,
        signature: Signature,
        context: Context,
        file: str | None = None,
        open_constants: bool = False,
    ):
        self.signature = signature
        self.file = file
        self.open_constants = open_constants
        self.scope: list[str | None] = list(context.names)
        self.spans: dict[Path, SourceSpan] = {}
        self.opened: dict[str, Category] = {}
        self._path: list[int] = []
        self._expect: list[Category] = []

    def resolve(self, tree: Tree, expect: Category = _OBJECT) -> Resolved:
        self._expect.append(expect)
        try:
            term = self.visit(tree)
        finally:
            self._expect.pop()
        return Resolved(term, dict(self.spans), dict(self.opened))

    def visit(self, tree: Tree) -> Term:
        term = super().visit(tree)
        if not tree.meta.empty:
            self.spans[tuple(self._path)] = span_of(tree, self.file)
        return term

    def _sub(
        self,
        tree: Tree,
        position: int,
        expect: Category,
        binder: str | None = "",
    ) -> Term:
        """Visit a child; an empty ``binder`` means the child is not under one."""
        self._path.append(position)
        self._expect.append(expect)
        bound = binder != ""
        if bound:
            self.scope.append(binder)
        try:
            return self.visit(tree)
        finally:
            if bound:
                self.scope.pop()
            self._expect.pop()
            self._path.pop()

    def _binder(self, token: Token) -> str:
        name = str(token)
        if name in self.signature:
            raise ScopeError(
                f"binder {name} shadows a declared constant",
                span_of(token, self.file),
                token=name,
            )
        return name

    # Atoms

    def name(self, tree: Tree) -> Term:
        token = tree.children[0]
        name = str(token)
        for distance, bound in enumerate(reversed(self.scope)):
            if bound == name:
                return Var(distance)
        entry = self.signature.lookup(name)
        if entry is not None:
            return ConstFam(name) if entry.is_family else ConstObj(name)
        if self.open_constants:
            category = self.opened.setdefault(name, self._expect[-1])
            return ConstFam(name) if category is _FAMILY else ConstObj(name)
        raise ScopeError(f"unbound name {name}", span_of(token, self.file), token=name)

    def sort(self, tree: Tree) -> Term:
        return Sort()

    # Binders

    def lam(self, tree: Tree) -> Term:
        token, domain, body = tree.children
        hint = self._binder(token)
        return Lam(self._sub(domain, 0, _FAMILY), self._sub(body, 1, _OBJECT, hint), hint)

    def rel_lam(self, tree: Tree) -> Term:
        token, domain, body = tree.children
        hint = self._binder(token)
        return RelLam(self._sub(domain, 0, _FAMILY), self._sub(body, 1, _OBJECT, hint), hint)

    def pi(self, tree: Tree) -> Term:
        token, domain, body = tree.children
        hint = self._binder(token)
        return self._product(
            self._sub(domain, 0, _FAMILY), self._sub(body, 1, _FAMILY, hint), hint
        )

    def arrow(self, tree: Tree) -> Term:
        domain, body = tree.children
        return self._product(self._sub(domain, 0, _FAMILY), self._sub(body, 1, _FAMILY, None))

    @staticmethod
    def _product(domain: Term, body: Term, hint: str = "x") -> Term:
        if isinstance(body, (Sort, PiKind)):
            return PiKind(domain, body, hint)
        return PiFam(domain, body, hint)

    # Families

    def rel_arrow(self, tree: Tree) -> Term:
        domain, codomain = tree.children
        return RelArrowFam(self._sub(domain, 0, _FAMILY), self._sub(codomain, 1, _FAMILY))

    def union(self, tree: Tree) -> Term:
        left, right = tree.children
        return UnionFam(self._sub(left, 0, _FAMILY), self._sub(right, 1, _FAMILY))

    def inter(self, tree: Tree) -> Term:
        left, right = tree.children
        return InterFam(self._sub(left, 0, _FAMILY), self._sub(right, 1, _FAMILY))

    # Objects

    def apply(self, tree: Tree) -> Term:
        fn, arg = tree.children
        head = self._sub(fn, 0, self._expect[-1])
        if isinstance(head, (ConstFam, FamApp)):
            return FamApp(head, self._sub(arg, 1, _OBJECT))
        return App(head, self._sub(arg, 1, _OBJECT))

    def rel_apply(self, tree: Tree) -> Term:
        fn, arg = tree.children
        return RelApp(self._sub(fn, 0, _OBJECT), self._sub(arg, 1, _OBJECT))

    def proj_l(self, tree: Tree) -> Term:
        return ProjL(self._sub(tree.children[0], 0, _OBJECT))

    def proj_r(self, tree: Tree) -> Term:
        return ProjR(self._sub(tree.children[0], 0, _OBJECT))

    def inj_l(self, tree: Tree) -> Term:
        other, term = tree.children
        return InjL(self._sub(other, 0, _FAMILY), self._sub(term, 1, _OBJECT))

    def inj_r(self, tree: Tree) -> Term:
        other, term = tree.children
        return InjR(self._sub(other, 0, _FAMILY), self._sub(term, 1, _OBJECT))

    def pair(self, tree: Tree) -> Term:
        left, right = tree.children
        return SPair(self._sub(left, 0, _OBJECT), self._sub(right, 1, _OBJECT))

    def copair(self, tree: Tree) -> Term:
        left, right = tree.children
        return SCoPair(self._sub(left, 0, _OBJECT), self._sub(right, 1, _OBJECT))


def resolve(
    tree: Tree,
    signature: Signature | None = None,
    context: Context | None = None,
    *,
    file: str | None = None,
    open_constants: bool = False,
    expect: Category = _OBJECT,
) -> Resolved:
    """Resolve a surface tree.

    :param open_constants: Accept unknown names as constants of the category
        their position demands
    :raises ScopeError: On an unbound name or a binder shadowing a constant
    """
    resolver = Resolver(signature or Signature(), context or Context(), file, open_constants)
    return resolver.resolve(tree, expect)


def parse_term(
    text: str,
    signature: Signature | None = None,
    context: Context | None = None,
    *,
    open_constants: bool = False,
) -> Term:
    return resolve(
        parse_expression(text), signature, context, open_constants=open_constants
    ).term
