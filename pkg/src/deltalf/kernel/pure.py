"""Untyped λ-terms: the target of essence and erasure."""

from dataclasses import dataclass, field
from typing import Iterator, Sequence


@dataclass(frozen=True)
class PureTerm:
    pass


@dataclass(frozen=True)
class Var(PureTerm):
    index: int


@dataclass(frozen=True)
class Const(PureTerm):
    name: str


@dataclass(frozen=True)
class Lam(PureTerm):
    body: PureTerm
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App(PureTerm):
    fn: PureTerm
    arg: PureTerm


def shift(term: PureTerm, amount: int, cutoff: int = 0) -> PureTerm:
    if amount == 0:
        return term
    match term:
        case Var(index):
            return Var(index + amount) if index >= cutoff else term
        case Lam(body, hint):
            return Lam(shift(body, amount, cutoff + 1), hint)
        case App(fn, arg):
            return App(shift(fn, amount, cutoff), shift(arg, amount, cutoff))
    return term


def subst(term: PureTerm, target: int, value: PureTerm) -> PureTerm:
    """Replace variable ``target`` by ``value``, dropping it from the scope."""
    match term:
        case Var(index):
            if index == target:
                return value
            return Var(index - 1) if index > target else term
        case Lam(body, hint):
            return Lam(subst(body, target + 1, shift(value, 1)), hint)
        case App(fn, arg):
            return App(subst(fn, target, value), subst(arg, target, value))
    return term


def free_vars(term: PureTerm) -> frozenset[int]:
    match term:
        case Var(index):
            return frozenset({index})
        case Lam(body):
            return frozenset(index - 1 for index in free_vars(body) if index > 0)
        case App(fn, arg):
            return free_vars(fn) | free_vars(arg)
    return frozenset()


def size(term: PureTerm) -> int:
    match term:
        case Lam(body):
            return 1 + size(body)
        case App(fn, arg):
            return 1 + size(fn) + size(arg)
    return 1


def reducts(term: PureTerm) -> Iterator[PureTerm]:
    """Every term reachable by contracting one β-redex."""
    match term:
        case App(fn, arg):
            if isinstance(fn, Lam):
                yield subst(fn.body, 0, arg)
            for reduct in reducts(fn):
                yield App(reduct, arg)
            for reduct in reducts(arg):
                yield App(fn, reduct)
        case Lam(body, hint):
            for reduct in reducts(body):
                yield Lam(reduct, hint)


def show(term: PureTerm, names: Sequence[str] = ()) -> str:
    """Render with named binders, e.g. ``fun x => x x``."""
    scope = list(names)

    def fresh(hint: str) -> str:
        candidate, counter = hint, 0
        while candidate in scope:
            counter += 1
            candidate = f"{hint}{counter}"
        return candidate

    def render(node: PureTerm, level: int) -> str:
        match node:
            case Var(index):
                return scope[-1 - index] if index < len(scope) else f"#{index}"
            case Const(name):
                return name
            case Lam(body, hint):
                name = fresh(hint)
                scope.append(name)
                text = f"fun {name} => {render(body, 0)}"
                scope.pop()
                return f"({text})" if level > 0 else text
            case App(fn, arg):
                text = f"{render(fn, 1)} {render(arg, 2)}"
                return f"({text})" if level > 1 else text
        raise TypeError(f"Not a pure term: {node!r}")

    return render(term, 0)
