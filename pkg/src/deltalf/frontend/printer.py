"""Render terms in the concrete syntax accepted by the parser."""

from typing import Sequence

from ..kernel.syntax import (
    App,
    ConstFam,
    ConstObj,
    FamApp,
    InjL,
    InjR,
    InterFam,
    Lam,
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
    constants,
    free_vars,
)
from ..util import fresh_name

# Binding strength, loosest first
BINDER, ARROW, UNION, INTER, APPLY, PREFIX, ATOM = range(7)


class _Printer:
    def __init__(self, reserved: frozenset[str], scope: Sequence[str]):
        self.reserved = reserved
        self.scope: list[str | None] = list(scope)

    def bind(self, hint: str) -> str:
        base = "x" if hint in ("", "_") else hint
        return fresh_name(base, self.reserved | {name for name in self.scope if name})

    def under(self, name: str | None, body: Term, level: int) -> str:
        self.scope.append(name)
        try:
            return self.render(body, level)
        finally:
            self.scope.pop()

    def render(self, term: Term, level: int) -> str:
        text, own = self._render(term)
        return f"({text})" if own < level else text

    def _render(self, term: Term) -> tuple[str, int]:
        match term:
            case Sort():
                return "Type", ATOM
            case ConstFam(name) | ConstObj(name):
                return name, ATOM
            case Var(index):
                if index < len(self.scope) and self.scope[-1 - index]:
                    return self.scope[-1 - index], ATOM
                return f"#{index}", ATOM
            case Lam(domain, body, hint) | RelLam(domain, body, hint):
                keyword = "fun" if isinstance(term, Lam) else "sfun"
                name = self.bind(hint)
                domain_text = self.render(domain, BINDER)
                return f"{keyword} {name} : {domain_text} => {self.under(name, body, BINDER)}", BINDER
            case PiFam(domain, body, hint) | PiKind(domain, body, hint):
                if 0 in free_vars(body):
                    name = self.bind(hint)
                    domain_text = self.render(domain, BINDER)
                    return f"({name} : {domain_text}) -> {self.under(name, body, BINDER)}", ARROW
                return f"{self.render(domain, UNION)} -> {self.under(None, body, BINDER)}", ARROW
            case RelArrowFam(domain, codomain):
                return f"{self.render(domain, UNION)} >-> {self.render(codomain, BINDER)}", ARROW
            case UnionFam(left, right):
                return f"{self.render(left, UNION)} | {self.render(right, INTER)}", UNION
            case InterFam(left, right):
                return f"{self.render(left, INTER)} & {self.render(right, APPLY)}", INTER
            case App(fn, arg) | FamApp(fn, arg):
                return f"{self.render(fn, APPLY)} {self.render(arg, ATOM)}", APPLY
            case RelApp(fn, arg):
                return f"{self.render(fn, APPLY)} $ {self.render(arg, ATOM)}", APPLY
            case ProjL(inner):
                return f"proj_l {self.render(inner, PREFIX)}", PREFIX
            case ProjR(inner):
                return f"proj_r {self.render(inner, PREFIX)}", PREFIX
            case InjL(other, inner):
                return f"inj_l [{self.render(other, BINDER)}] {self.render(inner, PREFIX)}", PREFIX
            case InjR(other, inner):
                return f"inj_r [{self.render(other, BINDER)}] {self.render(inner, PREFIX)}", PREFIX
            case SPair(left, right):
                return f"<{self.render(left, BINDER)}, {self.render(right, BINDER)}>", ATOM
            case SCoPair(left, right):
                return f"[{self.render(left, BINDER)}, {self.render(right, BINDER)}]", ATOM
        raise TypeError(f"Cannot print {term!r}")


def print_term(
    term: Term, signature: Signature | None = None, scope: Sequence[str] = ()
) -> str:
    """Render ``term`` so that parsing the text gives back an α-equivalent term.

    :param signature: Constants binder names must avoid, besides those in ``term``
    :param scope: Names of the free variables, outermost first
    """
    reserved = constants(term)
    if signature is not None:
        reserved |= signature.names
    return _Printer(reserved, scope).render(term, BINDER)
