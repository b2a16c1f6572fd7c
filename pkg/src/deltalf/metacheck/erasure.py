"""Forgetful mappings into simple types with a top and into pure λ-terms.

Dependencies in types are dropped, annotations survive as vacuous
redexes, and the family formers become applications of constants, so
that every redex of a term is still a redex of its image.
"""

from dataclasses import dataclass

from .. import const
from ..errors import SyntaxCategoryError
from ..kernel import pure
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
    Sort,
    SPair,
    Term,
    UnionFam,
    Var,
)
from ..subtyping.models import Arrow, Atom, Inter, SimpleType, Union


@dataclass(frozen=True)
class Top(SimpleType):
    """Image of the kind ``Type``."""

    def __str__(self) -> str:
        return "Top"


def erase_type(term: Term) -> SimpleType:
    """Simple type of a kind or a family, forgetting dependencies.

    :raises SyntaxCategoryError: When ``term`` is an object
    """
    match term:
        case Sort():
            return Top()
        case ConstFam(name):
            return Atom(name)
        case PiKind(domain, body) | PiFam(domain, body):
            return Arrow(erase_type(domain), erase_type(body))
        case RelArrowFam(domain, codomain):
            return Arrow(erase_type(domain), erase_type(codomain))
        case FamApp(fam, _):
            return erase_type(fam)
        case InterFam(left, right):
            return Inter(erase_type(left), erase_type(right))
        case UnionFam(left, right):
            return Union(erase_type(left), erase_type(right))
    raise SyntaxCategoryError(f"{type(term).__name__} is not a kind or a family")


def dependency_constant(domain: Term) -> str:
    """Name of the constant a product over ``domain`` erases to."""
    return f"c[{erase_type(domain)}]"


def _product(left: pure.PureTerm, right: pure.PureTerm) -> pure.PureTerm:
    return pure.App(pure.App(pure.Const(const.PRODUCT_CONSTANT), left), right)


def _annotated(domain: Term, body: Term, hint: str) -> pure.PureTerm:
    # (λy.λx.body) domain, with y vacuous
    inner = pure.shift(erase_obj(body), 1, 1)
    return pure.App(pure.Lam(pure.Lam(inner, hint), "y"), erase_obj(domain))


def erase_obj(term: Term) -> pure.PureTerm:
    """Pure λ-term simulating the reductions of ``term``."""
    match term:
        case Var(index):
            return pure.Var(index)
        case ConstObj(name) | ConstFam(name):
            return pure.Const(name)
        case Sort():
            return pure.Const(const.SORT_CONSTANT)
        case App(fn, arg) | RelApp(fn, arg) | FamApp(fn, arg):
            return pure.App(erase_obj(fn), erase_obj(arg))
        case Lam(domain, body, hint) | RelLam(domain, body, hint):
            return _annotated(domain, body, hint)
        case PiFam(domain, body, hint) | PiKind(domain, body, hint):
            head = pure.App(pure.Const(dependency_constant(domain)), erase_obj(domain))
            return pure.App(head, pure.Lam(erase_obj(body), hint))
        case RelArrowFam(left, right) | InterFam(left, right) | UnionFam(left, right):
            return _product(erase_obj(left), erase_obj(right))
        case SPair(left, _) | SCoPair(left, _):
            return erase_obj(left)
        case ProjL(inner) | ProjR(inner):
            return erase_obj(inner)
        case InjL(other, inner) | InjR(other, inner):
            return pure.App(pure.Lam(pure.shift(erase_obj(inner), 1), "y"), erase_obj(other))
    raise SyntaxCategoryError(f"cannot erase {type(term).__name__}")
