"""Essence: the untyped λ-term a typed object stands for."""

from dataclasses import dataclass

from ..errors import SyntaxCategoryError
from . import pure
from .syntax import (
    App,
    ConstObj,
    InjL,
    InjR,
    Lam,
    ProjL,
    ProjR,
    RelApp,
    RelLam,
    SCoPair,
    SPair,
    Term,
    Var,
)


@dataclass(frozen=True)
class Equal:
    pass


@dataclass(frozen=True)
class Unequal:
    pass


@dataclass(frozen=True)
class BudgetExhausted:
    """At least one side did not reach a β-normal form within the step budget.

    ``steps_used`` totals the steps spent on both sides.
    """

    steps_used: int


EssenceVerdict = Equal | Unequal | BudgetExhausted


@dataclass(frozen=True)
class NormalForm:
    term: pure.PureTerm
    steps: int


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


def essence(term: Term) -> pure.PureTerm:
    """Forget annotations, relevant applications and the right half of pairs.

    :raises SyntaxCategoryError: When ``term`` is not an object
    """
    match term:
        case Var(index):
            return pure.Var(index)
        case ConstObj(name):
            return pure.Const(name)
        case Lam(_, body, hint) | RelLam(_, body, hint):
            return pure.Lam(essence(body), hint)
        case App(fn, arg):
            return pure.App(essence(fn), essence(arg))
        case RelApp(_, arg):
            return essence(arg)
        case SPair(left, _) | SCoPair(left, _):
            return essence(left)
        case ProjL(inner) | ProjR(inner) | InjL(_, inner) | InjR(_, inner):
            return essence(inner)
    raise SyntaxCategoryError(f"{type(term).__name__} has no essence")


def eta_normalize(term: pure.PureTerm) -> pure.PureTerm:
    match term:
        case pure.Lam(body, hint):
            body = eta_normalize(body)
            match body:
                case pure.App(fn, pure.Var(0)) if 0 not in pure.free_vars(fn):
                    return pure.shift(fn, -1)
            return pure.Lam(body, hint)
        case pure.App(fn, arg):
            return pure.App(eta_normalize(fn), eta_normalize(arg))
    return term


def _leftmost_outermost(term: pure.PureTerm) -> pure.PureTerm | None:
    match term:
        case pure.App(pure.Lam(body), arg):
            return pure.subst(body, 0, arg)
        case pure.App(fn, arg):
            reduct = _leftmost_outermost(fn)
            if reduct is not None:
                return pure.App(reduct, arg)
            reduct = _leftmost_outermost(arg)
            return None if reduct is None else pure.App(fn, reduct)
        case pure.Lam(body, hint):
            reduct = _leftmost_outermost(body)
            return None if reduct is None else pure.Lam(reduct, hint)
    return None


def beta_normalize_bounded(term: pure.PureTerm, fuel: int) -> NormalForm | OutOfFuel:
    """Leftmost-outermost β-normalization performing at most ``fuel`` steps."""
    steps = 0
    while True:
        reduct = _leftmost_outermost(term)
        if reduct is None:
            return NormalForm(term, steps)
        if steps >= fuel:
            return OutOfFuel(steps)
        term = reduct
        steps += 1


def essence_eq(left: pure.PureTerm, right: pure.PureTerm, fuel: int) -> EssenceVerdict:
    """Compare two essences up to βη.

    When both sides normalize within ``fuel`` the verdict is decided on the
    η-normal forms. Otherwise the inputs are still Equal when they are
    η-equal as given, and BudgetExhausted when they are not.
    """
    left_nf = beta_normalize_bounded(left, fuel)
    right_nf = beta_normalize_bounded(right, fuel)
    if isinstance(left_nf, NormalForm) and isinstance(right_nf, NormalForm):
        if eta_normalize(left_nf.term) == eta_normalize(right_nf.term):
            return Equal()
        return Unequal()
    if eta_normalize(left) == eta_normalize(right):
        return Equal()
    return BudgetExhausted(left_nf.steps + right_nf.steps)
