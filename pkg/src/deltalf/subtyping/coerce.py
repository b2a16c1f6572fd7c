"""Compile subtyping derivations into relevant coercions."""

from typing import Iterable

from ..kernel.syntax import (
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
    Signature,
    SPair,
    Term,
    Var,
    shift,
)
from .decide import decide_sub
from .models import NotDerivable, SimpleType, SubDeriv, SubRule, to_family


def coerce(derivation: SubDeriv, subject: Term) -> Term:
    """Object of family ``rhs`` built around ``subject`` of family ``lhs``.

    The result always has the essence of ``subject``.
    """
    lhs, rhs, premises = derivation.lhs, derivation.rhs, derivation.premises
    match derivation.rule:
        case SubRule.REFL:
            return subject
        case SubRule.PAIR_SELF:
            return SPair(subject, subject)
        case SubRule.UNION_IDEM:
            identity = Lam(to_family(rhs), Var(0))
            return App(SCoPair(identity, identity), subject)
        case SubRule.PROJ_L:
            return ProjL(subject)
        case SubRule.PROJ_R:
            return ProjR(subject)
        case SubRule.INJ_L:
            return InjL(to_family(rhs.right), subject)
        case SubRule.INJ_R:
            return InjR(to_family(rhs.left), subject)
        case SubRule.MONO_INTER:
            left, right = premises
            return SPair(coerce(left, ProjL(subject)), coerce(right, ProjR(subject)))
        case SubRule.MONO_UNION:
            left, right = premises
            branches = SCoPair(
                Lam(to_family(left.lhs), InjL(to_family(right.rhs), coerce(left, Var(0))), "y"),
                Lam(to_family(right.lhs), InjR(to_family(left.rhs), coerce(right, Var(0))), "y"),
            )
            return App(branches, subject)
        case SubRule.TRANS:
            first, second = premises
            return coerce(second, coerce(first, subject))
        case SubRule.ARROW_INTER_DIST:
            inner = shift(subject, 1)
            return Lam(
                to_family(rhs.domain),
                SPair(App(ProjL(inner), Var(0)), App(ProjR(inner), Var(0))),
            )
        case SubRule.ARROW_UNION_DIST:
            left_arrow, right_arrow = lhs.left, lhs.right
            inner = shift(subject, 2)
            branches = SCoPair(
                Lam(to_family(left_arrow.domain), App(ProjL(inner), Var(0)), "y"),
                Lam(to_family(right_arrow.domain), App(ProjR(inner), Var(0)), "y"),
            )
            return Lam(to_family(rhs.domain), App(branches, Var(0)))
        case SubRule.ARROW_MONO:
            domain, codomain = premises
            applied = App(shift(subject, 1), coerce(domain, Var(0)))
            return Lam(to_family(domain.lhs), coerce(codomain, applied))
        case SubRule.AXIOM:
            return RelApp(ConstObj(derivation.constant), subject)
    raise ValueError(f"Unknown subtyping rule {derivation.rule}")


def coercion(derivation: SubDeriv) -> Term:
    """Relevant function from ``lhs`` to ``rhs`` witnessing the derivation."""
    return RelLam(to_family(derivation.lhs), coerce(derivation, Var(0)))


def inhabit_relevant(
    signature: Signature | None,
    lhs: SimpleType,
    rhs: SimpleType,
    universe: Iterable[SimpleType] | None = None,
) -> Term | NotDerivable:
    """Closed object of family ``lhs >-> rhs``, or NotDerivable."""
    derivation = decide_sub(signature, lhs, rhs, universe)
    if isinstance(derivation, NotDerivable):
        return derivation
    return coercion(derivation)
