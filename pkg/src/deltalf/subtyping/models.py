"""Simple types, subtyping derivations and their schema check."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Mapping, NamedTuple

from ..errors import NotSimpleTypeError
from ..kernel.syntax import ConstFam, InterFam, PiFam, Signature, Term, UnionFam, free_vars, shift


@dataclass(frozen=True)
class SimpleType:
    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Atom(SimpleType):
    name: str


@dataclass(frozen=True)
class Arrow(SimpleType):
    domain: SimpleType
    codomain: SimpleType


@dataclass(frozen=True)
class Inter(SimpleType):
    left: SimpleType
    right: SimpleType


@dataclass(frozen=True)
class Union(SimpleType):
    left: SimpleType
    right: SimpleType


def show_type(simple: SimpleType, level: int = 0) -> str:
    """Render in source syntax: arrows bind loosest, then ``|``, then ``&``."""
    match simple:
        case Arrow(domain, codomain):
            text = f"{show_type(domain, 1)} -> {show_type(codomain, 0)}"
            return f"({text})" if level > 0 else text
        case Union(left, right):
            text = f"{show_type(left, 1)} | {show_type(right, 2)}"
            return f"({text})" if level > 1 else text
        case Inter(left, right):
            text = f"{show_type(left, 2)} & {show_type(right, 3)}"
            return f"({text})" if level > 2 else text
        case Atom(name):
            return name
    return type(simple).__name__


class SubRule(Enum):
    """Rules of the subtype relation, labelled as in the usual axiomatization."""

    PAIR_SELF = "(1)"
    UNION_IDEM = "(2)"
    PROJ_L = "(3l)"
    PROJ_R = "(3r)"
    INJ_L = "(4l)"
    INJ_R = "(4r)"
    REFL = "(6)"
    MONO_INTER = "(7)"
    MONO_UNION = "(8)"
    TRANS = "(9)"
    ARROW_INTER_DIST = "(11)"
    ARROW_UNION_DIST = "(12)"
    ARROW_MONO = "(14)"
    AXIOM = "(ax)"


@dataclass(frozen=True)
class SubDeriv:
    """Derivation of ``lhs ≤ rhs``.

    :param rule: Last rule applied
    :param premises: Sub-derivations, in the rule's premise order
    :param constant: Signature constant used by an axiom leaf
    """

    rule: SubRule
    lhs: SimpleType
    rhs: SimpleType
    premises: tuple["SubDeriv", ...] = ()
    constant: str | None = None

    @cached_property
    def size(self) -> int:
        return 1 + sum(premise.size for premise in self.premises)

    def types(self) -> frozenset[SimpleType]:
        """Every type mentioned by a judgment of the derivation."""
        found = {self.lhs, self.rhs}
        for premise in self.premises:
            found |= premise.types()
        return frozenset(found)


@dataclass(frozen=True)
class NotDerivable:
    lhs: SimpleType
    rhs: SimpleType


class SubAxiom(NamedTuple):
    constant: str
    lhs: SimpleType
    rhs: SimpleType


# Derivation constructors


def refl(simple: SimpleType) -> SubDeriv:
    return SubDeriv(SubRule.REFL, simple, simple)


def pair_self(simple: SimpleType) -> SubDeriv:
    return SubDeriv(SubRule.PAIR_SELF, simple, Inter(simple, simple))


def union_idem(simple: SimpleType) -> SubDeriv:
    return SubDeriv(SubRule.UNION_IDEM, Union(simple, simple), simple)


def proj_l(inter: Inter) -> SubDeriv:
    return SubDeriv(SubRule.PROJ_L, inter, inter.left)


def proj_r(inter: Inter) -> SubDeriv:
    return SubDeriv(SubRule.PROJ_R, inter, inter.right)


def inj_l(union: Union) -> SubDeriv:
    return SubDeriv(SubRule.INJ_L, union.left, union)


def inj_r(union: Union) -> SubDeriv:
    return SubDeriv(SubRule.INJ_R, union.right, union)


def trans(first: SubDeriv, second: SubDeriv) -> SubDeriv:
    if first.rhs != second.lhs:
        raise ValueError(f"Cannot chain {first.lhs} ≤ {first.rhs} with {second.lhs} ≤ {second.rhs}")
    if first.rule is SubRule.REFL:
        return second
    if second.rule is SubRule.REFL:
        return first
    return SubDeriv(SubRule.TRANS, first.lhs, second.rhs, (first, second))


def mono_inter(left: SubDeriv, right: SubDeriv) -> SubDeriv:
    lhs, rhs = Inter(left.lhs, right.lhs), Inter(left.rhs, right.rhs)
    if left.rule is SubRule.REFL and right.rule is SubRule.REFL:
        return refl(lhs)
    return SubDeriv(SubRule.MONO_INTER, lhs, rhs, (left, right))


def mono_union(left: SubDeriv, right: SubDeriv) -> SubDeriv:
    lhs, rhs = Union(left.lhs, right.lhs), Union(left.rhs, right.rhs)
    if left.rule is SubRule.REFL and right.rule is SubRule.REFL:
        return refl(lhs)
    return SubDeriv(SubRule.MONO_UNION, lhs, rhs, (left, right))


def arrow_mono(domain: SubDeriv, codomain: SubDeriv) -> SubDeriv:
    """``domain`` proves σ2 ≤ σ1 and ``codomain`` τ1 ≤ τ2, giving σ1→τ1 ≤ σ2→τ2."""
    lhs = Arrow(domain.rhs, codomain.lhs)
    rhs = Arrow(domain.lhs, codomain.rhs)
    if domain.rule is SubRule.REFL and codomain.rule is SubRule.REFL:
        return refl(lhs)
    return SubDeriv(SubRule.ARROW_MONO, lhs, rhs, (domain, codomain))


def arrow_inter_dist(domain: SimpleType, left: SimpleType, right: SimpleType) -> SubDeriv:
    return SubDeriv(
        SubRule.ARROW_INTER_DIST,
        Inter(Arrow(domain, left), Arrow(domain, right)),
        Arrow(domain, Inter(left, right)),
    )


def arrow_union_dist(left: SimpleType, right: SimpleType, codomain: SimpleType) -> SubDeriv:
    return SubDeriv(
        SubRule.ARROW_UNION_DIST,
        Inter(Arrow(left, codomain), Arrow(right, codomain)),
        Arrow(Union(left, right), codomain),
    )


def axiom(entry: SubAxiom) -> SubDeriv:
    return SubDeriv(SubRule.AXIOM, entry.lhs, entry.rhs, constant=entry.constant)


def greatest_lower_bound(left: SubDeriv, right: SubDeriv) -> SubDeriv:
    """From ρ ≤ σ and ρ ≤ τ derive ρ ≤ σ∩τ."""
    return trans(pair_self(left.lhs), mono_inter(left, right))


def least_upper_bound(left: SubDeriv, right: SubDeriv) -> SubDeriv:
    """From σ ≤ ρ and τ ≤ ρ derive σ∪τ ≤ ρ."""
    return trans(mono_union(left, right), union_idem(left.rhs))


def check_derivation(derivation: SubDeriv, axioms: Mapping[str, SubAxiom] | None = None) -> bool:
    """Determine if every node is a well-formed instance of its rule."""
    axioms = axioms or {}
    lhs, rhs, premises = derivation.lhs, derivation.rhs, derivation.premises
    if not all(check_derivation(premise, axioms) for premise in premises):
        return False
    arity = {
        SubRule.MONO_INTER: 2,
        SubRule.MONO_UNION: 2,
        SubRule.TRANS: 2,
        SubRule.ARROW_MONO: 2,
    }.get(derivation.rule, 0)
    if len(premises) != arity:
        return False
    match derivation.rule:
        case SubRule.REFL:
            return lhs == rhs
        case SubRule.PAIR_SELF:
            return rhs == Inter(lhs, lhs)
        case SubRule.UNION_IDEM:
            return lhs == Union(rhs, rhs)
        case SubRule.PROJ_L:
            return isinstance(lhs, Inter) and lhs.left == rhs
        case SubRule.PROJ_R:
            return isinstance(lhs, Inter) and lhs.right == rhs
        case SubRule.INJ_L:
            return isinstance(rhs, Union) and rhs.left == lhs
        case SubRule.INJ_R:
            return isinstance(rhs, Union) and rhs.right == lhs
        case SubRule.MONO_INTER:
            return lhs == Inter(premises[0].lhs, premises[1].lhs) and rhs == Inter(
                premises[0].rhs, premises[1].rhs
            )
        case SubRule.MONO_UNION:
            return lhs == Union(premises[0].lhs, premises[1].lhs) and rhs == Union(
                premises[0].rhs, premises[1].rhs
            )
        case SubRule.TRANS:
            return (
                lhs == premises[0].lhs
                and premises[0].rhs == premises[1].lhs
                and premises[1].rhs == rhs
            )
        case SubRule.ARROW_INTER_DIST:
            match lhs, rhs:
                case Inter(Arrow(s1, t1), Arrow(s2, t2)), Arrow(s3, Inter(t3, t4)):
                    return s1 == s2 == s3 and (t1, t2) == (t3, t4)
            return False
        case SubRule.ARROW_UNION_DIST:
            match lhs, rhs:
                case Inter(Arrow(s1, r1), Arrow(s2, r2)), Arrow(Union(s3, s4), r3):
                    return r1 == r2 == r3 and (s1, s2) == (s3, s4)
            return False
        case SubRule.ARROW_MONO:
            domain, codomain = premises
            return lhs == Arrow(domain.rhs, codomain.lhs) and rhs == Arrow(
                domain.lhs, codomain.rhs
            )
        case SubRule.AXIOM:
            entry = axioms.get(derivation.constant or "")
            return entry is not None and (entry.lhs, entry.rhs) == (lhs, rhs)
    return False


# Families


def from_family(fam: Term, signature: Signature | None = None) -> SimpleType:
    """Read a family as a simple type.

    :raises NotSimpleTypeError: On dependent products, applications or relevant arrows
    """
    if signature is not None:
        fam = signature.unfold(fam)
    match fam:
        case ConstFam(name):
            return Atom(name)
        case PiFam(domain, body):
            if 0 in free_vars(body):
                raise NotSimpleTypeError("dependent products are not simple types")
            return Arrow(from_family(domain), from_family(shift(body, -1)))
        case InterFam(left, right):
            return Inter(from_family(left), from_family(right))
        case UnionFam(left, right):
            return Union(from_family(left), from_family(right))
    raise NotSimpleTypeError(f"{type(fam).__name__} is not a simple type")


def to_family(simple: SimpleType) -> Term:
    match simple:
        case Atom(name):
            return ConstFam(name)
        case Arrow(domain, codomain):
            return PiFam(to_family(domain), to_family(codomain))
        case Inter(left, right):
            return InterFam(to_family(left), to_family(right))
        case Union(left, right):
            return UnionFam(to_family(left), to_family(right))
    raise NotSimpleTypeError(f"{type(simple).__name__} has no family")
