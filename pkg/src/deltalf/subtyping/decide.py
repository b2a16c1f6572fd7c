"""Decision procedure for subtyping between simple types.

The procedure saturates the relation over a finite universe of types, by
default the subterms of the query and of the signature's relevant axioms
closed under distributivity. It applies the same rules as the closure
oracle, so both give the same relation on the same universe. Every fact is
stored with the smallest derivation found for it.
"""

from itertools import product
import logging
from typing import Iterable, Iterator, Sequence

from ..errors import NotSimpleTypeError
from ..kernel.syntax import RelArrowFam, Signature
from .models import (
    Arrow,
    Atom,
    Inter,
    NotDerivable,
    SimpleType,
    SubAxiom,
    SubDeriv,
    Union,
    arrow_inter_dist,
    arrow_mono,
    arrow_union_dist,
    axiom,
    from_family,
    greatest_lower_bound,
    inj_l,
    inj_r,
    least_upper_bound,
    mono_inter,
    mono_union,
    pair_self,
    proj_l,
    proj_r,
    refl,
    trans,
    union_idem,
)

logger = logging.getLogger(__name__)

Pair = tuple[SimpleType, SimpleType]


def subterm_closure(types: Iterable[SimpleType]) -> frozenset[SimpleType]:
    found: set[SimpleType] = set()
    pending = list(types)
    while pending:
        simple = pending.pop()
        if simple in found:
            continue
        found.add(simple)
        match simple:
            case Arrow(left, right) | Inter(left, right) | Union(left, right):
                pending.extend((left, right))
    return frozenset(found)


def enumerate_types(atoms: Sequence[str], depth: int) -> Iterator[SimpleType]:
    """Every simple type over ``atoms`` with at most ``depth`` nested constructors."""
    layer: list[SimpleType] = [Atom(name) for name in atoms]
    seen = list(layer)
    for _ in range(depth):
        layer = [
            constructor(left, right)
            for constructor in (Arrow, Inter, Union)
            for left, right in product(seen, repeat=2)
        ]
        seen = list(dict.fromkeys(seen + layer))
    yield from seen


def relevant_axioms(signature: Signature) -> tuple[SubAxiom, ...]:
    """Object constants of simple relevant-arrow type, read as subtyping axioms."""
    found = []
    for entry in signature.entries:
        if entry.is_family or entry.definition is not None:
            continue
        classifier = signature.unfold(entry.classifier)
        if not isinstance(classifier, RelArrowFam):
            continue
        try:
            found.append(
                SubAxiom(
                    entry.name, from_family(classifier.domain), from_family(classifier.codomain)
                )
            )
        except NotSimpleTypeError:
            logger.debug("Skipping %s: not a simple relevant arrow", entry.name)
    return tuple(found)


def closure_oracle(
    universe: Iterable[SimpleType], axioms: Iterable[SubAxiom] = ()
) -> frozenset[Pair]:
    """Least relation on ``universe`` closed under the subtyping rules.

    Rule instances are only used when every type they mention belongs to
    ``universe``; no derivations are kept.
    """
    types = frozenset(universe)
    relation: set[Pair] = set()
    for simple in types:
        relation.add((simple, simple))
        if Inter(simple, simple) in types:
            relation.add((simple, Inter(simple, simple)))
        if Union(simple, simple) in types:
            relation.add((Union(simple, simple), simple))
        match simple:
            case Inter(left, right):
                relation |= {(simple, left), (simple, right)}
                if isinstance(left, Arrow) and isinstance(right, Arrow):
                    joined = Arrow(left.domain, Inter(left.codomain, right.codomain))
                    if left.domain == right.domain and joined in types:
                        relation.add((simple, joined))
                    split = Arrow(Union(left.domain, right.domain), left.codomain)
                    if left.codomain == right.codomain and split in types:
                        relation.add((simple, split))
            case Union(left, right):
                relation |= {(left, simple), (right, simple)}
    for entry in axioms:
        if entry.lhs in types and entry.rhs in types:
            relation.add((entry.lhs, entry.rhs))
    inters = [simple for simple in types if isinstance(simple, Inter)]
    unions = [simple for simple in types if isinstance(simple, Union)]
    arrows = [simple for simple in types if isinstance(simple, Arrow)]
    while True:
        derived: set[Pair] = set()
        for first, second in product(inters, repeat=2):
            if (first.left, second.left) in relation and (first.right, second.right) in relation:
                derived.add((first, second))
        for first, second in product(unions, repeat=2):
            if (first.left, second.left) in relation and (first.right, second.right) in relation:
                derived.add((first, second))
        for first, second in product(arrows, repeat=2):
            if (second.domain, first.domain) in relation and (
                first.codomain,
                second.codomain,
            ) in relation:
                derived.add((first, second))
        for simple in types:
            for inter in inters:
                if (simple, inter.left) in relation and (simple, inter.right) in relation:
                    derived.add((simple, inter))
            for union in unions:
                if (union.left, simple) in relation and (union.right, simple) in relation:
                    derived.add((union, simple))
        successors: dict[SimpleType, set[SimpleType]] = {}
        for lower, upper in relation:
            successors.setdefault(lower, set()).add(upper)
        for lower, middle in relation:
            for upper in successors.get(middle, ()):
                derived.add((lower, upper))
        if derived <= relation:
            return frozenset(relation)
        relation |= derived


class _Saturation:
    """Smallest-derivation saturation over a finite universe."""

    def __init__(self, universe: Iterable[SimpleType], axioms: Sequence[SubAxiom]):
        self.types = frozenset(universe)
        self.axioms = axioms
        self.best: dict[Pair, SubDeriv] = {}
        self.inters = [simple for simple in self.types if isinstance(simple, Inter)]
        self.unions = [simple for simple in self.types if isinstance(simple, Union)]
        self.arrows = [simple for simple in self.types if isinstance(simple, Arrow)]
        self.changed = False

    def offer(self, derivation: SubDeriv) -> None:
        key = (derivation.lhs, derivation.rhs)
        if key[0] not in self.types or key[1] not in self.types:
            return
        current = self.best.get(key)
        if current is None or derivation.size < current.size:
            self.best[key] = derivation
            self.changed = True

    def seed(self) -> None:
        for simple in self.types:
            self.offer(refl(simple))
            self.offer(pair_self(simple))
            self.offer(union_idem(simple))
            match simple:
                case Inter(Arrow(s1, t1), Arrow(s2, t2)):
                    if s1 == s2:
                        self.offer(arrow_inter_dist(s1, t1, t2))
                    if t1 == t2:
                        self.offer(arrow_union_dist(s1, s2, t1))
            match simple:
                case Inter():
                    self.offer(proj_l(simple))
                    self.offer(proj_r(simple))
                case Union():
                    self.offer(inj_l(simple))
                    self.offer(inj_r(simple))
        for entry in self.axioms:
            self.offer(axiom(entry))

    def _structural(self) -> None:
        best = self.best
        for first, second in product(self.inters, repeat=2):
            left, right = best.get((first.left, second.left)), best.get((first.right, second.right))
            if left and right:
                self.offer(mono_inter(left, right))
        for first, second in product(self.unions, repeat=2):
            left, right = best.get((first.left, second.left)), best.get((first.right, second.right))
            if left and right:
                self.offer(mono_union(left, right))
        for first, second in product(self.arrows, repeat=2):
            domain = best.get((second.domain, first.domain))
            codomain = best.get((first.codomain, second.codomain))
            if domain and codomain:
                self.offer(arrow_mono(domain, codomain))

    def _bounds(self) -> None:
        best = self.best
        for simple in self.types:
            for inter in self.inters:
                left, right = best.get((simple, inter.left)), best.get((simple, inter.right))
                if left and right:
                    self.offer(greatest_lower_bound(left, right))
            for union in self.unions:
                left, right = best.get((union.left, simple)), best.get((union.right, simple))
                if left and right:
                    self.offer(least_upper_bound(left, right))

    def _transitivity(self) -> None:
        successors: dict[SimpleType, list[SubDeriv]] = {}
        for (lower, _), derivation in self.best.items():
            successors.setdefault(lower, []).append(derivation)
        for (_, middle), first in list(self.best.items()):
            for second in successors.get(middle, ()):
                self.offer(trans(first, second))

    def run(self) -> dict[Pair, SubDeriv]:
        self.seed()
        self.changed, rounds = True, 0
        while self.changed:
            self.changed = False
            rounds += 1
            self._structural()
            self._bounds()
            self._transitivity()
        logger.debug(
            "Saturated %d facts over %d types in %d rounds", len(self.best), len(self.types), rounds
        )
        return self.best


def saturate(
    universe: Iterable[SimpleType], axioms: Sequence[SubAxiom] = ()
) -> dict[Pair, SubDeriv]:
    """Smallest derivation of every derivable pair over ``universe``."""
    return _Saturation(universe, axioms).run()


def query_universe(types: Iterable[SimpleType]) -> frozenset[SimpleType]:
    """Subterms of ``types``, closed under the right-hand sides of distributivity.

    A meet of two arrows brings in the arrow it distributes into, so chains
    such as ``(a -> b) & (a -> c) <= a -> b & c`` have their middle type
    available. Closing adds no type deeper than one already present, so the
    result stays finite.
    """
    found = set(subterm_closure(types))
    pending = list(found)
    while pending:
        match pending.pop():
            case Inter(Arrow(s1, t1), Arrow(s2, t2)):
                joined = []
                if s1 == s2:
                    joined.append(Arrow(s1, Inter(t1, t2)))
                if t1 == t2:
                    joined.append(Arrow(Union(s1, s2), t1))
                for simple in subterm_closure(joined) - found:
                    found.add(simple)
                    pending.append(simple)
    return frozenset(found)


def decide_sub(
    signature: Signature | None,
    lhs: SimpleType,
    rhs: SimpleType,
    universe: Iterable[SimpleType] | None = None,
) -> SubDeriv | NotDerivable:
    """Smallest derivation of ``lhs ≤ rhs`` under the signature's axioms.

    Derivations only pass through types of ``universe``, completed with the
    subterms of the query and of the axioms. Over a subterm-closed universe
    the derivable pairs are exactly those of :func:`closure_oracle`. Without
    one, :func:`query_universe` of the query and the axioms is used.

    :param signature: Signature whose relevant constants act as axioms
    :param lhs: Subtype
    :param rhs: Supertype
    :param universe: Types a derivation may mention
    """
    axioms = relevant_axioms(signature) if signature is not None else ()
    query = [lhs, rhs, *(entry.lhs for entry in axioms), *(entry.rhs for entry in axioms)]
    if universe is None:
        types = query_universe(query)
    else:
        types = subterm_closure([*universe, *query])
    derivation = saturate(types, axioms).get((lhs, rhs))
    if derivation is None:
        return NotDerivable(lhs, rhs)
    return derivation
