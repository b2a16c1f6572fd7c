"""Generate well-typed objects by running the typing rules backwards.

Every generated object is accepted by ``check_type``: the generator only
proposes, the kernel decides. Pairs and co-pairs get components with a
shared essence by building one side and decorating it into the other
with a coercion.
"""

from dataclasses import dataclass
from functools import cache
import logging
import random
from typing import Callable, Optional

from .. import const
from ..errors import DeltaLFError
from ..frontend.parser import parse_expression
from ..frontend.resolve import resolve
from ..frontend.session import Session
from ..kernel.checker import check_type
from ..kernel.syntax import (
    App,
    ConstObj,
    Context,
    FamApp,
    InjL,
    InjR,
    InterFam,
    Lam,
    PiFam,
    ProjL,
    ProjR,
    RelApp,
    RelArrowFam,
    SCoPair,
    Signature,
    SPair,
    Term,
    UnionFam,
    Var,
    free_vars,
    shift,
    subst,
    term_size,
)
from ..subtyping.coerce import coerce, coercion
from ..subtyping.decide import decide_sub
from ..subtyping.models import NotDerivable, SubDeriv, from_family
from ..types import Category, KernelSettings

logger = logging.getLogger(__name__)

FUZZ_SIGNATURE = """\
Axiom a : Type.
Axiom b : Type.
Axiom k : a.
Axiom m : b.
Axiom f : a -> b.
Axiom g : b -> a.
Axiom h : a & b.
Axiom u : a | b.
Axiom r : a >-> b.
Axiom P : a -> Type.
Axiom p : (x : a) -> P x.
"""

FUZZ_TARGETS = (
    "a",
    "b",
    "a -> b",
    "b -> a",
    "a -> a",
    "a & b",
    "b & a",
    "a | b",
    "b | a",
    "(a -> a) & (b -> b)",
    "a & (a -> b) -> b",
    "a | b -> b | a",
    "a & b -> b | a",
    "(a -> b) & (b -> b) -> a | b -> b",
    "a >-> a | b",
    "a & b >-> b & a",
    "P k",
    "(x : a) -> P x",
)

# Middle types for redexes built around a target
_DETOURS = ("a", "b", "a & b", "a | b")

Generator = Callable[[Context, Term, int], Optional[Term]]


@dataclass(frozen=True)
class FuzzSample:
    signature: Signature
    context: Context
    term: Term
    classifier: Term


@cache
def fuzz_signature() -> Signature:
    session = Session("fuzz")
    session.run_source(FUZZ_SIGNATURE)
    return session.signature


@cache
def _family(text: str) -> Term:
    return resolve(parse_expression(text), fuzz_signature(), expect=Category.FAMILY).term


def _closed(family: Term) -> bool:
    return not free_vars(family)


class _Generator:
    """Typing rules read from conclusion to premises, picked at random."""

    def __init__(self, rng: random.Random, signature: Signature):
        self.rng = rng
        self.signature = signature
        self._subtypes: dict[tuple[Term, Term], SubDeriv | None] = {}

    def derivation(self, lhs: Term, rhs: Term) -> SubDeriv | None:
        key = (lhs, rhs)
        if key not in self._subtypes:
            found = None
            if _closed(lhs) and _closed(rhs):
                try:
                    result = decide_sub(
                        self.signature,
                        from_family(lhs, self.signature),
                        from_family(rhs, self.signature),
                    )
                except DeltaLFError:
                    result = None
                if result is not None and not isinstance(result, NotDerivable):
                    found = result
            self._subtypes[key] = found
        return self._subtypes[key]

    def generate(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        found = self.lookup(ctx, target)
        if budget <= 1:
            return found
        strategies: list[Generator] = [
            self.introduce,
            self.eliminate,
            self.beta_redex,
            self.relevant_redex,
            self.projection_redex,
            self.injection_redex,
        ]
        self.rng.shuffle(strategies)
        if found is not None:
            strategies.append(lambda *_: found)
        for strategy in strategies:
            term = strategy(ctx, target, budget)
            if term is not None:
                return term
        return None

    def heads(self, ctx: Context) -> list[tuple[Term, Term]]:
        found: list[tuple[Term, Term]] = [
            (Var(index), ctx.lookup(index)) for index in range(len(ctx))
        ]
        for entry in self.signature.entries:
            if not entry.is_family:
                found.append((ConstObj(entry.name), entry.classifier))
        return found

    def lookup(self, ctx: Context, target: Term) -> Optional[Term]:
        matches = [head for head, family in self.heads(ctx) if family == target]
        return self.rng.choice(matches) if matches else None

    # Introductions

    def introduce(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        match target:
            case PiFam(domain, body, hint):
                inner = self.generate(ctx.push(hint, domain), body, budget - 1)
                return None if inner is None else Lam(domain, inner, hint)
            case InterFam(left, right):
                return self.strong_pair(ctx, left, right, budget - 1)
            case UnionFam(left, right):
                if self.rng.random() < 0.5:
                    inner = self.generate(ctx, left, budget - 1)
                    return None if inner is None else InjL(right, inner)
                inner = self.generate(ctx, right, budget - 1)
                return None if inner is None else InjR(left, inner)
            case RelArrowFam(domain, codomain):
                derivation = self.derivation(domain, codomain)
                return None if derivation is None else coercion(derivation)
        return None

    def strong_pair(self, ctx: Context, left: Term, right: Term, budget: int) -> Optional[Term]:
        components = self.shared_essence(ctx, left, right, budget)
        return None if components is None else SPair(*components)

    def shared_essence(
        self, ctx: Context, left: Term, right: Term, budget: int
    ) -> Optional[tuple[Term, Term]]:
        """Objects of ``left`` and ``right`` with the same essence."""
        options = ["self", "forward", "backward", "lambda", "identity", "inject"]
        self.rng.shuffle(options)
        for option in options:
            components = self._shared(option, ctx, left, right, budget)
            if components is not None:
                return components
        return None

    def _shared(
        self, option: str, ctx: Context, left: Term, right: Term, budget: int
    ) -> Optional[tuple[Term, Term]]:
        half = budget // 2
        match option:
            case "self" if left == right:
                term = self.generate(ctx, left, half)
                return None if term is None else (term, term)
            case "forward":
                derivation = self.derivation(left, right)
                if derivation is not None:
                    term = self.generate(ctx, left, half)
                    return None if term is None else (term, RelApp(coercion(derivation), term))
            case "backward":
                derivation = self.derivation(right, left)
                if derivation is not None:
                    term = self.generate(ctx, right, half)
                    return None if term is None else (RelApp(coercion(derivation), term), term)
            case "lambda":
                if _simple_arrow(left) and _simple_arrow(right):
                    bodies = self.shared_essence(
                        ctx, shift(left.body, -1), shift(right.body, -1), budget - 2
                    )
                    if bodies is not None:
                        return (
                            Lam(left.domain, shift(bodies[0], 1), "x"),
                            Lam(right.domain, shift(bodies[1], 1), "x"),
                        )
            case "identity":
                if _simple_arrow(left) and _simple_arrow(right):
                    first = self.derivation(left.domain, shift(left.body, -1))
                    second = self.derivation(right.domain, shift(right.body, -1))
                    if first is not None and second is not None:
                        return (
                            Lam(left.domain, coerce(first, Var(0)), "x"),
                            Lam(right.domain, coerce(second, Var(0)), "x"),
                        )
            case "inject":
                match left, right:
                    case UnionFam(l_left, l_right), UnionFam(r_left, r_right):
                        inner = self.shared_essence(ctx, l_left, r_left, budget - 2)
                        if inner is not None:
                            return InjL(l_right, inner[0]), InjL(r_right, inner[1])
                        inner = self.shared_essence(ctx, l_right, r_right, budget - 2)
                        if inner is not None:
                            return InjR(l_left, inner[0]), InjR(r_left, inner[1])
        return None

    # Eliminations

    def eliminate(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        heads = self.heads(ctx)
        self.rng.shuffle(heads)
        for head, family in heads:
            term = self.use(ctx, head, family, target, budget - 1, depth=2)
            if term is not None:
                return term
        return None

    def use(
        self, ctx: Context, head: Term, family: Term, target: Term, budget: int, depth: int
    ) -> Optional[Term]:
        """Apply eliminations to ``head`` until it has family ``target``."""
        if depth == 0:
            return None
        match family:
            case PiFam(domain, body):
                if 0 not in free_vars(body):
                    result = shift(body, -1)
                    if result == target:
                        arg = self.generate(ctx, domain, budget - 1)
                        return None if arg is None else App(head, arg)
                    if isinstance(result, (PiFam, InterFam)):
                        arg = self.generate(ctx, domain, budget // 2)
                        if arg is not None:
                            return self.use(
                                ctx, App(head, arg), result, target, budget // 2, depth - 1
                            )
                elif isinstance(target, FamApp) and subst(body, 0, target.arg) == target:
                    return App(head, target.arg)
            case RelArrowFam(domain, codomain) if codomain == target:
                arg = self.generate(ctx, domain, budget - 1)
                return None if arg is None else RelApp(head, arg)
            case InterFam(left, right):
                sides = [(ProjL(head), left), (ProjR(head), right)]
                self.rng.shuffle(sides)
                for projected, side in sides:
                    if side == target:
                        return projected
                for projected, side in sides:
                    term = self.use(ctx, projected, side, target, budget - 1, depth - 1)
                    if term is not None:
                        return term
            case UnionFam(left, right):
                branches = self.branches(ctx, left, right, target, budget - 1)
                return None if branches is None else App(branches, head)
        return None

    def branches(
        self, ctx: Context, left: Term, right: Term, target: Term, budget: int
    ) -> Optional[SCoPair]:
        """Co-pair from ``left | right`` to a target not depending on the argument."""
        first = self.derivation(left, target)
        second = self.derivation(right, target)
        if first is not None and second is not None and self.rng.random() < 0.5:
            return SCoPair(
                Lam(left, coerce(first, Var(0)), "y"),
                Lam(right, coerce(second, Var(0)), "y"),
            )
        body = self.generate(ctx, target, budget - 2)
        if body is None:
            return None
        return SCoPair(Lam(left, shift(body, 1), "y"), Lam(right, shift(body, 1), "y"))

    # Redexes

    def _detour(self, target: Term) -> Term:
        return _family(self.rng.choice(_DETOURS)) if self.rng.random() < 0.8 else target

    def beta_redex(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        domain = self._detour(target)
        body = self.generate(ctx.push("x", domain), shift(target, 1), budget // 2)
        if body is None:
            return None
        arg = self.generate(ctx, domain, budget // 2 - 1)
        return None if arg is None else App(Lam(domain, body, "x"), arg)

    def relevant_redex(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        domain = self._detour(target)
        derivation = self.derivation(domain, target)
        if derivation is None:
            return None
        arg = self.generate(ctx, domain, budget - 3)
        return None if arg is None else RelApp(coercion(derivation), arg)

    def projection_redex(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        other = self._detour(target)
        if self.rng.random() < 0.5:
            pair = self.strong_pair(ctx, target, other, budget - 2)
            return None if pair is None else ProjL(pair)
        pair = self.strong_pair(ctx, other, target, budget - 2)
        return None if pair is None else ProjR(pair)

    def injection_redex(self, ctx: Context, target: Term, budget: int) -> Optional[Term]:
        left, right = self._detour(target), self._detour(target)
        branches = self.branches(ctx, left, right, target, budget // 2)
        if branches is None:
            return None
        if self.rng.random() < 0.5:
            arg = self.generate(ctx, left, budget // 2 - 1)
            return None if arg is None else App(branches, InjL(right, arg))
        arg = self.generate(ctx, right, budget // 2 - 1)
        return None if arg is None else App(branches, InjR(left, arg))


def _simple_arrow(family: Term) -> bool:
    return isinstance(family, PiFam) and 0 not in free_vars(family.body)


def fuzz_well_typed(
    seed: int,
    size: int = const.DEFAULT_FUZZ_SIZE,
    settings: KernelSettings | None = None,
) -> FuzzSample | None:
    """Closed object accepted by the kernel, or None after bounded retries.

    :param size: Upper bound on the number of nodes of the object
    """
    rng = random.Random(seed)
    signature = fuzz_signature()
    generator = _Generator(rng, signature)
    context = Context()
    for attempt in range(const.FUZZ_RETRIES):
        target = _family(rng.choice(FUZZ_TARGETS))
        # Shrink the budget when large attempts keep overshooting
        term = generator.generate(context, target, size >> (attempt // 5))
        if term is None or term_size(term) > max(size, 1):
            continue
        try:
            check_type(signature, context, term, target, settings)
        except DeltaLFError as err:
            logger.debug("Seed %s attempt %s rejected: %s", seed, attempt, err)
            continue
        return FuzzSample(signature, context, term, target)
    logger.debug("Seed %s produced no sample", seed)
    return None
