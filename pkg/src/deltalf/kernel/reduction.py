"""One-step reduction, normalization and definitional equality."""

from collections import deque
from dataclasses import dataclass
from itertools import combinations
import logging
from typing import Callable, Iterator, Optional

from .. import const
from ..errors import OutOfFuelError
from ..types import RedexRule
from .essence import essence, eta_normalize
from .syntax import (
    App,
    InjL,
    InjR,
    Lam,
    Path,
    ProjL,
    ProjR,
    RelApp,
    RelLam,
    SCoPair,
    SPair,
    Term,
    children,
    subst,
    with_children,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Redex:
    position: Path
    rule: RedexRule


Step = tuple[Redex, Term]
StepCallback = Callable[[Redex, Term], None]


def _contract(term: Term) -> Optional[tuple[RedexRule, Term]]:
    match term:
        case App(Lam(_, body), arg):
            return RedexRule.BETA, subst(body, 0, arg)
        case RelApp(RelLam(_, body), arg):
            return RedexRule.REL_BETA, subst(body, 0, arg)
        case ProjL(SPair(left, _)):
            return RedexRule.PROJ_L, left
        case ProjR(SPair(_, right)):
            return RedexRule.PROJ_R, right
        case App(SCoPair(left, _), InjL(_, arg)):
            return RedexRule.INJ_L, App(left, arg)
        case App(SCoPair(_, right), InjR(_, arg)):
            return RedexRule.INJ_R, App(right, arg)
    return None


def _same_essence(left: Term, right: Term) -> bool:
    return eta_normalize(essence(left)) == eta_normalize(essence(right))


def _pair_rule(term: Term) -> RedexRule:
    return RedexRule.CONGR_INTER if isinstance(term, SPair) else RedexRule.CONGR_UNION


def _replace_child(term: Term, position: int, child: Term) -> Term:
    kids = list(children(term))
    kids[position] = child
    return with_children(term, tuple(kids))


def _pair_steps(term: SPair | SCoPair, path: Path) -> Iterator[Step]:
    """Steps of a pair or co-pair whose components keep one η-normal essence.

    Both components step at once, or one steps alone when its own essence
    stays syntactically the same.
    """
    redex = Redex(path, _pair_rule(term))
    lefts = [reduct for _, reduct in one_step(term.left, path + (0,))]
    rights = [reduct for _, reduct in one_step(term.right, path + (1,))]
    for left in lefts:
        for right in rights:
            if _same_essence(left, right):
                yield redex, type(term)(left, right)
    if not _same_essence(term.left, term.right):
        return
    left_essence, right_essence = essence(term.left), essence(term.right)
    for left in lefts:
        if essence(left) == left_essence:
            yield redex, type(term)(left, term.right)
    for right in rights:
        if essence(right) == right_essence:
            yield redex, type(term)(term.left, right)


def one_step(term: Term, path: Path = ()) -> Iterator[Step]:
    """Every contraction of a single redex, with its position.

    Components of pairs and co-pairs only move in ways that leave both
    with the same η-normal essence.
    """
    contracted = _contract(term)
    if contracted is not None:
        rule, reduct = contracted
        yield Redex(path, rule), reduct
    if isinstance(term, (SPair, SCoPair)):
        yield from _pair_steps(term, path)
        return
    for position, child in enumerate(children(term)):
        for redex, reduct in one_step(child, path + (position,)):
            yield redex, _replace_child(term, position, reduct)


def one_step_reducts(term: Term) -> frozenset[Term]:
    return frozenset(reduct for _, reduct in one_step(term))


def leftmost_outermost_step(term: Term, path: Path = ()) -> Optional[Step]:
    contracted = _contract(term)
    if contracted is not None:
        rule, reduct = contracted
        return Redex(path, rule), reduct
    if isinstance(term, (SPair, SCoPair)):
        return _parallel_step(term, path)
    for position, child in enumerate(children(term)):
        step = leftmost_outermost_step(child, path + (position,))
        if step is not None:
            redex, reduct = step
            return redex, _replace_child(term, position, reduct)
    return None


def _parallel_step(term: SPair | SCoPair, path: Path) -> Optional[Step]:
    left_step = leftmost_outermost_step(term.left, path + (0,))
    right_step = leftmost_outermost_step(term.right, path + (1,))
    if left_step is not None and right_step is not None:
        if _same_essence(left_step[1], right_step[1]):
            return Redex(path, _pair_rule(term)), type(term)(left_step[1], right_step[1])
    # The leftmost choices disagree or one side is normal.
    return next(_pair_steps(term, path), None)


def normalize(term: Term, fuel: int, on_step: StepCallback | None = None) -> Term:
    """Leftmost-outermost normal form.

    :param fuel: Maximum number of steps
    :param on_step: Called with every contracted redex and the new term
    :raises OutOfFuelError: When no normal form is reached within ``fuel`` steps
    """
    steps = 0
    while (step := leftmost_outermost_step(term)) is not None:
        if steps >= fuel:
            raise OutOfFuelError(fuel)
        redex, term = step
        steps += 1
        if on_step is not None:
            on_step(redex, term)
    return term


def is_normal(term: Term) -> bool:
    return next(one_step(term), None) is None


def def_eq(left: Term, right: Term, fuel: int) -> bool:
    """Definitional equality: α-equality of normal forms."""
    return left == right or normalize(left, fuel) == normalize(right, fuel)


def _neighbourhood(term: Term, depth: int) -> set[Term]:
    seen = {term}
    frontier = deque([(term, 0)])
    while frontier and len(seen) < const.CONFLUENCE_SEARCH_WIDTH:
        node, distance = frontier.popleft()
        if distance == depth:
            continue
        for reduct in one_step_reducts(node):
            if reduct not in seen:
                seen.add(reduct)
                frontier.append((reduct, distance + 1))
    return seen


def joinable(left: Term, right: Term, fuel: int) -> bool:
    """Determine if two terms reduce to a common term."""
    depth = const.CONFLUENCE_SEARCH_DEPTH
    if _neighbourhood(left, depth) & _neighbourhood(right, depth):
        return True
    return normalize(left, fuel) == normalize(right, fuel)


def check_local_confluence(term: Term, fuel: int) -> bool:
    """Determine if every pair of one-step reducts of ``term`` is joinable."""
    reducts = one_step_reducts(term)
    for left, right in combinations(reducts, 2):
        if not joinable(left, right, fuel):
            logger.debug("Reducts do not join: %s / %s", left, right)
            return False
    return True


def normal_forms_by_strategy(term: Term, fuel: int) -> frozenset[Term]:
    """Normal forms reached after each possible first step."""
    reducts = one_step_reducts(term)
    if not reducts:
        return frozenset({term})
    return frozenset(normalize(reduct, fuel) for reduct in reducts)
