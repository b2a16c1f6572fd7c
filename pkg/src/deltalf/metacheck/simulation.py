"""Check that reduction steps survive erasure as β-reductions."""

from collections import deque
import logging

from .. import const
from ..kernel import pure
from ..kernel.syntax import Term
from .erasure import erase_obj

logger = logging.getLogger(__name__)


def beta_distance(
    source: pure.PureTerm,
    target: pure.PureTerm,
    depth: int = const.SIMULATION_SEARCH_DEPTH,
    width: int = const.SIMULATION_SEARCH_WIDTH,
) -> int | None:
    """Fewest β steps from ``source`` to ``target``, None when not found in bounds."""
    if source == target:
        return 0
    seen = {source}
    frontier = deque([(source, 0)])
    while frontier:
        node, distance = frontier.popleft()
        if distance == depth:
            continue
        for reduct in pure.reducts(node):
            if reduct == target:
                return distance + 1
            if reduct in seen or len(seen) >= width:
                continue
            seen.add(reduct)
            frontier.append((reduct, distance + 1))
    return None


def simulation_steps(before: Term, after: Term) -> int | None:
    """β steps between the erasures of the two ends of a reduction step."""
    steps = beta_distance(erase_obj(before), erase_obj(after))
    logger.debug("Erased step took %s β steps", steps)
    return steps


def simulation_check(before: Term, after: Term) -> bool:
    """Determine if the erasure of ``before`` reaches that of ``after`` in at least one step."""
    steps = simulation_steps(before, after)
    return steps is not None and steps >= 1
