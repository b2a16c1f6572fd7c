"""Property suites over fuzzed well-typed objects."""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
import logging
from typing import Callable, Iterator

from .. import const
from ..errors import DeltaLFError
from ..frontend.printer import print_term
from ..frontend.resolve import parse_term
from ..kernel.checker import check_type, infer_type
from ..kernel.reduction import (
    check_local_confluence,
    def_eq,
    normalize,
    one_step,
    one_step_reducts,
)
from ..kernel.syntax import (
    Context,
    Signature,
    Term,
    binds,
    classify,
    free_vars,
    rename_hints,
    replace_at,
    shift,
    subterm_at,
    subterms,
    term_size,
)
from ..types import Category, KernelSettings, RedexRule
from .fuzz import FuzzSample, fuzz_well_typed
from .simulation import simulation_steps

logger = logging.getLogger(__name__)

# Steps whose erasure must take at least one β step
SIMULATED_RULES = frozenset({RedexRule.BETA, RedexRule.REL_BETA, RedexRule.INJ_L})

Property = Callable[[FuzzSample, KernelSettings], bool]


@dataclass
class SuiteReport:
    """Outcome of one suite.

    :param step_counts: Per reduction rule, how often each erased step count was seen
    """

    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[str] = field(default_factory=list)
    step_counts: dict[str, Counter] = field(default_factory=lambda: defaultdict(Counter))


def subject_reduction(sample: FuzzSample, settings: KernelSettings) -> bool:
    for reduct in one_step_reducts(sample.term):
        try:
            check_type(sample.signature, sample.context, reduct, sample.classifier, settings)
        except DeltaLFError as err:
            logger.debug("Reduct rejected: %s", err)
            return False
    return True


def local_confluence(sample: FuzzSample, settings: KernelSettings) -> bool:
    try:
        return check_local_confluence(sample.term, settings.fuel)
    except DeltaLFError:
        return False


def normalization(sample: FuzzSample, settings: KernelSettings) -> bool:
    try:
        normalize(sample.term, settings.fuel)
    except DeltaLFError:
        return False
    return True


def unicity(sample: FuzzSample, settings: KernelSettings) -> bool:
    """Inference does not depend on binder names and agrees with the checked family."""
    renamed = rename_hints(sample.term, lambda hint: f"{hint}'")
    try:
        first = infer_type(sample.signature, sample.context, sample.term, settings)
        second = infer_type(sample.signature, sample.context, renamed, settings)
        check_type(sample.signature, sample.context, sample.term, first, settings)
        return def_eq(first, second, settings.fuel)
    except DeltaLFError as err:
        logger.debug("Inference failed: %s", err)
        return False


def round_trip(sample: FuzzSample, settings: KernelSettings) -> bool:
    text = print_term(sample.term, sample.signature, sample.context.names)
    try:
        return parse_term(text, sample.signature, sample.context) == sample.term
    except DeltaLFError:
        return False


def simulation(
    sample: FuzzSample, settings: KernelSettings, report: SuiteReport | None = None
) -> bool:
    """Erased images of β, βr and in_l steps are related by at least one β step.

    Every other rule only has its step count recorded.
    """
    holds = True
    for redex, reduct in one_step(sample.term):
        steps = simulation_steps(sample.term, reduct)
        if report is not None:
            report.step_counts[redex.rule.value][steps if steps is not None else -1] += 1
        if redex.rule in SIMULATED_RULES and (steps is None or steps < 1):
            holds = False
    return holds


SUITES: dict[str, Property] = {
    "subject reduction": subject_reduction,
    "local confluence": local_confluence,
    "normalization": normalization,
    "unicity": unicity,
    "simulation": simulation,
    "round trip": round_trip,
}


def _candidates(term: Term) -> Iterator[Term]:
    """Smaller objects: closed subterms, then terms with a node replaced by its child."""
    found: list[Term] = []
    for path, node, depth in subterms(term):
        if not path or classify(node) is not Category.OBJECT:
            continue
        if all(index >= depth for index in free_vars(node)):
            found.append(shift(node, -depth))
        parent_path, position = path[:-1], path[-1]
        parent = subterm_at(term, parent_path)
        if classify(parent) is not Category.OBJECT:
            continue
        if not binds(parent, position):
            found.append(replace_at(term, parent_path, node))
        elif 0 not in free_vars(node):
            found.append(replace_at(term, parent_path, shift(node, -1)))
    yield from sorted(found, key=term_size)


def shrink(term: Term, still_fails: Callable[[Term], bool]) -> Term:
    """Replace ``term`` by smaller failing objects while there are any."""
    for _ in range(const.SHRINK_ROUNDS):
        for candidate in _candidates(term):
            if term_size(candidate) >= term_size(term):
                continue
            try:
                failing = still_fails(candidate)
            except DeltaLFError:
                failing = False
            if failing:
                term = candidate
                break
        else:
            return term
    return term


def _minimal(
    sample: FuzzSample, prop: Property, settings: KernelSettings
) -> FuzzSample:
    signature: Signature = sample.signature
    context: Context = sample.context

    def still_fails(candidate: Term) -> bool:
        classifier = infer_type(signature, context, candidate, settings)
        return not prop(FuzzSample(signature, context, candidate, classifier), settings)

    term = shrink(sample.term, still_fails)
    if term == sample.term:
        return sample
    return FuzzSample(signature, context, term, infer_type(signature, context, term, settings))


def run_suites(
    seeds: int,
    size: int = const.DEFAULT_FUZZ_SIZE,
    settings: KernelSettings | None = None,
) -> list[SuiteReport]:
    """Run every suite on the samples of seeds ``0 .. seeds - 1``."""
    settings = settings or KernelSettings()
    reports = {name: SuiteReport(name) for name in SUITES}
    for seed in range(seeds):
        sample = fuzz_well_typed(seed, size, settings)
        for name, prop in SUITES.items():
            report = reports[name]
            if sample is None:
                report.skipped += 1
                continue
            if prop is simulation:
                holds = simulation(sample, settings, report)
            else:
                holds = prop(sample, settings)
            if holds:
                report.passed += 1
                continue
            report.failed += 1
            minimal = _minimal(sample, prop, settings)
            report.counterexamples.append(
                f"seed {seed}: {print_term(minimal.term, minimal.signature)}"
                f" : {print_term(minimal.classifier, minimal.signature)}"
            )
    for report in reports.values():
        logger.info(
            "%s: %d passed, %d failed, %d skipped",
            report.name,
            report.passed,
            report.failed,
            report.skipped,
        )
    return list(reports.values())
