"""Test the property suites"""

import pytest

from deltalf.errors import KernelError
from deltalf.kernel.syntax import App, ConstFam, ConstObj, Lam, Var, constants
from deltalf.metacheck import fuzz, suites
from deltalf.types import KernelSettings, RedexRule, Rule

SETTINGS = KernelSettings(fuel=10_000, essence_fuel=10_000)


@pytest.fixture(scope="module")
def samples():
    found = [fuzz.fuzz_well_typed(seed, 15, SETTINGS) for seed in range(6)]
    return [sample for sample in found if sample is not None]


@pytest.mark.parametrize("name", list(suites.SUITES))
def test_properties_hold(samples, name):
    prop = suites.SUITES[name]
    for sample in samples:
        assert prop(sample, SETTINGS), name


def test_simulation_records_steps(samples):
    report = suites.SuiteReport("simulation")
    for sample in samples:
        suites.simulation(sample, SETTINGS, report)
    rules = {rule.value for rule in RedexRule}
    assert set(report.step_counts) <= rules
    for counts in report.step_counts.values():
        assert all(steps == -1 or steps >= 0 for steps in counts)


def test_shrink():
    term = App(Lam(ConstFam("a"), Var(0)), App(ConstObj("f"), ConstObj("k")))
    assert suites.shrink(term, lambda candidate: "f" in constants(candidate)) == ConstObj("f")
    assert suites.shrink(term, lambda candidate: False) == term


def test_shrink_ignores_rejected_candidates():
    term = App(ConstObj("f"), ConstObj("k"))

    def rejects(candidate):
        raise KernelError(Rule.CONV, "rejected")

    assert suites.shrink(term, rejects) == term


def test_run_suites():
    reports = suites.run_suites(3, 12, SETTINGS)
    assert [report.name for report in reports] == list(suites.SUITES)
    for report in reports:
        assert report.passed + report.failed + report.skipped == 3
        assert report.failed == 0
        assert report.counterexamples == []


@pytest.mark.parametrize("seed", [23, 219])
def test_pair_steps_stay_confluent(seed):
    settings = KernelSettings()
    sample = fuzz.fuzz_well_typed(seed, 30, settings)
    if sample is None:
        pytest.skip("no sample for this seed")
    assert suites.local_confluence(sample, settings)
    assert suites.subject_reduction(sample, settings)
    assert suites.normalization(sample, settings)


@pytest.mark.acceptance
def test_run_suites_at_scale():
    reports = suites.run_suites(1_000, 30)
    for report in reports:
        assert report.passed + report.failed + report.skipped == 1_000
        assert report.passed > 0, report.name
        assert report.failed == 0, (report.name, report.counterexamples)
