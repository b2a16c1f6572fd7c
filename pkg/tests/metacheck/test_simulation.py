"""Test simulation_check"""

import pytest

from deltalf.kernel import pure
from deltalf.kernel.syntax import App, ConstFam, ConstObj, InjL, Lam, ProjL, SPair, Var
from deltalf.metacheck import simulation

a = ConstFam("a")
k = ConstObj("k")
identity = pure.Lam(pure.Var(0))
omega = pure.App(pure.Lam(pure.App(pure.Var(0), pure.Var(0))), pure.Lam(pure.App(pure.Var(0), pure.Var(0))))


@pytest.mark.parametrize(
    "source, target, expected",
    [
        (pure.Const("k"), pure.Const("k"), 0),
        (pure.Const("k"), pure.Const("m"), None),
        (pure.App(identity, pure.Const("k")), pure.Const("k"), 1),
        (pure.App(identity, pure.App(identity, pure.Const("k"))), pure.Const("k"), 2),
        (omega, pure.Const("k"), None),
        (omega, omega, 0),
    ],
)
def test_beta_distance(source, target, expected):
    assert simulation.beta_distance(source, target) == expected


def test_beta_distance_depth():
    nested = pure.Const("k")
    for _ in range(4):
        nested = pure.App(identity, nested)
    assert simulation.beta_distance(nested, pure.Const("k"), depth=3) is None
    assert simulation.beta_distance(nested, pure.Const("k"), depth=4) == 4


@pytest.mark.parametrize(
    "before, after, steps, holds",
    [
        (App(Lam(a, Var(0)), k), k, 2, True),
        (App(Lam(a, InjL(a, Var(0))), k), InjL(a, k), 2, True),
        (ProjL(SPair(k, k)), k, 0, False),
        (k, ConstObj("m"), None, False),
    ],
)
def test_simulation_check(before, after, steps, holds):
    assert simulation.simulation_steps(before, after) == steps
    assert simulation.simulation_check(before, after) is holds
