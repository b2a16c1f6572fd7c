"""Test the reduction relation"""

import pytest

from deltalf.errors import OutOfFuelError
from deltalf.frontend.resolve import parse_term
from deltalf.kernel import pure, reduction
from deltalf.kernel.checker import check_type
from deltalf.kernel.essence import OutOfFuel, beta_normalize_bounded, essence
from deltalf.kernel.reduction import Redex
from deltalf.kernel.syntax import (
    App,
    ConstFam,
    ConstObj,
    Context,
    InjL,
    InjR,
    Lam,
    ProjL,
    ProjR,
    RelApp,
    RelLam,
    SCoPair,
    SPair,
    Var,
)
from deltalf.types import RedexRule

a = ConstFam("a")
b = ConstFam("b")
c = ConstObj("c")
d = ConstObj("d")
f = ConstObj("f")
g = ConstObj("g")
id_a = Lam(a, Var(0))
id_b = Lam(b, Var(0))


@pytest.mark.parametrize(
    "term, expected",
    [
        (App(id_a, c), [(Redex((), RedexRule.BETA), c)]),
        (RelApp(RelLam(a, Var(0)), c), [(Redex((), RedexRule.REL_BETA), c)]),
        (ProjL(SPair(c, d)), [(Redex((), RedexRule.PROJ_L), c)]),
        (ProjR(SPair(c, d)), [(Redex((), RedexRule.PROJ_R), d)]),
        (App(SCoPair(f, g), InjL(b, c)), [(Redex((), RedexRule.INJ_L), App(f, c))]),
        (App(SCoPair(f, g), InjR(a, c)), [(Redex((), RedexRule.INJ_R), App(g, c))]),
        (
            SPair(App(id_a, c), App(id_b, c)),
            [(Redex((), RedexRule.CONGR_INTER), SPair(c, c))],
        ),
        (
            SCoPair(Lam(a, App(id_a, Var(0))), Lam(b, App(id_b, Var(0)))),
            [(Redex((), RedexRule.CONGR_UNION), SCoPair(id_a, id_b))],
        ),
        (Lam(a, App(id_a, Var(0))), [(Redex((1,), RedexRule.BETA), id_a)]),
        (SPair(App(id_a, c), c), []),
        (App(f, c), []),
    ],
)
def test_one_step(term, expected):
    assert list(reduction.one_step(term)) == expected


def test_pair_components_need_the_same_essence():
    # Each side has one reduct but the reducts have different essences
    term = SPair(App(id_a, c), App(Lam(a, d), c))
    assert reduction.one_step_reducts(term) == frozenset()
    assert reduction.is_normal(term)
    assert reduction.leftmost_outermost_step(term) is None


def test_pair_component_steps_alone_when_its_essence_is_kept():
    k, r = ConstObj("k"), ConstObj("r")
    rel_id = RelLam(a, Var(0))
    wrapped = RelLam(a, RelApp(r, Var(0)))
    term = SPair(RelApp(wrapped, RelApp(rel_id, k)), RelApp(rel_id, k))
    reducts = reduction.one_step_reducts(term)
    assert reducts == frozenset(
        {
            SPair(RelApp(r, RelApp(rel_id, k)), k),
            SPair(RelApp(wrapped, k), k),
            SPair(RelApp(r, RelApp(rel_id, k)), RelApp(rel_id, k)),
            SPair(RelApp(wrapped, k), RelApp(rel_id, k)),
            SPair(RelApp(wrapped, RelApp(rel_id, k)), k),
        }
    )
    for reduct in reducts:
        assert essence(reduct.left) == essence(reduct.right)
    # Both orders of the outer and inner steps meet again
    assert reduction.check_local_confluence(term, 100)
    assert reduction.normal_forms_by_strategy(term, 100) == frozenset({SPair(RelApp(r, k), k)})
    assert reduction.normalize(SPair(RelApp(r, RelApp(rel_id, k)), k), 10) == SPair(
        RelApp(r, k), k
    )


def test_one_step_reducts_of_overlapping_redexes():
    term = App(id_a, App(id_a, c))
    assert reduction.one_step_reducts(term) == frozenset({App(id_a, c)})
    term = App(Lam(a, App(f, Var(0))), App(id_a, c))
    assert reduction.one_step_reducts(term) == frozenset(
        {App(f, App(id_a, c)), App(Lam(a, App(f, Var(0))), c)}
    )


def test_normalize_reports_steps():
    seen = []
    term = App(id_a, App(id_a, c))
    assert reduction.normalize(term, 10, lambda redex, reduct: seen.append((redex, reduct))) == c
    assert seen == [
        (Redex((), RedexRule.BETA), App(id_a, c)),
        (Redex((), RedexRule.BETA), c),
    ]


def test_normalize_out_of_fuel():
    with pytest.raises(OutOfFuelError) as err:
        reduction.normalize(App(id_a, App(id_a, c)), 1)
    assert err.value.fuel == 1


def test_def_eq():
    assert reduction.def_eq(App(id_a, c), c, 10)
    assert reduction.def_eq(ProjL(SPair(c, c)), ProjR(SPair(c, c)), 10)
    assert not reduction.def_eq(c, d, 10)


def test_local_confluence_and_strategies():
    term = App(Lam(a, App(f, Var(0))), App(id_a, c))
    assert reduction.check_local_confluence(term, 100)
    assert reduction.joinable(App(f, App(id_a, c)), App(Lam(a, App(f, Var(0))), c), 100)
    assert reduction.normal_forms_by_strategy(term, 100) == frozenset({App(f, c)})
    assert reduction.normal_forms_by_strategy(c, 100) == frozenset({c})


def test_omega_stops_after_one_step(corpus):
    session = corpus("omega.dlf")
    signature = session.signature
    term = signature.unfold(ConstObj("delta_omega"))
    half = parse_term("fun x : sigma => (c1 $ x) x", signature)
    copy = RelApp(ConstObj("c2"), half)
    expected = App(RelApp(ConstObj("c1"), copy), copy)
    assert reduction.one_step_reducts(term) == frozenset({expected})
    assert reduction.normalize(term, 10_000) == expected
    # Its essence is the looping term
    omega_half = pure.Lam(pure.App(pure.Var(0), pure.Var(0)))
    assert essence(term) == pure.App(omega_half, omega_half)
    assert beta_normalize_bounded(essence(term), 10_000) == OutOfFuel(10_000)


def test_pierce_has_a_single_well_typed_reduct(corpus):
    session = corpus("pierce.dlf")
    signature = session.signature
    term = signature.unfold(ConstObj("pierce"))
    family = parse_term("a (y z) (y z)", signature)
    [(redex, reduct)] = list(reduction.one_step(term))
    assert redex == Redex((1, 0), RedexRule.BETA)
    assert reduct == App(term.fn, App(ConstObj("y"), ConstObj("z")))
    check_type(signature, Context(), reduct, family)
