"""Test name resolution"""

import pytest

from deltalf.errors import ScopeError
from deltalf.frontend.parser import parse_expression
from deltalf.frontend.resolve import parse_term, resolve
from deltalf.kernel.syntax import (
    App,
    ConstFam,
    ConstObj,
    Context,
    FamApp,
    InjL,
    InterFam,
    Lam,
    PiFam,
    PiKind,
    ProjL,
    RelApp,
    RelArrowFam,
    RelLam,
    SCoPair,
    Sort,
    SPair,
    UnionFam,
    Var,
)
from deltalf.types import Category

from .. import utils

s = ConstFam("s")
t = ConstFam("t")
P = ConstFam("P")
c = ConstObj("c")
f = ConstObj("f")


@pytest.fixture(scope="module")
def signature():
    return utils.session_from(
        "Axiom s : Type. Axiom t : Type. Axiom P : s -> Type. Axiom c : s. Axiom f : s -> s."
    ).signature


@pytest.mark.parametrize(
    "text, expected",
    [
        ("c", c),
        ("fun x : s => x", Lam(s, Var(0))),
        ("fun x : s => fun y : t => x", Lam(s, Lam(t, Var(1)))),
        ("sfun x : s => f $ x", RelLam(s, RelApp(f, Var(0)))),
        ("f (f c)", App(f, App(f, c))),
        ("P c", FamApp(P, c)),
        ("s -> t", PiFam(s, t)),
        ("(x : s) -> P x", PiFam(s, FamApp(P, Var(0)))),
        ("s -> Type", PiKind(s, Sort())),
        ("(x : s) -> P x -> Type", PiKind(s, PiKind(FamApp(P, Var(0)), Sort()))),
        ("s >-> t", RelArrowFam(s, t)),
        ("s & t | s", UnionFam(InterFam(s, t), s)),
        ("proj_l <c, c>", ProjL(SPair(c, c))),
        ("inj_l [t] c", InjL(t, c)),
        ("[f, f]", SCoPair(f, f)),
    ],
)
def test_parse_term(signature, text, expected):
    assert parse_term(text, signature) == expected


def test_context_names(signature):
    ctx = Context().push("x", s).push("y", t)
    assert parse_term("fun z : s => x", signature, ctx) == Lam(s, Var(2))
    assert parse_term("y", signature, ctx) == Var(0)


@pytest.mark.parametrize(
    "text, token",
    [
        ("z", "z"),
        ("fun x : s => y", "y"),
        ("fun c : s => c", "c"),
        ("(s : s) -> P s", "s"),
    ],
)
def test_scope_errors(signature, text, token):
    with pytest.raises(ScopeError) as err:
        parse_term(text, signature)
    assert err.value.token == token
    assert err.value.span is not None


def test_open_constants():
    resolved = resolve(parse_expression("f (g x)"), open_constants=True)
    assert resolved.term == App(ConstObj("f"), App(ConstObj("g"), ConstObj("x")))
    assert resolved.opened == {"f": Category.OBJECT, "g": Category.OBJECT, "x": Category.OBJECT}
    resolved = resolve(parse_expression("a -> b"), open_constants=True, expect=Category.FAMILY)
    assert resolved.term == PiFam(ConstFam("a"), ConstFam("b"))
    assert set(resolved.opened.values()) == {Category.FAMILY}


def test_spans(signature):
    resolved = resolve(parse_expression("fun x : s => f x"), signature, file="in.dlf")
    assert resolved.locate(()).column == 1
    assert resolved.locate((1,)).column == 14
    assert resolved.locate((1, 1)).column == 16
    assert resolved.locate((1, 1, 4)) == resolved.locate((1, 1))
    assert resolved.locate((1,)).file == "in.dlf"
