"""Test print_term"""

import pytest

from deltalf.frontend.printer import print_term
from deltalf.frontend.resolve import parse_term
from deltalf.kernel.syntax import (
    App,
    ConstFam,
    ConstObj,
    FamApp,
    InjL,
    InjR,
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
from deltalf.metacheck.fuzz import fuzz_well_typed

from .. import utils

a = ConstFam("a")
b = ConstFam("b")
d = ConstFam("d")
P = ConstFam("P")
c = ConstObj("c")
f = ConstObj("f")


@pytest.mark.parametrize(
    "term, expected",
    [
        (Lam(a, Var(0)), "fun x : a => x"),
        (Lam(a, Lam(a, Var(1), "x"), "x"), "fun x : a => fun x1 : a => x"),
        (Lam(a, Var(0), "c"), "fun c1 : a => c1"),
        (RelLam(a, RelApp(f, Var(0)), "y"), "sfun y : a => f $ y"),
        (PiFam(a, b), "a -> b"),
        (PiFam(PiFam(a, b), b), "(a -> b) -> b"),
        (PiFam(a, PiFam(a, b)), "a -> a -> b"),
        (PiFam(a, FamApp(P, Var(0))), "(x : a) -> P x"),
        (PiKind(a, Sort()), "a -> Type"),
        (RelArrowFam(a, PiFam(a, b)), "a >-> a -> b"),
        (InterFam(UnionFam(a, b), d), "(a | b) & d"),
        (UnionFam(a, InterFam(b, d)), "a | b & d"),
        (InterFam(a, InterFam(b, d)), "a & (b & d)"),
        (UnionFam(UnionFam(a, b), d), "a | b | d"),
        (PiFam(InterFam(a, b), UnionFam(a, b)), "a & b -> a | b"),
        (App(f, App(f, c)), "f (f c)"),
        (App(App(f, c), c), "f c c"),
        (App(Lam(a, Var(0)), c), "(fun x : a => x) c"),
        (App(ProjL(f), c), "proj_l f c"),
        (ProjL(App(f, c)), "proj_l (f c)"),
        (InjL(b, c), "inj_l [b] c"),
        (InjR(a, App(f, c)), "inj_r [a] (f c)"),
        (SPair(c, Lam(a, Var(0))), "<c, fun x : a => x>"),
        (App(SCoPair(f, f), c), "[f, f] c"),
        (Var(0), "#0"),
    ],
)
def test_print_term(term, expected):
    signature = utils.session_from("Axiom c : Type.").signature
    assert print_term(term, signature) == expected


def test_print_scope():
    assert print_term(App(Var(1), Var(0)), scope=("x", "y")) == "x y"
    assert print_term(Lam(a, Var(1), "x"), scope=("x",)) == "fun x1 : a => x"


@pytest.mark.parametrize("file_name", utils.corpus_files())
def test_corpus_round_trip(file_name):
    signature = utils.load_corpus(file_name).signature
    for entry in signature.entries:
        for term in (entry.classifier, entry.definition):
            if term is None:
                continue
            assert parse_term(print_term(term, signature), signature) == term


@pytest.mark.parametrize("seed", range(20))
def test_fuzz_round_trip(seed):
    sample = fuzz_well_typed(seed, 20)
    if sample is None:
        pytest.skip("no sample for this seed")
    text = print_term(sample.term, sample.signature)
    assert parse_term(text, sample.signature) == sample.term


@pytest.mark.acceptance
def test_fuzz_round_trip_at_scale():
    checked = 0
    for seed in range(1_000):
        sample = fuzz_well_typed(seed, 30)
        if sample is None:
            continue
        text = print_term(sample.term, sample.signature, sample.context.names)
        assert parse_term(text, sample.signature, sample.context) == sample.term, seed
        checked += 1
    assert checked > 0


def test_binders_avoid_constants_of_the_term():
    k, a_fam = ConstObj("k"), ConstFam("a")
    term = App(Lam(a_fam, Var(0), "k"), k)
    text = print_term(term)
    assert text == "(fun k1 : a => k1) k"
    signature = utils.session_from("Axiom a : Type. Axiom k : a.").signature
    assert parse_term(text, signature) == term
