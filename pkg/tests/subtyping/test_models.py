"""Test simple types and derivations"""

import pytest

from deltalf.errors import NotSimpleTypeError
from deltalf.frontend.resolve import parse_term
from deltalf.kernel.syntax import ConstFam, InterFam, PiFam, UnionFam
from deltalf.subtyping import models
from deltalf.subtyping.models import Arrow, Atom, Inter, SubAxiom, SubDeriv, SubRule, Union

from .. import utils

a, b, c = Atom("a"), Atom("b"), Atom("c")

SIGNATURE = """\
Axiom s : Type.
Axiom t : Type.
Axiom P : s -> Type.
Axiom k : s.
Definition u : Type := s | t.
"""


@pytest.fixture(scope="module")
def signature():
    return utils.session_from(SIGNATURE).signature


@pytest.mark.parametrize(
    "simple, expected",
    [
        (a, "a"),
        (Arrow(a, Arrow(b, a)), "a -> b -> a"),
        (Arrow(Arrow(a, b), a), "(a -> b) -> a"),
        (Inter(a, Union(b, a)), "a & (b | a)"),
        (Union(Inter(a, b), a), "a & b | a"),
        (Union(a, Union(b, a)), "a | (b | a)"),
        (Inter(Inter(a, b), a), "a & b & a"),
        (Inter(a, Inter(b, a)), "a & (b & a)"),
        (Inter(a, Arrow(a, b)), "a & (a -> b)"),
        (Arrow(Union(a, b), Inter(a, b)), "a | b -> a & b"),
    ],
)
def test_show_type(simple, expected):
    assert models.show_type(simple) == expected
    assert str(simple) == expected


@pytest.mark.parametrize(
    "derivation",
    [
        models.refl(a),
        models.pair_self(a),
        models.union_idem(Arrow(a, b)),
        models.proj_l(Inter(a, b)),
        models.proj_r(Inter(a, b)),
        models.inj_l(Union(a, b)),
        models.inj_r(Union(a, b)),
        models.mono_inter(models.proj_l(Inter(a, b)), models.refl(c)),
        models.mono_union(models.refl(a), models.inj_l(Union(b, c))),
        models.arrow_mono(models.proj_l(Inter(a, b)), models.inj_r(Union(c, b))),
        models.arrow_inter_dist(a, b, c),
        models.arrow_union_dist(a, b, c),
        models.trans(models.proj_l(Inter(a, b)), models.inj_l(Union(a, c))),
        models.greatest_lower_bound(models.proj_r(Inter(a, b)), models.proj_l(Inter(a, b))),
        models.least_upper_bound(models.inj_r(Union(b, a)), models.inj_l(Union(b, a))),
    ],
)
def test_check_derivation(derivation):
    assert models.check_derivation(derivation)


@pytest.mark.parametrize(
    "derivation",
    [
        SubDeriv(SubRule.REFL, a, b),
        SubDeriv(SubRule.PAIR_SELF, a, Inter(a, b)),
        SubDeriv(SubRule.PROJ_L, Inter(a, b), b),
        SubDeriv(SubRule.INJ_R, a, Union(a, b)),
        SubDeriv(SubRule.TRANS, a, a, (models.refl(a),)),
        SubDeriv(SubRule.PROJ_L, Inter(a, b), a, (models.refl(a),)),
        SubDeriv(SubRule.ARROW_INTER_DIST, Inter(Arrow(a, b), Arrow(c, b)), Arrow(a, Inter(b, b))),
        SubDeriv(SubRule.ARROW_UNION_DIST, Inter(Arrow(a, b), Arrow(c, a)), Arrow(Union(a, c), b)),
        SubDeriv(
            SubRule.ARROW_MONO,
            Arrow(a, b),
            Arrow(a, b),
            (models.proj_l(Inter(a, b)), models.refl(b)),
        ),
        SubDeriv(SubRule.MONO_INTER, Inter(a, b), Inter(a, c), (models.refl(a), models.refl(b))),
        SubDeriv(SubRule.AXIOM, a, b, constant="ab"),
    ],
)
def test_check_derivation_rejects(derivation):
    assert not models.check_derivation(derivation)


def test_axiom_derivation():
    entry = SubAxiom("ab", a, b)
    derivation = models.axiom(entry)
    assert models.check_derivation(derivation, {"ab": entry})
    assert not models.check_derivation(derivation, {"ab": SubAxiom("ab", b, a)})
    assert not models.check_derivation(models.trans(derivation, models.inj_l(Union(b, c))))


def test_trans():
    first, second = models.proj_l(Inter(a, b)), models.inj_l(Union(a, c))
    assert models.trans(models.refl(Inter(a, b)), first) is first
    assert models.trans(first, models.refl(a)) is first
    assert models.trans(first, second).size == 3
    with pytest.raises(ValueError):
        models.trans(second, first)


def test_identity_premises_collapse():
    assert models.mono_inter(models.refl(a), models.refl(b)) == models.refl(Inter(a, b))
    assert models.mono_union(models.refl(a), models.refl(b)) == models.refl(Union(a, b))
    assert models.arrow_mono(models.refl(a), models.refl(b)) == models.refl(Arrow(a, b))


def test_arrow_mono_orientation():
    derivation = models.arrow_mono(models.proj_l(Inter(a, b)), models.inj_l(Union(c, b)))
    assert derivation.lhs == Arrow(a, c)
    assert derivation.rhs == Arrow(Inter(a, b), Union(c, b))


def test_bounds():
    glb = models.greatest_lower_bound(models.proj_r(Inter(a, b)), models.proj_l(Inter(a, b)))
    assert (glb.lhs, glb.rhs, glb.size) == (Inter(a, b), Inter(b, a), 5)
    lub = models.least_upper_bound(models.inj_r(Union(b, a)), models.inj_l(Union(b, a)))
    assert (lub.lhs, lub.rhs, lub.size) == (Union(a, b), Union(b, a), 5)
    assert lub.types() >= {a, b, Union(a, b), Union(b, a)}


@pytest.mark.parametrize(
    "text, expected",
    [
        ("s", Atom("s")),
        ("s -> t -> s", Arrow(Atom("s"), Arrow(Atom("t"), Atom("s")))),
        ("s & (t | s)", Inter(Atom("s"), Union(Atom("t"), Atom("s")))),
        ("u -> s", Arrow(Union(Atom("s"), Atom("t")), Atom("s"))),
    ],
)
def test_from_family(signature, text, expected):
    family = parse_term(text, signature)
    assert models.from_family(family, signature) == expected
    assert models.from_family(models.to_family(expected)) == expected


def test_from_family_keeps_definitions(signature):
    assert models.from_family(ConstFam("u")) == Atom("u")


@pytest.mark.parametrize("text", ["(x : s) -> P x", "s >-> t", "P k", "Type"])
def test_from_family_not_simple(signature, text):
    with pytest.raises(NotSimpleTypeError):
        models.from_family(parse_term(text, signature), signature)


def test_to_family():
    assert models.to_family(Arrow(a, Inter(b, Union(a, c)))) == PiFam(
        ConstFam("a"), InterFam(ConstFam("b"), UnionFam(ConstFam("a"), ConstFam("c")))
    )
    with pytest.raises(NotSimpleTypeError):
        models.to_family(models.SimpleType())


@pytest.mark.parametrize(
    "derivation, label",
    [
        (models.pair_self(a), "(1)"),
        (models.union_idem(a), "(2)"),
        (models.proj_l(Inter(a, b)), "(3l)"),
        (models.inj_r(Union(a, b)), "(4r)"),
        (models.refl(a), "(6)"),
    ],
)
def test_rule_labels(derivation, label):
    assert derivation.rule.value == label
