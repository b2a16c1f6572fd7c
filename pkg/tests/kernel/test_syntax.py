"""Test the term language"""

from hypothesis import given
from hypothesis import strategies as st
import pytest

from deltalf.errors import DuplicateDeclaration, SyntaxCategoryError
from deltalf.kernel import syntax
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
    Signature,
    SignatureEntry,
    Sort,
    SPair,
    Var,
)
from deltalf.types import Category

a = ConstFam("a")
b = ConstFam("b")
P = ConstFam("P")
c = ConstObj("c")

objects = st.recursive(
    st.one_of(st.builds(Var, st.integers(0, 3)), st.just(c)),
    lambda inner: st.one_of(
        st.builds(App, inner, inner),
        st.builds(lambda body: Lam(a, body), inner),
        st.builds(SPair, inner, inner),
        st.builds(ProjL, inner),
        st.builds(lambda body: InjL(b, body), inner),
    ),
    max_leaves=12,
)


@pytest.mark.parametrize(
    "term, amount, cutoff, expected",
    [
        (Var(0), 1, 0, Var(1)),
        (Var(0), 1, 1, Var(0)),
        (Lam(a, Var(0)), 2, 0, Lam(a, Var(0))),
        (Lam(a, Var(1)), 1, 0, Lam(a, Var(2))),
        (App(Var(3), Var(1)), -1, 0, App(Var(2), Var(0))),
        (PiFam(a, FamApp(P, Var(1))), 1, 0, PiFam(a, FamApp(P, Var(2)))),
    ],
)
def test_shift(term, amount, cutoff, expected):
    assert syntax.shift(term, amount, cutoff) == expected


def test_shift_escaping_scope():
    with pytest.raises(ValueError):
        syntax.shift(Var(0), -1)


@pytest.mark.parametrize(
    "term, target, value, expected",
    [
        (Var(0), 0, c, c),
        (App(Var(0), Var(1)), 0, c, App(c, Var(0))),
        (App(Var(0), Var(1)), 1, c, App(Var(0), c)),
        (Lam(a, App(Var(1), Var(0))), 0, Var(4), Lam(a, App(Var(5), Var(0)))),
        (Lam(a, Var(2)), 0, c, Lam(a, Var(1))),
    ],
)
def test_subst(term, target, value, expected):
    assert syntax.subst(term, target, value) == expected


def test_instantiate_keeps_scope_length():
    # The bound variable is 0, the enclosing one is 1
    assert syntax.instantiate(App(Var(0), Var(1)), c) == App(c, Var(1))
    assert syntax.instantiate(App(Var(0), Var(1)), Var(0)) == App(Var(0), Var(1))


@given(objects, objects)
def test_substituting_a_fresh_variable_undoes_a_shift(term, value):
    assert syntax.subst(syntax.shift(term, 1), 0, value) == term


@given(objects)
def test_shift_round_trip(term):
    assert syntax.shift(syntax.shift(term, 2), -2) == term


@given(objects)
def test_renaming_binders_is_alpha_equivalent(term):
    renamed = syntax.rename_hints(term, lambda hint: hint + "'")
    assert renamed == term
    assert hash(renamed) == hash(term)


def test_alpha_equivalence_ignores_hints():
    assert Lam(a, Var(0), "x") == Lam(a, Var(0), "y")
    assert PiFam(a, b, "x") == PiFam(a, b, "z")
    assert Lam(a, Var(0)) != Lam(b, Var(0))


@pytest.mark.parametrize(
    "term, pattern, expected",
    [
        (FamApp(P, InjL(b, Var(0))), InjL(b, Var(0)), FamApp(P, Var(0))),
        (FamApp(FamApp(P, InjL(b, Var(0))), InjL(b, Var(0))), InjL(b, Var(0)),
         FamApp(FamApp(P, Var(0)), Var(0))),
        (FamApp(FamApp(P, InjL(b, Var(0))), Var(0)), InjL(b, Var(0)), None),
        (a, InjL(b, Var(0)), a),
    ],
)
def test_abstract_occurrences(term, pattern, expected):
    assert syntax.abstract_occurrences(term, pattern) == expected


@pytest.mark.parametrize(
    "term, expected",
    [
        (Var(2), {2}),
        (Lam(a, App(Var(0), Var(2))), {1}),
        (PiFam(FamApp(P, Var(0)), FamApp(P, Var(0))), {0}),
        (App(c, c), set()),
    ],
)
def test_free_vars(term, expected):
    assert syntax.free_vars(term) == frozenset(expected)


@pytest.mark.parametrize(
    "term, expected",
    [
        (Sort(), Category.KIND),
        (PiKind(a, Sort()), Category.KIND),
        (a, Category.FAMILY),
        (FamApp(P, c), Category.FAMILY),
        (InterFam(a, PiFam(a, b)), Category.FAMILY),
        (App(Lam(a, Var(0)), c), Category.OBJECT),
        (InjL(b, c), Category.OBJECT),
    ],
)
def test_classify(term, expected):
    assert syntax.classify(term) is expected


@pytest.mark.parametrize(
    "term, path",
    [
        (App(a, c), (0,)),
        (FamApp(P, a), (1,)),
        (PiKind(Sort(), Sort()), (0,)),
        (Lam(a, SPair(c, b)), (1, 1)),
    ],
)
def test_classify_reports_path(term, path):
    with pytest.raises(SyntaxCategoryError) as err:
        syntax.classify(term)
    assert err.value.path == path


def test_subterms_and_replace():
    term = Lam(a, App(Var(0), c))
    found = {path: (node, depth) for path, node, depth in syntax.subterms(term)}
    assert found[(1, 0)] == (Var(0), 1)
    assert found[(0,)] == (a, 0)
    assert syntax.subterm_at(term, (1, 1)) == c
    assert syntax.replace_at(term, (1, 1), Var(0)) == Lam(a, App(Var(0), Var(0)))
    assert syntax.term_size(term) == 5
    assert syntax.constants(term) == frozenset({"a", "c"})


def test_signature_extend():
    signature = Signature().extend(SignatureEntry("a", Sort(), True))
    signature = signature.extend(SignatureEntry("c", a, False))
    assert "a" in signature
    assert len(signature) == 2
    assert signature.names == frozenset({"a", "c"})
    assert signature.lookup("c").classifier == a
    assert signature.lookup("missing") is None
    assert not signature.has_definitions()
    with pytest.raises(DuplicateDeclaration):
        signature.extend(SignatureEntry("c", a, False))


def test_signature_unfold():
    signature = (
        Signature()
        .extend(SignatureEntry("a", Sort(), True))
        .extend(SignatureEntry("c", a, False))
        .extend(SignatureEntry("d", a, False, definition=c))
        .extend(SignatureEntry("e", a, False, definition=ConstObj("d")))
    )
    assert signature.has_definitions()
    assert signature.lookup("e").unfolded == c
    assert signature.unfold(App(ConstObj("e"), ConstObj("d"))) == App(c, c)


def test_context_lookup():
    ctx = Context().push("x", a).push("y", FamApp(P, Var(0)))
    assert ctx.names == ("x", "y")
    assert len(ctx) == 2
    assert ctx.lookup(0) == FamApp(P, Var(1))
    assert ctx.lookup(1) == a
    assert ctx.lookup(2) is None


def test_well_scoped():
    signature = Signature().extend(SignatureEntry("a", Sort(), True))
    ctx = Context().push("x", a)
    assert syntax.well_scoped(signature, ctx, Lam(a, App(Var(0), Var(1))))
    assert not syntax.well_scoped(signature, ctx, Lam(a, Var(2)))
    assert not syntax.well_scoped(signature, ctx, c)
    assert not syntax.well_scoped(signature, ctx, ConstObj("a"))
