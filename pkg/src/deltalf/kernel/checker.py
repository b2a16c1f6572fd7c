"""Bidirectional type checker for signatures, contexts, kinds, families and objects."""

from dataclasses import dataclass
import logging
from typing import Optional

from ..errors import DuplicateDeclaration, KernelError
from ..types import Category, KernelSettings, Rule
from . import pure
from .essence import Equal, EssenceVerdict, essence, essence_eq
from .reduction import normalize
from .syntax import (
    App,
    ConstFam,
    ConstObj,
    Context,
    FamApp,
    InjL,
    InjR,
    InterFam,
    Lam,
    Path,
    PiFam,
    PiKind,
    ProjL,
    ProjR,
    RelApp,
    RelArrowFam,
    RelLam,
    SCoPair,
    Signature,
    SignatureEntry,
    Sort,
    SPair,
    Term,
    UnionFam,
    Var,
    abstract_occurrences,
    classify,
    free_vars,
    instantiate,
    shift,
    subst,
)

logger = logging.getLogger(__name__)

_EMPTY = Context()


@dataclass(frozen=True)
class TypedResult:
    """Classifier of a family or object.

    :param classifier: Classifier as synthesized
    :param normal_form: Classifier in normal form, definitions left folded
    """

    classifier: Term
    normal_form: Term


class Checker:
    """Typing judgments against a fixed signature.

    Every method that walks a term takes the path of that term inside the
    term being judged, so errors point at the offending subterm.
    """

    def __init__(self, signature: Signature, settings: KernelSettings | None = None):
        self.signature = signature
        self.settings = settings or KernelSettings()

    # Conversion helpers

    def _nf(self, term: Term) -> Term:
        return normalize(self.signature.unfold(term), self.settings.fuel)

    def _convertible(self, left: Term, right: Term) -> bool:
        return left == right or self._nf(left) == self._nf(right)

    def _same_essence(self, left: Term, right: Term) -> EssenceVerdict:
        return essence_eq(
            essence(self.signature.unfold(left)),
            essence(self.signature.unfold(right)),
            self.settings.essence_fuel,
        )

    def _error(
        self, rule: Rule, message: str, ctx: Context, path: Path, **details
    ) -> KernelError:
        return KernelError(rule, message, path, scope=ctx.names, **details)

    # Signatures and contexts

    def declare(self, entry: SignatureEntry) -> Signature:
        """Validate ``entry`` against the signature and return the extension."""
        rule = Rule.KIND_DECL if entry.is_family else Rule.TYPE_DECL
        if entry.name in self.signature:
            raise DuplicateDeclaration(rule, f"{entry.name} is already declared")
        if entry.is_family:
            self.check_kind(_EMPTY, entry.classifier)
            if entry.definition is not None:
                kind = self.infer_kind(_EMPTY, entry.definition)
                if not self._convertible(kind, entry.classifier):
                    raise self._error(
                        Rule.CONV,
                        f"definition of {entry.name} does not have the declared kind",
                        _EMPTY,
                        (),
                        expected=entry.classifier,
                        actual=kind,
                    )
        else:
            self.check_is_type(_EMPTY, entry.classifier, (), rule)
            if entry.definition is not None:
                self.check_type(_EMPTY, entry.definition, entry.classifier)
        logger.debug("Declared %s", entry.name)
        return self.signature.extend(entry)

    def check_signature(self) -> None:
        prefix = Signature()
        for entry in self.signature.entries:
            prefix = Checker(prefix, self.settings).declare(entry)

    def check_context(self, ctx: Context) -> None:
        prefix = _EMPTY
        for binding in ctx.bindings:
            if binding.name in prefix.names:
                raise DuplicateDeclaration(
                    Rule.CONTEXT_DECL, f"variable {binding.name} is declared twice"
                )
            self.check_is_type(prefix, binding.family, (), Rule.CONTEXT_DECL)
            prefix = prefix.push(binding.name, binding.family)

    # Kinds and families

    def check_kind(self, ctx: Context, kind: Term, path: Path = ()) -> None:
        match kind:
            case Sort():
                return
            case PiKind(domain, body, hint):
                self.check_is_type(ctx, domain, path + (0,), Rule.PI_KIND)
                self.check_kind(ctx.push(hint, domain), body, path + (1,))
                return
        raise self._error(Rule.PI_KIND, "expected a kind", ctx, path, actual=kind)

    def check_is_type(self, ctx: Context, fam: Term, path: Path, rule: Rule) -> None:
        kind = self.infer_kind(ctx, fam, path)
        if self._nf(kind) != Sort():
            raise self._error(
                rule, "expected a family of kind Type", ctx, path, expected=Sort(), actual=kind
            )

    def infer_kind(self, ctx: Context, fam: Term, path: Path = ()) -> Term:
        match fam:
            case ConstFam(name):
                entry = self.signature.lookup(name)
                if entry is None or not entry.is_family:
                    raise self._error(Rule.CONST, f"unknown family constant {name}", ctx, path)
                return entry.classifier
            case PiFam(domain, body, hint):
                self.check_is_type(ctx, domain, path + (0,), Rule.PI_INTRO)
                self.check_is_type(ctx.push(hint, domain), body, path + (1,), Rule.PI_INTRO)
                return Sort()
            case RelArrowFam(domain, codomain):
                self.check_is_type(ctx, domain, path + (0,), Rule.REL_INTRO)
                self.check_is_type(ctx, codomain, path + (1,), Rule.REL_INTRO)
                return Sort()
            case InterFam(left, right):
                self.check_is_type(ctx, left, path + (0,), Rule.INTER_INTRO)
                self.check_is_type(ctx, right, path + (1,), Rule.INTER_INTRO)
                return Sort()
            case UnionFam(left, right):
                self.check_is_type(ctx, left, path + (0,), Rule.UNION_INTRO)
                self.check_is_type(ctx, right, path + (1,), Rule.UNION_INTRO)
                return Sort()
            case FamApp(head, arg):
                kind = self.infer_kind(ctx, head, path + (0,))
                match self._nf(kind):
                    case PiKind(domain, body):
                        self.check_type(ctx, arg, domain, path + (1,))
                        return subst(body, 0, arg)
                raise self._error(
                    Rule.PI_ELIM, "applied family does not have a Π-kind", ctx, path, actual=kind
                )
        raise self._error(Rule.PI_KIND, "expected a family", ctx, path, actual=fam)

    # Objects

    def infer_type(self, ctx: Context, obj: Term, path: Path = ()) -> Term:
        match obj:
            case ConstObj(name):
                entry = self.signature.lookup(name)
                if entry is None or entry.is_family:
                    raise self._error(Rule.CONST, f"unknown object constant {name}", ctx, path)
                return entry.classifier
            case Var(index):
                fam = ctx.lookup(index)
                if fam is None:
                    raise self._error(Rule.VAR, f"unbound variable #{index}", ctx, path)
                return fam
            case Lam(domain, body, hint):
                self.check_is_type(ctx, domain, path + (0,), Rule.PI_INTRO)
                codomain = self.infer_type(ctx.push(hint, domain), body, path + (1,))
                return PiFam(domain, codomain, hint)
            case RelLam(domain, body, hint):
                self.check_is_type(ctx, domain, path + (0,), Rule.REL_INTRO)
                codomain = self.infer_type(ctx.push(hint, domain), body, path + (1,))
                return self._relevant_arrow(ctx, obj, codomain, path)
            case App(fn, arg):
                fn_type = self.infer_type(ctx, fn, path + (0,))
                match self._nf(fn_type):
                    case PiFam(domain, body):
                        self.check_type(ctx, arg, domain, path + (1,))
                        return subst(body, 0, arg)
                raise self._error(
                    Rule.PI_ELIM, "applied object is not a function", ctx, path, actual=fn_type
                )
            case RelApp(fn, arg):
                fn_type = self.infer_type(ctx, fn, path + (0,))
                match self._nf(fn_type):
                    case RelArrowFam(domain, codomain):
                        self.check_type(ctx, arg, domain, path + (1,))
                        return codomain
                raise self._error(
                    Rule.REL_ELIM,
                    "relevantly applied object is not a relevant function",
                    ctx,
                    path,
                    actual=fn_type,
                )
            case SPair(left, right):
                left_type = self.infer_type(ctx, left, path + (0,))
                right_type = self.infer_type(ctx, right, path + (1,))
                self._require_same_essence(ctx, obj, Rule.INTER_INTRO, path)
                return InterFam(left_type, right_type)
            case ProjL(inner):
                inner_type = self.infer_type(ctx, inner, path + (0,))
                match self._nf(inner_type):
                    case InterFam(left, _):
                        return left
                raise self._error(
                    Rule.INTER_ELIM_L, "projected object is not a pair", ctx, path, actual=inner_type
                )
            case ProjR(inner):
                inner_type = self.infer_type(ctx, inner, path + (0,))
                match self._nf(inner_type):
                    case InterFam(_, right):
                        return right
                raise self._error(
                    Rule.INTER_ELIM_R, "projected object is not a pair", ctx, path, actual=inner_type
                )
            case InjL(other, inner):
                union = UnionFam(self.infer_type(ctx, inner, path + (1,)), other)
                self.check_is_type(ctx, union, path + (0,), Rule.UNION_INTRO_L)
                return union
            case InjR(other, inner):
                union = UnionFam(other, self.infer_type(ctx, inner, path + (1,)))
                self.check_is_type(ctx, union, path + (0,), Rule.UNION_INTRO_R)
                return union
            case SCoPair():
                return self._synthesize_copair(ctx, obj, path)
        raise self._error(Rule.CONST, "expected an object", ctx, path, actual=obj)

    def check_type(self, ctx: Context, obj: Term, expected: Term, path: Path = ()) -> None:
        """Check ``obj`` against ``expected``, pushing the family inwards where it helps."""
        match obj:
            case SCoPair():
                target = self._nf(expected)
                if isinstance(target, PiFam) and isinstance(target.domain, UnionFam):
                    self._check_copair(ctx, obj, target, path)
                    return
            case App(SCoPair() as copair, arg):
                try:
                    actual = self.infer_type(ctx, obj, path)
                except KernelError as err:
                    if err.rule is not Rule.UNION_ELIM:
                        raise
                    self._check_copair_application(ctx, copair, arg, expected, path, err)
                    return
                self._conversion(ctx, actual, expected, path)
                return
            case Lam(domain, body, hint):
                target = self._nf(expected)
                if isinstance(target, PiFam):
                    self._check_binder_domain(ctx, domain, target.domain, path, Rule.PI_INTRO)
                    self.check_type(ctx.push(hint, domain), body, target.body, path + (1,))
                    return
            case RelLam(domain, body, hint):
                target = self._nf(expected)
                if isinstance(target, RelArrowFam):
                    self._check_binder_domain(ctx, domain, target.domain, path, Rule.REL_INTRO)
                    self.check_type(
                        ctx.push(hint, domain), body, shift(target.codomain, 1), path + (1,)
                    )
                    self._require_identity_essence(ctx, obj, path)
                    return
            case SPair(left, right):
                target = self._nf(expected)
                if isinstance(target, InterFam):
                    self.check_type(ctx, left, target.left, path + (0,))
                    self.check_type(ctx, right, target.right, path + (1,))
                    self._require_same_essence(ctx, obj, Rule.INTER_INTRO, path)
                    return
        self._conversion(ctx, self.infer_type(ctx, obj, path), expected, path)

    def _conversion(self, ctx: Context, actual: Term, expected: Term, path: Path) -> None:
        if not self._convertible(actual, expected):
            raise self._error(
                Rule.CONV,
                "object does not have the expected family",
                ctx,
                path,
                expected=expected,
                actual=actual,
            )

    def _check_binder_domain(
        self, ctx: Context, domain: Term, expected: Term, path: Path, rule: Rule
    ) -> None:
        self.check_is_type(ctx, domain, path + (0,), rule)
        if not self._convertible(domain, expected):
            raise self._error(
                Rule.CONV,
                "binder annotation does not match the expected domain",
                ctx,
                path + (0,),
                expected=expected,
                actual=domain,
            )

    # Proof-functional side conditions

    def _require_same_essence(
        self, ctx: Context, pair: SPair | SCoPair, rule: Rule, path: Path
    ) -> None:
        verdict = self._same_essence(pair.left, pair.right)
        if not isinstance(verdict, Equal):
            raise self._error(
                rule, "components do not share the same essence", ctx, path, verdict=verdict
            )

    def _require_identity_essence(self, ctx: Context, rel_lam: RelLam, path: Path) -> None:
        verdict = essence_eq(
            essence(self.signature.unfold(rel_lam.body)),
            pure.Var(0),
            self.settings.essence_fuel,
        )
        if not isinstance(verdict, Equal):
            raise self._error(
                Rule.REL_INTRO,
                "body of a relevant abstraction must have the bound variable as essence",
                ctx,
                path + (1,),
                verdict=verdict,
            )

    def _relevant_arrow(self, ctx: Context, rel_lam: RelLam, codomain: Term, path: Path) -> Term:
        if 0 in free_vars(codomain):
            codomain = self._nf(codomain)
        if 0 in free_vars(codomain):
            raise self._error(
                Rule.REL_INTRO,
                "codomain of a relevant abstraction depends on its argument",
                ctx.push(rel_lam.hint, rel_lam.domain),
                path + (1,),
                actual=codomain,
            )
        self._require_identity_essence(ctx, rel_lam, path)
        return RelArrowFam(rel_lam.domain, shift(codomain, -1))

    # Co-pairs

    def _branch_types(self, ctx: Context, copair: SCoPair, path: Path) -> tuple[PiFam, PiFam]:
        branches = []
        for position, branch in enumerate((copair.left, copair.right)):
            branch_type = self._nf(self.infer_type(ctx, branch, path + (position,)))
            if not isinstance(branch_type, PiFam):
                raise self._error(
                    Rule.UNION_ELIM,
                    "co-pair branch is not a function",
                    ctx,
                    path + (position,),
                    actual=branch_type,
                )
            branches.append(branch_type)
        return branches[0], branches[1]

    def _synthesize_copair(self, ctx: Context, copair: SCoPair, path: Path) -> Term:
        left_type, right_type = self._branch_types(ctx, copair, path)
        left_domain, right_domain = left_type.domain, right_type.domain
        result = abstract_occurrences(left_type.body, InjL(shift(right_domain, 1), Var(0)))
        if result is None:
            raise self._error(
                Rule.UNION_ELIM,
                "cannot recover the result family of the co-pair",
                ctx,
                path + (0,),
                actual=left_type,
            )
        expected_right = instantiate(result, InjR(shift(left_domain, 1), Var(0)))
        if not self._convertible(expected_right, right_type.body):
            raise self._error(
                Rule.UNION_ELIM,
                "co-pair branches disagree on the result family",
                ctx,
                path + (1,),
                expected=PiFam(right_domain, expected_right, right_type.hint),
                actual=right_type,
            )
        union = UnionFam(left_domain, right_domain)
        self._finish_copair(ctx, copair, union, result, path)
        return PiFam(union, result)

    def _check_copair(self, ctx: Context, copair: SCoPair, target: PiFam, path: Path) -> None:
        union = target.domain
        left_domain, right_domain = union.left, union.right
        self.check_type(
            ctx,
            copair.left,
            PiFam(left_domain, instantiate(target.body, InjL(shift(right_domain, 1), Var(0)))),
            path + (0,),
        )
        self.check_type(
            ctx,
            copair.right,
            PiFam(right_domain, instantiate(target.body, InjR(shift(left_domain, 1), Var(0)))),
            path + (1,),
        )
        self._finish_copair(ctx, copair, union, target.body, path)

    def _finish_copair(
        self, ctx: Context, copair: SCoPair, union: UnionFam, result: Term, path: Path
    ) -> None:
        self.check_is_type(ctx.push("x", union), result, path, Rule.UNION_ELIM)
        self._require_same_essence(ctx, copair, Rule.UNION_ELIM, path)

    def _check_copair_application(
        self,
        ctx: Context,
        copair: SCoPair,
        arg: Term,
        expected: Term,
        path: Path,
        synthesis_error: KernelError,
    ) -> None:
        """Recover the result family from the expected one by abstracting the argument."""
        arg_type = self._nf(self.infer_type(ctx, arg, path + (1,)))
        if not isinstance(arg_type, UnionFam):
            raise synthesis_error
        result = abstract_occurrences(shift(self._nf(expected), 1), shift(self._nf(arg), 1))
        try:
            self._check_copair(ctx, copair, PiFam(arg_type, result), path + (0,))
        except KernelError as err:
            raise synthesis_error from err
        self._conversion(ctx, subst(result, 0, arg), expected, path)

    # Entry points

    def typed(self, ctx: Context, term: Term) -> TypedResult:
        """Classifier of a family or an object."""
        if classify(term) is Category.OBJECT:
            classifier = self.infer_type(ctx, term)
        else:
            classifier = self.infer_kind(ctx, term)
        return TypedResult(classifier, normalize(classifier, self.settings.fuel))


def _checker(signature: Signature, settings: Optional[KernelSettings]) -> Checker:
    return Checker(signature, settings)


def check_signature(signature: Signature, settings: KernelSettings | None = None) -> None:
    _checker(signature, settings).check_signature()


def check_context(
    signature: Signature, context: Context, settings: KernelSettings | None = None
) -> None:
    _checker(signature, settings).check_context(context)


def check_kind(
    signature: Signature, context: Context, kind: Term, settings: KernelSettings | None = None
) -> None:
    classify(kind)
    _checker(signature, settings).check_kind(context, kind)


def infer_kind(
    signature: Signature, context: Context, fam: Term, settings: KernelSettings | None = None
) -> Term:
    classify(fam)
    return _checker(signature, settings).infer_kind(context, fam)


def infer_type(
    signature: Signature, context: Context, obj: Term, settings: KernelSettings | None = None
) -> Term:
    classify(obj)
    return _checker(signature, settings).infer_type(context, obj)


def check_type(
    signature: Signature,
    context: Context,
    obj: Term,
    fam: Term,
    settings: KernelSettings | None = None,
) -> None:
    classify(obj)
    classify(fam)
    checker = _checker(signature, settings)
    checker.check_is_type(context, fam, (), Rule.CONV)
    checker.check_type(context, obj, fam)
