"""Encode refinement-style declarations (subsorts) as relevant coercion constants."""

from dataclasses import dataclass
from typing import Sequence

from ..errors import ScopeError
from ..kernel.checker import Checker
from ..kernel.syntax import ConstFam, RelArrowFam, Signature, SignatureEntry, Sort, Term
from ..types import KernelSettings
from ..util import fresh_name


@dataclass(frozen=True)
class Subsort:
    """``sub`` is a refinement of ``sup``: every ``sub`` is a ``sup``."""

    sub: str
    sup: str


@dataclass(frozen=True)
class Ordinary:
    name: str
    classifier: Term
    is_family: bool = False


RefinementDecl = Subsort | Ordinary


def encode_refinement_signature(
    declarations: Sequence[RefinementDecl],
    base: Signature | None = None,
    settings: KernelSettings | None = None,
) -> Signature:
    """Extend ``base`` with the declarations, one relevant constant per subsort.

    :raises ScopeError: When a subsort mentions an undeclared atom
    """
    signature = base or Signature()
    for declaration in declarations:
        match declaration:
            case Subsort(sub, sup):
                for atom in (sub, sup):
                    entry = signature.lookup(atom)
                    if entry is None or not entry.is_family or entry.classifier != Sort():
                        raise ScopeError(f"subsort mentions undeclared atom {atom}")
                entry = SignatureEntry(
                    fresh_name(f"c_{sub}_{sup}", signature.names),
                    RelArrowFam(ConstFam(sub), ConstFam(sup)),
                    is_family=False,
                )
            case Ordinary(name, classifier, is_family):
                entry = SignatureEntry(name, classifier, is_family)
        signature = Checker(signature, settings).declare(entry)
    return signature
