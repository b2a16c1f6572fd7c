__all__ = [
    "Checker",
    "TypedResult",
    "Signature",
    "SignatureEntry",
    "Context",
    "essence",
    "essence_eq",
    "normalize",
    "one_step_reducts",
    "check_type",
    "infer_type",
]


from .checker import Checker, TypedResult, check_type, infer_type
from .essence import essence, essence_eq
from .reduction import normalize, one_step_reducts
from .syntax import Context, Signature, SignatureEntry
