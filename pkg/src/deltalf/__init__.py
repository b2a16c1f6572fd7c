__all__ = [
    "DeltaLFError",
    "KernelError",
    "NotDerivableError",
    "OutOfFuelError",
    "ParseError",
    "ScopeError",
    "SyntaxCategoryError",
    "EventType",
    "KernelSettings",
    "SourceSpan",
    "kernel",
    "subtyping",
    "frontend",
    "metacheck",
]


from importlib.metadata import PackageNotFoundError, version

try:
    # Change here if project is renamed and does not equal the package name
    dist_name = "deltalf"
    __version__ = version(dist_name)
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"
finally:
    del version, PackageNotFoundError


from . import frontend, kernel, metacheck, subtyping
from .errors import (
    DeltaLFError,
    KernelError,
    NotDerivableError,
    OutOfFuelError,
    ParseError,
    ScopeError,
    SyntaxCategoryError,
)
from .types import EventType, KernelSettings, SourceSpan
