from dataclasses import dataclass
from enum import Enum

from . import const


class Category(Enum):
    """Syntactic categories of the unified term tree."""

    KIND = "kind"
    FAMILY = "family"
    OBJECT = "object"


class Rule(Enum):
    """Tags of the typing rules, as reported by kernel errors."""

    EMPTY_SIGNATURE = "(εΣ)"
    KIND_DECL = "(KΣ)"
    TYPE_DECL = "(σΣ)"
    EMPTY_CONTEXT = "(εΓ)"
    CONTEXT_DECL = "(σΓ)"
    SORT = "(Type)"
    PI_KIND = "(ΠK)"
    CONST = "(Const)"
    VAR = "(Var)"
    PI_INTRO = "(ΠI)"
    PI_ELIM = "(ΠE)"
    REL_INTRO = "(→ʳI)"
    REL_ELIM = "(ΠʳE)"
    INTER_INTRO = "(∩I)"
    INTER_ELIM_L = "(∩E_l)"
    INTER_ELIM_R = "(∩E_r)"
    UNION_INTRO = "(∪I)"
    UNION_INTRO_L = "(∪I_l)"
    UNION_INTRO_R = "(∪I_r)"
    UNION_ELIM = "(∪E)"
    CONV = "(Conv)"


class RedexRule(Enum):
    """Tags of the one-step reduction rules."""

    BETA = "β"
    PROJ_L = "pr_l"
    PROJ_R = "pr_r"
    INJ_L = "in_l"
    INJ_R = "in_r"
    REL_BETA = "βr"
    CONGR_INTER = "Congr_∩"
    CONGR_UNION = "Congr_∪"


class EventType(Enum):
    """Enum with possible session events."""

    DECLARED = "declared"
    CHECKED = "checked"
    EVALUATED = "evaluated"
    ESSENCE = "essence"
    SUBTYPE = "subtype"
    LOADED = "loaded"
    STEP = "step"
    ERROR = "error"


@dataclass(frozen=True)
class SourceSpan:
    """Location of a node in a source file.

    :param file: Name of the file, or None for interactive input
    :param start: Offset of the first character
    :param end: Offset one past the last character
    :param line: Line of the first character (1-based)
    :param column: Column of the first character (1-based)
    """

    file: str | None
    start: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file or '<input>'}:{self.line}:{self.column}"


@dataclass(frozen=True)
class KernelSettings:
    """Step budgets used by every judgment.

    :param fuel: Maximum number of reduction steps per normalization
    :param essence_fuel: Maximum number of β steps per essence comparison
    """

    fuel: int = const.DEFAULT_FUEL
    essence_fuel: int = const.DEFAULT_ESSENCE_FUEL
