__all__ = [
    "Session",
    "SessionState",
    "SessionSettings",
    "parse",
    "parse_term",
    "print_term",
    "repl_step",
    "check_files",
]


from .parser import parse
from .printer import print_term
from .resolve import parse_term
from .session import Session, SessionSettings, SessionState, check_files, repl_step
