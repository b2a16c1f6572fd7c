__all__ = [
    "erase_type",
    "erase_obj",
    "simulation_check",
    "fuzz_well_typed",
    "run_suites",
]


from .erasure import erase_obj, erase_type
from .fuzz import fuzz_well_typed
from .simulation import simulation_check
from .suites import run_suites
