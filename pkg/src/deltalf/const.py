from typing import Final

DEFAULT_FUEL: Final[int] = 100_000
DEFAULT_ESSENCE_FUEL: Final[int] = 10_000

# Breadth of the joinability search before falling back to normal forms
CONFLUENCE_SEARCH_DEPTH: Final[int] = 2
CONFLUENCE_SEARCH_WIDTH: Final[int] = 256

SIMULATION_SEARCH_DEPTH: Final[int] = 6
SIMULATION_SEARCH_WIDTH: Final[int] = 2_000

FUZZ_RETRIES: Final[int] = 25
DEFAULT_FUZZ_SIZE: Final[int] = 30
SHRINK_ROUNDS: Final[int] = 50

SOURCE_SUFFIX: Final[str] = ".dlf"

# Constants of the erased target language
PRODUCT_CONSTANT: Final[str] = "c_x"
SORT_CONSTANT: Final[str] = "Type"
