from typing import Collection


def fresh_name(base: str, taken: Collection[str]) -> str:
    """Find a name derived from ``base`` that is not in ``taken``.

    Given the base ``x`` and the names ``{"x", "x1"}``, this function
    returns ``x2``. The base itself is returned when it is free.
    """
    if base not in taken:
        return base
    counter = 1
    while f"{base}{counter}" in taken:
        counter += 1
    return f"{base}{counter}"


def parse_fuel_setting(name: str, amount: int) -> str:
    """Validate a ``Set`` command and return the setting it targets.

    :param name: Either ``fuel`` or ``essence_fuel``
    :param amount: Requested budget, which must be positive
    """
    if name not in ("fuel", "essence_fuel"):
        raise ValueError(f'The setting "{name}" does not exist')
    if amount < 1:
        raise ValueError(f"The {name} budget must be positive, got {amount}")
    return name
