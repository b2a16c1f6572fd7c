"""Test util"""

import pytest

from deltalf import util


@pytest.mark.parametrize(
    "base, taken, expected",
    [
        ("x", set(), "x"),
        ("x", {"x"}, "x1"),
        ("x", {"x", "x1"}, "x2"),
        ("x", {"x1"}, "x"),
        ("y", ["y", "y1", "y2"], "y3"),
    ],
)
def test_fresh_name(base, taken, expected):
    assert util.fresh_name(base, taken) == expected


@pytest.mark.parametrize(
    "name, amount, expected, err",
    [
        ("fuel", 10, "fuel", False),
        ("essence_fuel", 1, "essence_fuel", False),
        ("fuel", 0, None, True),
        ("essence_fuel", -3, None, True),
        ("gas", 10, None, True),
    ],
)
def test_parse_fuel_setting(name, amount, expected, err):
    if not err:
        assert util.parse_fuel_setting(name, amount) == expected
    else:
        with pytest.raises(ValueError):
            util.parse_fuel_setting(name, amount)
