"""Parsing of SI quantities with metric prefixes, e.g. ``10um`` or ``20 uK``."""

from __future__ import annotations

import re
from decimal import Decimal

from .constants import CODATA2018
from .errors import ParseError

# prefix -> power of ten
PREFIXES = {
    "y": -24,
    "z": -21,
    "a": -18,
    "f": -15,
    "p": -12,
    "n": -9,
    "u": -6,
    "µ": -6,
    "m": -3,
    "c": -2,
    "d": -1,
    "": 0,
    "k": 3,
    "M": 6,
    "G": 9,
    "T": 12,
}

# quantity -> {unit symbol: factor to SI}
_BASE_UNITS = {
    "length": {"m": 1.0},
    "temperature": {"K": 1.0},
    "energy": {"J": 1.0, "eV": 1.602176634e-19},
    "mass": {"g": 1e-3},
}
_SPECIAL = {
    "mass": {"u": CODATA2018.atomic_mass_unit, "Da": CODATA2018.atomic_mass_unit, "kg": 1.0},
}

_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)\s*$")


def parse_quantity(text, quantity: str) -> float:
    """Convert ``text`` to SI. Bare numbers are taken to be SI already.

    >>> parse_quantity("2um", "length")
    2e-06
    >>> parse_quantity("20 uK", "temperature")
    2e-05
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    if quantity not in _BASE_UNITS:
        raise ValueError(f"unknown quantity {quantity!r}")
    match = _NUMBER.match(str(text))
    if not match:
        raise ParseError(f"cannot read {quantity} from {text!r}")
    number, unit = match.group(1), match.group(2)
    value = float(number)
    if not unit:
        return value
    special = _SPECIAL.get(quantity, {})
    if unit in special:
        return value * special[unit]
    for base, factor in _BASE_UNITS[quantity].items():
        if unit.endswith(base):
            prefix = unit[: -len(base)]
            if prefix in PREFIXES:
                # scale in decimal so "20uK" gives exactly 2e-05
                scaled = float(Decimal(number).scaleb(PREFIXES[prefix]))
                return scaled if factor == 1.0 else scaled * factor
    raise ParseError(f"unit {unit!r} is not a {quantity} unit")
