"""Signed 64-bit guard for integers that leave the exact core."""

from __future__ import annotations

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class IntegerOverflowError(OverflowError):
    """A value left the signed 64-bit range."""


def checked(value: int, what: str = "value") -> int:
    value = int(value)
    if value > INT64_MAX or value < INT64_MIN:
        raise IntegerOverflowError(f"{what} {value} does not fit in a signed 64-bit integer")
    return value
