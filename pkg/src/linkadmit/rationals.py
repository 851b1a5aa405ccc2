"""Exact rational parsing and formatting.

Demands, budgets and durations are always :class:`fractions.Fraction`.
Input may be a decimal string (``"0.25"``), a ratio (``"1/3"``), an int, or a
JSON float (converted through its shortest repr, so ``0.1`` becomes ``1/10``).
Output is always ``"p/q"`` or an integer string.
"""

from fractions import Fraction
from numbers import Rational

from .errors import DomainError

__all__ = ["to_fraction", "format_fraction"]


def to_fraction(value, *, nonnegative=False, what="value"):
    if isinstance(value, bool):
        raise DomainError(f"{what}: booleans are not numbers")
    if isinstance(value, Rational):
        result = Fraction(value)
    elif isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise DomainError(f"{what}: non-finite number {value!r}")
        result = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            result = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"{what}: cannot parse {value!r} as a rational") from exc
    else:
        raise DomainError(f"{what}: unsupported type {type(value).__name__}")
    if nonnegative and result < 0:
        raise DomainError(f"{what}: must be nonnegative, got {result}")
    return result


def format_fraction(value):
    return str(Fraction(value))
