"""Exact half-integer arithmetic for angular-momentum bookkeeping.

Representation labels j and magnetic numbers m, m' may be integer or
half-integer.  Index logic must stay exact, so HalfInt stores twice the
value as an int and never touches floating point in comparisons or
arithmetic.  Floats are accepted at the API boundary only when they are
exact multiples of 1/2.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

HalfIntLike = Union["HalfInt", int, float]


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact integer or half-integer, stored as twice its value."""

    twice: int

    @staticmethod
    def of(value: HalfIntLike) -> "HalfInt":
        """Coerce an int, an exact .0/.5 float, or a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise DomainError(f"not a half-integer: {value!r}")
        if isinstance(value, int):
            return HalfInt(2 * value)
        if isinstance(value, float):
            doubled = 2.0 * value
            if doubled != round(doubled):
                raise DomainError(f"not an exact half-integer: {value!r}")
            return HalfInt(int(round(doubled)))
        raise DomainError(f"not a half-integer: {value!r}")

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other: HalfIntLike) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: HalfIntLike) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: HalfIntLike) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __mul__(self, other: int) -> "HalfInt":
        if not isinstance(other, int):
            return NotImplemented
        return HalfInt(self.twice * other)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def twice(value: HalfIntLike) -> int:
    """Twice the value of a half-integer-like, as an exact int."""
    return HalfInt.of(value).twice


def index_int(value, what: str) -> int:
    """An exact integer index (accepts numpy integer scalars)."""
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{what} must be an integer, got {value!r}") from None
