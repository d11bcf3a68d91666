from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, value) -> HalfInt:
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        q = Fraction(value)
        if (2 * q).denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return cls(int(2 * q))

    @classmethod
    def parse(cls, text: str) -> HalfInt:
        s = text.strip()
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot read {text!r} as a half-integer") from None
        if (2 * q).denominator != 1:
            raise ValueError(f"{text!r} is not a half-integer")
        return cls(int(2 * q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __add__(self, other) -> HalfInt:
        return HalfInt(self.twice_value + HalfInt.of(other).twice_value)

    __radd__ = __add__

    def __sub__(self, other) -> HalfInt:
        return HalfInt(self.twice_value - HalfInt.of(other).twice_value)

    def __rsub__(self, other) -> HalfInt:
        return HalfInt(HalfInt.of(other).twice_value - self.twice_value)

    def __neg__(self) -> HalfInt:
        return HalfInt(-self.twice_value)

    def __abs__(self) -> HalfInt:
        return HalfInt(abs(self.twice_value))

    def __lt__(self, other) -> bool:
        return self.twice_value < HalfInt.of(other).twice_value

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInt):
            return self.twice_value == other.twice_value
        if isinstance(other, (int, Fraction)):
            return Fraction(self.twice_value, 2) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.twice_value)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def half_range(lo_twice: int, hi_twice: int, parity: int):
    """Twice-values t with lo <= t <= hi and t % 2 == parity, ascending."""
    start = lo_twice if lo_twice % 2 == parity else lo_twice + 1
    return range(start, hi_twice + 1, 2)
