"""Exact arithmetic over the dyadic rationals Z[1/2].

A Dyadic is ``numerator / 2**exponent`` kept in canonical form: the numerator
is odd or the exponent is zero. Canonical form makes equality structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from thompson.errors import NotDyadic

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


@dataclass(frozen=True, slots=True)
class Dyadic:
    """An exact number a/2^k."""

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 0:
            object.__setattr__(self, "numerator", self.numerator << -self.exponent)
            object.__setattr__(self, "exponent", 0)
            return
        if self.numerator == 0:
            object.__setattr__(self, "exponent", 0)
            return
        shift = min(_trailing_zeros(self.numerator), self.exponent)
        if shift:
            object.__setattr__(self, "numerator", self.numerator >> shift)
            object.__setattr__(self, "exponent", self.exponent - shift)

    # --- construction -----------------------------------------------------

    @classmethod
    def of(cls, value: Dyadic | Fraction | int) -> Dyadic:
        """Coerce an int, Fraction or Dyadic; non-dyadic fractions raise NotDyadic."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise NotDyadic(f"{value} is not a dyadic rational", {"value": str(value)})
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse ``a`` or ``a/b`` where b is a power of two."""
        match = _FRACTION_RE.match(text)
        if match is None:
            raise NotDyadic(f"cannot parse {text!r} as a fraction", {"text": text})
        num = int(match.group(1))
        den = int(match.group(2) or 1)
        if den == 0:
            raise NotDyadic(f"zero denominator in {text!r}", {"text": text})
        return cls.of(Fraction(num, den))

    def __reduce__(self) -> tuple[type[Dyadic], tuple[int, int]]:
        return (Dyadic, (self.numerator, self.exponent))

    # --- views ------------------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def scaled(self, scale: int) -> int:
        """Numerator over 2**scale; scale must be at least the exponent."""
        return self.numerator << (scale - self.exponent)

    def to_decimal(self) -> str:
        """Exact finite decimal expansion (every dyadic has one)."""
        if self.exponent == 0:
            return str(self.numerator)
        sign = "-" if self.numerator < 0 else ""
        digits = str(abs(self.numerator) * 5**self.exponent).rjust(self.exponent + 1, "0")
        whole, frac = digits[: -self.exponent], digits[-self.exponent :]
        return f"{sign}{whole}.{frac}"

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    # --- arithmetic -------------------------------------------------------

    def _align(self, other: Dyadic) -> tuple[int, int, int]:
        scale = max(self.exponent, other.exponent)
        return self.scaled(scale), other.scaled(scale), scale

    def __add__(self, other: Dyadic | int) -> Dyadic:
        a, b, scale = self._align(Dyadic.of(other))
        return Dyadic(a + b, scale)

    __radd__ = __add__

    def __sub__(self, other: Dyadic | int) -> Dyadic:
        a, b, scale = self._align(Dyadic.of(other))
        return Dyadic(a - b, scale)

    def __rsub__(self, other: int) -> Dyadic:
        return Dyadic.of(other) - self

    def __mul__(self, other: Dyadic | int) -> Dyadic:
        other = Dyadic.of(other)
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.exponent)

    def halve(self) -> Dyadic:
        return Dyadic(self.numerator, self.exponent + 1)

    def double(self) -> Dyadic:
        return Dyadic(self.numerator, self.exponent - 1)

    def compare(self, other: Dyadic | int) -> int:
        """Return -1, 0 or 1 as self is less than, equal to or greater than other."""
        a, b, _ = self._align(Dyadic.of(other))
        return (a > b) - (a < b)

    def __lt__(self, other: Dyadic | int) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Dyadic | int) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Dyadic | int) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Dyadic | int) -> bool:
        return self.compare(other) >= 0


ZERO = Dyadic(0)
ONE = Dyadic(1)


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    HALVE = "halve"
    DOUBLE = "double"
    CMP = "cmp"


def dyadic_arith(x: Dyadic, y: Dyadic, op: ArithOp | str) -> Dyadic | Ordering:
    """Apply one arithmetic operation; ``halve``/``double`` ignore ``y``.

    Division is absent: Z[1/2] is not closed under it.
    """
    op = ArithOp(op)
    if op is ArithOp.ADD:
        return x + y
    if op is ArithOp.SUB:
        return x - y
    if op is ArithOp.MUL:
        return x * y
    if op is ArithOp.HALVE:
        return x.halve()
    if op is ArithOp.DOUBLE:
        return x.double()
    return Ordering(x.compare(y))


def is_dyadic(value: Fraction) -> bool:
    den = value.denominator
    return den & (den - 1) == 0
