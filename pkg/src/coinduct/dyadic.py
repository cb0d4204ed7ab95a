"""Exact dyadic rationals and the simplest-number search.

Kept separate from :mod:`coinduct.reals` so that the game arithmetic can
evaluate numeric games without importing the sign-string codec.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

POS_INF = math.inf
NEG_INF = -math.inf


class DomainError(ValueError):
    """An argument lies outside the domain of a partial operation."""


class Dyadic(Fraction):
    """A rational whose denominator is a power of two.

    Behaves exactly like :class:`fractions.Fraction` (arithmetic results are
    plain fractions); construction checks the denominator.
    """

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        d = self.denominator
        if d & (d - 1):
            raise DomainError(f"{Fraction(self)} is not dyadic")
        return self

    @property
    def exponent(self) -> int:
        return self.denominator.bit_length() - 1

    def __repr__(self):
        return f"Dyadic({self.numerator}, 2**{self.exponent})"

    def __str__(self):
        return str(Fraction(self))


ExtReal = Union[Fraction, float]


def is_dyadic(x) -> bool:
    x = Fraction(x)
    return x.denominator & (x.denominator - 1) == 0


def parse_extreal(text: str) -> ExtReal:
    """Parse ``inf``, ``-inf``, ``p/q``, ``p/2^k`` or a decimal literal."""
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return POS_INF
    if t == "-inf":
        return NEG_INF
    if "/2^" in t:
        num, exp = t.split("/2^", 1)
        return Fraction(int(num), 2 ** int(exp))
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def format_extreal(x: ExtReal) -> str:
    if x == POS_INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return str(Fraction(x))


def simplest_between(lo: Optional[ExtReal] = None, hi: Optional[ExtReal] = None) -> Dyadic:
    """The dyadic with the shortest sign expansion strictly inside (lo, hi).

    ``None`` (or an infinity on the matching side) leaves that side open.
    Walks the sign tree from 0: a step right while at or below ``lo``, a step
    left while at or above ``hi``.  Integer steps come first, then halving.
    """
    if lo is not None and lo == NEG_INF:
        lo = None
    if hi is not None and hi == POS_INF:
        hi = None
    if lo == POS_INF or hi == NEG_INF:
        raise DomainError("no finite number lies beyond an infinite bound")
    if lo is not None and hi is not None and not lo < hi:
        raise DomainError(f"empty interval ({lo}, {hi})")
    lo_f = None if lo is None else Fraction(lo)
    hi_f = None if hi is None else Fraction(hi)

    def above_lo(v):
        return lo_f is None or v > lo_f

    def below_hi(v):
        return hi_f is None or v < hi_f

    v = Fraction(0)
    if above_lo(v) and below_hi(v):
        return Dyadic(v)
    # integer run: all steps share one direction
    direction = 1 if not above_lo(v) else -1
    while True:
        v += direction
        if above_lo(v) and below_hi(v):
            return Dyadic(v)
        if (direction == 1 and not below_hi(v)) or (direction == -1 and not above_lo(v)):
            break
    # we overshot; bisect back towards the interval with halving steps
    step = Fraction(1, 2)
    while True:
        v = v - step if not below_hi(v) else v + step
        if above_lo(v) and below_hi(v):
            return Dyadic(v)
        step /= 2
