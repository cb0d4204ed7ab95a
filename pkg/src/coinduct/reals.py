"""Sign strings and the extended reals.

A finite string over ``-``/``+`` names a dyadic rational: the initial run of
equal signs counts whole units, and every later sign adds or subtracts a
halving step.  The two constant infinite strings are represented by the
tokens ``inf`` and ``-inf``.  :func:`gamma` and :func:`upsilon` move between
sign strings and numeric games.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .dyadic import (NEG_INF, POS_INF, DomainError, Dyadic, ExtReal, is_dyadic,
                     simplest_between)
from .games import Forms, SignedGame, WellFoundednessError, _require_wf

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class SignString:
    """A finite sign string, or one of the two infinite constant strings.

    ``signs`` holds the finite string; ``infinite`` is 0 for finite strings,
    +1 for the all-plus stream and -1 for the all-minus stream.
    """

    signs: str = ""
    infinite: int = 0

    def __post_init__(self):
        if self.infinite not in (-1, 0, 1):
            raise ValueError("infinite must be -1, 0 or 1")
        if self.infinite and self.signs:
            raise ValueError("infinity tokens carry no finite signs")
        if set(self.signs) - {PLUS, MINUS}:
            raise ValueError(f"sign strings use only '+' and '-', got {self.signs!r}")

    @classmethod
    def parse(cls, text: str) -> "SignString":
        t = text.strip()
        if t in ("inf", "+inf"):
            return POS_INF_STR
        if t == "-inf":
            return NEG_INF_STR
        if t in ('""', "''", "0"):
            t = ""
        return cls(t)

    @property
    def is_finite(self) -> bool:
        return self.infinite == 0

    def __len__(self):
        if not self.is_finite:
            raise ValueError("infinite sign string has no length")
        return len(self.signs)

    def __str__(self):
        if self.infinite:
            return "inf" if self.infinite > 0 else "-inf"
        return self.signs


POS_INF_STR = SignString("", 1)
NEG_INF_STR = SignString("", -1)

SignLike = Union[SignString, str]


def _coerce(s: SignLike) -> SignString:
    return s if isinstance(s, SignString) else SignString.parse(s)


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def phi(s: SignLike) -> ExtReal:
    """Value of a sign string: unary run, then halving steps."""
    s = _coerce(s)
    if s.infinite:
        return POS_INF if s.infinite > 0 else NEG_INF
    signs = s.signs
    if not signs:
        return Dyadic(0)
    z = len(signs) - len(signs.lstrip(signs[0]))
    total = Fraction(z if signs[0] == PLUS else -z)
    step = Fraction(1, 2)
    for c in signs[z:]:
        total += step if c == PLUS else -step
        step /= 2
    return Dyadic(total)


def _expansion(x: Fraction, max_len: int | None):
    """Yield the signs of x: the integer run, then the halving loop."""
    if x == 0:
        return
    n0 = -((-x.numerator) // x.denominator) if x > 0 else -(x.numerator // x.denominator)
    # x > 0 lies in (n0 - 1, n0]; x < 0 lies in [-n0, -n0 + 1)
    sign = PLUS if x > 0 else MINUS
    v = Fraction(n0 if x > 0 else -n0)
    count = 0
    for _ in range(n0):
        if max_len is not None and count >= max_len:
            return
        yield sign
        count += 1
    step = Fraction(1, 2)
    while v != x:
        if max_len is not None and count >= max_len:
            return
        if x < v:
            yield MINUS
            v -= step
        else:
            yield PLUS
            v += step
        step /= 2
        count += 1


def encode(x) -> SignString:
    """The sign string of a dyadic rational or of +-inf (inverse of :func:`phi`)."""
    if x == POS_INF:
        return POS_INF_STR
    if x == NEG_INF:
        return NEG_INF_STR
    x = Fraction(x)
    if not is_dyadic(x):
        raise DomainError(f"{x} is not dyadic; use encode_approx")
    return SignString("".join(_expansion(x, None)))


def encode_approx(x, max_len: int) -> SignString:
    """The first ``max_len`` signs of the (possibly infinite) expansion of x."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if x == POS_INF or x == NEG_INF:
        return SignString(("+" if x > 0 else "-") * max_len)
    return SignString("".join(_expansion(Fraction(x), max_len)))


def lex_cmp(s: SignLike, t: SignLike) -> Ordering:
    """Lexicographic order with a virtual 0 padding and - < 0 < +."""
    s, t = _coerce(s), _coerce(t)
    if s.infinite or t.infinite:
        a, b = s.infinite, t.infinite
        if a == b:
            return Ordering.EQ
        # an infinite string sits beyond every finite one
        return Ordering.LT if (a == -1 or b == 1) else Ordering.GT
    rank = {MINUS: -1, PLUS: 1}
    n = max(len(s.signs), len(t.signs))
    for i in range(n):
        a = rank[s.signs[i]] if i < len(s.signs) else 0
        b = rank[t.signs[i]] if i < len(t.signs) else 0
        if a != b:
            return Ordering.LT if a < b else Ordering.GT
    return Ordering.EQ


def gamma(s: SignLike) -> SignedGame:
    """The game of a finite sign string.

    Its left options are the games of the proper prefixes lying below the
    string and its right options those of the prefixes lying above.  Every
    node is a prefix, so the graph has ``len(s) + 1`` nodes.
    """
    s = _coerce(s)
    if not s.is_finite:
        raise DomainError("gamma needs a finite string; truncate with encode_approx")
    signs = s.signs
    left, right = [], []
    for k in range(len(signs) + 1):
        for j in range(k):
            c = lex_cmp(signs[:j], signs[:k])
            (left if c == Ordering.LT else right).append((k, j))
    return SignedGame(len(signs) + 1, left, right, root=len(signs))


def upsilon(g: SignedGame) -> SignString:
    """The sign string of the number a numeric game equals."""
    _require_wf(g)
    f = Forms()
    return encode(f.value(f.from_game(g)))


def value_of(g: SignedGame) -> Dyadic:
    _require_wf(g)
    f = Forms()
    return Dyadic(f.value(f.from_game(g)))


__all__ = [
    "SignString", "POS_INF_STR", "NEG_INF_STR", "Ordering", "Dyadic", "DomainError",
    "WellFoundednessError", "phi", "encode", "encode_approx", "lex_cmp", "gamma",
    "upsilon", "simplest_between", "value_of", "POS_INF", "NEG_INF",
]
