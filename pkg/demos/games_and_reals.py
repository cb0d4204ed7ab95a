"""Conway games, sign strings and the numbers between them.

Run with ``python demos/games_and_reals.py``.
"""
from fractions import Fraction

from coinduct.games import (add, async_leq, format_game, is_transitive, leq, mul, neg,
                            parse_game_literal, transitive_forms, value)
from coinduct.reals import encode, encode_approx, gamma, lex_cmp, phi, upsilon

P = parse_game_literal

# A sign string counts whole units first, then halves the step at each change.
for s in ["+", "+-", "++---+--", "----+-+"]:
    print(f"phi({s!r}) = {phi(s)}")
print("encode(5/8) =", encode(Fraction(5, 8)))
print("1/3 to 8 signs:", encode_approx(Fraction(1, 3), 8), "=", phi(encode_approx(Fraction(1, 3), 8)))

# Lexicographic order with a virtual middle symbol is the numeric order.
print("'+' vs '+-':", lex_cmp("+", "+-").name)

# gamma turns a sign string into a game whose options are its prefixes.
g = gamma("+-+")
print("gamma('+-+') =", format_game(g), "with value", value(g))
print("upsilon brings it back:", upsilon(g))

# Arithmetic on games agrees with arithmetic on their values.
half, two = P("{0|1}"), P("2")
print("1/2 + 2 =", value(add(half, two)))
print("-(1/2) =", value(neg(half)))
print("1/2 * 2 =", value(mul(half, two)))

# Not every game is a number.  Star = {0|0} is neither above nor below zero.
star = P("{0|0}")
print("star <= 0:", leq(star, P("0")), " 0 <= star:", leq(P("0"), star))
print("star transitive:", is_transitive(star))

# The order can also be read off strategies, which makes sense for cyclic games too.
print("async strategy 0 -> 1/2:", async_leq(P("0"), half))

f, ids = transitive_forms(3)
print(len(ids), "transitive games of birthday at most 3, all numeric:",
      all(f.is_numeric(i) for i in ids))
