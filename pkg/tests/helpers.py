"""Random generators and small independent oracles shared by the tests."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from coinduct.games import SignedGame, ZERO, is_numeric
from coinduct.hfgraph import HGraph
from coinduct.proc import SafetySpec


def sign_strings(max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for p in itertools.product("+-", repeat=n):
            yield "".join(p)


def random_graph(rng: random.Random, max_nodes: int, p: float = 0.3, reflexive=False) -> HGraph:
    n = rng.randint(1, max_nodes)
    edges = [(a, b) for a in range(n) for b in range(n) if rng.random() < p]
    return HGraph(n, edges, 0, reflexive)


def random_spec(rng: random.Random, max_alpha: int = 3, max_depth: int = 4, branch=0.55) -> SafetySpec:
    alphabet = "abc"[:rng.randint(1, max_alpha)]
    depth = rng.randint(1, max_depth)
    words, frontier = [], [()]
    while frontier:
        w = frontier.pop()
        if len(w) < depth:
            for a in alphabet:
                if rng.random() < branch:
                    words.append(w + (a,))
                    frontier.append(w + (a,))
    return SafetySpec(alphabet, words)


def random_numeric_game(rng: random.Random, max_birthday: int) -> SignedGame:
    """A random numeric game of birthday at most ``max_birthday`` (rejection sampling)."""
    if max_birthday == 0:
        return ZERO
    while True:
        lefts = [random_numeric_game(rng, rng.randint(0, max_birthday - 1))
                 for _ in range(rng.randint(0, 2))]
        rights = [random_numeric_game(rng, rng.randint(0, max_birthday - 1))
                  for _ in range(rng.randint(0, 2))]
        g = SignedGame.from_options(lefts, rights)
        if is_numeric(g):
            return g


def random_game(rng: random.Random, max_birthday: int) -> SignedGame:
    """A random well-founded game, numeric or not."""
    if max_birthday == 0:
        return ZERO
    lefts = [random_game(rng, rng.randint(0, max_birthday - 1)) for _ in range(rng.randint(0, 2))]
    rights = [random_game(rng, rng.randint(0, max_birthday - 1)) for _ in range(rng.randint(0, 2))]
    return SignedGame.from_options(lefts, rights)


# ---------------------------------------------------------------- oracles


def phi_oracle(s: str) -> Fraction:
    """Sign expansion value by the textbook rule: integer run, then halving."""
    v, i = Fraction(0), 0
    while i < len(s) and s[i] == s[0]:
        v += 1 if s[0] == "+" else -1
        i += 1
    d = Fraction(1)
    for c in s[i:]:
        d /= 2
        v += d if c == "+" else -d
    return v


def simplest_oracle(lo, hi, max_len=14):
    """Shortest sign string whose value lies strictly in (lo, hi), by enumeration."""
    for s in sign_strings(max_len):
        v = phi_oracle(s)
        if (lo is None or v > lo) and (hi is None or v < hi):
            return v
    raise AssertionError("no string short enough")


def game_tree(g: SignedGame, v=None):
    """Nested (lefts, rights) tuple of a well-founded game."""
    v = g.root if v is None else v
    return (tuple(game_tree(g, w) for w in g.left_options(v)),
            tuple(game_tree(g, w) for w in g.right_options(v)))


def tree_leq(x, y) -> bool:
    """Conway's order on nested tuples, written out without memo tables."""
    return (not any(tree_leq(y, xl) for xl in x[0])
            and not any(tree_leq(yr, x) for yr in y[1]))


def all_relations_gfp(pairs, clause):
    """Union of every relation R (subset of ``pairs``) with clause(p, R) for all p in R.

    Exhaustive over 2^len(pairs) subsets; only for tiny products.
    """
    pairs = sorted(pairs)
    best = set()
    for mask in range(1 << len(pairs)):
        rel = {p for i, p in enumerate(pairs) if mask >> i & 1}
        if all(clause(p[0], p[1], rel) for p in rel):
            best |= rel
    return best
