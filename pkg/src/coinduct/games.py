"""Signed games: pointed graphs with left and right option edges.

A game ``{L | R}`` is a node whose left edges lead to the options in ``L``
and whose right edges lead to those in ``R``.  Left options sit below the
game and right options above it.  In the text format a left edge is written
``-`` and a right edge ``+``.

Order and arithmetic need well-founded games and work on an interned form
table: every distinct pair (left option ids, right option ids) gets one id,
so structurally equal subgames share memo entries.  The hyperstrategy checks
are greatest fixpoints and accept cycles.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .dyadic import DomainError, Dyadic, simplest_between
from .hfgraph import GraphError, canonical_form, digest_of, gfp_pairs

LEFT = "-"
RIGHT = "+"
SYNC = "sync"
ASYNC = "async"


class WellFoundednessError(ValueError):
    """The operation needs a game without reachable cycles."""


class SignedGame:
    """A finite pointed graph with left (``-``) and right (``+``) edges."""

    __slots__ = ("node_count", "left_edges", "right_edges", "root", "_left", "_right", "_wf")

    def __init__(self, node_count: int, left_edges: Iterable[tuple[int, int]] = (),
                 right_edges: Iterable[tuple[int, int]] = (), root: int = 0):
        left_edges = {(int(a), int(b)) for a, b in left_edges}
        right_edges = {(int(a), int(b)) for a, b in right_edges}
        if node_count < 1:
            raise GraphError("a game needs at least one node")
        if not 0 <= root < node_count:
            raise GraphError(f"root {root} out of range for {node_count} nodes")
        for a, b in left_edges | right_edges:
            if not (0 <= a < node_count and 0 <= b < node_count):
                raise GraphError(f"dangling edge {a} -> {b}")
        # prune nodes unreachable from the root
        succ = [[] for _ in range(node_count)]
        for a, b in left_edges | right_edges:
            succ[a].append(b)
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) < node_count:
            renum = {old: new for new, old in enumerate(sorted(seen))}
            left_edges = {(renum[a], renum[b]) for a, b in left_edges if a in renum}
            right_edges = {(renum[a], renum[b]) for a, b in right_edges if a in renum}
            root = renum[root]
            node_count = len(seen)
        self.node_count = node_count
        self.left_edges = frozenset(left_edges)
        self.right_edges = frozenset(right_edges)
        self.root = root
        left = [[] for _ in range(node_count)]
        right = [[] for _ in range(node_count)]
        for a, b in left_edges:
            left[a].append(b)
        for a, b in right_edges:
            right[a].append(b)
        self._left = tuple(tuple(sorted(x)) for x in left)
        self._right = tuple(tuple(sorted(x)) for x in right)
        self._wf = None

    def left_options(self, v: Optional[int] = None) -> tuple[int, ...]:
        return self._left[self.root if v is None else v]

    def right_options(self, v: Optional[int] = None) -> tuple[int, ...]:
        return self._right[self.root if v is None else v]

    @property
    def wellfounded(self) -> bool:
        if self._wf is None:
            self._wf = _acyclic(self)
        return self._wf

    def subgame(self, v: int) -> "SignedGame":
        return SignedGame(self.node_count, self.left_edges, self.right_edges, v)

    def lefts(self) -> list["SignedGame"]:
        return [self.subgame(v) for v in self.left_options()]

    def rights(self) -> list["SignedGame"]:
        return [self.subgame(v) for v in self.right_options()]

    @classmethod
    def from_options(cls, lefts: Sequence["SignedGame"] = (),
                     rights: Sequence["SignedGame"] = ()) -> "SignedGame":
        """Build ``{lefts | rights}`` out of existing games."""
        L, R, offset = [], [], 1
        for side, games in ((LEFT, lefts), (RIGHT, rights)):
            for g in games:
                L += [(a + offset, b + offset) for a, b in g.left_edges]
                R += [(a + offset, b + offset) for a, b in g.right_edges]
                (L if side == LEFT else R).append((0, g.root + offset))
                offset += g.node_count
        return cls(offset, L, R, 0)

    def labelled_successors(self) -> list[list[tuple[str, int]]]:
        return [[(LEFT, w) for w in self._left[v]] + [(RIGHT, w) for w in self._right[v]]
                for v in range(self.node_count)]

    def canonical(self) -> "SignedGame":
        """Quotient by labelled bisimulation with canonical numbering."""
        n, edges, _ = canonical_form(self.labelled_successors(), self.root)
        return SignedGame(n, [(a, b) for a, lab, b in edges if lab == LEFT],
                          [(a, b) for a, lab, b in edges if lab == RIGHT], 0)

    def digest(self) -> str:
        n, edges, _ = canonical_form(self.labelled_successors(), self.root)
        return digest_of("game", n, edges)

    def __eq__(self, other):
        if not isinstance(other, SignedGame):
            return NotImplemented
        return (self.node_count, self.left_edges, self.right_edges, self.root) == (
            other.node_count, other.left_edges, other.right_edges, other.root)

    def __hash__(self):
        return hash((self.node_count, self.left_edges, self.right_edges, self.root))

    def __repr__(self):
        if self.wellfounded and self.node_count <= 12:
            return f"SignedGame<{format_game(self)}>"
        return (f"SignedGame({self.node_count}, L={sorted(self.left_edges)}, "
                f"R={sorted(self.right_edges)}, root={self.root})")


def _acyclic(g: SignedGame) -> bool:
    state = [0] * g.node_count
    for start in range(g.node_count):
        if state[start]:
            continue
        state[start] = 1
        stack = [(start, iter(g._left[start] + g._right[start]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                state[v] = 2
                stack.pop()
            elif state[w] == 1:
                return False
            elif state[w] == 0:
                state[w] = 1
                stack.append((w, iter(g._left[w] + g._right[w])))
    return True


def _require_wf(*games: SignedGame) -> None:
    for g in games:
        if not g.wellfounded:
            raise WellFoundednessError("game has a reachable cycle")


ZERO = SignedGame(1)


def integer_game(n: int) -> SignedGame:
    """The simplest game for the integer ``n``: {n-1 |} or {| n+1}."""
    g = ZERO
    for _ in range(abs(n)):
        g = SignedGame.from_options([g]) if n > 0 else SignedGame.from_options((), [g])
    return g


# --------------------------------------------------------------------------
# interned forms


class Forms:
    """A call-scoped table of well-founded game forms with memoized operations.

    Form ids are dense integers; ``self.opts[i]`` is a pair of frozensets
    of option ids.  Use one table per computation and drop it afterwards.
    """

    def __init__(self):
        self.opts: list[tuple[frozenset, frozenset]] = []
        self._ids: dict[tuple[frozenset, frozenset], int] = {}
        self._leq: dict[tuple[int, int], bool] = {}
        self._add: dict[tuple[int, int], int] = {}
        self._neg: dict[int, int] = {}
        self._mul: dict[tuple[int, int], int] = {}
        self._value: dict[int, Fraction] = {}
        self._birthday: dict[int, int] = {}
        self.zero = self.make((), ())

    def make(self, lefts: Iterable[int], rights: Iterable[int]) -> int:
        key = (frozenset(lefts), frozenset(rights))
        i = self._ids.get(key)
        if i is None:
            i = len(self.opts)
            self.opts.append(key)
            self._ids[key] = i
        return i

    def from_game(self, g: SignedGame) -> int:
        _require_wf(g)
        ids: dict[int, int] = {}
        # iterative post-order over the DAG
        stack = [(g.root, False)]
        while stack:
            v, ready = stack.pop()
            if v in ids:
                continue
            kids = g._left[v] + g._right[v]
            if ready or all(w in ids for w in kids):
                ids[v] = self.make((ids[w] for w in g._left[v]), (ids[w] for w in g._right[v]))
            else:
                stack.append((v, True))
                stack.extend((w, False) for w in kids if w not in ids)
        return ids[g.root]

    def to_game(self, i: int) -> SignedGame:
        order = {i: 0}
        queue = deque([i])
        L, R = [], []
        while queue:
            f = queue.popleft()
            lo, ro = self.opts[f]
            for side, opts in ((L, lo), (R, ro)):
                for o in sorted(opts):
                    if o not in order:
                        order[o] = len(order)
                        queue.append(o)
                    side.append((order[f], order[o]))
        return SignedGame(len(order), L, R, 0)

    def leq(self, a: int, b: int) -> bool:
        """a <= b  iff  no left option of a is >= b and no right option of b is <= a."""
        key = (a, b)
        r = self._leq.get(key)
        if r is None:
            r = (not any(self.leq(b, al) for al in self.opts[a][0])
                 and not any(self.leq(br, a) for br in self.opts[b][1]))
            self._leq[key] = r
        return r

    def equiv(self, a: int, b: int) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def neg(self, a: int) -> int:
        r = self._neg.get(a)
        if r is None:
            lo, ro = self.opts[a]
            r = self.make((self.neg(x) for x in ro), (self.neg(x) for x in lo))
            self._neg[a] = r
        return r

    def add(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        key = (a, b)
        r = self._add.get(key)
        if r is None:
            (al, ar), (bl, br) = self.opts[a], self.opts[b]
            lefts = [self.add(x, b) for x in al] + [self.add(a, y) for y in bl]
            rights = [self.add(x, b) for x in ar] + [self.add(a, y) for y in br]
            r = self.make(lefts, rights)
            self._add[key] = r
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        """Conway's product.

        Left options are xL*y + x*yL - xL*yL and xR*y + x*yR - xR*yR; right
        options pair a left with a right option.
        """
        if a > b:
            a, b = b, a
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            (al, ar), (bl, br) = self.opts[a], self.opts[b]

            def term(x, y):
                return self.sub(self.add(self.mul(x, b), self.mul(a, y)), self.mul(x, y))

            lefts = [term(x, y) for x in al for y in bl] + [term(x, y) for x in ar for y in br]
            rights = [term(x, y) for x in al for y in br] + [term(x, y) for x in ar for y in bl]
            r = self.make(lefts, rights)
            self._mul[key] = r
        return r

    def value(self, a: int) -> Fraction:
        """The number a form equals; raises DomainError unless it is numeric."""
        r = self._value.get(a)
        if r is None:
            lo, ro = self.opts[a]
            lv = [self.value(x) for x in lo]
            rv = [self.value(x) for x in ro]
            top = max(lv) if lv else None
            bottom = min(rv) if rv else None
            if top is not None and bottom is not None and not top < bottom:
                raise DomainError(f"not a number: a left option {top} is not below a right option {bottom}")
            r = Fraction(simplest_between(top, bottom))
            self._value[a] = r
        return r

    def is_numeric(self, a: int) -> bool:
        try:
            self.value(a)
        except DomainError:
            return False
        return True

    def birthday(self, a: int) -> int:
        r = self._birthday.get(a)
        if r is None:
            lo, ro = self.opts[a]
            r = max((self.birthday(x) + 1 for x in lo | ro), default=0)
            self._birthday[a] = r
        return r

    def is_transitive(self, a: int) -> bool:
        lo, ro = self.opts[a]
        if not all(self.is_transitive(x) for x in lo | ro):
            return False

        def sub(xs, ys):
            return all(any(self.equiv(x, y) for y in ys) for x in xs)

        for x in lo:
            xl, xr = self.opts[x]
            if not (sub(xl, lo) and sub(ro, xr)):
                return False
        for y in ro:
            yl, yr = self.opts[y]
            if not (sub(lo, yl) and sub(yr, ro)):
                return False
        return True


# --------------------------------------------------------------------------
# public operations on SignedGame


def leq(s: SignedGame, t: SignedGame) -> bool:
    """Conway order on well-founded games."""
    _require_wf(s, t)
    f = Forms()
    return f.leq(f.from_game(s), f.from_game(t))


def equiv(s: SignedGame, t: SignedGame) -> bool:
    _require_wf(s, t)
    f = Forms()
    a, b = f.from_game(s), f.from_game(t)
    return f.equiv(a, b)


def neg(s: SignedGame) -> SignedGame:
    """Swap left and right edges everywhere; works on cyclic games too."""
    return SignedGame(s.node_count, s.right_edges, s.left_edges, s.root)


def add(s: SignedGame, t: SignedGame) -> SignedGame:
    _require_wf(s, t)
    f = Forms()
    return f.to_game(f.add(f.from_game(s), f.from_game(t)))


def mul(s: SignedGame, t: SignedGame) -> SignedGame:
    _require_wf(s, t)
    f = Forms()
    a, b = f.from_game(s), f.from_game(t)
    for x in (a, b):
        if not f.is_numeric(x):
            raise DomainError("multiplication is only defined here on numeric games")
    return f.to_game(f.mul(a, b))


def birthday(s: SignedGame) -> int:
    _require_wf(s)
    f = Forms()
    return f.birthday(f.from_game(s))


def is_transitive(s: SignedGame) -> bool:
    """Check left-option and right-option transitivity hereditarily.

    For every left option x and right option y of every subgame s:
    x's lefts are among s's lefts, s's rights among x's rights, s's lefts
    among y's lefts and y's rights among s's rights (up to equivalence).
    """
    _require_wf(s)
    f = Forms()
    return f.is_transitive(f.from_game(s))


def value(s: SignedGame) -> Dyadic:
    """The dyadic number a numeric well-founded game equals."""
    _require_wf(s)
    f = Forms()
    return Dyadic(f.value(f.from_game(s)))


def is_numeric(s: SignedGame) -> bool:
    _require_wf(s)
    f = Forms()
    return f.is_numeric(f.from_game(s))


@dataclass(frozen=True)
class StrategyRelation:
    pairs: frozenset
    mode: str

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)


def _sync_clause(s: SignedGame, t: SignedGame):
    def clause(a, b, rel):
        return (all(any((x, y) in rel for y in t._left[b]) for x in s._left[a])
                and all(any((x, y) in rel for x in s._right[a]) for y in t._right[b]))
    return clause


def _async_clause(s: SignedGame, t: SignedGame):
    def clause(a, b, rel):
        for x in s._left[a]:
            if not (any((x, y) in rel for y in t._left[b])
                    or any((x2, b) in rel for x2 in s._right[x])):
                return False
        for y in t._right[b]:
            if not (any((x, y) in rel for x in s._right[a])
                    or any((a, y2) in rel for y2 in t._left[y])):
                return False
        return True
    return clause


def strategy_pairs(s: SignedGame, t: SignedGame, mode: str = SYNC) -> set[tuple[int, int]]:
    """Greatest relation on node pairs closed under the mode's clause."""
    if mode == SYNC:
        clause = _sync_clause(s, t)
    elif mode == ASYNC:
        clause = _async_clause(s, t)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return gfp_pairs(range(s.node_count), range(t.node_count), clause)


def hyperstrategy(s: SignedGame, t: SignedGame, mode: str = SYNC) -> Optional[StrategyRelation]:
    """The greatest hyperstrategy from ``s`` to ``t``, or None if it misses the roots.

    Sync: every left option of s is answered by a related left option of t,
    and every right option of t by a related right option of s.  Async also
    lets a player answer by moving on in their own option (s_-+ R t or
    s R t_+-).  Cyclic games are fine: this is a greatest fixpoint.
    """
    rel = strategy_pairs(s, t, mode)
    if (s.root, t.root) not in rel:
        return None
    return StrategyRelation(frozenset(rel), mode)


def async_leq(s: SignedGame, t: SignedGame) -> bool:
    """The order induced by async hyperstrategies: some strategy relates the roots."""
    return hyperstrategy(s, t, ASYNC) is not None


def kan_matvec(matrix: Sequence[Sequence[SignedGame]], vec: Sequence[SignedGame],
               side: str = "right") -> list[SignedGame]:
    """Matrix action through game sums and products.

    ``side="left"``: result_j = sum_i vec_i * M_ij (vec has one entry per row).
    ``side="right"``: result_i = sum_j M_ij * vec_j (one entry per column).
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(r) != cols for r in matrix):
        raise ValueError("ragged matrix")
    f = Forms()
    m = [[f.from_game(x) for x in r] for r in matrix]
    v = [f.from_game(x) for x in vec]
    for x in itertools.chain(v, *m):
        if not f.is_numeric(x):
            raise DomainError("matrix and vector entries must be numeric games")
    if side == "left":
        if len(v) != rows:
            raise ValueError(f"vector length {len(v)} does not match {rows} rows")
        out = []
        for j in range(cols):
            acc = f.zero
            for i in range(rows):
                acc = f.add(acc, f.mul(v[i], m[i][j]))
            out.append(acc)
    elif side == "right":
        if len(v) != cols:
            raise ValueError(f"vector length {len(v)} does not match {cols} columns")
        out = []
        for i in range(rows):
            acc = f.zero
            for j in range(cols):
                acc = f.add(acc, f.mul(m[i][j], v[j]))
            out.append(acc)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return [f.to_game(x) for x in out]


# --------------------------------------------------------------------------
# enumeration of transitive games and whole-table order matrices


def _covered(f: Forms, xs, ys) -> bool:
    return all(any(f.equiv(x, y) for y in ys) for x in xs)


def transitive_forms(max_birthday: int, forms: Optional[Forms] = None) -> tuple[Forms, list[int]]:
    """Every transitive form of birthday at most ``max_birthday``.

    Transitivity is hereditary, so the options of a new form range over the
    transitive forms already found.  Left sets are pruned by "lefts of lefts
    are lefts", right sets by the mirror condition, and the cross conditions
    are checked on the surviving pairs.  Exhaustive; 2296 forms at birthday 3.
    """
    if max_birthday > 3:
        raise ValueError("birthday 4 is far too large to enumerate")
    f = forms or Forms()
    found = [f.zero]
    for day in range(1, max_birthday + 1):
        pool = list(found)
        subsets = [c for r in range(len(pool) + 1) for c in itertools.combinations(pool, r)]
        lefts = [L for L in subsets if all(_covered(f, f.opts[x][0], L) for x in L)]
        rights = [R for R in subsets if all(_covered(f, f.opts[y][1], R) for y in R)]
        for L in lefts:
            ok_r = [R for R in rights
                    if all(_covered(f, R, f.opts[x][1]) for x in L)
                    and all(_covered(f, L, f.opts[y][0]) for y in R)]
            for R in ok_r:
                g = f.make(L, R)
                if f.birthday(g) == day:
                    found.append(g)
    return f, found


def _option_index(f: Forms, ids: Sequence[int]):
    pos = {g: i for i, g in enumerate(ids)}
    try:
        lefts = [np.array(sorted(pos[x] for x in f.opts[g][0]), dtype=np.intp) for g in ids]
        rights = [np.array(sorted(pos[x] for x in f.opts[g][1]), dtype=np.intp) for g in ids]
    except KeyError:
        raise ValueError("the form list must contain every option of its members") from None
    return lefts, rights


def conway_order_matrix(f: Forms, ids: Sequence[int]) -> np.ndarray:
    """M[i, j] = ids[i] <= ids[j] for an option-closed list of well-founded forms.

    Iterates M[a, b] = not (some a_L with b <= a_L) and not (some b_R <= a)
    from the all-true matrix.  On well-founded forms the equation has one
    solution, reached after at most (largest birthday sum + 1) rounds.
    """
    lefts, rights = _option_index(f, ids)
    n = len(ids)
    m = np.ones((n, n), dtype=bool)
    while True:
        nxt = np.ones((n, n), dtype=bool)
        for a in range(n):
            if len(lefts[a]):
                # some left option a_L with b <= a_L
                nxt[a] &= ~m[:, lefts[a]].any(axis=1)
        for b in range(n):
            if len(rights[b]):
                # some right option b_R with b_R <= a
                nxt[:, b] &= ~m[rights[b]].any(axis=0)
        if np.array_equal(nxt, m):
            return m
        m = nxt


def async_order_matrix(f: Forms, ids: Sequence[int]) -> np.ndarray:
    """Greatest async hyperstrategy on the whole table: R[i, j] iff some strategy relates them.

    Plain downward iteration from the full relation, so it is a genuine
    greatest fixpoint and does not rely on well-foundedness.
    """
    lefts, rights = _option_index(f, ids)
    n = len(ids)
    r = np.ones((n, n), dtype=bool)
    while True:
        # d[x, b]: left option x of s is answered against t = b
        d = np.zeros((n, n), dtype=bool)
        for b in range(n):
            if len(lefts[b]):
                d[:, b] |= r[:, lefts[b]].any(axis=1)
        for x in range(n):
            if len(rights[x]):
                d[x] |= r[rights[x]].any(axis=0)
        # e[a, y]: right option y of t is answered against s = a
        e = np.zeros((n, n), dtype=bool)
        for a in range(n):
            if len(rights[a]):
                e[a] |= r[rights[a]].any(axis=0)
        for y in range(n):
            if len(lefts[y]):
                e[:, y] |= r[:, lefts[y]].any(axis=1)
        nxt = r.copy()
        for a in range(n):
            if len(lefts[a]):
                nxt[a] &= d[lefts[a]].all(axis=0)
        for b in range(n):
            if len(rights[b]):
                nxt[:, b] &= e[:, rights[b]].all(axis=1)
        if np.array_equal(nxt, r):
            return r
        r = nxt


# --------------------------------------------------------------------------
# text formats


def parse_game_literal(text: str) -> SignedGame:
    """Parse ``{a, b | c}`` notation.  Integers stand for their simplest games."""
    pos = 0
    text = text.strip()

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def item() -> SignedGame:
        nonlocal pos
        skip()
        if pos < len(text) and text[pos] == "{":
            pos += 1
            lefts = seq("|")
            pos += 1
            rights = seq("}")
            pos += 1
            return SignedGame.from_options(lefts, rights)
        start = pos
        if pos < len(text) and text[pos] in "+-":
            pos += 1
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        tok = text[start:pos]
        if not tok.lstrip("+-").isdigit():
            raise ValueError(f"bad game literal near position {start}: {text!r}")
        return integer_game(int(tok))

    def seq(close: str) -> list[SignedGame]:
        nonlocal pos
        out = []
        skip()
        if pos < len(text) and text[pos] == close:
            return out
        while True:
            out.append(item())
            skip()
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == close:
                return out
            raise ValueError(f"expected ',' or {close!r} at position {pos}: {text!r}")

    g = item()
    skip()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos}: {text!r}")
    return g


def format_game(g: SignedGame) -> str:
    """Nested ``{L|R}`` notation (well-founded games only)."""
    _require_wf(g)
    memo: dict[int, str] = {}

    def go(v):
        if v not in memo:
            memo[v] = ("{" + ",".join(go(w) for w in g._left[v]) + "|"
                       + ",".join(go(w) for w in g._right[v]) + "}")
        return memo[v]

    return go(g.root)


def parse_sg(text: str) -> SignedGame:
    nodes: set[int] = set()
    edges = []
    root = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "node" and len(parts) == 2 and parts[1].isdigit():
            nodes.add(int(parts[1]))
        elif (parts[0] == "edge" and len(parts) == 4 and parts[2] in (LEFT, RIGHT)
              and parts[1].isdigit() and parts[3].isdigit()):
            edges.append((int(parts[1]), parts[2], int(parts[3]), lineno))
        elif parts[0] == "root" and len(parts) == 2 and parts[1].isdigit():
            if root is not None:
                raise GraphError(f"line {lineno}: duplicate root")
            root = (int(parts[1]), lineno)
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if root is None:
        raise GraphError("no root declared")
    for a, _, b, lineno in edges:
        for x in (a, b):
            if x not in nodes:
                raise GraphError(f"line {lineno}: edge mentions undeclared node {x}")
    if root[0] not in nodes:
        raise GraphError(f"line {root[1]}: root {root[0]} is not a declared node")
    local = {x: i for i, x in enumerate(sorted(nodes))}
    return SignedGame(len(local),
                      [(local[a], local[b]) for a, lab, b, _ in edges if lab == LEFT],
                      [(local[a], local[b]) for a, lab, b, _ in edges if lab == RIGHT],
                      local[root[0]])


def dump_sg(g: SignedGame) -> str:
    lines = [f"node {v}" for v in range(g.node_count)]
    lines += [f"edge {a} - {b}" for a, b in sorted(g.left_edges)]
    lines += [f"edge {a} + {b}" for a, b in sorted(g.right_edges)]
    lines.append(f"root {g.root}")
    return "\n".join(lines) + "\n"


def load_game(arg: str) -> SignedGame:
    """Read a game from an inline ``{..|..}`` literal, an integer, or a .sg file."""
    s = arg.strip()
    if s.startswith("{") or s.lstrip("+-").isdigit():
        return parse_game_literal(s)
    with open(arg, encoding="utf-8") as fh:
        return parse_sg(fh.read())
