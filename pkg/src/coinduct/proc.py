"""Histories, safety specifications, machines and bisimulation witnesses.

A history is a nonempty tuple of symbols.  Tables mapping histories to
outputs stand in for causal stream functions, always truncated at an
explicit depth.  A safety specification is a prefix-closed set of histories
stored as a trie whose root is the empty history.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, Iterator, Optional, Sequence, TypeVar

from .dyadic import DomainError
from .hfgraph import refine

Symbol = Hashable
History = tuple
Table = Dict[tuple, object]
V = TypeVar("V")

STRONG = "strong"
WEAK = "weak"
MODES = (STRONG, WEAK)


class InputError(ValueError):
    """Bad user input: unknown symbol, foreign node, malformed file."""


# --------------------------------------------------------------------------
# folds and machines


def fold_history(h: Sequence[Symbol], init: Callable[[Symbol], V],
                 cons: Callable[[Symbol, V], V]) -> V:
    """Left fold of a nonempty history: ``init`` on the first symbol, then ``cons``."""
    if not h:
        raise ValueError("histories are nonempty")
    acc = init(h[0])
    for a in h[1:]:
        acc = cons(a, acc)
    return acc


@dataclass(frozen=True)
class MealyMachine:
    """A finite machine; ``trans[(input, state)] = (output or None, next state)``.

    A ``None`` output is a deletion: the step produces nothing.
    """

    states: tuple
    init: Hashable
    inputs: tuple
    trans: Dict[tuple, tuple] = field(hash=False)

    def __post_init__(self):
        if self.init not in self.states:
            raise InputError(f"initial state {self.init!r} is not a state")
        for a in self.inputs:
            for x in self.states:
                if (a, x) not in self.trans:
                    raise InputError(f"no transition for input {a!r} in state {x!r}")
                nxt = self.trans[(a, x)][1]
                if nxt not in self.states:
                    raise InputError(f"transition leads to unknown state {nxt!r}")

    @property
    def outputs(self) -> tuple:
        outs = {o for o, _ in self.trans.values() if o is not None}
        return tuple(sorted(outs, key=repr))

    def step(self, a: Symbol, x) -> tuple:
        if a not in self.inputs:
            raise InputError(f"symbol {a!r} is not in the input alphabet")
        return self.trans[(a, x)]

    def run(self, word: Sequence[Symbol], state=None) -> tuple[list, Hashable]:
        """Outputs (with None for deletions) and final state after ``word``."""
        x = self.init if state is None else state
        outs = []
        for a in word:
            o, x = self.step(a, x)
            outs.append(o)
        return outs, x


def identity_machine(alphabet: Sequence[Symbol]) -> MealyMachine:
    return MealyMachine((0,), 0, tuple(alphabet), {(a, 0): (a, 0) for a in alphabet})


def parity_machine() -> MealyMachine:
    """Over {0, 1}: output the running xor of the inputs."""
    trans = {(a, x): ((a + x) % 2, (a + x) % 2) for a in (0, 1) for x in (0, 1)}
    return MealyMachine((0, 1), 0, (0, 1), trans)


def constant_machine(alphabet: Sequence[Symbol], k) -> MealyMachine:
    return MealyMachine((0,), 0, tuple(alphabet), {(a, 0): (k, 0) for a in alphabet})


def histories(alphabet: Sequence[Symbol], depth: int) -> Iterator[tuple]:
    """All nonempty words of length at most ``depth``, shortest first."""
    for n in range(1, depth + 1):
        yield from itertools.product(alphabet, repeat=n)


def unfold(m: MealyMachine, depth: int) -> Table:
    """Table of the last output after each input history up to ``depth``.

    Deleted outputs are recorded as None.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    table: Table = {}
    states = {(): m.init}
    for h in histories(m.inputs, depth):
        out, x = m.step(h[-1], states[h[:-1]])
        states[h] = x
        table[h] = out
    return table


def run_table(m: MealyMachine, words: Iterable[Sequence[Symbol]]) -> Table:
    """Last output of ``m`` on each given word, by direct simulation."""
    table = {}
    for w in words:
        outs, _ = m.run(w)
        table[tuple(w)] = outs[-1]
    return table


# --------------------------------------------------------------------------
# cumulative lifting and causal composition


def _lookup(f: Table, h: tuple):
    try:
        return f[h]
    except KeyError:
        raise DomainError(f"table has no entry for history {h!r}") from None


def cumulative(f: Table, depth: int) -> Table:
    """f#(a1..an) = (f(a1), f(a1 a2), ..., f(a1..an)) for every history in f up to depth."""
    return {h: tuple(_lookup(f, p) for p in _prefixes(h))
            for h in f if 1 <= len(h) <= depth}


def cumulative_async(f: Table, depth: int) -> Table:
    """Like :func:`cumulative` but None outputs are skipped, so outputs may be shorter."""
    out: Table = {}
    for h in f:
        if 1 <= len(h) <= depth:
            outs = (_lookup(f, p) for p in _prefixes(h))
            out[h] = tuple(b for b in outs if b is not None)
    return out


def _prefixes(h: tuple) -> list[tuple]:
    return [h[:i] for i in range(1, len(h) + 1)]


def compose_causal(f: Table, g: Table, depth: int) -> Table:
    """(f ; g)(h) = g(f#(h)): feed the cumulative output of f into g."""
    fs = cumulative(f, depth)
    return {h: _lookup(g, fs[h]) for h in fs}


def last_symbol_table(alphabet: Sequence[Symbol], depth: int) -> Table:
    """The identity for causal composition."""
    return {h: h[-1] for h in histories(alphabet, depth)}


# --------------------------------------------------------------------------
# safety specifications


class SafetySpec:
    """A prefix-closed set of histories stored as a trie.

    Node 0 is the empty history.  ``children(v)`` maps a symbol to the child
    node; ``history(v)`` recovers the word.
    """

    __slots__ = ("alphabet", "_parent", "_symbol", "_children", "_depth")

    def __init__(self, alphabet: Sequence[Symbol], members: Iterable[Sequence[Symbol]] = (),
                 close: bool = False):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise InputError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise InputError("alphabet symbols must be distinct")
        self.alphabet = alphabet
        self._parent = [-1]
        self._symbol = [None]
        self._children: list[dict] = [{}]
        self._depth = [0]
        words = {tuple(w) for w in members}
        words.discard(())
        for w in words:
            for a in w:
                if a not in alphabet:
                    raise InputError(f"symbol {a!r} is not in the alphabet")
        if not close:
            missing = [w for w in words if len(w) > 1 and w[:-1] not in words]
            if missing:
                raise InputError(f"not prefix-closed: {min(missing, key=len)!r} lacks its prefix")
        order = {a: i for i, a in enumerate(alphabet)}
        for w in sorted(words, key=lambda w: (len(w), [order[a] for a in w])):
            v = 0
            for a in w:
                nxt = self._children[v].get(a)
                if nxt is None:
                    nxt = len(self._parent)
                    self._parent.append(v)
                    self._symbol.append(a)
                    self._children.append({})
                    self._depth.append(self._depth[v] + 1)
                    self._children[v][a] = nxt
                v = nxt

    @classmethod
    def prefixes(cls, alphabet: Sequence[Symbol], words: Iterable[Sequence[Symbol]]) -> "SafetySpec":
        return cls(alphabet, words, close=True)

    @property
    def node_count(self) -> int:
        return len(self._parent)

    @property
    def depth(self) -> int:
        return max(self._depth)

    def children(self, v: int) -> dict:
        return self._children[v]

    def child_nodes(self, v: int) -> list[int]:
        return list(self._children[v].values())

    def node_depth(self, v: int) -> int:
        return self._depth[v]

    def history(self, v: int) -> tuple:
        out = []
        while v > 0:
            out.append(self._symbol[v])
            v = self._parent[v]
        return tuple(reversed(out))

    def node_of(self, h: Sequence[Symbol]) -> Optional[int]:
        v = 0
        for a in h:
            v = self._children[v].get(a)
            if v is None:
                return None
        return v

    def members(self) -> set[tuple]:
        """The nonempty histories of the spec."""
        return {self.history(v) for v in range(1, self.node_count)}

    def descendants(self, v: int) -> list[int]:
        """v and every node below it."""
        out, stack = [], [v]
        while stack:
            w = stack.pop()
            out.append(w)
            stack.extend(self._children[w].values())
        return out

    def __eq__(self, other):
        if not isinstance(other, SafetySpec):
            return NotImplemented
        return set(self.alphabet) == set(other.alphabet) and self.members() == other.members()

    def __hash__(self):
        return hash((frozenset(self.alphabet), frozenset(self.members())))

    def __repr__(self):
        return f"SafetySpec({list(self.alphabet)}, {sorted(self.members(), key=lambda w: (len(w), w))})"


def shuffle(S: SafetySpec, T: SafetySpec, tag: bool = False) -> SafetySpec:
    """All interleavings of a history of S with a history of T (either may be empty).

    The alphabets must be disjoint; with ``tag=True`` symbols are renamed to
    ``(0, a)`` and ``(1, b)`` first.
    """
    if tag:
        ltag = lambda a: (0, a)  # noqa: E731
        rtag = lambda b: (1, b)  # noqa: E731
    else:
        clash = set(S.alphabet) & set(T.alphabet)
        if clash:
            raise InputError(f"alphabets overlap on {sorted(map(repr, clash))}; pass tag=True")
        ltag = rtag = lambda a: a  # noqa: E731
    alphabet = tuple(ltag(a) for a in S.alphabet) + tuple(rtag(b) for b in T.alphabet)
    words = set()
    for s in S.members() | {()}:
        for t in T.members() | {()}:
            n = len(s) + len(t)
            for pos in itertools.combinations(range(n), len(s)):
                si, ti, w = iter(s), iter(t), []
                for i in range(n):
                    w.append(ltag(next(si)) if i in pos else rtag(next(ti)))
                words.add(tuple(w))
    return SafetySpec(alphabet, words)


# --------------------------------------------------------------------------
# bisimulation witnesses


@dataclass(frozen=True)
class TimedRelation:
    """Pairs of trie nodes (node of S, node of T) together with the clause they satisfy."""

    pairs: frozenset
    mode: str = STRONG

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def histories(self, S: SafetySpec, T: SafetySpec) -> set[tuple[tuple, tuple]]:
        return {(S.history(s), T.history(t)) for s, t in self.pairs}


def _clause(S: SafetySpec, T: SafetySpec, mode: str):
    if mode == STRONG:
        def clause(s, t, rel):
            sc, tc = S.child_nodes(s), T.child_nodes(t)
            return (all(any((a, b) in rel for b in tc) for a in sc)
                    and all(any((a, b) in rel for a in sc) for b in tc))
        return clause
    if mode == WEAK:
        sdesc = [S.descendants(v) for v in range(S.node_count)]
        tdesc = [T.descendants(v) for v in range(T.node_count)]

        def clause(s, t, rel):
            sc, tc = S.child_nodes(s), T.child_nodes(t)
            for a in sc:
                if not (any((a, b) in rel for b in tc) or any((x, t) in rel for x in sdesc[a])):
                    return False
            for b in tc:
                if not (any((a, b) in rel for a in sc) or any((s, y) in rel for y in tdesc[b])):
                    return False
            return True
        return clause
    raise ValueError(f"unknown mode {mode!r}")


def _moves(S: SafetySpec, T: SafetySpec, mode: str, s: int, t: int) -> Iterator[tuple[int, int]]:
    """Pairs that the clause at (s, t) may appeal to."""
    for a in S.child_nodes(s):
        for b in T.child_nodes(t):
            yield a, b
    if mode == WEAK:
        for a in S.child_nodes(s):
            for x in S.descendants(a):
                yield x, t
        for b in T.child_nodes(t):
            for y in T.descendants(b):
                yield s, y


def _reachable_part(S, T, mode, rel) -> set:
    if (0, 0) not in rel:
        return set()
    seen = {(0, 0)}
    queue = deque([(0, 0)])
    while queue:
        s, t = queue.popleft()
        for p in _moves(S, T, mode, s, t):
            if p in rel and p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def gfp_relation(S: SafetySpec, T: SafetySpec, mode: str = STRONG) -> set[tuple[int, int]]:
    """Greatest relation on all node pairs satisfying the clause (naive iteration)."""
    clause = _clause(S, T, mode)
    rel = {(s, t) for s in range(S.node_count) for t in range(T.node_count)}
    changed = True
    while changed:
        changed = False
        for p in sorted(rel):
            if not clause(p[0], p[1], rel):
                rel.discard(p)
                changed = True
    return rel


def greatest_bisim(S: SafetySpec, T: SafetySpec, mode: str = STRONG) -> Optional[TimedRelation]:
    """The greatest bisimulation of the given mode, cut down to pairs reachable from the roots.

    Strong mode uses partition refinement on the disjoint union of the two
    tries (symbols are not compared, only the branching shape).  Weak mode
    iterates its clause to the greatest fixpoint.  Returns None when the
    roots are not related.
    """
    if mode == STRONG:
        off = S.node_count
        succ = [[(0, w) for w in S.child_nodes(v)] for v in range(S.node_count)]
        succ += [[(0, w + off) for w in T.child_nodes(v)] for v in range(T.node_count)]
        colour = refine(succ)
        if colour[0] != colour[off]:
            return None
        seen = {(0, 0)}
        queue = deque([(0, 0)])
        while queue:
            s, t = queue.popleft()
            for a in S.child_nodes(s):
                for b in T.child_nodes(t):
                    if colour[a] == colour[b + off] and (a, b) not in seen:
                        seen.add((a, b))
                        queue.append((a, b))
        return TimedRelation(frozenset(seen), STRONG)
    if mode == WEAK:
        rel = gfp_relation(S, T, WEAK)
        part = _reachable_part(S, T, WEAK, rel)
        return TimedRelation(frozenset(part), WEAK) if part else None
    raise ValueError(f"unknown mode {mode!r}")


def _check_nodes(R: TimedRelation, S: SafetySpec, T: SafetySpec) -> None:
    for s, t in R.pairs:
        if not (isinstance(s, int) and 0 <= s < S.node_count):
            raise InputError(f"node {s!r} does not belong to the first spec")
        if not (isinstance(t, int) and 0 <= t < T.node_count):
            raise InputError(f"node {t!r} does not belong to the second spec")


def verify_bisim(R: TimedRelation, S: SafetySpec, T: SafetySpec, mode: Optional[str] = None) -> bool:
    """Does every pair of R satisfy the clause of ``mode`` (default: R's own mode)?"""
    _check_nodes(R, S, T)
    clause = _clause(S, T, mode or R.mode)
    return all(clause(s, t, R.pairs) for s, t in R.pairs)


WITNESS = "witness"
RELATION_ONLY = "relation-only"
NOT_BISIMULATION = "not-a-bisimulation"


def witness_status(R: TimedRelation, S: SafetySpec, T: SafetySpec, mode: Optional[str] = None) -> str:
    """Distinguish a morphism witness from a bisimulation that misses the roots."""
    if not verify_bisim(R, S, T, mode):
        return NOT_BISIMULATION
    return WITNESS if (0, 0) in R.pairs else RELATION_ONLY


def is_witness(R: TimedRelation, S: SafetySpec, T: SafetySpec, mode: Optional[str] = None) -> bool:
    return witness_status(R, S, T, mode) == WITNESS


def identity_relation(S: SafetySpec, mode: str = STRONG) -> TimedRelation:
    return TimedRelation(frozenset((v, v) for v in range(S.node_count)), mode)


def compose_rel(R1: TimedRelation, R2: TimedRelation) -> TimedRelation:
    """Relational composition: (s, u) whenever s R1 t and t R2 u."""
    if R1.mode != R2.mode:
        raise ValueError(f"cannot compose a {R1.mode} witness with a {R2.mode} witness")
    by_mid: dict[int, list[int]] = {}
    for t, u in R2.pairs:
        by_mid.setdefault(t, []).append(u)
    return TimedRelation(frozenset((s, u) for s, t in R1.pairs for u in by_mid.get(t, ())),
                         R1.mode)


def random_witness(S: SafetySpec, T: SafetySpec, mode: str = STRONG,
                   rng: Optional[random.Random] = None, keep: float = 0.6) -> Optional[TimedRelation]:
    """A random bisimulation containing the root pair, or None if there is none.

    Keeps a random share of the greatest bisimulation (always the root
    pair) and prunes back to the largest bisimulation inside that share.
    """
    rng = rng or random.Random()
    full = gfp_relation(S, T, mode)
    if (0, 0) not in full:
        return None
    clause = _clause(S, T, mode)
    for _ in range(20):
        rel = {p for p in full if p == (0, 0) or rng.random() < keep}
        changed = True
        while changed:
            changed = False
            for p in sorted(rel):
                if not clause(p[0], p[1], rel):
                    rel.discard(p)
                    changed = True
        if (0, 0) in rel:
            return TimedRelation(frozenset(_reachable_part(S, T, mode, rel)), mode)
    return TimedRelation(frozenset(_reachable_part(S, T, mode, full)), mode)


def random_spec(rng: random.Random, alphabet: Sequence[Symbol], depth: int,
                branch: float = 0.5) -> SafetySpec:
    """A random prefix-closed spec: each possible child survives with probability ``branch``."""
    words = []
    frontier = [()]
    while frontier:
        w = frontier.pop()
        if len(w) == depth:
            continue
        for a in alphabet:
            if rng.random() < branch:
                words.append(w + (a,))
                frontier.append(w + (a,))
    return SafetySpec(alphabet, words)


# --------------------------------------------------------------------------
# text formats


def parse_spec(text: str, close: bool = False) -> SafetySpec:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("alphabet"):
        raise InputError("first line must be 'alphabet <tok> ...'")
    alphabet = lines[0].split()[1:]
    return SafetySpec(alphabet, [tuple(ln.split()) for ln in lines[1:]], close=close)


def dump_spec(S: SafetySpec) -> str:
    out = ["alphabet " + " ".join(map(str, S.alphabet))]
    out += [" ".join(map(str, S.history(v))) for v in range(1, S.node_count)]
    return "\n".join(out) + "\n"


def parse_mealy(text: str) -> MealyMachine:
    n = init = None
    trans: dict = {}
    inputs: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "states" and len(parts) == 2:
                n = int(parts[1])
            elif parts[0] == "init" and len(parts) == 2:
                init = int(parts[1])
            elif parts[0] == "trans" and len(parts) == 5:
                x, a, o, y = int(parts[1]), parts[2], parts[3], int(parts[4])
                if (a, x) in trans:
                    raise InputError(f"line {lineno}: duplicate transition")
                trans[(a, x)] = (None if o == "_" else o, y)
                if a not in inputs:
                    inputs.append(a)
            else:
                raise InputError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"line {lineno}: {exc}") from None
    if n is None or init is None:
        raise InputError("machine file needs 'states' and 'init' lines")
    return MealyMachine(tuple(range(n)), init, tuple(inputs), trans)
