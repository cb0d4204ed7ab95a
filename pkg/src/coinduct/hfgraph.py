"""Hereditarily finite sets and hypersets as pointed graphs.

A set is a node; its elements are the targets of its outgoing edges.  Two
pointed graphs denote the same (hyper)set when their roots are bisimilar, so
equality is decided by quotienting with the greatest bisimulation and then
numbering the quotient canonically.

Two readings are supported.  In strong mode edges must be matched one for
one.  In reflexive mode the stuttering clause is used, where a move may also
be answered by looking one element further into the mover's own target::

    s R t  iff  for all s' in s: (some t' in t with s' R t') or (some s'' in s' with s'' R t)
           and  for all t' in t: (some s' in s with s' R t') or (some t'' in t' with s R t'')

Membership here means the strict edges of the graph.  If every node were
also taken to contain itself, the full relation would satisfy the clause and
every pair of sets would be identified.  The strict reading is coarser than
strong bisimilarity but not transitive: the empty set relates to the
self-membered set, which relates to {empty set}, yet the empty set and
{empty set} are not related.  So reflexive-mode digests are only a normal
form; ``bisimilar(g, h, REFLEXIVE)`` is the authoritative test.
"""
from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

STRONG = "strong"
REFLEXIVE = "reflexive"
MODES = (STRONG, REFLEXIVE)

VN_BOUND = 12


class GraphError(ValueError):
    """Malformed graph: dangling edge, bad root, or a rejected file."""


def _reachable(succ: Sequence[Iterable[int]], root: int) -> list[int]:
    seen = [False] * len(succ)
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


class HGraph:
    """A pointed directed graph; nodes unreachable from the root are pruned."""

    __slots__ = ("node_count", "edges", "root", "reflexive", "_succ")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = (), root: int = 0,
                 reflexive: bool = False):
        edges = {(int(a), int(b)) for a, b in edges}
        if node_count < 1:
            raise GraphError("a graph needs at least one node")
        if not 0 <= root < node_count:
            raise GraphError(f"root {root} out of range for {node_count} nodes")
        for a, b in edges:
            if not (0 <= a < node_count and 0 <= b < node_count):
                raise GraphError(f"dangling edge {a} -> {b}")
        succ: list[set[int]] = [set() for _ in range(node_count)]
        for a, b in edges:
            succ[a].add(b)
        keep = sorted(_reachable(succ, root))
        if len(keep) < node_count:
            renum = {old: new for new, old in enumerate(keep)}
            edges = {(renum[a], renum[b]) for a, b in edges if a in renum}
            root = renum[root]
            node_count = len(keep)
            succ = [set() for _ in range(node_count)]
            for a, b in edges:
                succ[a].add(b)
        self.node_count = node_count
        self.edges = frozenset(edges)
        self.root = root
        self.reflexive = bool(reflexive)
        self._succ = tuple(tuple(sorted(s)) for s in succ)

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def with_mode(self, reflexive: bool) -> "HGraph":
        return HGraph(self.node_count, self.edges, self.root, reflexive)

    def __eq__(self, other):
        if not isinstance(other, HGraph):
            return NotImplemented
        return (self.node_count, self.edges, self.root, self.reflexive) == (
            other.node_count, other.edges, other.root, other.reflexive)

    def __hash__(self):
        return hash((self.node_count, self.edges, self.root, self.reflexive))

    def __repr__(self):
        flag = ", reflexive=True" if self.reflexive else ""
        return f"HGraph({self.node_count}, {sorted(self.edges)}, root={self.root}{flag})"


# --------------------------------------------------------------------------
# labelled partition refinement, shared with the signed games

def refine(succ: Sequence[Sequence[tuple[Hashable, int]]]) -> list[int]:
    """Coarsest stable partition of a labelled graph under strong bisimulation.

    ``succ[v]`` lists ``(label, target)`` pairs.  The returned colours are
    ranks of sorted signatures, so they do not depend on how the nodes were
    numbered: isomorphic graphs get identical colourings.
    """
    n = len(succ)
    colour = [0] * n
    classes = 1
    while True:
        sigs = [(colour[v], tuple(sorted({(lab, colour[w]) for lab, w in succ[v]}, key=repr)))
                for v in range(n)]
        ranks = {sig: i for i, sig in enumerate(sorted(set(sigs), key=repr))}
        colour = [ranks[s] for s in sigs]
        if len(ranks) == classes:
            return colour
        classes = len(ranks)


def canonical_form(succ: Sequence[Sequence[tuple[Hashable, int]]], root: int):
    """Quotient by strong bisimulation and number the result canonically.

    Returns ``(node_count, edges, colours)`` where edges are ``(src, label, dst)``
    triples in canonical numbering (root is 0) and colours holds the stable
    colour of every canonical node.
    """
    colour = refine(succ)
    # quotient: one node per colour class reachable from the root
    q_succ: dict[int, set] = {}
    stack = [colour[root]]
    rep = {colour[root]: root}
    while stack:
        c = stack.pop()
        v = rep[c]
        q_succ[c] = {(lab, colour[w]) for lab, w in succ[v]}
        for _, w in succ[v]:
            if colour[w] not in rep:
                rep[colour[w]] = w
                stack.append(colour[w])
    keys = sorted(q_succ)
    local = {c: i for i, c in enumerate(keys)}
    q_list = [[(lab, local[d]) for lab, d in sorted(q_succ[c], key=repr)] for c in keys]
    # colours of the minimal graph are pairwise distinct and numbering-free
    q_colour = refine(q_list)
    order = {local[colour[root]]: 0}
    queue = deque([local[colour[root]]])
    while queue:
        v = queue.popleft()
        for lab, w in sorted(q_list[v], key=lambda e: (repr(e[0]), q_colour[e[1]])):
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    edges = sorted((order[v], lab, order[w]) for v in order for lab, w in q_list[v])
    colours = [0] * len(order)
    for v, i in order.items():
        colours[i] = q_colour[v]
    return len(order), edges, colours


def digest_of(kind: str, node_count: int, edges: Iterable[tuple]) -> str:
    text = f"{kind};{node_count};" + ";".join(f"{a},{lab},{b}" for a, lab, b in edges)
    return hashlib.sha256(text.encode()).hexdigest()


def gfp_pairs(left: Sequence[int], right: Sequence[int],
              clause: Callable[[int, int, set], bool]) -> set[tuple[int, int]]:
    """Greatest relation R on left x right with ``clause(s, t, R)`` for all pairs.

    Iterates the monotone operator downward from the full product.
    """
    rel = {(s, t) for s in left for t in right}
    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            if not clause(pair[0], pair[1], rel):
                rel.discard(pair)
                changed = True
    return rel


# --------------------------------------------------------------------------
# bisimulation clauses on two graphs


def _strong_clause(g: HGraph, h: HGraph):
    def clause(s, t, rel):
        ss, ts = g.successors(s), h.successors(t)
        return (all(any((a, b) in rel for b in ts) for a in ss)
                and all(any((a, b) in rel for a in ss) for b in ts))
    return clause


def _reflexive_clause(g: HGraph, h: HGraph):
    def clause(s, t, rel):
        ss, ts = g.successors(s), h.successors(t)
        for a in ss:
            if not (any((a, b) in rel for b in ts)
                    or any((a2, t) in rel for a2 in g.successors(a))):
                return False
        for b in ts:
            if not (any((a, b) in rel for a in ss)
                    or any((s, b2) in rel for b2 in h.successors(b))):
                return False
        return True
    return clause


def greatest_bisimulation(g: HGraph, h: HGraph, mode: str = STRONG) -> set[tuple[int, int]]:
    """Greatest bisimulation between the nodes of ``g`` and ``h`` (naive fixpoint)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    clause = _strong_clause(g, h) if mode == STRONG else _reflexive_clause(g, h)
    return gfp_pairs(range(g.node_count), range(h.node_count), clause)


def _disjoint_union(g: HGraph, h: HGraph) -> list[list[tuple[str, int]]]:
    off = g.node_count
    succ = [[("e", w) for w in g.successors(v)] for v in range(g.node_count)]
    succ += [[("e", w + off) for w in h.successors(v)] for v in range(h.node_count)]
    return succ


def bisimilar(g: HGraph, h: HGraph, mode: str = STRONG) -> bool:
    """Do the roots of ``g`` and ``h`` denote the same set under ``mode``?"""
    if mode == STRONG:
        colour = refine(_disjoint_union(g, h))
        return colour[g.root] == colour[h.root + g.node_count]
    if mode == REFLEXIVE:
        return (g.root, h.root) in greatest_bisimulation(g, h, REFLEXIVE)
    raise ValueError(f"unknown mode {mode!r}")


# --------------------------------------------------------------------------
# canonical sets


@dataclass(frozen=True)
class CanonicalSet:
    graph: HGraph
    digest: str

    def __len__(self):
        return self.graph.node_count


def _self_equivalence(g: HGraph) -> list[int]:
    """Class index per node under reflexive-mode bisimilarity within ``g``."""
    rel = greatest_bisimulation(g, g, REFLEXIVE)
    # close under symmetry and transitivity so the quotient is well defined
    parent = list(range(g.node_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in rel:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(g.node_count)]


def canon(g: HGraph) -> CanonicalSet:
    """Quotient ``g`` by its greatest bisimulation and number it canonically.

    Nodes are numbered breadth-first from the root, with successors visited
    in the order of their stable refinement colours.  Equal digests therefore
    mean structurally identical canonical graphs.
    """
    if g.reflexive:
        # Reflexive bisimilarity is not transitive, so we merge by its
        # equivalence closure and repeat until the merged graph is stable.
        # The result is a normal form, not a decision procedure for the
        # reflexive relation itself.
        while True:
            cls = _self_equivalence(g)
            if len(set(cls)) == g.node_count:
                break
            edges = {(cls[a], cls[b]) for a, b in g.edges}
            g = HGraph(g.node_count, edges, cls[g.root], reflexive=True)
    succ = [[("e", w) for w in g.successors(v)] for v in range(g.node_count)]
    n, edges, _ = canonical_form(succ, g.root)
    kind = REFLEXIVE if g.reflexive else STRONG
    graph = HGraph(n, [(a, b) for a, _, b in edges], 0, g.reflexive)
    return CanonicalSet(graph, digest_of(kind, n, edges))


def is_wellfounded(g: HGraph) -> bool:
    """True iff no cycle is reachable from the root (every node is reachable)."""
    state = [0] * g.node_count  # 0 new, 1 on stack, 2 done
    for start in range(g.node_count):
        if state[start]:
            continue
        stack = [(start, iter(g.successors(start)))]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
            elif state[nxt] == 1:
                return False
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(g.successors(nxt))))
    return True


# --------------------------------------------------------------------------
# fixtures: numerals, loops, powerset tower


def empty_set() -> HGraph:
    return HGraph(1)


def omega() -> HGraph:
    """The self-membered set x = {x}."""
    return HGraph(1, [(0, 0)])


def vn(n: int, bound: int = VN_BOUND) -> HGraph:
    """Von Neumann numeral n = {0, ..., n-1}; node i is the numeral i, root is n."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    if n > bound:
        raise ValueError(f"numeral {n} exceeds bound {bound}")
    return HGraph(n + 1, [(i, j) for i in range(n + 1) for j in range(i)], root=n)


def from_elements(elements: Sequence[HGraph]) -> HGraph:
    """The set whose elements are the given pointed graphs."""
    edges, offset = [], 1
    for e in elements:
        edges += [(a + offset, b + offset) for a, b in e.edges]
        edges.append((0, e.root + offset))
        offset += e.node_count
    return HGraph(offset, edges, 0)


def pow_tower(n: int, allow_large: bool = False) -> list[CanonicalSet]:
    """All elements of the n-th finite powerset stage, starting from {empty set}."""
    if n < 0:
        raise ValueError("stage must be natural")
    if n > 3 and not allow_large:
        raise ValueError("stages above 3 explode (stage 4 has 65536 sets); pass allow_large")
    stage = [canon(empty_set())]
    for _ in range(n):
        stage = [canon(from_elements([c.graph for c in subset]))
                 for r in range(len(stage) + 1)
                 for subset in itertools.combinations(stage, r)]
    # the canonical forms must all differ: a sanity check on extensionality
    assert len({c.digest for c in stage}) == len(stage)
    return sorted(stage, key=lambda c: (c.graph.node_count, c.digest))


# --------------------------------------------------------------------------
# .hg text format


def parse_hg(text: str) -> HGraph:
    nodes: set[int] = set()
    edges: list[tuple[int, int, int]] = []
    root = None
    reflexive = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "node" and len(parts) in (2, 3):
                if len(parts) == 3:
                    if parts[2] != "reflexive":
                        raise GraphError(f"line {lineno}: unknown node flag {parts[2]!r}")
                    reflexive = True
                nodes.add(_natural(parts[1]))
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((_natural(parts[1]), _natural(parts[2]), lineno))
            elif parts[0] == "root" and len(parts) == 2:
                if root is not None:
                    raise GraphError(f"line {lineno}: duplicate root")
                root = (_natural(parts[1]), lineno)
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: {exc}") from None
    if root is None:
        raise GraphError("no root declared")
    for a, b, lineno in edges:
        for x in (a, b):
            if x not in nodes:
                raise GraphError(f"line {lineno}: edge mentions undeclared node {x}")
    if root[0] not in nodes:
        raise GraphError(f"line {root[1]}: root {root[0]} is not a declared node")
    ids = sorted(nodes)
    local = {x: i for i, x in enumerate(ids)}
    return HGraph(len(ids), [(local[a], local[b]) for a, b, _ in edges], local[root[0]], reflexive)


def dump_hg(g: HGraph) -> str:
    flag = " reflexive" if g.reflexive else ""
    lines = [f"node {v}{flag}" for v in range(g.node_count)]
    lines += [f"edge {a} {b}" for a, b in sorted(g.edges)]
    lines.append(f"root {g.root}")
    return "\n".join(lines) + "\n"


def _natural(tok: str) -> int:
    if not tok.isdigit():
        raise ValueError(f"expected a natural number, got {tok!r}")
    return int(tok)
