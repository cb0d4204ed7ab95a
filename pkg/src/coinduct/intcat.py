"""Finite relations, traced monoidal instances and the Int construction.

Objects of the relation instance are finite sizes; a morphism m -> n is an
m x n boolean matrix.  The monoidal product is the direct sum (block
diagonal), and the trace feeds the last ``k`` outputs back into the last
``k`` inputs by reachability.

:class:`TracedInstance` bundles the operations a base category has to
provide; :func:`int_compose` and :func:`int_identity` build the Int
construction on top of any instance.  The naturals under addition with
cancellation as trace give the integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable

import numpy as np


class BlockError(ValueError):
    """Dimensions or block sizes do not line up."""


# --------------------------------------------------------------------------
# finite relations


class FinRel:
    """A relation between {0..source_size-1} and {0..target_size-1}."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=bool)
        if m.ndim != 2:
            raise BlockError("a relation is a 2-dimensional boolean matrix")
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def from_pairs(cls, source_size: int, target_size: int,
                   pairs: Iterable[tuple[int, int]]) -> "FinRel":
        m = np.zeros((source_size, target_size), dtype=bool)
        for a, b in pairs:
            if not (0 <= a < source_size and 0 <= b < target_size):
                raise BlockError(f"pair ({a}, {b}) outside {source_size} x {target_size}")
            m[a, b] = True
        return cls(m)

    @classmethod
    def identity(cls, n: int) -> "FinRel":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def empty(cls, m: int, n: int) -> "FinRel":
        return cls(np.zeros((m, n), dtype=bool))

    @property
    def source_size(self) -> int:
        return self.matrix.shape[0]

    @property
    def target_size(self) -> int:
        return self.matrix.shape[1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(self.matrix))]

    def __eq__(self, other):
        if not isinstance(other, FinRel):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool((self.matrix == other.matrix).all())

    def __hash__(self):
        return hash((self.matrix.shape, self.matrix.tobytes()))

    def __repr__(self):
        return f"FinRel({self.source_size}->{self.target_size}, {self.pairs()})"


def rel_compose(f: FinRel, g: FinRel) -> FinRel:
    """First f, then g: a relates to c when some b has a f b and b g c."""
    if f.target_size != g.source_size:
        raise BlockError(f"cannot compose {f.source_size}->{f.target_size} "
                         f"with {g.source_size}->{g.target_size}")
    prod = f.matrix.astype(np.int64) @ g.matrix.astype(np.int64)
    return FinRel(prod > 0)


def rel_tensor(f: FinRel, g: FinRel) -> FinRel:
    """Direct sum: f acts on the first block, g on the second."""
    m = np.zeros((f.source_size + g.source_size, f.target_size + g.target_size), dtype=bool)
    m[:f.source_size, :f.target_size] = f.matrix
    m[f.source_size:, f.target_size:] = g.matrix
    return FinRel(m)


def rel_symmetry(a: int, b: int) -> FinRel:
    """The swap A+B -> B+A."""
    m = np.zeros((a + b, b + a), dtype=bool)
    for i in range(a):
        m[i, b + i] = True
    for j in range(b):
        m[a + j, j] = True
    return FinRel(m)


def reflexive_transitive_closure(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    reach = np.eye(n, dtype=bool) | m
    while True:
        nxt = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
        if (nxt == reach).all():
            return reach
        reach = nxt


def rel_trace(f: FinRel, a: int, b: int, y: int) -> FinRel:
    """Trace out the feedback block Y of f : A+Y -> B+Y.

    Tr(f) = f_AB  union  f_AY ; f_YY* ; f_YB, where * is the reflexive
    transitive closure: enter the loop, go round it any number of times,
    and leave.
    """
    if f.source_size != a + y or f.target_size != b + y:
        raise BlockError(f"relation is {f.source_size}->{f.target_size}, "
                         f"blocks say {a}+{y}->{b}+{y}")
    m = f.matrix
    f_ab, f_ay = m[:a, :b], m[:a, b:]
    f_yb, f_yy = m[a:, :b], m[a:, b:]
    if y == 0:
        return FinRel(f_ab)
    star = reflexive_transitive_closure(f_yy).astype(np.int64)
    through = (f_ay.astype(np.int64) @ star @ f_yb.astype(np.int64)) > 0
    return FinRel(f_ab | through)


# --------------------------------------------------------------------------
# generic traced instances and Int


@dataclass(frozen=True)
class TracedInstance:
    """Operations of a traced symmetric monoidal category.

    ``trace(f, a, b, y)`` takes f : a (x) y -> b (x) y to a -> b.
    ``dom`` and ``cod`` recover the objects of a morphism.
    """

    name: str
    identity: Callable[[Any], Any]
    compose: Callable[[Any, Any], Any]
    tensor_obj: Callable[[Any, Any], Any]
    tensor: Callable[[Any, Any], Any]
    symmetry: Callable[[Any, Any], Any]
    trace: Callable[[Any, Any, Any, Any], Any]
    dom: Callable[[Any], Any]
    cod: Callable[[Any], Any]


FINREL = TracedInstance(
    name="finrel",
    identity=FinRel.identity,
    compose=rel_compose,
    tensor_obj=lambda a, b: a + b,
    tensor=rel_tensor,
    symmetry=rel_symmetry,
    trace=rel_trace,
    dom=lambda f: f.source_size,
    cod=lambda f: f.target_size,
)


@dataclass(frozen=True)
class NatMor:
    """A morphism of the discrete category on the naturals: only identities exist."""

    obj: int

    def __post_init__(self):
        if self.obj < 0:
            raise BlockError("objects are natural numbers")


def _nat_compose(f: NatMor, g: NatMor) -> NatMor:
    if f.obj != g.obj:
        raise BlockError(f"cannot compose id_{f.obj} with id_{g.obj}")
    return f


def _nat_trace(f: NatMor, a: int, b: int, y: int) -> NatMor:
    if f.obj != a + y or a != b:
        raise BlockError(f"cannot cancel {y} from id_{f.obj} to reach {a} -> {b}")
    return NatMor(a)


NAT = TracedInstance(
    name="nat",
    identity=NatMor,
    compose=_nat_compose,
    tensor_obj=lambda a, b: a + b,
    tensor=lambda f, g: NatMor(f.obj + g.obj),
    symmetry=lambda a, b: NatMor(a + b),
    trace=_nat_trace,
    dom=lambda f: f.obj,
    cod=lambda f: f.obj,
)


@dataclass(frozen=True)
class IntObj:
    minus: Any
    plus: Any


@dataclass(frozen=True)
class IntMor:
    """A morphism (A-, A+) -> (B-, B+) of Int: a base morphism A- (x) B+ -> B- (x) A+.

    A- flows forward into the morphism and B+ flows backward out of the
    target; B- leaves forward and A+ leaves backward.
    """

    source: IntObj
    target: IntObj
    base: Any


def permutation(inst: TracedInstance, objs: list, order: list[int]):
    """The wiring that sends the tensor of ``objs`` to the tensor of ``objs[i] for i in order``.

    Built from adjacent symmetries, so it works for any instance whose
    tensor is strictly associative.
    """
    t = inst.tensor_obj

    def total(xs):
        out = None
        for x in xs:
            out = x if out is None else t(out, x)
        return out

    cur = list(range(len(objs)))
    mor = inst.identity(total(objs))
    # bubble the wires into place one adjacent swap at a time
    target_pos = {w: i for i, w in enumerate(order)}
    changed = True
    while changed:
        changed = False
        for i in range(len(cur) - 1):
            if target_pos[cur[i]] > target_pos[cur[i + 1]]:
                pre = [objs[w] for w in cur[:i]]
                post = [objs[w] for w in cur[i + 2:]]
                swap = inst.symmetry(objs[cur[i]], objs[cur[i + 1]])
                if pre:
                    swap = inst.tensor(inst.identity(total(pre)), swap)
                if post:
                    swap = inst.tensor(swap, inst.identity(total(post)))
                mor = inst.compose(mor, swap)
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                changed = True
    return mor


def int_identity(inst: TracedInstance, a: IntObj) -> IntMor:
    """The identity of (A-, A+): the base identity on A- (x) A+.

    Each wire runs straight through, A- forward and A+ backward.
    """
    return IntMor(a, a, inst.identity(inst.tensor_obj(a.minus, a.plus)))


def _check_int(inst: TracedInstance, f: IntMor) -> None:
    t = inst.tensor_obj
    if inst.dom(f.base) != t(f.source.minus, f.target.plus) or \
            inst.cod(f.base) != t(f.target.minus, f.source.plus):
        raise BlockError("base morphism does not have type A- (x) B+ -> B- (x) A+")


def int_compose(inst: TracedInstance, f: IntMor, g: IntMor) -> IntMor:
    """g after f, tracing out B- (x) B+.

    f : A- B+ -> B- A+ and g : B- C+ -> C- B+ are placed side by side; the
    B- leaving f is fed into g and the B+ leaving g is fed back into f.
    """
    if f.target != g.source:
        raise BlockError(f"type mismatch: {f.target} vs {g.source}")
    _check_int(inst, f)
    _check_int(inst, g)
    A, B, C = f.source, f.target, g.target
    # pre:  A- C+ B- B+  ->  A- B+ B- C+   (f's inputs, then g's)
    pre = permutation(inst, [A.minus, C.plus, B.minus, B.plus], [0, 3, 2, 1])
    # f (x) g : A- B+ B- C+ -> B- A+ C- B+
    both = inst.tensor(f.base, g.base)
    # post: B- A+ C- B+  ->  C- A+ B- B+
    post = permutation(inst, [B.minus, A.plus, C.minus, B.plus], [2, 1, 0, 3])
    body = inst.compose(inst.compose(pre, both), post)
    t = inst.tensor_obj
    base = inst.trace(body, t(A.minus, C.plus), t(C.minus, A.plus), t(B.minus, B.plus))
    return IntMor(A, C, base)


# --------------------------------------------------------------------------
# the integers as pairs of naturals


@dataclass(frozen=True)
class ZPair:
    """The integer m_plus - m_minus, written as a pair of naturals."""

    m_minus: int
    m_plus: int

    def __post_init__(self):
        if self.m_minus < 0 or self.m_plus < 0:
            raise ValueError("components are natural numbers")

    def __add__(self, other: "ZPair") -> "ZPair":
        return ZPair(self.m_minus + other.m_minus, self.m_plus + other.m_plus)

    def to_int(self) -> int:
        return self.m_plus - self.m_minus


def znorm(z: ZPair) -> ZPair:
    """Cancel the common part: the unique representative with a zero component."""
    k = min(z.m_minus, z.m_plus)
    return ZPair(z.m_minus - k, z.m_plus - k)


def from_int(n: int) -> ZPair:
    return ZPair(-n, 0) if n < 0 else ZPair(0, n)


# --------------------------------------------------------------------------
# command-line helpers


def parse_rel_edges(edges: Iterable[str], blocks: dict[str, int], src=("A", "Y"),
                    dst=("B", "Y")) -> FinRel:
    """Parse edges like ``a0 -> y1`` over named blocks into one relation.

    A letter names a block (lower case of the block name) and the number is
    the index inside it.  Source blocks are stacked in ``src`` order, target
    blocks in ``dst`` order.
    """
    def offsets(names):
        off, table = 0, {}
        for nm in names:
            table[nm.lower()] = off
            off += blocks.get(nm, 0)
        return table, off

    s_off, s_size = offsets(src)
    t_off, t_size = offsets(dst)
    pairs = []
    for e in edges:
        if "->" not in e:
            raise BlockError(f"edge {e!r} must look like 'a0 -> b1'")
        lhs, rhs = (x.strip() for x in e.split("->", 1))
        pairs.append((_locate(lhs, s_off, blocks, src), _locate(rhs, t_off, blocks, dst)))
    return FinRel.from_pairs(s_size, t_size, pairs)


def _locate(tok: str, table: dict, blocks: dict, names) -> int:
    name, idx = tok[:1], tok[1:]
    if name.lower() not in table or not idx.isdigit():
        raise BlockError(f"cannot place {tok!r}; expected one of {[n.lower() for n in names]} plus an index")
    full = [n for n in names if n.lower() == name.lower()][0]
    if int(idx) >= blocks.get(full, 0):
        raise BlockError(f"{tok!r} is outside block {full} of size {blocks.get(full, 0)}")
    return table[name.lower()] + int(idx)


def parse_blocks(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise BlockError(f"block spec {part!r} must look like 'A=2'")
        k, v = part.split("=", 1)
        out[k.strip()] = int(v)
    return out
