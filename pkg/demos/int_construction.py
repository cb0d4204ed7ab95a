"""Feedback on relations and the integers as pairs of naturals.

Run with ``python demos/int_construction.py``.
"""
from coinduct.intcat import (FINREL, NAT, FinRel, IntMor, IntObj, NatMor, ZPair, int_compose,
                             int_identity, parse_blocks, parse_rel_edges, rel_symmetry,
                             rel_trace, znorm)

# Tracing out a block means following a path through it until it leaves.
blocks = parse_blocks("A=2,Y=2,B=1")
f = parse_rel_edges(["a0 -> y0", "y0 -> y1", "y1 -> b0", "a1 -> y1"], blocks)
print("trace:", rel_trace(f, 2, 1, 2).pairs())

# Feeding a swap back into itself gives the plain wire.
print("yanking on 3 wires:", rel_trace(rel_symmetry(3, 3), 3, 3, 3) == FinRel.identity(3))

# Int builds a category with wires running both ways.  A morphism
# (A-, A+) -> (B-, B+) is a relation A- + B+ -> B- + A+.
A, B = IntObj(1, 1), IntObj(1, 1)
swap = IntMor(A, B, rel_symmetry(1, 1))
print("swap after swap is swap:", int_compose(FINREL, swap, swap) == swap)
print("identity is a unit:", int_compose(FINREL, int_identity(FINREL, A), swap) == swap)

# Over the naturals with addition, Int is the integers.
for z in [ZPair(4, 4), ZPair(3, 5), ZPair(7, 2)]:
    n = znorm(z)
    print(f"<{z.m_minus},{z.m_plus}> normalizes to <{n.m_minus},{n.m_plus}> = {n.to_int()}")
x, y = IntObj(2, 5), IntObj(0, 3)
# A morphism (2,5) -> (0,3) is a number k with 2 + 3 = k = 0 + 5.
m = IntMor(x, y, NatMor(5))
print("identity then (2,5) -> (0,3) has base", int_compose(NAT, int_identity(NAT, x), m).base)
