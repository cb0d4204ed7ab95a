"""Sets as pointed graphs, identified up to bisimulation.

Run with ``python demos/hypersets.py``.
"""
from coinduct.hfgraph import (REFLEXIVE, STRONG, HGraph, bisimilar, canon, empty_set,
                              from_elements, omega, pow_tower, vn)

# A graph node stands for the set of its successors.  The numeral 2 = {0, 1}:
two = vn(2)
print("vn(2) has", two.node_count, "nodes and edges", sorted(two.edges))

# The same set written with a redundant copy of the empty set still collapses to vn(2).
messy = HGraph(4, [(0, 1), (0, 2), (2, 3)])  # {0, {0'}} with two different empty nodes
print("messy graph equals vn(2):", bisimilar(messy, two))
print("its canonical form has", canon(messy).graph.node_count, "nodes")

# Cycles are allowed.  x = {x} and the pair x = {y}, y = {x} are the same hyperset.
loop = omega()
pair = HGraph(2, [(0, 1), (1, 0)])
print("x = {x} versus the 2-cycle:", bisimilar(loop, pair))
print("same digest:", canon(loop).digest == canon(pair).digest)

# The cumulative hierarchy of hereditarily finite sets, stage by stage.
for n in range(4):
    print(f"stage {n}: {len(pow_tower(n))} sets")

# Reflexive mode lets a move be answered by looking one element deeper into
# the mover's own target.  That relation is looser, and it is not transitive:
# the empty set matches x = {x}, which matches {empty}, yet the empty set does
# not match {empty}.
zero, one = empty_set(), from_elements([empty_set()])
for a, b, label in [(zero, loop, "0 vs x={x}"), (loop, one, "x={x} vs 1"), (zero, one, "0 vs 1")]:
    print(f"{label:12s} strong={bisimilar(a, b, STRONG)!s:5s} reflexive={bisimilar(a, b, REFLEXIVE)}")
