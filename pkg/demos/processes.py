"""Machines, causal stream functions and bisimulation witnesses.

Run with ``python demos/processes.py``.
"""
from coinduct.proc import (STRONG, WEAK, SafetySpec, compose_causal, compose_rel, cumulative,
                           greatest_bisim, last_symbol_table, parity_machine, shuffle, unfold,
                           verify_bisim)

# A Mealy machine unfolds into a table: history -> latest output.
par = parity_machine()
table = unfold(par, 3)
print("parity after 1 0 1:", table[(1, 0, 1)])

# The cumulative lift replays the whole output history.
print("cumulative on 1 1 0:", cumulative(table, 3)[(1, 1, 0)])

# Causal functions compose by feeding the cumulative output forward.
twice = compose_causal(table, table, 3)
print("parity of parity on 1 1 0:", twice[(1, 1, 0)])
print("last-symbol is the unit:", compose_causal(last_symbol_table((0, 1), 3), table, 3) == table)

# Safety specs are prefix-closed sets of histories.
S = SafetySpec.prefixes("ab", [("a", "b"), ("b",)])
T = SafetySpec.prefixes("xy", [("y", "x"), ("x",)])
R = greatest_bisim(S, T, STRONG)
print("S and T bisimilar:", R is not None)
for s, t in sorted(R.histories(S, T), key=lambda p: (len(p[0]), p)):
    print("   ", s, "~", t)

# Witnesses compose.
U = SafetySpec.prefixes("pq", [("p",), ("q", "p")])
R2 = greatest_bisim(T, U, STRONG)
C = compose_rel(R, R2)
print("composite witness verifies:", verify_bisim(C, S, U))

# The stuttering clause of weak mode lets any move be answered by standing
# still, so every pair of specs comes out related.
deep, shallow = SafetySpec.prefixes("a", [("a", "a", "a")]), SafetySpec.prefixes("a", [("a",)])
print("strong:", greatest_bisim(deep, shallow, STRONG) is not None,
      " weak:", greatest_bisim(deep, shallow, WEAK) is not None)

# Interleavings of two independent specs.
print("shuffle:", sorted(shuffle(SafetySpec.prefixes("a", [("a",)]),
                                 SafetySpec.prefixes("x", [("x",)])).members()))
