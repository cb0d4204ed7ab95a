import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coinduct.dyadic import DomainError
from coinduct.proc import (NOT_BISIMULATION, RELATION_ONLY, STRONG, WEAK, WITNESS, InputError,
                           MealyMachine, SafetySpec, TimedRelation, _clause, compose_causal,
                           compose_rel, constant_machine, cumulative, cumulative_async,
                           dump_spec, fold_history, gfp_relation, greatest_bisim, histories,
                           identity_machine, identity_relation, is_witness, last_symbol_table,
                           parity_machine, parse_mealy, parse_spec, random_witness, run_table,
                           shuffle, unfold, verify_bisim, witness_status)
from helpers import all_relations_gfp, random_spec


def pre(alphabet, *words):
    return SafetySpec.prefixes(alphabet, [tuple(w) for w in words])


@st.composite
def specs(draw, max_alpha=3, max_depth=4):
    return random_spec(random.Random(draw(st.integers(0, 2 ** 32 - 1))), max_alpha, max_depth)


@st.composite
def machines(draw, alphabet=(0, 1), max_states=3):
    n = draw(st.integers(1, max_states))
    trans = {(a, x): (draw(st.sampled_from(alphabet)), draw(st.integers(0, n - 1)))
             for a in alphabet for x in range(n)}
    return MealyMachine(tuple(range(n)), 0, tuple(alphabet), trans)


# ---------------------------------------------------------------- folds and machines


def test_fold_examples():
    assert fold_history(("a",), lambda a: 1, lambda a, v: v + 1) == 1
    assert fold_history(tuple("abc"), lambda a: 1, lambda a, v: v + 1) == 3
    # a 2-state automaton that flips on 'b'
    delta = {("a", 0): 0, ("a", 1): 1, ("b", 0): 1, ("b", 1): 0}
    assert fold_history(tuple("ab"), lambda a: delta[(a, 0)], lambda a, x: delta[(a, x)]) == 1


def test_fold_rejects_empty():
    with pytest.raises(ValueError):
        fold_history((), lambda a: a, lambda a, v: v)


def test_unfold_identity_machine():
    table = unfold(identity_machine("ab"), 3)
    assert all(table[h] == h[-1] for h in table)
    assert len(table) == 2 + 4 + 8


def test_unfold_parity():
    assert unfold(parity_machine(), 3)[(1, 0, 1)] == 0
    assert unfold(parity_machine(), 3)[(1, 1, 1)] == 1


def test_unfold_deletions():
    # deletes on every second step
    m = MealyMachine((0, 1), 0, ("a",), {("a", 0): ("x", 1), ("a", 1): (None, 0)})
    table = unfold(m, 4)
    assert [table[("a",) * n] for n in range(1, 5)] == ["x", None, "x", None]


def test_unfold_depth_and_symbols():
    with pytest.raises(ValueError):
        unfold(parity_machine(), 0)
    with pytest.raises(InputError):
        parity_machine().step(2, 0)


def test_machine_must_be_total():
    with pytest.raises(InputError):
        MealyMachine((0,), 0, ("a", "b"), {("a", 0): ("a", 0)})


@settings(max_examples=50, deadline=None)
@given(machines())
def test_unfold_matches_direct_simulation(m):
    table = unfold(m, 5)
    assert table == run_table(m, table.keys())
    cum = cumulative(table, 5)
    for h in cum:
        assert list(cum[h]) == m.run(h)[0]


# ---------------------------------------------------------------- cumulative


def test_cumulative_examples():
    last = last_symbol_table("abc", 3)
    assert all(v == h for h, v in cumulative(last, 3).items())
    head = {h: h[0] for h in histories("abc", 3)}
    assert cumulative(head, 3)[tuple("abc")] == tuple("aaa")
    const = unfold(constant_machine("ab", "k"), 2)
    assert cumulative(const, 2)[tuple("ab")] == ("k", "k")


def test_cumulative_missing_entry():
    with pytest.raises(DomainError):
        cumulative({("a", "b"): 1}, 2)


def test_cumulative_async_examples():
    f = {("a",): "x", ("a", "b"): None}
    assert cumulative_async(f, 2)[("a", "b")] == ("x",)
    never = {h: None for h in histories("ab", 3)}
    assert all(v == () for v in cumulative_async(never, 3).values())
    total = {h: len(h) for h in histories("ab", 3)}
    assert cumulative_async(total, 3) == cumulative(total, 3)


def _is_prefix(u, v):
    return v[:len(u)] == u


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(["x", "y", None]), min_size=14, max_size=14))
def test_cumulative_monotone(outs):
    f = dict(zip(histories("ab", 3), outs))
    cum, acum = cumulative(f, 3), cumulative_async(f, 3)
    for h, k in itertools.product(f, repeat=2):
        assert len(cum[h]) == len(h)
        assert len(acum[h]) <= len(h)
        if _is_prefix(h, k):
            assert _is_prefix(cum[h], cum[k])
            assert _is_prefix(acum[h], acum[k])


# ---------------------------------------------------------------- causal composition


def test_compose_causal_examples():
    alpha = (0, 1)
    f = unfold(parity_machine(), 4)
    last = last_symbol_table(alpha, 4)
    assert compose_causal(last, f, 4) == f
    assert compose_causal(f, last, 4) == f
    head = {h: h[0] for h in histories(alpha, 4)}
    assert compose_causal(head, last, 4) == head


@settings(max_examples=30, deadline=None)
@given(machines(), machines(), machines())
def test_compose_causal_associative(m1, m2, m3):
    d = 6
    f, g, h = unfold(m1, d), unfold(m2, d), unfold(m3, d)
    last = last_symbol_table((0, 1), d)
    assert compose_causal(compose_causal(f, g, d), h, d) == compose_causal(f, compose_causal(g, h, d), d)
    assert compose_causal(last, f, d) == f == compose_causal(f, last, d)


def test_compose_causal_of_machines_is_cascade():
    # parity after parity, simulated as one paired-state machine
    p = parity_machine()
    d = 5
    composite = compose_causal(unfold(p, d), unfold(p, d), d)
    for h in composite:
        mid, _ = p.run(h)
        out, _ = p.run(mid)
        assert composite[h] == out[-1]


# ---------------------------------------------------------------- specs


def test_spec_must_be_prefix_closed():
    with pytest.raises(InputError):
        SafetySpec("ab", [("a", "b")])
    assert SafetySpec("ab", [("a", "b")], close=True).members() == {("a",), ("a", "b")}


def test_spec_foreign_symbol():
    with pytest.raises(InputError):
        SafetySpec("ab", [("c",)])


def test_spec_file_roundtrip():
    S = pre("ab", "aab", "ba")
    assert parse_spec(dump_spec(S)) == S


def test_parse_spec_errors():
    with pytest.raises(InputError):
        parse_spec("a b\n")
    with pytest.raises(InputError):
        parse_spec("alphabet a b\na b\n")
    assert parse_spec("alphabet a b\na b\n", close=True).node_count == 3


def test_parse_mealy():
    m = parse_mealy("states 2\ninit 0\ntrans 0 a x 1\ntrans 1 a _ 0\n")
    assert unfold(m, 2) == {("a",): "x", ("a", "a"): None}
    with pytest.raises(InputError):
        parse_mealy("states 1\ninit 0\ntrans 0 a x 3\n")
    with pytest.raises(InputError, match="line 3"):
        parse_mealy("states 1\ninit 0\nbogus\n")


# ---------------------------------------------------------------- shuffle


def test_shuffle_example():
    sh = shuffle(pre("a", "a"), pre("x", "x"))
    assert sh.members() == {("a",), ("x",), ("a", "x"), ("x", "a")}


def test_shuffle_unit():
    S = pre("ab", "ab", "ba")
    assert shuffle(S, SafetySpec("x")).members() == S.members()


def test_shuffle_symmetric():
    S, T = pre("ab", "ab"), pre("xy", "x", "y")
    assert shuffle(S, T).members() == shuffle(T, S).members()


def test_shuffle_collision():
    with pytest.raises(InputError):
        shuffle(pre("a", "a"), pre("a", "a"))
    tagged = shuffle(pre("a", "a"), pre("a", "a"), tag=True)
    assert tagged.members() == {((0, "a"),), ((1, "a"),), ((0, "a"), (1, "a")), ((1, "a"), (0, "a"))}


@settings(max_examples=40, deadline=None)
@given(specs(2, 2), specs(2, 2))
def test_shuffle_restrictions(S, T):
    sh = shuffle(S, T, tag=True)
    for w in sh.members():
        left = tuple(a for side, a in w if side == 0)
        right = tuple(b for side, b in w if side == 1)
        assert left == () or left in S.members()
        assert right == () or right in T.members()


# ---------------------------------------------------------------- bisimulation


def test_greatest_bisim_examples():
    S, T = pre("ab", "ab"), pre("xy", "xy")
    R = greatest_bisim(S, T)
    assert R.histories(S, T) == {((), ()), (("a",), ("x",)), (("a", "b"), ("x", "y"))}
    assert greatest_bisim(S, pre("x", "x")) is None


def test_weak_fixture():
    # strong fails on unequal depth; the literal weak clause accepts every pair
    S, T = pre("ab", "aab"), pre("ab", "ab")
    assert greatest_bisim(S, T, STRONG) is None
    R = greatest_bisim(S, T, WEAK)
    assert len(R) == 12
    assert verify_bisim(R, S, T)


def test_weak_mode_is_degenerate():
    # a stutter step lets any move be answered by staying put
    rng = random.Random(3)
    for _ in range(20):
        S, T = random_spec(rng), random_spec(rng)
        assert len(gfp_relation(S, T, WEAK)) == S.node_count * T.node_count


def test_verify_examples():
    S = pre("ab", "ab", "b")
    assert verify_bisim(identity_relation(S), S, S)
    empty = TimedRelation(frozenset())
    assert witness_status(empty, S, S) == RELATION_ONLY
    assert witness_status(identity_relation(S), S, S) == WITNESS
    bad = TimedRelation(frozenset({(0, 0)}))
    assert witness_status(bad, S, S) == NOT_BISIMULATION


def test_verify_foreign_nodes():
    S = pre("a", "a")
    with pytest.raises(InputError):
        verify_bisim(TimedRelation(frozenset({(0, 9)})), S, S)


def test_greatest_bisim_matches_all_relations():
    rng = random.Random(21)
    checked = 0
    while checked < 40:
        S, T = random_spec(rng, 2, 3), random_spec(rng, 2, 3)
        pairs = [(s, t) for s in range(S.node_count) for t in range(T.node_count)]
        if len(pairs) > 12:
            continue
        checked += 1
        brute = all_relations_gfp(pairs, _clause(S, T, STRONG))
        assert brute == gfp_relation(S, T, STRONG)
        R = greatest_bisim(S, T)
        assert (R is not None) == ((0, 0) in brute)
        if R is not None:
            assert R.pairs <= brute


@settings(max_examples=60, deadline=None)
@given(specs(), specs())
def test_greatest_bisim_properties(S, T):
    R = greatest_bisim(S, T, STRONG)
    full = gfp_relation(S, T, STRONG)
    assert (R is not None) == ((0, 0) in full)
    if R is not None:
        assert verify_bisim(R, S, T)
        assert R.pairs <= full
        assert verify_bisim(R, S, T, WEAK)
        assert R.pairs <= greatest_bisim(S, T, WEAK).pairs
        other = random_witness(S, T, STRONG, random.Random(0))
        assert other.pairs <= full


@settings(max_examples=40, deadline=None)
@given(specs())
def test_self_bisimilar(S):
    R = greatest_bisim(S, S)
    assert identity_relation(S).pairs <= R.pairs


# ---------------------------------------------------------------- composition


def test_compose_identity():
    S, T = pre("ab", "ab", "b"), pre("xy", "x", "yx")
    R = greatest_bisim(S, T)
    assert compose_rel(R, identity_relation(T)) == R
    assert compose_rel(identity_relation(S), R) == R


def test_compose_hand_built():
    S, T, U = pre("ab", "a", "b"), pre("xy", "x", "y"), pre("c", "c")
    R1 = TimedRelation(frozenset({(0, 0), (1, 2), (2, 1)}))
    R2 = TimedRelation(frozenset({(0, 0), (1, 1), (2, 1)}))
    assert is_witness(R1, S, T) and is_witness(R2, T, U)
    assert is_witness(compose_rel(R1, R2), S, U)


def test_compose_mode_mismatch():
    R = TimedRelation(frozenset({(0, 0)}), STRONG)
    with pytest.raises(ValueError):
        compose_rel(R, TimedRelation(frozenset({(0, 0)}), WEAK))


def test_weak_witnesses_do_not_compose():
    # both pieces satisfy the stuttering clause, the composite does not
    S, T, U = pre("ab", "a", "b"), pre("ab", "aba", "abb"), SafetySpec("a")
    n = T.node_of
    R1 = TimedRelation(frozenset({(0, 0), (1, 0), (1, n("abb")), (2, n("a")), (2, n("abb"))}), WEAK)
    R2 = TimedRelation(frozenset({(0, 0), (n("aba"), 0)}), WEAK)
    assert is_witness(R1, S, T) and is_witness(R2, T, U)
    assert not verify_bisim(compose_rel(R1, R2), S, U)


def test_random_strong_witnesses_compose():
    rng = random.Random(8)
    done = 0
    while done < 60:
        S = random_spec(rng, 2, 3)
        T, U = _relabel(S, rng), _relabel(S, rng)
        R1, R2, R3 = (random_witness(A, B, STRONG, rng) for A, B in ((S, T), (T, U), (U, S)))
        assert all(R is not None for R in (R1, R2, R3))
        done += 1
        assert is_witness(compose_rel(R1, R2), S, U)
        assert compose_rel(compose_rel(R1, R2), R3) == compose_rel(R1, compose_rel(R2, R3))


def _relabel(S, rng):
    """A copy of S with its alphabet permuted, so the two are bisimilar."""
    perm = list(S.alphabet)
    rng.shuffle(perm)
    m = dict(zip(S.alphabet, perm))
    return SafetySpec(S.alphabet, [tuple(m[a] for a in w) for w in S.members()])
