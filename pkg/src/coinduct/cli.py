"""Command line interface.

Exit codes: 0 success (or a check that came out true), 1 a check that came
out false (not bisimilar, not transitive, out of fuel), 2 bad input.
Reports go to stdout and diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

from . import catcomp, games, hfgraph, intcat, proc, reals
from .dyadic import DomainError, format_extreal, parse_extreal

OK, FALSE, INPUT_ERROR = 0, 1, 2

_PROTECT = "="
_SHIELD = re.compile(r"^([+-]+|-inf|-\d[\d/^.]*)$")


def _protect(argv: Sequence[str]) -> list[str]:
    """Shield sign strings and negative numbers from the option parser.

    A bare ``--`` stays the usual separator; write ``=--`` for that sign
    string.
    """
    return [_PROTECT + tok if tok != "--" and _SHIELD.match(tok) else tok for tok in argv]


def _arg(s: str) -> str:
    return s[1:] if s.startswith(_PROTECT) else s


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# --------------------------------------------------------------------------
# hfset


def _load_hg(path: str, reflexive: bool = False) -> hfgraph.HGraph:
    g = hfgraph.parse_hg(_read(path))
    return g.with_mode(True) if reflexive else g


def _braces(g: hfgraph.HGraph) -> Optional[str]:
    if not hfgraph.is_wellfounded(g):
        return None
    memo: dict[int, str] = {}

    def go(v):
        if v not in memo:
            memo[v] = "{" + ",".join(sorted(go(w) for w in g.successors(v))) + "}"
        return memo[v]

    return go(g.root)


def cmd_hfset(args) -> int:
    if args.action == "canon":
        c = hfgraph.canon(_load_hg(args.files[0], args.reflexive))
        print(f"# digest {c.digest}")
        print(hfgraph.dump_hg(c.graph), end="")
        return OK
    if args.action == "bisim":
        if len(args.files) != 2:
            raise ValueError("hfset bisim needs two graph files")
        g, h = (_load_hg(f) for f in args.files)
        same = hfgraph.bisimilar(g, h, args.mode or hfgraph.STRONG)
        print("bisimilar" if same else "not bisimilar")
        return OK if same else FALSE
    if args.action == "tower":
        n = int(args.files[0])
        stage = hfgraph.pow_tower(n, allow_large=args.allow_large)
        print(f"stage {n}: {len(stage)} sets")
        for c in stage:
            print(_braces(c.graph))
        return OK
    raise ValueError(f"unknown hfset action {args.action}")


# --------------------------------------------------------------------------
# proc


def _load_spec(path: str, close: bool) -> proc.SafetySpec:
    return proc.parse_spec(_read(path), close=close)


def _word(h) -> str:
    return " ".join(map(str, h)) if h else "()"


def _outs(o) -> str:
    return "_" if o is None else str(o)


def cmd_proc(args) -> int:
    a = args.action
    if a in ("unfold", "cumulative"):
        m = proc.parse_mealy(_read(args.files[0]))
        depth = args.depth or 3
        table = proc.unfold(m, depth)
        if a == "unfold":
            for h, o in table.items():
                print(f"{_word(h)} -> {_outs(o)}")
            return OK
        lifted = proc.cumulative_async(table, depth) if args.async_ else proc.cumulative(table, depth)
        for h, o in lifted.items():
            print(f"{_word(h)} -> {' '.join(map(_outs, o)) if o else '()'}")
        return OK
    if a == "bisim":
        if len(args.files) != 2:
            raise ValueError("proc bisim needs two spec files")
        S, T = (_load_spec(f, args.close) for f in args.files)
        R = proc.greatest_bisim(S, T, args.mode or proc.STRONG)
        if R is None:
            print("no bisimulation relates the roots")
            return FALSE
        for s, t in sorted(R.histories(S, T), key=lambda p: (len(p[0]), len(p[1]), p)):
            print(f"{_word(s)} ~ {_word(t)}")
        return OK
    if a == "compose":
        if len(args.files) != 3:
            raise ValueError("proc compose needs three spec files S T U")
        S, T, U = (_load_spec(f, args.close) for f in args.files)
        mode = args.mode or proc.STRONG
        R1, R2 = proc.greatest_bisim(S, T, mode), proc.greatest_bisim(T, U, mode)
        if R1 is None or R2 is None:
            print("no witness for one of the two legs")
            return FALSE
        C = proc.compose_rel(R1, R2)
        ok = proc.verify_bisim(C, S, U)
        for s, u in sorted(C.histories(S, U), key=lambda p: (len(p[0]), len(p[1]), p)):
            print(f"{_word(s)} ~ {_word(u)}")
        print("composite verifies" if ok else "composite fails the clause")
        return OK if ok else FALSE
    if a == "shuffle":
        S, T = (_load_spec(f, args.close) for f in args.files[:2])
        print(proc.dump_spec(proc.shuffle(S, T, tag=args.tag)), end="")
        return OK
    raise ValueError(f"unknown proc action {a}")


# --------------------------------------------------------------------------
# game


def _game(arg: str) -> games.SignedGame:
    return games.load_game(_arg(arg))


def _show_game(g: games.SignedGame, as_sg: bool) -> None:
    if as_sg or not g.wellfounded:
        print(games.dump_sg(g), end="")
    else:
        print(games.format_game(g))


def cmd_game(args) -> int:
    a = args.action
    gs = [_game(x) for x in args.games]
    need = {"leq": 2, "strategy": 2, "add": 2, "mul": 2, "neg": 1, "value": 1, "transitive": 1}
    if len(gs) != need[a]:
        raise ValueError(f"game {a} takes {need[a]} game(s)")
    if a == "leq":
        r = games.leq(gs[0], gs[1])
        print("true" if r else "false")
        return OK if r else FALSE
    if a == "strategy":
        R = games.hyperstrategy(gs[0], gs[1], args.mode or games.SYNC)
        if R is None:
            print("no hyperstrategy")
            return FALSE
        for s, t in sorted(R.pairs):
            print(f"{s} {t}")
        return OK
    if a == "neg":
        _show_game(games.neg(gs[0]), args.sg)
        return OK
    if a in ("add", "mul"):
        _show_game((games.add if a == "add" else games.mul)(gs[0], gs[1]), args.sg)
        return OK
    if a == "value":
        s = reals.upsilon(gs[0])
        print(f"{str(s) or chr(34) * 2} ({format_extreal(reals.phi(s))})")
        return OK
    if a == "transitive":
        r = games.is_transitive(gs[0])
        print("transitive" if r else "not transitive")
        return OK if r else FALSE
    raise ValueError(f"unknown game action {a}")


# --------------------------------------------------------------------------
# real


def cmd_real(args) -> int:
    a = args.action
    vals = [_arg(v) for v in args.values]
    if a == "phi":
        print(format_extreal(reals.phi(vals[0])))
        return OK
    if a == "encode":
        x = parse_extreal(vals[0])
        s = reals.encode_approx(x, args.approx) if args.approx else reals.encode(x)
        print(str(s) or '""')
        return OK
    if a == "cmp":
        print(reals.lex_cmp(vals[0], vals[1]).name)
        return OK
    if a == "gamma":
        print(games.format_game(reals.gamma(vals[0])))
        return OK
    if a == "upsilon":
        print(str(reals.upsilon(games.load_game(vals[0]))) or '""')
        return OK
    raise ValueError(f"unknown real action {a}")


# --------------------------------------------------------------------------
# int


def _int_obj(text: str) -> intcat.IntObj:
    m, p = (int(x) for x in text.split(","))
    return intcat.IntObj(m, p)


def _plain_rel(edges, n_in: int, n_out: int) -> intcat.FinRel:
    pairs = []
    for e in edges or ():
        if "->" not in e:
            raise ValueError(f"edge {e!r} must look like '0 -> 1'")
        lhs, rhs = e.split("->", 1)
        pairs.append((int(lhs), int(rhs)))
    return intcat.FinRel.from_pairs(n_in, n_out, pairs)


def cmd_int(args) -> int:
    a = args.action
    if a == "trace":
        if not args.blocks:
            raise ValueError("int trace needs --blocks A=..,Y=..,B=..")
        blocks = intcat.parse_blocks(args.blocks)
        f = intcat.parse_rel_edges(args.edges, blocks)
        tr = intcat.rel_trace(f, blocks.get("A", 0), blocks.get("B", 0), blocks.get("Y", 0))
        for i, j in tr.pairs():
            print(f"a{i} -> b{j}")
        return OK
    if a == "compose":
        A, B, C = _int_obj(args.A), _int_obj(args.B), _int_obj(args.C)
        f = intcat.IntMor(A, B, _plain_rel(args.f, A.minus + B.plus, B.minus + A.plus))
        g = intcat.IntMor(B, C, _plain_rel(args.g, B.minus + C.plus, C.minus + B.plus))
        h = intcat.int_compose(intcat.FINREL, f, g)
        for i, j in h.base.pairs():
            print(f"{i} -> {j}")
        return OK
    if a == "znorm":
        m, p = (int(_arg(x)) for x in args.edges[:2])
        z = intcat.znorm(intcat.ZPair(m, p))
        print(f"<{z.m_minus},{z.m_plus}> = {z.to_int()}")
        return OK
    raise ValueError(f"unknown int action {a}")


# --------------------------------------------------------------------------
# comp


def _term(arg: str) -> catcomp.Term:
    s = arg.strip()
    if s.startswith("("):
        return catcomp.parse_term(s)
    if s.isdigit():
        return catcomp.Lit(int(s))
    return catcomp.parse_term(_read(arg))


def _print_result(r) -> int:
    print(catcomp.format_result(r))
    return FALSE if r is catcomp.OUT_OF_FUEL else OK


def cmd_comp(args) -> int:
    a = args.action
    fuel = args.fuel
    if a == "eval":
        return _print_result(catcomp.eval(_term(args.terms[0]), fuel))
    if a == "specialize":
        t = catcomp.specialize(_term(args.terms[0]), _term(args.terms[1]))
        if len(args.terms) > 2:
            return _print_result(catcomp.eval(catcomp.App(t, _term(args.terms[2])), fuel))
        print(catcomp.format_term(t))
        return OK
    if a == "step":
        r = catcomp.step(_term(args.terms[0]), int(args.terms[1]), fuel)
        if r is catcomp.OUT_OF_FUEL:
            print("out-of-fuel")
            return FALSE
        print(r[0])
        print(catcomp.format_term(r[1]))
        return OK
    if a == "fix":
        e = catcomp.fix(_term(args.terms[0]))
        if len(args.terms) > 1:
            return _print_result(catcomp.eval(catcomp.App(e, _term(args.terms[1])), fuel))
        print(catcomp.format_term(e))
        return OK
    if a == "compile":
        m = proc.parse_mealy(_read(args.terms[0]))
        cm = catcomp.compile_mealy(m)
        state = int(args.state) if args.state is not None else m.init
        if args.input is not None:
            outs = catcomp.run_compiled(cm, state, args.input.split(), fuel)
            if outs is catcomp.OUT_OF_FUEL:
                print("out-of-fuel")
                return FALSE
            print(" ".join(_outs(o) for o in outs))
            return OK
        print(catcomp.format_term(cm[state]))
        return OK
    raise ValueError(f"unknown comp action {a}")


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coinduct", description="Bisimulation, games, sign strings, "
                                "Int and a toy programmable computer.")
    sub = p.add_subparsers(dest="group", required=True)

    h = sub.add_parser("hfset", help="hereditarily finite sets and hypersets (.hg files)")
    h.add_argument("action", choices=["canon", "bisim", "tower"])
    h.add_argument("files", nargs="+", help="graph files, or the stage number for tower")
    h.add_argument("--mode", choices=list(hfgraph.MODES))
    h.add_argument("--reflexive", action="store_true", help="canonicalize in reflexive mode")
    h.add_argument("--allow-large", action="store_true", help="permit tower stage 4 and above")
    h.set_defaults(func=cmd_hfset)

    pr = sub.add_parser("proc", help="machines (.mealy) and safety specs (.spec)")
    pr.add_argument("action", choices=["unfold", "cumulative", "bisim", "compose", "shuffle"])
    pr.add_argument("files", nargs="+")
    pr.add_argument("--mode", choices=list(proc.MODES))
    pr.add_argument("--depth", type=int)
    pr.add_argument("--close", action="store_true", help="take the prefix closure of spec files")
    pr.add_argument("--async", dest="async_", action="store_true",
                    help="cumulative: drop deleted outputs")
    pr.add_argument("--tag", action="store_true", help="shuffle: tag symbols to force disjointness")
    pr.set_defaults(func=cmd_proc)

    g = sub.add_parser("game", help="signed games: inline {L|R} literals or .sg files")
    g.add_argument("action", choices=["leq", "strategy", "neg", "add", "mul", "value", "transitive"])
    g.add_argument("games", nargs="+")
    g.add_argument("--mode", choices=[games.SYNC, games.ASYNC])
    g.add_argument("--sg", action="store_true", help="print results in .sg format")
    g.set_defaults(func=cmd_game)

    r = sub.add_parser("real", help="sign strings and dyadic values")
    r.add_argument("action", choices=["phi", "encode", "cmp", "gamma", "upsilon"])
    r.add_argument("values", nargs="+")
    r.add_argument("--approx", type=int, help="encode: truncate the expansion to N signs")
    r.set_defaults(func=cmd_real)

    i = sub.add_parser("int", help="finite relations, trace and Int")
    i.add_argument("action", choices=["trace", "compose", "znorm"])
    i.add_argument("edges", nargs="*", help="trace: edges like 'a0 -> y1'; znorm: m_minus m_plus")
    i.add_argument("--blocks", help="block sizes, e.g. A=2,Y=1,B=2")
    i.add_argument("--A", default="0,0", help="compose: object as minus,plus")
    i.add_argument("--B", default="0,0")
    i.add_argument("--C", default="0,0")
    i.add_argument("--f", action="append", help="compose: base edge of f, 'i -> j'")
    i.add_argument("--g", action="append", help="compose: base edge of g, 'i -> j'")
    i.set_defaults(func=cmd_int)

    c = sub.add_parser("comp", help="the toy computer (.tm S-expressions)")
    c.add_argument("action", choices=["eval", "specialize", "step", "fix", "compile"])
    c.add_argument("terms", nargs="+", help="terms: file, inline S-expression or literal")
    c.add_argument("--fuel", type=int, default=catcomp.DEFAULT_FUEL)
    c.add_argument("--state", help="compile: start state")
    c.add_argument("--input", help="compile: space separated input word to run")
    c.set_defaults(func=cmd_comp)
    return p


def run_command(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(_protect(argv))
        # argparse leaves an optional "*" positional empty when an option
        # precedes it, so edges given after --blocks arrive here instead.
        if extra and getattr(args, "edges", None) is not None and \
                not any(x.startswith("-") for x in extra):
            args.edges = list(args.edges) + extra
        elif extra:
            parser.error("unrecognized arguments: " + " ".join(extra))
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (ValueError, OSError, DomainError, KeyError, IndexError,
            catcomp.StuckError, catcomp.ProtocolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    code = run_command(sys.argv[1:] if argv is None else argv)
    sys.exit(code)


if __name__ == "__main__":
    main()
