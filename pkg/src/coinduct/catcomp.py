"""A toy categorical computer: an untyped lambda calculus with naturals.

Terms use de Bruijn indices.  :func:`eval` is a lazy (call-by-need)
machine that reduces to weak head normal form, then forces pairs
component-wise.  Fuel counts beta steps and primitive steps (succ, pred,
ifz, projections); running out yields :data:`OUT_OF_FUEL` instead of an
error.

Programs are terms too, so a program transformer is just a term taking a
program and returning one.  :func:`fix` ties the recursive knot by
self-application, and :func:`compile_mealy` turns a finite machine into a
program whose steps replay the machine.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

DEFAULT_FUEL = 100_000


class InputError(ValueError):
    """The term is open or malformed."""


class StuckError(RuntimeError):
    """Evaluation reached a shape no rule applies to (e.g. succ of a lambda)."""


class ProtocolError(RuntimeError):
    """A program step did not return a (literal, program) pair."""


# --------------------------------------------------------------------------
# syntax


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Lam(Term):
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Lit(Term):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise InputError("literals are natural numbers")


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class Pred(Term):
    arg: Term


@dataclass(frozen=True)
class Ifz(Term):
    cond: Term
    zero: Term
    nonzero: Term


@dataclass(frozen=True)
class Pair(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


def free_depth(t: Term) -> int:
    """Smallest n such that t is well scoped under n binders (0 for closed terms)."""
    need = 0
    stack = [(t, 0)]
    while stack:
        u, d = stack.pop()
        if isinstance(u, Var):
            need = max(need, u.index - d + 1)
        elif isinstance(u, Lam):
            stack.append((u.body, d + 1))
        elif isinstance(u, Lit):
            pass
        elif isinstance(u, (App, Pair)):
            a, b = (u.fn, u.arg) if isinstance(u, App) else (u.first, u.second)
            stack += [(a, d), (b, d)]
        elif isinstance(u, Ifz):
            stack += [(u.cond, d), (u.zero, d), (u.nonzero, d)]
        elif isinstance(u, (Succ, Pred, Fst, Snd)):
            stack.append((u.arg, d))
        else:
            raise InputError(f"not a term: {u!r}")
    return need


def is_closed(t: Term) -> bool:
    return free_depth(t) == 0


def apps(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def lams(n: int, body: Term) -> Term:
    for _ in range(n):
        body = Lam(body)
    return body


# --------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Value:
    term: Term


class _OutOfFuel:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OUT_OF_FUEL"

    def __reduce__(self):
        return (_OutOfFuel, ())


OUT_OF_FUEL = _OutOfFuel()
EvalResult = Union[Value, _OutOfFuel]


class _NoFuel(Exception):
    pass


# --------------------------------------------------------------------------
# the machine
#
# Values: ("lit", n), ("clo", body, env), ("pair", thunk, thunk).
# Environments are cons cells (thunk, rest) or None.


class _Thunk:
    __slots__ = ("term", "env", "value", "busy")

    def __init__(self, term, env, value=None):
        self.term = term
        self.env = env
        self.value = value
        self.busy = False


def _lookup(env, k):
    for _ in range(k):
        env = env[1]
    return env[0]


def _delay(t: Term, env) -> _Thunk:
    if isinstance(t, Var):
        return _lookup(env, t.index)
    if isinstance(t, Lit):
        return _Thunk(t, None, ("lit", t.value))
    return _Thunk(t, env)


def _whnf(term: Term, env, fuel: list) -> tuple:
    """Reduce (term, env) to a value, spending fuel on beta and primitive steps."""
    stack: list = []
    c, e = term, env
    v = None
    while True:
        if v is None:
            # evaluate c in e
            if isinstance(c, Var):
                th = _lookup(e, c.index)
                if th.value is not None:
                    v = th.value
                    continue
                if th.busy:
                    # a thunk that needs itself can never produce a value
                    raise _NoFuel()
                th.busy = True
                stack.append(("upd", th))
                c, e = th.term, th.env
            elif isinstance(c, Lam):
                v = ("clo", c.body, e)
            elif isinstance(c, App):
                stack.append(("arg", _delay(c.arg, e)))
                c = c.fn
            elif isinstance(c, Lit):
                v = ("lit", c.value)
            elif isinstance(c, Pair):
                v = ("pair", _delay(c.first, e), _delay(c.second, e))
            elif isinstance(c, (Succ, Pred, Fst, Snd)):
                stack.append((type(c).__name__,))
                c = c.arg
            elif isinstance(c, Ifz):
                stack.append(("Ifz", c.zero, c.nonzero, e))
                c = c.cond
            else:
                raise InputError(f"not a term: {c!r}")
            continue
        # return v to the top frame
        if not stack:
            return v
        frame = stack.pop()
        tag = frame[0]
        if tag == "upd":
            th = frame[1]
            th.value, th.busy, th.term, th.env = v, False, None, None
            continue
        if fuel[0] <= 0:
            raise _NoFuel()
        fuel[0] -= 1
        if tag == "arg":
            if v[0] != "clo":
                raise StuckError(f"cannot apply a {v[0]}")
            c, e = v[1], (frame[1], v[2])
            v = None
        elif tag in ("Succ", "Pred"):
            if v[0] != "lit":
                raise StuckError(f"{tag.lower()} of a {v[0]}")
            v = ("lit", v[1] + 1 if tag == "Succ" else max(v[1] - 1, 0))
        elif tag == "Ifz":
            if v[0] != "lit":
                raise StuckError(f"ifz on a {v[0]}")
            c, e = (frame[1] if v[1] == 0 else frame[2]), frame[3]
            v = None
        elif tag in ("Fst", "Snd"):
            if v[0] != "pair":
                raise StuckError(f"projection from a {v[0]}")
            th = v[1] if tag == "Fst" else v[2]
            if th.value is not None:
                v = th.value
            else:
                if th.busy:
                    raise _NoFuel()
                th.busy = True
                stack.append(("upd", th))
                c, e = th.term, th.env
                v = None


def _force(th: _Thunk, fuel: list) -> tuple:
    if th.value is None:
        if th.busy:
            raise _NoFuel()
        th.busy = True
        try:
            val = _whnf(th.term, th.env, fuel)
        finally:
            th.busy = False
        th.value, th.term, th.env = val, None, None
    return th.value


def _readback_term(t: Term, env, depth: int) -> Term:
    """Substitute the environment into t, giving a closed term."""
    if isinstance(t, Var):
        if t.index < depth:
            return t
        return _readback_thunk(_lookup(env, t.index - depth))
    if isinstance(t, Lam):
        return Lam(_readback_term(t.body, env, depth + 1))
    if isinstance(t, Lit):
        return t
    if isinstance(t, App):
        return App(_readback_term(t.fn, env, depth), _readback_term(t.arg, env, depth))
    if isinstance(t, Pair):
        return Pair(_readback_term(t.first, env, depth), _readback_term(t.second, env, depth))
    if isinstance(t, Ifz):
        return Ifz(*(_readback_term(x, env, depth) for x in (t.cond, t.zero, t.nonzero)))
    return type(t)(_readback_term(t.arg, env, depth))


def _readback_value(v: tuple) -> Term:
    if v[0] == "lit":
        return Lit(v[1])
    if v[0] == "clo":
        return Lam(_readback_term(v[1], v[2], 1))
    return Pair(_readback_thunk(v[1]), _readback_thunk(v[2]))


def _readback_thunk(th: _Thunk) -> Term:
    if th.value is not None:
        return _readback_value(th.value)
    return _readback_term(th.term, th.env, 0)


def _deep(v: tuple, fuel: list) -> Term:
    if v[0] == "pair":
        return Pair(_deep(_force(v[1], fuel), fuel), _deep(_force(v[2], fuel), fuel))
    return _readback_value(v)


def eval(t: Term, fuel: int = DEFAULT_FUEL) -> EvalResult:  # noqa: A001 - the interpreter
    """Evaluate a closed term lazily; pairs are forced component-wise.

    Returns :class:`Value` with a closed result term, or OUT_OF_FUEL when the
    budget of beta and primitive steps runs out.
    """
    if fuel < 1:
        raise ValueError("fuel must be positive")
    if not is_closed(t):
        raise InputError("eval needs a closed term")
    box = [fuel]
    try:
        return Value(_deep(_whnf(t, None, box), box))
    except _NoFuel:
        return OUT_OF_FUEL


def eval_steps(t: Term, fuel: int = DEFAULT_FUEL) -> tuple[EvalResult, int]:
    """Like :func:`eval` but also report how much fuel was spent."""
    if not is_closed(t):
        raise InputError("eval needs a closed term")
    box = [fuel]
    try:
        res: EvalResult = Value(_deep(_whnf(t, None, box), box))
    except _NoFuel:
        res = OUT_OF_FUEL
    return res, fuel - box[0]


# --------------------------------------------------------------------------
# specializer, processes, fixpoints


def specialize(p: Term, a: Term) -> Term:
    """Fix the first argument of p: the residual program is the application (p a)."""
    if not is_closed(p) or not is_closed(a):
        raise InputError("specialize needs closed terms")
    return App(p, a)


def step(p: Term, a: int, fuel: int = DEFAULT_FUEL):
    """Run one step of the program-as-process p on input a.

    ``p a`` must evaluate to a pair (literal output, residual program).
    Returns ``(output, residual)`` or OUT_OF_FUEL.
    """
    if not is_closed(p):
        raise InputError("step needs a closed program")
    box = [fuel]
    try:
        v = _whnf(App(p, Lit(a)), None, box)
        if v[0] != "pair":
            raise ProtocolError(f"program step returned a {v[0]}, not a pair")
        out = _force(v[1], box)
    except _NoFuel:
        return OUT_OF_FUEL
    if out[0] != "lit":
        raise ProtocolError("program step output is not a literal")
    return out[1], _readback_thunk(v[2])


def run_process(p: Term, inputs: Sequence[int], fuel: int = DEFAULT_FUEL):
    """Feed inputs one at a time; returns the output list or OUT_OF_FUEL."""
    outs = []
    for a in inputs:
        r = step(p, a, fuel)
        if r is OUT_OF_FUEL:
            return OUT_OF_FUEL
        b, p = r
        outs.append(b)
    return outs


def fix(t: Term) -> Term:
    """A program e with e = t e, by self-application: (r r) with r = \\x. t (x x)."""
    if not is_closed(t):
        raise InputError("fix needs a closed transformer")
    r = Lam(App(t, App(Var(0), Var(0))))
    return App(r, r)


# --------------------------------------------------------------------------
# a small standard library (all closed terms)

IDENTITY = Lam(Var(0))
CONST = Lam(Lam(Var(1)))
OMEGA = App(Lam(App(Var(0), Var(0))), Lam(App(Var(0), Var(0))))

# \self. \a. \b. ifz a b (succ (self (pred a) b))
ADD = fix(Lam(Lam(Lam(Ifz(Var(1), Var(0), Succ(apps(Var(2), Pred(Var(1)), Var(0))))))))
# \self. \a. \b. ifz a 0 (add b (self (pred a) b))
MUL = fix(Lam(Lam(Lam(Ifz(Var(1), Lit(0), apps(ADD, Var(0), apps(Var(2), Pred(Var(1)), Var(0))))))))


def literal(n: int) -> Term:
    return Lit(n)


# program transformers: \self. \n. body, where self is Var(1) and n is Var(0)

def _rec(body: Term) -> Term:
    return Lam(Lam(body))


TRANSFORMERS: dict[str, tuple[Term, callable]] = {
    # ignores self and returns the program \n. n + 2
    "const": (Lam(Lam(Succ(Succ(Var(0))))), lambda n: n + 2),
    "double": (_rec(Ifz(Var(0), Lit(0), Succ(Succ(App(Var(1), Pred(Var(0))))))), lambda n: 2 * n),
    "triangular": (_rec(Ifz(Var(0), Lit(0), apps(ADD, Var(0), App(Var(1), Pred(Var(0)))))),
                   lambda n: n * (n + 1) // 2),
    "parity": (_rec(Ifz(Var(0), Lit(0), Ifz(App(Var(1), Pred(Var(0))), Lit(1), Lit(0)))),
               lambda n: n % 2),
    "identity": (_rec(Ifz(Var(0), Lit(0), Succ(App(Var(1), Pred(Var(0)))))), lambda n: n),
}

FACTORIAL_T = _rec(Ifz(Var(0), Lit(1), apps(MUL, Var(0), App(Var(1), Pred(Var(0))))))


# --------------------------------------------------------------------------
# compiling machines


def _select(index: Term, cases: Sequence[Term]) -> Term:
    """ifz index c0 (ifz (pred index) c1 (... c_last))."""
    out = cases[-1]
    for i in range(len(cases) - 2, -1, -1):
        probe = index
        for _ in range(i):
            probe = Pred(probe)
        out = Ifz(probe, cases[i], out)
    return out


@dataclass(frozen=True)
class CompiledMachine:
    programs: dict
    inputs: tuple
    outputs: tuple
    states: tuple

    def encode_input(self, a) -> int:
        return self.inputs.index(a)

    def decode_output(self, b: int):
        """Literal back to output symbol; the extra code len(outputs) means no output."""
        return None if b == len(self.outputs) else self.outputs[b]

    def __getitem__(self, state) -> Term:
        return self.programs[state]


def compile_mealy(m) -> CompiledMachine:
    """Programs rho(x), one per state, whose steps replay the machine from x.

    States, inputs and outputs are coded by their position; a deleted output
    is the literal len(outputs).  The program is P = fix(\\self. \\x. \\a. ...)
    where the body selects on x, then on a, and returns (output, self x').
    """
    states = tuple(m.states)
    inputs = tuple(m.inputs)
    outputs = tuple(m.outputs)
    if not states or not inputs:
        raise InputError("machine needs states and inputs")
    s_code = {x: i for i, x in enumerate(states)}
    o_code = {b: i for i, b in enumerate(outputs)}
    bottom = len(outputs)
    # inside \self. \x. \a.: a = Var 0, x = Var 1, self = Var 2
    per_state = []
    for x in states:
        per_input = []
        for a in inputs:
            out, nxt = m.trans[(a, x)]
            code = bottom if out is None else o_code[out]
            per_input.append(Pair(Lit(code), App(Var(2), Lit(s_code[nxt]))))
        per_state.append(_select(Var(0), per_input))
    body = Lam(Lam(Lam(_select(Var(1), per_state))))
    P = fix(body)
    return CompiledMachine({x: App(P, Lit(s_code[x])) for x in states}, inputs, outputs, states)


def run_compiled(cm: CompiledMachine, state, word: Sequence, fuel: int = DEFAULT_FUEL):
    """Outputs of the compiled program from ``state`` on ``word`` (None for deletions)."""
    outs = run_process(cm[state], [cm.encode_input(a) for a in word], fuel)
    if outs is OUT_OF_FUEL:
        return OUT_OF_FUEL
    return [cm.decode_output(b) for b in outs]


# --------------------------------------------------------------------------
# S-expression syntax

_ARITY = {"lam": 1, "app": 2, "succ": 1, "pred": 1, "ifz": 3, "pair": 2, "fst": 1, "snd": 1}
_BUILD = {"lam": Lam, "app": App, "succ": Succ, "pred": Pred, "ifz": Ifz, "pair": Pair,
          "fst": Fst, "snd": Snd}


def parse_term(text: str) -> Term:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def item() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of program text")
        tok = tokens[pos]
        if tok != "(":
            raise InputError(f"expected '(' but found {tok!r}")
        pos += 1
        if pos >= len(tokens):
            raise InputError("unexpected end of program text")
        head = tokens[pos]
        pos += 1
        if head in ("var", "lit"):
            if pos >= len(tokens) or not tokens[pos].isdigit():
                raise InputError(f"({head} ...) needs a natural number")
            n = int(tokens[pos])
            pos += 1
            node = Var(n) if head == "var" else Lit(n)
        elif head in _ARITY:
            node = _BUILD[head](*(item() for _ in range(_ARITY[head])))
        else:
            raise InputError(f"unknown form {head!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise InputError(f"expected ')' after ({head} ...)")
        pos += 1
        return node

    t = item()
    if pos != len(tokens):
        raise InputError("trailing text after the program")
    return t


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"(var {t.index})"
    if isinstance(t, Lit):
        return f"(lit {t.value})"
    name = type(t).__name__.lower()
    kids = {Lam: lambda u: (u.body,), App: lambda u: (u.fn, u.arg),
            Pair: lambda u: (u.first, u.second), Ifz: lambda u: (u.cond, u.zero, u.nonzero)}
    parts = kids.get(type(t), lambda u: (u.arg,))(t)
    return f"({name} " + " ".join(format_term(p) for p in parts) + ")"


def format_result(r: EvalResult) -> str:
    if r is OUT_OF_FUEL:
        return "out-of-fuel"
    t = r.term
    return str(t.value) if isinstance(t, Lit) else format_term(t)
