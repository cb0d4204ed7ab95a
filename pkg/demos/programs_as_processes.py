"""A tiny programmable computer: evaluation, specialization, fixpoints, compiled machines.

Run with ``python demos/programs_as_processes.py``.
"""
from coinduct.catcomp import (ADD, FACTORIAL_T, IDENTITY, OMEGA, TRANSFORMERS, App, Lam, Lit, Pair,
                              Var, apps, compile_mealy, eval, eval_steps, fix, format_result,
                              run_compiled, run_process, specialize)
from coinduct.proc import parity_machine

print("2 + 3 =", format_result(eval(apps(ADD, Lit(2), Lit(3)))))
print("omega:", format_result(eval(OMEGA, 1000)))

# Specializing fixes the first argument; the residual is a program in its own right.
add2 = specialize(ADD, Lit(2))
print("(add 2) 5 =", format_result(eval(App(add2, Lit(5)))))

# fix(t) behaves like t applied to it: a program that knows its own text.
for name, (t, host) in TRANSFORMERS.items():
    e = fix(t)
    outs = [format_result(eval(App(e, Lit(n)))) for n in range(6)]
    print(f"{name:10s}", outs, "expected", [host(n) for n in range(6)])
r, used = eval_steps(App(fix(FACTORIAL_T), Lit(5)))
print("5! =", format_result(r), "using", used, "steps")
print("fix(identity):", format_result(eval(fix(IDENTITY), 10_000)))

# A program can also be run as a process: each step returns an output and the next program.
echo = fix(Lam(Lam(Pair(Var(0), Var(1)))))
print("echo process on 4 1 7:", run_process(echo, [4, 1, 7]))

# Any finite machine compiles to such a program.
m = parity_machine()
cm = compile_mealy(m)
word = [1, 0, 1, 1, 0]
print("compiled parity on", word, "->", run_compiled(cm, m.init, word), "machine:", m.run(word)[0])
