"""Random kernel programs and shell scripts for property checks.

All generators take a ``random.Random`` so corpora are reproducible from a
seed.
"""
from __future__ import annotations

import random

from .forge import RESERVED
from .lang import (Call, Cat, CatEsc, CatFn, Copy, Eval, FunctionDef, IfEq,
                   KernelProgram, Literal, escape, serialize)

_ALPHABET = b'ab01"\\(){};_ xs\n'


def random_bytes(rng: random.Random, max_len: int = 12, alphabet: bytes = None) -> bytes:
    n = rng.randint(0, max_len)
    if alphabet is None:
        return bytes(rng.randrange(256) for _ in range(n))
    return bytes(rng.choice(alphabet) for _ in range(n))


def _literal(rng) -> Literal:
    if rng.random() < 0.3:
        return Literal(random_bytes(rng, 6))
    return Literal(random_bytes(rng, 8, _ALPHABET))


def _names(rng, n) -> list[str]:
    names = []
    while len(names) < n:
        stem = rng.choice("fghkmpqrtuv") + "".join(
            rng.choice("abc0123456789") for _ in range(rng.randint(0, 2)))
        name = stem + "_"
        if name not in RESERVED and name not in names:
            names.append(name)
    return names


# -- syntax-only programs (round trips) --------------------------------------

def random_syntax_program(rng: random.Random, max_defs: int = 3, depth: int = 2) -> KernelProgram:
    """Any well-formed program: calls may name missing functions."""
    names = _names(rng, rng.randint(1, max_defs))
    pool = names + ["zz_", "eval0_"]

    def stmt(d):
        k = rng.randrange(7 if d > 0 else 6)
        r = lambda: rng.choice("abc")
        src = lambda: _literal(rng) if rng.random() < 0.5 else r()
        if k == 0:
            return Copy(r(), src())
        if k == 1:
            return Cat(r(), src())
        if k == 2:
            return CatEsc(r(), r())
        if k == 3:
            return CatFn(r(), r())
        if k == 4:
            return Call(rng.choice(pool))
        if k == 5:
            return Eval()
        return IfEq(r(), _literal(rng), body(d - 1), body(d - 1))

    def body(d):
        return tuple(stmt(d) for _ in range(rng.randint(0, 4)))

    return KernelProgram(tuple(FunctionDef(n, body(depth)) for n in names))


# -- runnable programs --------------------------------------------------------

def random_unary_program(rng: random.Random, max_defs: int = 2) -> bytes:
    """A halting program that never reads nor writes register b."""
    names = _names(rng, rng.randint(1, max_defs))
    defs = []
    for i, name in enumerate(names):
        later = names[i + 1:]
        defs.append(FunctionDef(name, _body(rng, later, regs="ac", depth=1)))
    return serialize(KernelProgram(tuple(defs)))


def _body(rng, callees, regs, depth, evals=False):
    out = []
    for _ in range(rng.randint(1, 4)):
        k = rng.randrange(8)
        r = lambda: rng.choice(regs)
        src = lambda: _literal(rng) if rng.random() < 0.4 else r()
        if k in (0, 1):
            out.append(Copy(r(), src()))
        elif k in (2, 3):
            out.append(Cat(r(), src()))
        elif k == 4:
            out.append(CatEsc(r(), r()))
        elif k == 5:
            out.append(CatFn(r(), r()))
        elif k == 6 and callees:
            out.append(Call(rng.choice(callees)))
        elif k == 7 and depth > 0:
            lit = rng.choice([Literal(b""), Literal(b"0"), _literal(rng)])
            out.append(IfEq(r(), lit, _body(rng, callees, regs, depth - 1),
                            _body(rng, callees, regs, depth - 1)))
    if evals and rng.random() < 0.25:
        # apply a known-good program to whatever b holds now
        out.append(Copy("a", Literal(random_unary_program(rng, 1))))
        out.append(Eval())
    return tuple(out)


def random_binary_program(rng: random.Random, max_defs: int = 3,
                          p_loop: float = 0.04) -> bytes:
    """A program over a, b, c whose calls form a DAG, so it halts.

    With probability ``p_loop`` one definition instead recurses forever when
    register b holds ``"0"``, to exercise the divergent side of equations.
    """
    names = _names(rng, rng.randint(1, max_defs))
    defs = []
    for i, name in enumerate(names):
        body = _body(rng, names[i + 1:], regs="abc", depth=1, evals=True)
        defs.append(FunctionDef(name, body))
    if rng.random() < p_loop:
        head = defs[0]
        spin = IfEq("b", Literal(b"0"), (Call(head.name),), ())
        defs[0] = FunctionDef(head.name, (spin,) + head.body)
    return serialize(KernelProgram(tuple(defs)))


def random_script_maker(rng: random.Random) -> bytes:
    """A unary, b-preserving program that prints a program for every input.

    The printed program may ignore the input, quote it, or quote its entry
    name, so some fixed points come out as quines.
    """
    name = _names(rng, 1)[0]
    inner = rng.choice(["q_", "r7_", "emit_"])

    def shape():
        k = rng.randrange(4)
        if k == 0:  # constant program
            return (Copy("c", Literal(random_unary_program(rng))),)
        if k == 1:  # program returning the maker's input
            head = inner.encode() + b'(){strcpy(c,"'
            return (Copy("c", Literal(head)), CatEsc("c", "a"),
                    Cat("c", Literal(b'");}')))
        if k == 2:  # program returning entry-name-of-input followed by its own input
            head = inner.encode() + b'(){strcpy(c,"'
            return (Copy("c", Literal(head)), CatFn("c", "a"),
                    Cat("c", Literal(b'");strcat(c,a);}')))
        # random unary body, then append the quoted input
        body = random_unary_program(rng, 1)
        cut = body.index(b"{") + 1
        head = inner.encode() + b"(){" + body[cut:-1] + b'strcat(c,"'
        return (Copy("c", Literal(head)), CatEsc("c", "a"),
                Cat("c", Literal(b'");}')))

    noise = tuple(rng.choice([Cat("c", "a"), Copy("c", _literal(rng)), CatFn("c", "a")])
                  for _ in range(rng.randint(0, 2)))
    if rng.random() < 0.3:
        body = noise + (IfEq("a", _literal(rng), shape(), shape()),)
    else:
        body = noise + shape()
    if rng.random() < 0.3:
        body = body + (Copy("a", _literal(rng)),)
    return serialize(KernelProgram((FunctionDef(name, body),)))


# -- shell scripts ------------------------------------------------------------

_ECHO_WORDS = ["hi!", "$1", "$2", "k$1", '"$2 and $1"', "x", '"$(cat $1)"', "$(echo $2)"]


def random_shell_script(rng: random.Random) -> str:
    """A small script over the subset; assumes ``$2`` names a file or is empty."""
    lines = []
    for _ in range(rng.randint(1, 4)):
        k = rng.randrange(7)
        if k == 0:
            words = [rng.choice(_ECHO_WORDS) for _ in range(rng.randint(0, 3))]
            lines.append(" ".join(["echo"] + words))
        elif k == 1:
            lines.append("cat $1")
        elif k == 2:
            lines.append(rng.choice(["cat $2", "cat $1 $2", "id $2", "cat2 $2 $1"]))
        elif k == 3:
            n, m = rng.randint(0, 9), rng.randint(0, 4)
            op = rng.choice(["+", "-", "*", "**"])
            lines.append(f"(( v = {n} {op} {m} ))")
            lines.append("echo $v")
        elif k == 4:
            lines.append("echo $2 $1 > scratch")
            lines.append("cat scratch")
        elif k == 5:
            lines.append("set $2 $1 tail")
        else:
            lines.append("echo $3")
    sep = "\n" if rng.random() < 0.5 else ";"
    return sep.join(lines) + "\n"


def random_shell_maker(rng: random.Random) -> str:
    """A script that prints a runnable script, whatever its argument."""
    lines = []
    for _ in range(rng.randint(1, 2)):
        emitted = rng.choice([
            ["echo", "hi!"],
            ["echo", "$1"],
            ["echo", "\\$1"],
            ["echo", "\\$1", "$1"],
            ["cat", "\\$1"],
            ["id", "\\$1"],
            ["echo", "made", "by", "$1"],
        ])
        lines.append("echo " + " ".join(emitted))
    return "\n".join(lines) + "\n"
