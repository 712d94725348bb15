"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines.
Every check runs at full size with the default fuel of 10**5.
"""
import random
import time

import pytest

from fixpoint.evidence import AllAgree
from fixpoint.forge import (DS_SRC, ID_SRC, default_samples, ds_transform, kleene_fix,
                            quine, rice_witness, rogers_fix)
from fixpoint.generate import (random_binary_program, random_bytes, random_script_maker,
                               random_shell_maker, random_shell_script, random_syntax_program)
from fixpoint.interp import FuelExhausted, Halted, run
from fixpoint.lang import escape, parse, serialize, unescape
from fixpoint.shell import ShellWorkspace, shell_run
from fixpoint.shell_theorems import (demo, demo_self_plus, new_workspace, uk_apply,
                                     verify_uniform_fix, verify_uniform_rogers)

FUEL = 100_000
SAMPLES = [b"", b"0", b"xy"]


def agree(left, right):
    if isinstance(left, Halted) and isinstance(right, Halted):
        return left.value == right.value
    return isinstance(left, FuelExhausted) and isinstance(right, FuelExhausted)


def report(number, title, check):
    start = time.perf_counter()
    try:
        detail = check()
    except AssertionError as e:
        print(f"\n[FAIL] {number:>2}. {title}: {e}")
        raise
    print(f"\n[PASS] {number:>2}. {title} ({detail}; {time.perf_counter() - start:.2f}s)")


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(2024)
    return [random_binary_program(rng) for _ in range(100)]


def test_01_quine():
    def check():
        q = quine()
        zs = default_samples(q)
        for z in zs:
            assert run(q, z, b"", FUEL) == Halted(q), f"z={z!r}"
        return f"{len(zs)} samples, {len(q)} bytes"
    report(1, "quine byte-exactness", check)


def test_02_diagonal(corpus):
    def check():
        n = 0
        for x in corpus:
            u = ds_transform(x)
            for z in SAMPLES:
                assert agree(run(u, z, b"", FUEL), run(x, x, z, FUEL)), f"x={x!r} z={z!r}"
                n += 1
        return f"{n}/{n} agree"
    report(2, "diagonal substitution", check)


def test_03_kleene(corpus):
    def check():
        n = 0
        for x in corpus:
            u = kleene_fix(x)
            for z in SAMPLES:
                assert agree(run(u, z, b"", FUEL), run(x, u, z, FUEL)), f"x={x!r} z={z!r}"
                n += 1
        return f"{n}/{n} agree"
    report(3, "Kleene fixed point", check)


def test_04_rogers():
    def check():
        rng = random.Random(4)
        n = 0
        for _ in range(50):
            x = random_script_maker(rng)
            v = rogers_fix(x, fuel=FUEL)
            made = run(x, v, b"", FUEL)
            assert isinstance(made, Halted), f"maker did not halt: {x!r}"
            parse(made.value)
            for z in SAMPLES:
                assert agree(run(made.value, z, b"", FUEL), run(v, z, b"", FUEL)), f"x={x!r} z={z!r}"
                n += 1
        return f"50 makers, {n}/{n} agree"
    report(4, "Rogers fixed point", check)


def test_05_rice():
    def check():
        t = b't_(){strcpy(c,"t");}'
        zs = [b"", b"0", b"1", b"ab"]
        zero = rice_witness(b'd_(){strcpy(c,"0");}', ID_SRC, t, zs, FUEL)
        one = rice_witness(b'd_(){strcpy(c,"1");}', ID_SRC, t, zs, FUEL)
        assert zero.contradiction and zero.verdict == b"0" and zero.evidence.all_agree
        assert one.contradiction and one.verdict == b"1" and one.evidence.all_agree
        named = b'd_(){strcatfn(c,a);ifeq(c,"s_"){strcpy(c,"0");}else{strcpy(c,"1");}}'
        third = rice_witness(named, ID_SRC, t, zs, FUEL)
        assert third.verdict in (b"0", b"1")
        assert len(third.evidence.samples) == len(zs)
        assert not any(s.exhausted for s in third.evidence.samples)
        return f"third decider: {third.summary()}"
    report(5, "Rice harness", check)


def test_06_meta_object(corpus):
    def check():
        for x in corpus:
            assert run(DS_SRC, x, b"", FUEL) == Halted(ds_transform(x)), f"x={x!r}"
        return "100/100 byte-equal"
    report(6, "DS_SRC agrees with ds_transform", check)


def test_07_kcat2():
    def check():
        ws = new_workspace()
        uk_apply(ws, "cat2")
        assert ws.files["kcat2"].content == "set kcat2 $1;cat $1 $2\n"
        out = shell_run(ws, "kcat2", ["id"]).stdout
        assert out == "set kcat2 $1;cat $1 $2\necho $1\n", repr(out)
        assert demo(ShellWorkspace(), "kcat2") == out
        return "golden match"
    report(7, "shell transcript kcat2", check)


def test_08_kself():
    def check():
        ws = new_workspace()
        uk_apply(ws, "self")
        out = shell_run(ws, "kself").stdout
        assert out == ws.files["kself"].content == "set kself $1;cat $1\n", repr(out)
        return "stdout equals file"
    report(8, "shell quine kself", check)


def test_09_self_plus():
    def check():
        out = demo_self_plus(new_workspace())
        last = out.splitlines()[-1]
        power = 1
        for _ in range(9):
            power *= 9
        assert last == str(power) == "387420489", repr(last)
        return f"last line {last}"
    report(9, "self_plus", check)


def test_10_uniform():
    def check():
        rng = random.Random(10)
        for i in range(30):
            ws = new_workspace()
            name = f"g{i}"
            ws.write(name, random_shell_script(rng))
            r = verify_uniform_fix(ws, name, fuel=FUEL)
            assert r.verdict == AllAgree(), f"{ws.files[name].content!r}: {r.summary()}"
        for i in range(10):
            ws = new_workspace()
            name = f"m{i}"
            ws.write(name, random_shell_maker(rng))
            r = verify_uniform_rogers(ws, name, fuel=FUEL)
            assert r.verdict == AllAgree(), f"{ws.files[name].content!r}: {r.summary()}"
        return "30 scripts uk, 10 makers ur"
    report(10, "uniform shell theorems", check)


def test_11_infrastructure():
    def check():
        rng = random.Random(11)
        for _ in range(1000):
            p = random_syntax_program(rng)
            assert parse(serialize(p)) == p, serialize(p)
            s = random_bytes(rng, 20, bytes(range(256)))
            assert unescape(escape(s)) == s, s
        halted = 0
        for _ in range(100):
            p = random_binary_program(rng, p_loop=0.2)
            a = random_bytes(rng, 4, b"01ab")
            f1 = rng.randint(0, 60)
            f2 = f1 + rng.randint(0, 400)
            small, large = run(p, a, b"0", f1), run(p, a, b"0", f2)
            if isinstance(small, Halted):
                assert large == small, p
                halted += 1
            if isinstance(large, FuelExhausted):
                assert isinstance(small, FuelExhausted), p
        return f"1000 round trips x2, 100 fuel pairs ({halted} halted at the lower budget)"
    report(11, "infrastructure properties", check)
