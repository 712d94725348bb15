import random

import pytest

from fixpoint.forge import DS_SRC, ID_SRC, S1_SRC
from fixpoint.generate import random_binary_program, random_bytes, random_unary_program
from fixpoint.interp import (PARSE_INSIDE_EVAL, UNKNOWN_CALL, Fault, FuelExhausted, Halted,
                             RuntimeFault, check_b_preserving, execute, run)
from fixpoint.lang import ParseError

LOOP = b"loop_(){loop_();}"
UNIV = b"u_(){eval();}"


def test_id():
    assert run(ID_SRC, b"y", b"anything") == Halted(b"y")


def test_s1():
    assert run(S1_SRC, b"y", b"z") == Halted(b"y")


def test_loop_exhausts():
    assert run(LOOP, b"", b"") == FuelExhausted()


def test_pretty_source_accepted():
    assert run("id_(){\n  strcpy (c,a);\n}", "y") == Halted(b"y")


def test_empty_entry_halts_with_empty_c():
    assert run(b"e_(){}", b"a", b"b") == Halted(b"")
    assert run(b"e_(){}", fuel=0) == Halted(b"")


def test_eval_applies_a_to_b():
    assert run(UNIV, ID_SRC, b"w") == Halted(b"w")


def test_eval_leaves_a_and_b():
    prog = b"e_(){eval();strcat(c,a);strcat(c,b);}"
    assert run(prog, ID_SRC, b"w") == Halted(b"w" + ID_SRC + b"w")


def test_eval_inner_program_sees_empty_b():
    show_b = b'k_(){strcpy(c,"[");strcat(c,b);strcat(c,"]");}'
    assert run(UNIV, show_b, b"w") == Halted(b"[]")


def test_calls_share_registers():
    prog = b'm_(){strcpy(b,"x");h_();strcat(c,b);}h_(){strcpy(c,a);strcpy(b,"y");}'
    assert run(prog, b"A") == Halted(b"Ay")


def test_ifeq_branches():
    prog = b'f_(){ifeq(a,"0"){strcpy(c,"zero");}else{strcpy(c,"other");}}'
    assert run(prog, b"0") == Halted(b"zero")
    assert run(prog, b"00") == Halted(b"other")


def test_catesc_and_catfn():
    prog = b"f_(){strcatq(c,a);strcatfn(c,a);}"
    assert run(prog, b'q_("x")') == Halted(b'q_(\\"x\\")q_')
    # no parenthesis: the whole string is the prefix
    assert run(prog, b"ab") == Halted(b"abab")


def test_unknown_call_faults():
    assert run(b"f_(){g_();}") == Fault(UNKNOWN_CALL, "g_")


def test_eval_of_garbage_faults():
    out = run(UNIV, b"not a program", b"")
    assert isinstance(out, Fault) and out.kind == PARSE_INSIDE_EVAL


def test_unknown_call_inside_eval_uses_inner_table():
    # the inner program cannot see the outer program's definitions
    outer = b'o_(){strcpy(a,"i_(){h_();}");eval();}h_(){}'
    assert run(outer) == Fault(UNKNOWN_CALL, "h_")


def test_program_must_parse():
    with pytest.raises(ParseError):
        run(b"garbage")


def test_fuel_counts_statements():
    prog = b'f_(){strcpy(c,"1");strcat(c,"2");strcat(c,"3");}'
    assert run(prog, fuel=3) == Halted(b"123")
    assert run(prog, fuel=2) == FuelExhausted()
    assert run(prog, fuel=3).steps == 3


def test_call_and_eval_cost_fuel():
    assert run(b"f_(){g_();}g_(){}", fuel=1) == Halted(b"")
    assert run(b"f_(){g_();}g_(){}", fuel=0) == FuelExhausted()
    # eval (1) + the inner strcpy (1)
    assert run(UNIV, ID_SRC, b"w", fuel=2) == Halted(b"w")
    assert run(UNIV, ID_SRC, b"w", fuel=1) == FuelExhausted()


def test_nested_eval_shares_fuel():
    self_eval = b"s_(){strcpy(b,a);eval();}"
    # each level: strcpy + eval; the tower never halts and must stop on budget
    assert run(self_eval, self_eval, b"", fuel=1000) == FuelExhausted()


def test_deep_recursion_does_not_hit_python_limit():
    assert run(LOOP, fuel=200_000) == FuelExhausted()


def test_fuel_monotonicity():
    rng = random.Random(11)
    for _ in range(40):
        p = random_binary_program(rng, p_loop=0.2)
        a, b = random_bytes(rng, 4, b"01ab"), rng.choice([b"", b"0", b"1"])
        out = run(p, a, b, fuel=10_000)
        if isinstance(out, Halted):
            for f in (out.steps, out.steps + 1, 50_000):
                assert run(p, a, b, fuel=f) == out
            if out.steps:
                assert run(p, a, b, fuel=out.steps - 1) == FuelExhausted()


def test_determinism():
    rng = random.Random(12)
    for _ in range(30):
        p = random_binary_program(rng)
        assert run(p, b"ab", b"0") == run(p, b"ab", b"0")


def test_universality():
    rng = random.Random(13)
    for _ in range(60):
        p = random_unary_program(rng)
        y = random_bytes(rng, 6)
        direct = run(p, y, b"")
        assert isinstance(direct, Halted)
        assert run(UNIV, p, y) == direct


def test_execute_returns_registers():
    out, regs = execute(S1_SRC, b"y", b"z")
    assert out == Halted(b"y")
    assert (regs.a, regs.b, regs.c) == (b"y", b"y", b"y")


def test_b_check_id_ok():
    samples = [(b"y", b"z"), (b"", b""), (b"q", b"0")]
    assert check_b_preserving(ID_SRC, samples).ok


def test_b_check_s1_violation():
    res = check_b_preserving(S1_SRC, [(b"y", b"y"), (b"y", b"z")])
    assert not res.ok
    assert res.sample == (b"y", b"z")
    assert (res.before, res.after) == (b"z", b"y")


def test_b_check_ds_ok():
    rng = random.Random(14)
    samples = [(random_bytes(rng, 10), random_bytes(rng, 5)) for _ in range(100)]
    assert check_b_preserving(DS_SRC, samples).ok


def test_b_check_skips_exhausted():
    res = check_b_preserving(LOOP, [(b"", b"")], fuel=50)
    assert res.ok and res.skipped == ((b"", b""),)


def test_b_check_propagates_fault():
    with pytest.raises(RuntimeFault):
        check_b_preserving(b"f_(){g_();}", [(b"", b"")])
