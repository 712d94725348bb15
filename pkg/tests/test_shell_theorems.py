import random

import pytest

from fixpoint.evidence import AllAgree
from fixpoint.generate import random_shell_maker, random_shell_script
from fixpoint.shell import ShellWorkspace, shell_run
from fixpoint.shell_theorems import (GOLDEN, PRELUDE, demo, demo_self_plus, install_prelude,
                                     new_workspace, uk_apply, ur_apply,
                                     verify_uniform_fix, verify_uniform_rogers)


@pytest.fixture
def ws():
    return new_workspace()


def test_prelude_uk_listing(ws):
    assert ws.files["uk"].content == 'echo "set k$1 \\$1;$(cat $1)">k$1\nchmod 755 k$1\n'
    assert all(f.executable for f in ws.files.values())


def test_prelude_ur_listing(ws):
    first, second = ws.files["ur"].content.splitlines()
    assert first == 'echo "$1 \\$1 > ${1}_;chmod 755 ${1}_; ${1}_ \\$2"  > r$1'
    assert "> r$1" in first
    assert second == "uk r$1"


def test_install_is_idempotent():
    once = install_prelude(ShellWorkspace())
    twice = install_prelude(install_prelude(ShellWorkspace()))
    assert once == twice


def test_install_overwrites(ws):
    ws.write("id", "echo changed\n", executable=False)
    install_prelude(ws)
    assert ws.files["id"].content == PRELUDE["id"] and ws.files["id"].executable


def test_uk_cat2(ws):
    assert uk_apply(ws, "cat2") == "kcat2"
    assert ws.files["kcat2"].content == "set kcat2 $1;cat $1 $2\n"
    assert ws.files["kcat2"].executable
    assert shell_run(ws, "kcat2", ["id"]).stdout == "set kcat2 $1;cat $1 $2\necho $1\n"


def test_uk_self_is_quine(ws):
    uk_apply(ws, "self")
    assert ws.files["kself"].content == "set kself $1;cat $1\n"
    assert shell_run(ws, "kself").stdout == ws.files["kself"].content


def test_uk_missing_script(ws):
    from fixpoint.shell import FileNotFound
    with pytest.raises(FileNotFound):
        uk_apply(ws, "nosuch")


def test_self_plus(ws):
    out = demo_self_plus(ws)
    lines = out.splitlines()
    assert "cat $1;((  a = 9**9 ));echo $a" in lines[0]
    assert lines[-1] == "387420489"


@pytest.mark.parametrize("which", sorted(GOLDEN))
def test_demos_match_golden(which):
    assert demo(ShellWorkspace(), which) == GOLDEN[which]


def test_ur_script_shapes(ws):
    ws.write("mk", "echo echo $1\n")
    assert ur_apply(ws, "mk") == "krmk"
    assert ws.files["rmk"].content == "mk $1 > mk_;chmod 755 mk_; mk_ $2\n"
    assert ws.files["krmk"].content == "set krmk $1;mk $1 > mk_;chmod 755 mk_; mk_ $2\n"
    assert ws.files["krmk"].executable


def test_ur_constant_maker(ws):
    ws.write("hm", "echo echo hi!\n")
    krx = ur_apply(ws, "hm")
    assert shell_run(ws, krx, ["z"]).stdout == "hi!\n"
    assert verify_uniform_rogers(ws, "hm").verdict == AllAgree()


def test_ur_echo_maker_two_paths(ws):
    ws.write("mk", "echo echo $1\n")
    krx = ur_apply(ws, "mk")
    made = shell_run(ws.copy(), "mk", [krx]).stdout
    assert made == "echo krmk\n"
    side = ws.copy()
    side.write("mk_", made)
    assert shell_run(ws.copy(), krx, ["z"]).stdout == shell_run(side, "mk_", ["z"]).stdout
    assert verify_uniform_rogers(ws, "mk").all_agree


def test_ur_maker_using_argument_of_made_script(ws):
    ws.write("mk", "echo echo \\$1 $1\n")
    report = verify_uniform_rogers(ws, "mk", ["id", "q"])
    assert report.all_agree
    assert report.samples[1].left.value == b"q krmk\n"


@pytest.mark.parametrize("x, z", [("cat2", "id"), ("self", "")])
def test_verify_uniform_fix_examples(ws, x, z):
    assert verify_uniform_fix(ws, x, [z]).verdict == AllAgree()


def test_verify_uniform_fix_ignoring_script(ws):
    ws.write("const", "echo constant\n")
    assert verify_uniform_fix(ws, "const").all_agree


def test_verify_uniform_fix_missing_x(ws):
    assert not verify_uniform_fix(ws, "nosuch", ["id"]).all_agree


def test_uniform_kleene_random_corpus():
    rng = random.Random(31)
    for i in range(15):
        ws = new_workspace()
        name = f"g{i}"
        ws.write(name, random_shell_script(rng))
        report = verify_uniform_fix(ws, name)
        assert report.all_agree, (ws.files[name].content, report.samples)


def test_uniform_rogers_random_makers():
    rng = random.Random(32)
    for i in range(8):
        ws = new_workspace()
        name = f"m{i}"
        ws.write(name, random_shell_maker(rng))
        report = verify_uniform_rogers(ws, name)
        assert report.all_agree, (ws.files[name].content, report.samples)
