"""Replay the mini-shell sessions: uk on cat2 and self, and the self_plus run."""
from fixpoint.shell import shell_run
from fixpoint.shell_theorems import (demo_self_plus, new_workspace, uk_apply, ur_apply,
                                     verify_uniform_fix, verify_uniform_rogers)

ws = new_workspace()
print("$ cat uk")
print(ws.read("uk"), end="")

print("\n$ uk cat2; cat kcat2")
uk_apply(ws, "cat2")
print(ws.read("kcat2"), end="")
print("$ kcat2 id")
print(shell_run(ws, "kcat2", ["id"]).stdout, end="")

print("\n$ uk self; kself")
uk_apply(ws, "self")
out = shell_run(ws, "kself").stdout
print(out, end="")
print("# same bytes as the file:", out == ws.read("kself"))

print("\n$ uk self_plus; kself_plus")
print(demo_self_plus(new_workspace()), end="")

# ur: a maker that prints a one-line script
ws = new_workspace()
ws.write("mk", "echo echo made by $1\n")
krx = ur_apply(ws, "mk")
print(f"\n$ ur mk; {krx} z")
print(shell_run(ws.copy(), krx, ["z"]).stdout, end="")

print("\nuk check on cat2:", verify_uniform_fix(ws, "cat2").summary())
print("ur check on mk:  ", verify_uniform_rogers(ws, "mk").summary())
