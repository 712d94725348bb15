"""Build the kernel quine and show that running it prints its own text."""
from fixpoint import quine, run
from fixpoint.forge import S1_SRC, ds_transform

# s1 copies its first argument to the output and ignores the second.
print("s1:", S1_SRC.decode())

# Diagonalizing s1 already gives a program that prints s1 on any input.
print("ds(s1) on 'zzz' ->", run(ds_transform(S1_SRC), b"zzz").value.decode())

q = quine()
print(f"\nquine ({len(q)} bytes):")
print(q.decode())

for z in (b"", b"hello", q):
    out = run(q, z)
    print(f"run(q, {z[:10]!r}) == q: {out.value == q}  ({out.steps} steps)")
