"""Kleene and Rogers fixed points on a handful of small programs."""
from fixpoint import run
from fixpoint.forge import ID_SRC, kleene_fix, rogers_fix, verify_kleene, verify_rogers
from fixpoint.lang import escape

# Binary programs: x(a, b).  u = kleene_fix(x) behaves like x(u, .)
programs = {
    "second projection": b"p_(){strcpy(c,b);}",
    "tag the input": b'r_(){strcpy(c,"<");strcat(c,b);strcat(c,">");}',
    "own name then input": b'n_(){strcatfn(c,a);strcat(c,":");strcat(c,b);}',
    "branch on input": b'f_(){ifeq(b,"0"){strcatfn(c,a);}else{strcpy(c,b);}}',
}

for label, x in programs.items():
    u = kleene_fix(x)
    print(f"{label}: {x.decode()}")
    print(f"  fixed point is {len(u)} bytes, entry {u[:4].decode()}...")
    for z in (b"0", b"xy"):
        print(f"  run(u, {z!r}) = {run(u, z).value!r}")
    print("  " + verify_kleene(x).summary())

# A script-maker returns program text.  v = rogers_fix(x) computes the same
# function as the program x prints when given v.
maker = b'k_(){strcpy(c,"' + escape(ID_SRC) + b'");}'
v = rogers_fix(maker)
print("\nmaker:", maker.decode())
print("the made program:", run(maker, v).value.decode())
print("run(v, 'abc') =", run(v, b"abc").value)
print(verify_rogers(maker).summary())

# With the identity as maker, v must behave like itself under eval: it diverges.
print("\nidentity maker:", verify_rogers(ID_SRC, [b"z"], fuel=2000).summary())
