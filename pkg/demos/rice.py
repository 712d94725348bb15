"""Feed candidate deciders to the Rice flipper and watch each one be wrong."""
from fixpoint.forge import ID_SRC, rice_witness

# s is in the class (the identity), t is not (a constant function).
S = ID_SRC
T = b't_(){strcpy(c,"t");}'

deciders = {
    "always 0": b'd_(){strcpy(c,"0");}',
    "always 1": b'd_(){strcpy(c,"1");}',
    "name is s_": b'd_(){strcatfn(c,a);ifeq(c,"s_"){strcpy(c,"0");}else{strcpy(c,"1");}}',
}

for label, d in deciders.items():
    r = rice_witness(d, S, T, [b"", b"0", b"ab"])
    print(f"{label:>12}: {r.summary()}")
    for s in r.evidence.samples:
        print(f"{'':>14}z={s.z!r}: witness {s.left.value!r}, {r.matched} {s.right.value!r}")
