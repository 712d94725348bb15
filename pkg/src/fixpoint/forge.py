"""Diagonalization, fixed points and the Rice refutation, as source transformers.

Every transformer takes and returns canonical kernel program text.  The
verifiers run both sides of a theorem's equation on a set of sample inputs
and return an :class:`~fixpoint.evidence.EvidenceReport`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .evidence import AllAgree, EvidenceReport, Sample
from .interp import (DEFAULT_FUEL, Fault, FuelExhausted, Halted,
                     check_b_preserving, run)
from .lang import ParseError, _b, canonical, escape, fn_name, parse

# The object-level diagonalizer.  It reads only register a and writes only c,
# so a caller's b survives a call to ds_.
DS_SRC = (
    b'ds_(){strcpy(c,"s_(){strcpy(b,a);strcpy(a,\\"");strcatq(c,a);'
    b'strcat(c,"\\");");strcatfn(c,a);strcat(c,"();}");strcat(c,a);}'
)
ID_SRC = b"id_(){strcpy(c,a);}"
S1_SRC = b"s1_(){strcpy(c,a);strcpy(b,a);}"

RESERVED = frozenset({"s_", "x0_", "w_", "y_", "ds_"})

DEFAULT_SAMPLES = (b"", b"0", b"1", b"ab")


class NameCollision(ValueError):
    pass


class BConventionViolation(ValueError):
    pass


class DeciderNotBinaryOutput(ValueError):
    pass


class FuelExhaustedError(RuntimeError):
    pass


def default_samples(text: Optional[bytes] = None) -> list[bytes]:
    """``"", "0", "1", "ab"`` plus, if given, the program's own text."""
    out = list(DEFAULT_SAMPLES)
    if text is not None:
        out.append(_b(text))
    return out


def _prepare(x, forbidden) -> bytes:
    x = canonical(x)
    clash = set(parse(x).names) & set(forbidden)
    if clash:
        raise NameCollision(f"program defines reserved name(s) {sorted(clash)}")
    return x


def ds_transform(x) -> bytes:
    """Diagonal substitution: ``u`` with ``phi_u(y) == phi_x(x, y)``.

    ``u`` is an entry ``s_`` that moves its input to ``b``, loads ``a`` with
    the text of ``x`` and calls ``x``'s entry; ``x`` itself follows.
    """
    x = _prepare(x, {"s_"})
    return (b's_(){strcpy(b,a);strcpy(a,"' + escape(x) + b'");'
            + fn_name(x).encode() + b"();}" + x)


def kleene_fix(x) -> bytes:
    """Fixed point ``u`` of a binary ``x``: ``phi_u(z) == phi_x(u, z)``."""
    x = _prepare(x, {"s_", "x0_", "ds_"})
    # c must be empty again when x starts, as it is for a direct run
    x0 = (b"x0_(){ds_();strcpy(a,c);strcpy(c,\"\");" + fn_name(x).encode() + b"();}"
          + DS_SRC + x)
    return ds_transform(x0)


def quine() -> bytes:
    return kleene_fix(S1_SRC)


def _b_probe_pairs(samples):
    return [(z, b) for z in samples for b in (b"", b"b-probe")]


def rogers_fix(x, samples: Optional[Sequence[bytes]] = None,
               fuel: int = DEFAULT_FUEL) -> bytes:
    """Functional fixed point ``v`` of a unary script-maker ``x``.

    The result satisfies ``phi_{phi_x(v)} == phi_v`` wherever ``phi_x(v)``
    halts with a parsable program.  ``x`` must leave register ``b`` alone;
    this is checked on ``samples`` (and on ``v`` itself) and a violation
    raises :class:`BConventionViolation`.
    """
    x = _prepare(x, {"w_", "s_", "x0_", "ds_"})
    if samples is None:
        samples = default_samples(x)
    _require_b_preserving(x, _b_probe_pairs(samples), fuel)
    w = b"w_(){" + fn_name(x).encode() + b"();strcpy(a,c);eval();}" + x
    v = kleene_fix(w)
    _require_b_preserving(x, _b_probe_pairs([v]), fuel)
    return v


def _require_b_preserving(x, pairs, fuel):
    check = check_b_preserving(x, pairs, fuel)
    if not check.ok:
        raise BConventionViolation(
            f"register b changed from {check.before!r} to {check.after!r} "
            f"on input a={check.sample[0]!r}")


# -- verifiers ----------------------------------------------------------------

def compare(pairs: Iterable[tuple]) -> EvidenceReport:
    """Build a report from ``(z, left_outcome, right_outcome)`` triples."""
    return EvidenceReport.from_samples(Sample(z, l, r) for z, l, r in pairs)


def _safe_run(p, a, b, fuel):
    try:
        return run(p, a, b, fuel)
    except ParseError as e:
        return Fault("ParseError", str(e))


def verify_ext_equal(p, q, samples: Iterable[bytes], fuel: int = DEFAULT_FUEL) -> EvidenceReport:
    """Check ``phi_p(z) == phi_q(z)`` on each sample (``b`` starts empty)."""
    return compare((z, _safe_run(p, z, b"", fuel), _safe_run(q, z, b"", fuel))
                   for z in map(_b, samples))


def verify_ds(x, samples=None, fuel: int = DEFAULT_FUEL) -> EvidenceReport:
    """``run(ds_transform(x), z)`` against ``run(x, x, z)``."""
    x = canonical(x)
    u = ds_transform(x)
    samples = default_samples(x) if samples is None else samples
    return compare((z, run(u, z, b"", fuel), run(x, x, z, fuel)) for z in map(_b, samples))


def verify_kleene(x, samples=None, fuel: int = DEFAULT_FUEL, u=None) -> EvidenceReport:
    """``run(u, z)`` against ``run(x, u, z)`` for ``u = kleene_fix(x)``."""
    x = canonical(x)
    u = kleene_fix(x) if u is None else u
    samples = default_samples(x) if samples is None else samples
    return compare((z, run(u, z, b"", fuel), run(x, u, z, fuel)) for z in map(_b, samples))


def verify_rogers(x, samples=None, fuel: int = DEFAULT_FUEL, v=None) -> EvidenceReport:
    """``run(v, z)`` against ``run(p, z)`` where ``p = phi_x(v)``.

    If ``phi_x(v)`` does not halt with a parsable program every sample is
    recorded with that fault (or exhaustion) on the right-hand side.
    """
    x = canonical(x)
    samples = default_samples(x) if samples is None else samples
    v = rogers_fix(x, samples, fuel) if v is None else v
    made = run(x, v, b"", fuel)
    rows = []
    for z in map(_b, samples):
        left = run(v, z, b"", fuel)
        if isinstance(made, Halted):
            right = _safe_run(made.value, z, b"", fuel)
        else:
            right = made
        rows.append((z, left, right))
    return compare(rows)


# -- Rice -----------------------------------------------------------------------

@dataclass(frozen=True)
class RiceReport:
    witness: bytes
    verdict: bytes
    matched: str  # "s" or "t": the program phi_witness was compared against
    evidence: EvidenceReport
    contradiction: bool

    def summary(self) -> str:
        return (f"verdict={self.verdict.decode(errors='replace')} matched={self.matched} "
                f"contradiction={str(self.contradiction).lower()} "
                f"evidence={type(self.evidence.verdict).__name__}")


def rice_flipper(decider, s, t) -> bytes:
    """The program answering ``t`` where ``decider`` says 0 and ``s`` otherwise."""
    decider = _prepare(decider, RESERVED)
    return (b"y_(){" + fn_name(decider).encode()
            + b'();ifeq(c,"0"){strcpy(c,"' + escape(canonical(t))
            + b'");}else{strcpy(c,"' + escape(canonical(s)) + b'");}}' + decider)


def rice_witness(decider, s, t, samples: Optional[Sequence[bytes]] = None,
                 fuel: int = DEFAULT_FUEL) -> RiceReport:
    """Run the constructive half of Rice's theorem against a claimed decider.

    ``decider`` is supposed to answer ``"0"`` on texts of programs in some
    class containing ``phi_s`` and ``"1"`` on those outside it, which
    contains ``phi_t``.  The witness ``u`` is the functional fixed point of
    the program that flips the decider's answer into ``t`` or ``s``; the
    report records which one ``phi_u`` matches on ``samples``.
    """
    decider = canonical(decider)
    samples = default_samples(decider) if samples is None else [_b(z) for z in samples]
    y = rice_flipper(decider, s, t)
    u = rogers_fix(y, samples, fuel)
    out = run(decider, u, b"", fuel)
    if isinstance(out, FuelExhausted):
        raise FuelExhaustedError("decider ran out of fuel on the witness")
    if isinstance(out, Fault):
        raise DeciderNotBinaryOutput(f"decider faulted on the witness: {out.kind}")
    if out.value not in (b"0", b"1"):
        raise DeciderNotBinaryOutput(f"decider answered {out.value!r}")
    matched = "t" if out.value == b"0" else "s"
    target = canonical(t) if matched == "t" else canonical(s)
    evidence = verify_ext_equal(u, target, samples, fuel)
    return RiceReport(u, out.value, matched, evidence,
                      isinstance(evidence.verdict, AllAgree))
