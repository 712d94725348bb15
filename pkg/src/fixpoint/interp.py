"""Fuel-bounded evaluator for kernel programs.

``run(x, y, z)`` computes the function x computes on inputs ``a=y, b=z``,
read off register ``c``.  The ``eval();`` statement applies the program held
in register ``a`` to the input held in ``b``, which makes ``run`` the
universal function as well as the interpreter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .lang import (Call, Cat, CatEsc, CatFn, Copy, Eval, IfEq, KernelProgram,
                   Literal, ParseError, _b, escape, parse)

DEFAULT_FUEL = 100_000

UNKNOWN_CALL = "UnknownCall"
PARSE_INSIDE_EVAL = "ParseInsideEval"


@dataclass(frozen=True)
class Halted:
    value: bytes
    steps: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FuelExhausted:
    pass


@dataclass(frozen=True)
class Fault:
    kind: str
    detail: str = ""


Outcome = Union[Halted, FuelExhausted, Fault]


class RuntimeFault(RuntimeError):
    def __init__(self, fault: Fault):
        super().__init__(f"{fault.kind}: {fault.detail}")
        self.fault = fault


@dataclass
class RegisterFile:
    a: bytes = b""
    b: bytes = b""
    c: bytes = b""


def _fn_prefix(s: bytes) -> bytes:
    i = s.find(b"(")
    return s if i < 0 else s[:i]


def _value(regs: RegisterFile, src) -> bytes:
    if isinstance(src, Literal):
        return src.value
    return getattr(regs, src)


def execute(program: Union[bytes, str, KernelProgram], a_in=b"", b_in=b"",
            fuel: int = DEFAULT_FUEL) -> tuple[Outcome, RegisterFile]:
    """Run ``program`` and return its outcome together with the final registers."""
    if not isinstance(program, KernelProgram):
        program = parse(program)
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    root = RegisterFile(_b(a_in), _b(b_in), b"")
    # frame: [call table, registers, statements, pc, registers to receive c]
    stack = [[program.table, root, program.entry.body, 0, None]]
    used = 0
    while stack:
        frame = stack[-1]
        table, regs, stmts, pc, ret = frame
        if pc >= len(stmts):
            stack.pop()
            if ret is not None:
                ret.c = regs.c
            continue
        if used >= fuel:
            return FuelExhausted(), root
        used += 1
        frame[3] = pc + 1
        st = stmts[pc]
        kind = type(st)
        if kind is Copy:
            setattr(regs, st.dst, _value(regs, st.src))
        elif kind is Cat:
            setattr(regs, st.dst, getattr(regs, st.dst) + _value(regs, st.src))
        elif kind is CatEsc:
            setattr(regs, st.dst, getattr(regs, st.dst) + escape(getattr(regs, st.src)))
        elif kind is CatFn:
            setattr(regs, st.dst, getattr(regs, st.dst) + _fn_prefix(getattr(regs, st.src)))
        elif kind is Call:
            body = table.get(st.name)
            if body is None:
                return Fault(UNKNOWN_CALL, st.name), root
            stack.append([table, regs, body, 0, None])
        elif kind is IfEq:
            branch = st.then if getattr(regs, st.reg) == st.lit.value else st.orelse
            stack.append([table, regs, branch, 0, None])
        elif kind is Eval:
            try:
                inner = parse(regs.a)
            except ParseError as e:
                return Fault(PARSE_INSIDE_EVAL, str(e)), root
            stack.append([inner.table, RegisterFile(regs.b, b"", b""),
                          inner.entry.body, 0, regs])
        else:  # pragma: no cover
            raise TypeError(f"unknown statement {st!r}")
    return Halted(root.c, used), root


def run(program: Union[bytes, str, KernelProgram], a_in=b"", b_in=b"",
        fuel: int = DEFAULT_FUEL) -> Outcome:
    """Execute ``program`` with ``a=a_in``, ``b=b_in``, ``c=""``.

    Every executed statement (calls and ``eval`` included) costs one unit of
    fuel; nested evaluations draw from the same budget.
    """
    return execute(program, a_in, b_in, fuel)[0]


@dataclass(frozen=True)
class BCheck:
    """Result of :func:`check_b_preserving`."""
    ok: bool
    sample: Optional[tuple] = None
    before: Optional[bytes] = None
    after: Optional[bytes] = None
    skipped: tuple = ()

    def __bool__(self):
        return self.ok


def check_b_preserving(program, samples: Iterable[tuple], fuel: int = DEFAULT_FUEL) -> BCheck:
    """Reject ``program`` if some sample run ends with register ``b`` changed.

    Samples are ``(a, b)`` pairs.  Runs that exhaust their fuel are skipped
    and listed in ``skipped``; faults raise :class:`RuntimeFault`.  Passing
    is evidence, not proof.
    """
    skipped = []
    for a, b in samples:
        a, b = _b(a), _b(b)
        outcome, regs = execute(program, a, b, fuel)
        if isinstance(outcome, Fault):
            raise RuntimeFault(outcome)
        if isinstance(outcome, FuelExhausted):
            skipped.append((a, b))
            continue
        if regs.b != b:
            return BCheck(False, (a, b), b, regs.b, tuple(skipped))
    return BCheck(True, skipped=tuple(skipped))
