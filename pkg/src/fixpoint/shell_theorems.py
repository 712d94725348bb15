"""Uniform fixed-point builders for the mini-shell.

``uk x`` writes a script ``kx`` that behaves like ``x kx``; ``ur x`` writes
``rx`` (run what ``x`` prints) and its uniform fixed point ``krx``.  Both
builders are themselves shell scripts, installed by :func:`install_prelude`.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .evidence import EvidenceReport, Sample
from .interp import FuelExhausted as KernelFuelExhausted
from .interp import Fault, Halted
from .shell import DEFAULT_FUEL, ShellError, ShellResult, ShellWorkspace, shell_run

PRELUDE = {
    "uk": 'echo "set k$1 \\$1;$(cat $1)">k$1\nchmod 755 k$1\n',
    "ur": 'echo "$1 \\$1 > ${1}_;chmod 755 ${1}_; ${1}_ \\$2"  > r$1\nuk r$1\n',
    "id": "echo $1\n",
    "cat2": "cat $1 $2\n",
    "self": "cat $1\n",
    "self_plus": "cat $1;((  a = 9**9 ));echo $a\n",
    "eecho": "echo echo hi! > hi\nchmod 755 hi\nhi\n",
}

GOLDEN = {
    "kcat2": "set kcat2 $1;cat $1 $2\necho $1\n",
    "kself": "set kself $1;cat $1\n",
    "self_plus": "set kself_plus $1;cat $1;((  a = 9**9 ));echo $a\n387420489\n",
}

DEFAULT_SHELL_SAMPLES = ("", "id", "cat2")
# an empty z makes ``x_ $2`` inherit krx's parameters, unlike a bare ``x_`` call
DEFAULT_ROGERS_SAMPLES = ("id", "cat2", "zz")


def install_prelude(ws: ShellWorkspace) -> ShellWorkspace:
    for name, content in PRELUDE.items():
        ws.write(name, content, executable=True)
    return ws


def new_workspace() -> ShellWorkspace:
    return install_prelude(ShellWorkspace())


def _checked(result: ShellResult, what: str) -> ShellResult:
    if not result.ok:
        raise ShellError(f"{what} failed (status {result.status}): {result.stderr.strip()}")
    return result


def uk_apply(ws: ShellWorkspace, x: str, fuel: int = DEFAULT_FUEL) -> str:
    """Run ``uk x`` and return the name of the script it built."""
    ws.read(x)
    _checked(shell_run(ws, "uk", [x], fuel), f"uk {x}")
    return "k" + x


def ur_apply(ws: ShellWorkspace, x: str, fuel: int = DEFAULT_FUEL) -> str:
    """Run ``ur x``; leaves ``r<x>`` and returns the name ``kr<x>``."""
    ws.read(x)
    _checked(shell_run(ws, "ur", [x], fuel), f"ur {x}")
    return "kr" + x


def demo(ws: ShellWorkspace, which: str, fuel: int = DEFAULT_FUEL) -> str:
    """Replay one of the transcripts ``kcat2``, ``kself`` or ``self_plus``; returns stdout."""
    install_prelude(ws)
    if which == "kcat2":
        return _checked(shell_run(ws, uk_apply(ws, "cat2", fuel), ["id"], fuel), "kcat2").stdout
    if which == "kself":
        return _checked(shell_run(ws, uk_apply(ws, "self", fuel), [], fuel), "kself").stdout
    if which == "self_plus":
        return demo_self_plus(ws, fuel)
    raise ValueError(f"unknown demo {which!r}")


def demo_self_plus(ws: ShellWorkspace, fuel: int = DEFAULT_FUEL) -> str:
    kx = uk_apply(ws, "self_plus", fuel)
    return _checked(shell_run(ws, kx, [], fuel), kx).stdout


def _outcome(result: ShellResult):
    if result.exhausted:
        return KernelFuelExhausted()
    return Halted(result.stdout.encode("utf-8", "surrogateescape"))


def verify_uniform_fix(ws: ShellWorkspace, x: str, samples: Optional[Iterable[str]] = None,
                       fuel: int = DEFAULT_FUEL) -> EvidenceReport:
    """Compare what ``kx z`` prints with what ``x kx z`` prints.

    Only stdout is compared; each side runs in its own copy of the
    workspace, so file side effects never leak between them.
    """
    samples = DEFAULT_SHELL_SAMPLES if samples is None else samples
    rows = []
    try:
        kx = uk_apply(ws, x, fuel)
    except ShellError as e:
        fault = Fault(type(e).__name__, str(e))
        return EvidenceReport.from_samples(Sample(z, fault, fault) for z in samples)
    for z in samples:
        left = shell_run(ws.copy(), kx, [z], fuel)
        right = shell_run(ws.copy(), x, [kx, z], fuel)
        rows.append(Sample(z, _outcome(left), _outcome(right)))
    return EvidenceReport.from_samples(rows)


def verify_uniform_rogers(ws: ShellWorkspace, x: str, samples: Optional[Iterable[str]] = None,
                          fuel: int = DEFAULT_FUEL) -> EvidenceReport:
    """Compare ``krx z`` with running the script printed by ``x krx`` on ``z``."""
    samples = DEFAULT_ROGERS_SAMPLES if samples is None else samples
    try:
        krx = ur_apply(ws, x, fuel)
        made = _checked(shell_run(ws.copy(), x, [krx], fuel), f"{x} {krx}").stdout
    except ShellError as e:
        fault = Fault(type(e).__name__, str(e))
        return EvidenceReport.from_samples(Sample(z, fault, fault) for z in samples)
    rows = []
    for z in samples:
        left = shell_run(ws.copy(), krx, [z], fuel)
        side = ws.copy()
        side.write(x + "_", made, executable=True)
        right = shell_run(side, x + "_", [z], fuel)
        rows.append(Sample(z, _outcome(left), _outcome(right)))
    return EvidenceReport.from_samples(rows)
