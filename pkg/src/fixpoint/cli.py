"""Command line: ``fixpoint kernel ...`` and ``fixpoint shell ...``.

Exit codes: 0 success, 1 verification failed, 2 bad input or usage,
3 fuel exhausted where a value was needed, 4 reserved-name collision or
calling-convention violation.  ``FIXPOINT_FUEL`` sets the default fuel.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import forge, shell, shell_theorems
from .evidence import AllAgree, Disagree
from .interp import DEFAULT_FUEL, Fault, FuelExhausted, Halted, run
from .lang import EscapeError, ParseError, read_kc

OK, FAILED, BAD_INPUT, NO_FUEL, CONVENTION = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _default_fuel() -> int:
    env = os.environ.get("FIXPOINT_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _Exit(BAD_INPUT, f"FIXPOINT_FUEL is not an integer: {env!r}")
    return DEFAULT_FUEL


def _read(path) -> bytes:
    try:
        return read_kc(path)
    except OSError as e:
        raise _Exit(BAD_INPUT, f"cannot read {path}: {e.strerror}")


def _samples(path):
    if path is None:
        return None
    data = _read(path)
    return data.split(b"\n") if data else [b""]


def _emit(data: bytes, out):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _report_code(report) -> int:
    if isinstance(report.verdict, AllAgree):
        return OK
    if isinstance(report.verdict, Disagree):
        return FAILED
    return NO_FUEL


def _print_report(report):
    for s in report.samples:
        mark = "ok" if s.agrees else ("??" if s.exhausted else "XX")
        print(f"  [{mark}] z={s.z!r}: {_show(s.left)} | {_show(s.right)}")
    print(report.summary())


def _show(outcome) -> str:
    if isinstance(outcome, Halted):
        v = outcome.value
        return repr(v if len(v) <= 60 else v[:57] + b"...")
    return type(outcome).__name__ if not isinstance(outcome, Fault) else f"Fault({outcome.kind})"


# -- kernel -------------------------------------------------------------------

def _kernel(args) -> int:
    fuel = args.fuel if args.fuel is not None else _default_fuel()
    cmd = args.cmd
    if cmd == "run":
        out = run(_read(args.file), args.a.encode(), args.b.encode(), fuel)
        if isinstance(out, Halted):
            _emit(out.value, None)
            return OK
        if isinstance(out, FuelExhausted):
            print(f"fuel exhausted after {fuel} statements", file=sys.stderr)
            return NO_FUEL
        print(f"fault: {out.kind} {out.detail}", file=sys.stderr)
        return BAD_INPUT
    if cmd in ("ds", "fix", "rogers"):
        x = _read(args.file)
        if cmd == "ds":
            res = forge.ds_transform(x)
        elif cmd == "fix":
            res = forge.kleene_fix(x)
        else:
            res = forge.rogers_fix(x, fuel=fuel)
        _emit(res, args.output)
        return OK
    if cmd == "quine":
        _emit(forge.quine(), args.output)
        return OK
    if cmd == "rice":
        report = forge.rice_witness(_read(args.decider), _read(args.in_class),
                                    _read(args.out_class), _samples(args.samples), fuel)
        print(f"witness: {report.witness.decode(errors='replace')}")
        print(f"decider says {report.verdict.decode(errors='replace')!r} on the witness; "
              f"comparing the witness with the {'out-of' if report.matched == 't' else 'in'}"
              f"-class program")
        _print_report(report.evidence)
        print(report.summary())
        return OK if report.contradiction else FAILED
    if cmd == "verify":
        x = _read(args.file)
        verifier = {"ds": forge.verify_ds, "fix": forge.verify_kleene,
                    "rogers": forge.verify_rogers}[args.theorem]
        report = verifier(x, _samples(args.samples), fuel)
        _print_report(report)
        return _report_code(report)
    raise _Exit(BAD_INPUT, f"unknown command {cmd}")


# -- shell --------------------------------------------------------------------

def _load_ws(directory) -> shell.ShellWorkspace:
    try:
        return shell.ShellWorkspace.load(directory)
    except OSError as e:
        raise _Exit(BAD_INPUT, f"cannot load workspace {directory}: {e}")


def _shell_code(result: shell.ShellResult) -> int:
    if result.exhausted:
        return NO_FUEL
    if result.status in (shell.FileNotFound.status, shell.PermissionDenied.status,
                         shell.ShellParseError.status):
        return BAD_INPUT
    return OK if result.status == 0 else FAILED


def _shell(args) -> int:
    fuel = args.fuel if args.fuel is not None else _default_fuel()
    cmd = args.cmd
    if cmd == "init":
        shell_theorems.new_workspace().save(args.dir)
        return OK
    ws = _load_ws(args.dir)
    if cmd == "run":
        result = shell.shell_run(ws, args.script, args.args, fuel)
        sys.stdout.write(result.stdout)
        sys.stderr.write(result.stderr)
        ws.save(args.dir)
        return _shell_code(result)
    if cmd in ("uk", "ur"):
        if not ws.exists(args.x):
            raise _Exit(BAD_INPUT, f"{args.x}: no such file in workspace")
        apply = shell_theorems.uk_apply if cmd == "uk" else shell_theorems.ur_apply
        print(apply(ws, args.x, fuel))
        ws.save(args.dir)
        return OK
    if cmd == "demo":
        out = shell_theorems.demo(ws.copy(), args.which, fuel)
        sys.stdout.write(out)
        golden = shell_theorems.GOLDEN[args.which]
        if out == golden:
            print(f"golden match: {args.which}")
            return OK
        print(f"golden MISMATCH: expected {golden!r}", file=sys.stderr)
        return FAILED
    if cmd == "verify":
        if not ws.exists(args.x):
            raise _Exit(BAD_INPUT, f"{args.x}: no such file in workspace")
        samples = None
        if args.samples:
            samples = Path(args.samples).read_text().split("\n")
        verifier = (shell_theorems.verify_uniform_rogers if args.rogers
                    else shell_theorems.verify_uniform_fix)
        report = verifier(ws.copy(), args.x, samples, fuel)
        _print_report(report)
        return _report_code(report)
    raise _Exit(BAD_INPUT, f"unknown command {cmd}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fixpoint",
                                description="Fixed-point constructions for a kernel language and a mini-shell.")
    top = p.add_subparsers(dest="lang", required=True)

    k = top.add_parser("kernel", help="kernel-language programs (.kc files)")
    ks = k.add_subparsers(dest="cmd", required=True)
    r = ks.add_parser("run", help="run a program and print register c")
    r.add_argument("file")
    r.add_argument("--a", default="", help="initial content of register a")
    r.add_argument("--b", default="", help="initial content of register b")
    for name, helptext in [("ds", "diagonal substitution"), ("fix", "Kleene fixed point"),
                           ("rogers", "Rogers fixed point of a script-maker")]:
        t = ks.add_parser(name, help=helptext)
        t.add_argument("file")
        t.add_argument("-o", "--output")
    q = ks.add_parser("quine", help="write the quine")
    q.add_argument("-o", "--output")
    rc = ks.add_parser("rice", help="run the Rice refutation against a decider")
    rc.add_argument("--decider", required=True)
    rc.add_argument("--in-class", required=True, dest="in_class")
    rc.add_argument("--out-class", required=True, dest="out_class")
    rc.add_argument("--samples", help="file with one sample input per line")
    v = ks.add_parser("verify", help="check a theorem's equation pointwise")
    v.add_argument("theorem", choices=["ds", "fix", "rogers"])
    v.add_argument("file")
    v.add_argument("--samples", help="file with one sample input per line")
    for sub in ks.choices.values():
        sub.add_argument("--fuel", type=int, default=None)

    s = top.add_parser("shell", help="mini-shell workspaces")
    ss = s.add_subparsers(dest="cmd", required=True)
    ss.add_parser("init", help="write the prelude and manifest").add_argument("dir")
    sr = ss.add_parser("run", help="run a script in a workspace")
    sr.add_argument("dir")
    sr.add_argument("script")
    sr.add_argument("args", nargs="*")
    for name in ("uk", "ur"):
        b = ss.add_parser(name, help=f"apply the {name} builder")
        b.add_argument("dir")
        b.add_argument("x")
    d = ss.add_parser("demo", help="replay a transcript and diff against golden output")
    d.add_argument("dir")
    d.add_argument("which", choices=sorted(shell_theorems.GOLDEN))
    sv = ss.add_parser("verify", help="check 'kx z' against 'x kx z'")
    sv.add_argument("dir")
    sv.add_argument("x")
    sv.add_argument("--samples", help="file with one sample argument per line")
    sv.add_argument("--rogers", action="store_true", help="check the ur construction instead")
    for sub in ss.choices.values():
        sub.add_argument("--fuel", type=int, default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.lang == "kernel":
            return _kernel(args)
        return _shell(args)
    except _Exit as e:
        print(f"fixpoint: {e}", file=sys.stderr)
        return e.code
    except (ParseError, EscapeError, shell.ShellParseError, shell.WorkspaceError,
            shell.FileNotFound, shell.PermissionDenied) as e:
        print(f"fixpoint: {e}", file=sys.stderr)
        return BAD_INPUT
    except (forge.NameCollision, forge.BConventionViolation,
            forge.DeciderNotBinaryOutput) as e:
        print(f"fixpoint: {e}", file=sys.stderr)
        return CONVENTION
    except (forge.FuelExhaustedError, shell.FuelExhausted) as e:
        print(f"fixpoint: {e}", file=sys.stderr)
        return NO_FUEL
    except shell.ShellError as e:
        print(f"fixpoint: {e}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
