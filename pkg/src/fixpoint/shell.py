"""A sandboxed interpreter for a tiny subset of the Bourne shell.

Supported: ``echo``, ``cat``, ``set``, ``chmod 755``, ``(( name = expr ))``,
running workspace files as scripts, ``> file`` redirection, double quotes,
``$N``, ``${N}``, ``$name`` and ``$(...)`` command substitution.  Everything
happens inside a :class:`ShellWorkspace`; nothing touches the host.

Differences from a real shell: unquoted expansions are never word-split (an
unquoted word that expands to nothing is dropped), ``$(...)`` strips all
trailing newlines, and a script invoked without arguments sees its caller's
positional parameters, the way ``source`` does.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

DEFAULT_FUEL = 100_000
MAX_DEPTH = 100  # nested script calls plus command substitutions
MANIFEST = "WS-MANIFEST"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ShellError(Exception):
    status = 1


class ShellParseError(ShellError):
    status = 2

    def __init__(self, msg, offset=0):
        super().__init__(f"{msg} (at offset {offset})")
        self.offset = offset


class FileNotFound(ShellError):
    status = 127


class PermissionDenied(ShellError):
    status = 126


class FuelExhausted(ShellError):
    status = 124


class DepthExceeded(FuelExhausted):
    pass


class WorkspaceError(ValueError):
    pass


def valid_name(name: str) -> bool:
    return bool(name) and "/" not in name and not any(ch.isspace() for ch in name)


# -- workspace ------------------------------------------------------------------

@dataclass
class ShellFile:
    content: str
    executable: bool = False


@dataclass
class ShellWorkspace:
    files: dict = field(default_factory=dict)
    variables: dict = field(default_factory=dict)
    stdout: str = ""

    def write(self, name: str, content: str, executable: bool = True):
        if not valid_name(name):
            raise WorkspaceError(f"invalid file name {name!r}")
        self.files[name] = ShellFile(content, executable)

    def read(self, name: str) -> str:
        try:
            return self.files[name].content
        except KeyError:
            raise FileNotFound(f"{name}: No such file") from None

    def exists(self, name: str) -> bool:
        return name in self.files

    def is_executable(self, name: str) -> bool:
        return name in self.files and self.files[name].executable

    def copy(self) -> "ShellWorkspace":
        return ShellWorkspace({k: ShellFile(f.content, f.executable) for k, f in self.files.items()},
                              dict(self.variables), self.stdout)

    # on disk: plain files plus a manifest of executable bits
    def save(self, directory) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        lines = []
        for name in sorted(self.files):
            f = self.files[name]
            (d / name).write_bytes(f.content.encode("utf-8", "surrogateescape"))
            lines.append(f"{name}\t{'exec' if f.executable else 'noexec'}\n")
        (d / MANIFEST).write_text("".join(lines))

    @classmethod
    def load(cls, directory) -> "ShellWorkspace":
        d = Path(directory)
        mpath = d / MANIFEST
        if not mpath.is_file():
            raise WorkspaceError(f"{d}: no {MANIFEST}")
        ws = cls()
        for n, line in enumerate(mpath.read_text().splitlines(), 1):
            if not line.strip():
                continue
            name, sep, bit = line.partition("\t")
            if not sep or bit not in ("exec", "noexec") or not valid_name(name) or name == MANIFEST:
                raise WorkspaceError(f"{mpath}:{n}: bad manifest line {line!r}")
            path = d / name
            if not path.is_file():
                raise WorkspaceError(f"manifest lists {name!r} but there is no such file")
            content = path.read_bytes().decode("utf-8", "surrogateescape")
            ws.files[name] = ShellFile(content, bit == "exec")
        extra = sorted(p.name for p in d.iterdir() if p.name != MANIFEST and p.name not in ws.files)
        if extra:
            raise WorkspaceError(f"files without manifest entries: {extra}")
        return ws


@dataclass
class Frame:
    positional: list
    script: str = ""

    def param(self, n: int) -> str:
        return self.positional[n - 1] if 0 < n <= len(self.positional) else ""


# -- syntax -------------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    text: str
    quoted: bool = False


@dataclass(frozen=True)
class Param:
    index: int
    quoted: bool = False


@dataclass(frozen=True)
class Var:
    name: str
    quoted: bool = False


@dataclass(frozen=True)
class Subst:
    commands: tuple
    quoted: bool = False


@dataclass(frozen=True)
class Word:
    parts: tuple

    @property
    def has_quotes(self) -> bool:
        return any(p.quoted for p in self.parts)


@dataclass(frozen=True)
class SimpleCommand:
    words: tuple
    redirect: Optional[Word] = None


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Arith:
    name: str
    expr: object


Command = Union[SimpleCommand, Arith]

_WORD_END = " \t\n;>"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ShellParseError(msg, self.pos if pos is None else pos)

    def peek(self, k=0) -> str:
        i = self.pos + k
        return self.text[i] if i < len(self.text) else ""

    def commands(self, nested: bool = False) -> list:
        cmds = []
        while True:
            while self.peek() in (" ", "\t"):
                self.pos += 1
            ch = self.peek()
            if ch == "":
                if nested:
                    self.error("unbalanced parentheses: missing ')'")
                return cmds
            if ch in ("\n", ";"):
                self.pos += 1
            elif ch == ")":
                if not nested:
                    self.error("unbalanced parentheses: unexpected ')'")
                return cmds
            elif self.text.startswith("((", self.pos):
                cmds.append(self.arith())
            else:
                cmds.append(self.simple(nested))

    def simple(self, nested) -> SimpleCommand:
        words = []
        redirect = None
        while True:
            while self.peek() in (" ", "\t"):
                self.pos += 1
            ch = self.peek()
            if ch in ("", "\n", ";") or (ch == ")" and nested):
                break
            if ch == ">":
                self.pos += 1
                while self.peek() in (" ", "\t"):
                    self.pos += 1
                if redirect is not None:
                    self.error("only one redirection per command")
                redirect = self.word(nested)
                if not redirect.parts:
                    self.error("missing redirection target")
                continue
            words.append(self.word(nested))
        return SimpleCommand(tuple(words), redirect)

    def word(self, nested) -> Word:
        parts = []
        buf = []

        def flush(quoted=False):
            if buf:
                parts.append(Lit("".join(buf), quoted))
                buf.clear()

        while True:
            ch = self.peek()
            if ch == "" or ch in _WORD_END or (ch == ")" and nested):
                break
            if ch == "(" or ch == ")":
                self.error(f"unexpected {ch!r}")
            if ch == "\\":
                nxt = self.peek(1)
                if nxt == "":
                    self.error("dangling backslash")
                self.pos += 2
                if nxt != "\n":
                    buf.append(nxt)
            elif ch == '"':
                flush()
                self.quoted(parts)
            elif ch == "$":
                exp = self.dollar(False)
                if exp is None:
                    buf.append("$")
                else:
                    flush()
                    parts.append(exp)
            else:
                buf.append(ch)
                self.pos += 1
        flush()
        return Word(tuple(parts))

    def quoted(self, parts):
        start = self.pos
        self.pos += 1
        buf = []
        while True:
            ch = self.peek()
            if ch == "":
                self.error("unbalanced quotes", start)
            if ch == '"':
                self.pos += 1
                break
            if ch == "\\" and self.peek(1) in ('$', '"', '\\'):
                buf.append(self.peek(1))
                self.pos += 2
            elif ch == "$":
                exp = self.dollar(True)
                if exp is None:
                    buf.append("$")
                else:
                    if buf:
                        parts.append(Lit("".join(buf), True))
                        buf = []
                    parts.append(exp)
            else:
                buf.append(ch)
                self.pos += 1
        # an empty "" still counts as a quoted (hence kept) word
        parts.append(Lit("".join(buf), True))

    def dollar(self, quoted):
        nxt = self.peek(1)
        if nxt == "(":
            start = self.pos
            self.pos += 2
            inner = self.commands(nested=True)
            if self.peek() != ")":
                self.error("unbalanced parentheses", start)
            self.pos += 1
            return Subst(tuple(inner), quoted)
        if nxt == "{":
            close = self.text.find("}", self.pos)
            if close < 0:
                self.error("unbalanced braces")
            body = self.text[self.pos + 2:close]
            self.pos = close + 1
            if body.isdigit():
                return Param(int(body), quoted)
            if _NAME_RE.fullmatch(body):
                return Var(body, quoted)
            self.error(f"bad substitution ${{{body}}}")
        if nxt.isdigit():
            self.pos += 2
            return Param(int(nxt), quoted)
        m = _NAME_RE.match(self.text, self.pos + 1)
        if m:
            self.pos = m.end()
            return Var(m.group(), quoted)
        self.pos += 1
        return None

    def arith(self) -> Arith:
        start = self.pos
        self.pos += 2
        depth = 0
        i = self.pos
        while True:
            if i >= len(self.text):
                self.error("unbalanced '(('", start)
            ch = self.text[i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    if self.text.startswith("))", i):
                        break
                    self.error("unbalanced parentheses", i)
                depth -= 1
            i += 1
        body = self.text[self.pos:i]
        self.pos = i + 2
        m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(?!=)(.*)", body, re.S)
        if not m:
            self.error("only '(( name = expr ))' is supported", start)
        return Arith(m.group(1), _parse_expr(m.group(2), start))


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*()]))")


def _parse_expr(src: str, offset: int = 0):
    tokens = []
    pos = 0
    while src[pos:].strip():
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise ShellParseError(f"bad arithmetic near {src[pos:]!r}", offset)
        num, name, op = m.groups()
        tokens.append(("num", int(num)) if num else ("name", name) if name else ("op", op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    # precedence climbing; ** binds tightest and is right-associative
    def expr(min_prec=1):
        left = unary()
        while True:
            kind, op = peek()
            prec = {"+": 1, "-": 1, "*": 2}.get(op) if kind == "op" else None
            if prec is None or prec < min_prec:
                return left
            take()
            left = BinOp(op, left, expr(prec + 1))

    def unary():
        if peek() == ("op", "-"):
            take()
            return Neg(unary())
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "**"):
            take()
            return BinOp("**", base, unary())
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Num(val)
        if kind == "name":
            return Name(val)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ShellParseError("unbalanced parentheses in arithmetic", offset)
            return e
        raise ShellParseError(f"unexpected {val!r} in arithmetic", offset)

    tree = expr()
    if peek()[0] != "end":
        raise ShellParseError(f"trailing {peek()[1]!r} in arithmetic", offset)
    return tree


@lru_cache(maxsize=1024)
def _parse_cached(text: str) -> tuple:
    return tuple(_Parser(text).commands())


def shell_parse(text: str) -> list:
    """Parse a script into a list of commands; raises :class:`ShellParseError`."""
    return list(_parse_cached(text))


def eval_arith(node, variables: dict) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        v = variables.get(node.name, "")
        return int(v) if re.fullmatch(r"-?\d+", v) else 0
    if isinstance(node, Neg):
        return -eval_arith(node.operand, variables)
    a = eval_arith(node.left, variables)
    b = eval_arith(node.right, variables)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b < 0:
        raise ShellError("exponent less than 0")
    return a ** b


# -- execution ------------------------------------------------------------------------

@dataclass(frozen=True)
class ShellResult:
    stdout: str
    stderr: str = ""
    status: int = 0
    exhausted: bool = False

    @property
    def ok(self) -> bool:
        return self.status == 0 and not self.exhausted


class _Runtime:
    def __init__(self, ws: ShellWorkspace, fuel: int):
        self.ws = ws
        self.fuel = fuel
        self.err: list[str] = []
        self.status = 0
        self.depth = 0

    def nest(self):
        if self.depth >= MAX_DEPTH:
            raise DepthExceeded(f"nesting deeper than {MAX_DEPTH}")
        self.depth += 1

    def tick(self):
        if self.fuel <= 0:
            raise FuelExhausted("fuel exhausted")
        self.fuel -= 1

    def complain(self, exc: ShellError):
        self.err.append(f"{exc}\n")
        self.status = exc.status

    def expand(self, word: Word, frame: Frame) -> str:
        out = []
        for p in word.parts:
            if isinstance(p, Lit):
                out.append(p.text)
            elif isinstance(p, Param):
                out.append(frame.param(p.index))
            elif isinstance(p, Var):
                out.append(self.ws.variables.get(p.name, ""))
            else:
                buf = []
                self.nest()
                try:
                    self.exec_list(p.commands, Frame(list(frame.positional), frame.script), buf)
                finally:
                    self.depth -= 1
                out.append("".join(buf).rstrip("\n"))
        return "".join(out)

    def exec_list(self, commands, frame: Frame, out: list):
        for cmd in commands:
            self.exec_command(cmd, frame, out)

    def exec_command(self, cmd, frame: Frame, out: list):
        self.tick()
        if isinstance(cmd, Arith):
            try:
                self.ws.variables[cmd.name] = str(eval_arith(cmd.expr, self.ws.variables))
                self.status = 0
            except ShellError as e:
                self.complain(e)
            return
        argv = []
        for w in cmd.words:
            s = self.expand(w, frame)
            if s or w.has_quotes:
                argv.append(s)
        target = None
        if cmd.redirect is not None:
            target = self.expand(cmd.redirect, frame)
            if not valid_name(target):
                self.complain(ShellError(f"{target!r}: bad redirection target"))
                return
        if not argv:
            if target is not None:
                self._write(target, "")
            self.status = 0
            return
        sink = [] if target is not None else out
        self.status = 0
        try:
            # a script leaves behind the status of its last command
            self.dispatch(argv, frame, sink)
        except FuelExhausted:
            raise
        except ShellError as e:
            self.complain(e)
        if target is not None:
            self._write(target, "".join(sink))

    def _write(self, name, content):
        prev = self.ws.files.get(name)
        self.ws.write(name, content, prev.executable if prev else False)

    def dispatch(self, argv, frame, out):
        cmd, args = argv[0], argv[1:]
        if cmd == "echo":
            out.append(" ".join(args) + "\n")
        elif cmd == "cat":
            for name in args:
                out.append(self.ws.read(name))
        elif cmd == "set":
            frame.positional[:] = args
        elif cmd == "chmod":
            if len(args) != 2 or args[0] != "755":
                raise ShellParseError("chmod: only 'chmod 755 FILE' is supported")
            if not self.ws.exists(args[1]):
                raise FileNotFound(f"chmod: {args[1]}: No such file")
            self.ws.files[args[1]].executable = True
        else:
            self.invoke(cmd, args, out, frame)

    def invoke(self, name, args, out, caller: Optional[Frame] = None):
        if not self.ws.exists(name):
            raise FileNotFound(f"{name}: command not found")
        if not self.ws.is_executable(name):
            raise PermissionDenied(f"{name}: Permission denied")
        commands = _parse_cached(self.ws.read(name))
        # like ``source``: with no arguments the caller's parameters carry over
        inherited = caller.positional if caller is not None and not args else args
        self.nest()
        try:
            self.exec_list(commands, Frame(list(inherited), name), out)
        finally:
            self.depth -= 1


def shell_run(ws: ShellWorkspace, name: str, args=(), fuel: int = DEFAULT_FUEL) -> ShellResult:
    """Run workspace file ``name`` with positional arguments ``args``.

    The workspace is modified in place (files created by redirection, bits
    set by ``chmod``); ``ws.stdout`` and ``ws.variables`` start fresh for each
    call.  Errors inside the script behave like a shell's: a message goes to
    ``stderr`` and execution continues.  Running out of fuel stops
    everything and sets ``exhausted``.
    """
    ws.stdout = ""
    ws.variables.clear()
    rt = _Runtime(ws, fuel)
    out: list[str] = []
    exhausted = False
    try:
        rt.invoke(name, list(args), out)
    except FuelExhausted:
        exhausted = True
        rt.status = FuelExhausted.status
    except ShellError as e:
        rt.complain(e)
    ws.stdout = "".join(out)
    return ShellResult(ws.stdout, "".join(rt.err), rt.status, exhausted)
