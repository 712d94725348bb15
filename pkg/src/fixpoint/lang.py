"""The kernel language: grammar, syntax tree and canonical form.

A program is a sequence of function definitions over three string
registers ``a``, ``b`` and ``c``; the first definition is the entry point::

    id_(){strcpy(c,a);}
    s1_(){strcpy(c,a);strcpy(b,a);}

All program texts are ``bytes``.  ``parse`` accepts pretty input (whitespace
between tokens, ``//`` comments) and ``serialize`` emits the unique
whitespace-free canonical form, which is what every construction quotes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Union

REGISTERS = ("a", "b", "c")

IDENT_RE = re.compile(rb"[a-z][a-z0-9]*_")
_WORD_RE = re.compile(rb"[a-z][a-z0-9]*_?")
_REG_RE = re.compile(rb"[a-z][a-z0-9_]*")
_WS = b" \t\r\n"


class ParseError(ValueError):
    """Malformed kernel program text; ``offset`` is a byte offset."""

    def __init__(self, msg: str, offset: int = 0):
        super().__init__(f"{msg} (at byte {offset})")
        self.msg = msg
        self.offset = offset


class EscapeError(ValueError):
    pass


def _b(text: Union[str, bytes]) -> bytes:
    return text.encode() if isinstance(text, str) else bytes(text)


# -- escaping ---------------------------------------------------------------

def escape(s: Union[str, bytes]) -> bytes:
    """Quote ``s`` for use inside a literal: ``"`` -> ``\\"``, ``\\`` -> ``\\\\``."""
    return _b(s).replace(b"\\", b"\\\\").replace(b'"', b'\\"')


def unescape(s: Union[str, bytes]) -> bytes:
    s = _b(s)
    out = bytearray()
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == 0x5C:  # backslash
            if i + 1 >= len(s):
                raise EscapeError(f"dangling backslash at byte {i}")
            nxt = s[i + 1]
            if nxt not in (0x5C, 0x22):
                raise EscapeError(f"bad escape \\{chr(nxt)} at byte {i}")
            out.append(nxt)
            i += 2
        elif ch == 0x22:
            raise EscapeError(f"bare quote at byte {i}")
        else:
            out.append(ch)
            i += 1
    return bytes(out)


# -- syntax tree ------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    value: bytes

    def __repr__(self):
        return f"Literal({self.value!r})"


Source = Union[str, Literal]  # a register name or a literal


@dataclass(frozen=True)
class Copy:
    dst: str
    src: Source


@dataclass(frozen=True)
class Cat:
    dst: str
    src: Source


@dataclass(frozen=True)
class CatEsc:
    """Append ``escape(src)`` to ``dst``."""
    dst: str
    src: str


@dataclass(frozen=True)
class CatFn:
    """Append the function name heading ``src`` to ``dst``.

    At run time this is total: it appends everything before the first
    ``(`` (or all of ``src`` if there is none).
    """
    dst: str
    src: str


@dataclass(frozen=True)
class Call:
    name: str


@dataclass(frozen=True)
class Eval:
    pass


@dataclass(frozen=True)
class IfEq:
    reg: str
    lit: Literal
    then: tuple
    orelse: tuple = ()


Stmt = Union[Copy, Cat, CatEsc, CatFn, Call, Eval, IfEq]


@dataclass(frozen=True)
class FunctionDef:
    name: str
    body: tuple

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name.encode()):
            raise ValueError(f"bad identifier {self.name!r}")


@dataclass(frozen=True)
class KernelProgram:
    defs: tuple

    def __post_init__(self):
        if not self.defs:
            raise ValueError("a program needs at least one definition")
        names = [d.name for d in self.defs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate definition names in {names}")

    @property
    def entry(self) -> FunctionDef:
        return self.defs[0]

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.defs]

    @cached_property
    def table(self) -> dict:
        return {d.name: d.body for d in self.defs}

    def __bytes__(self):
        return serialize(self)


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: bytes):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        t = self.text
        while self.pos < len(t):
            if t[self.pos] in _WS:
                self.pos += 1
            elif t.startswith(b"//", self.pos):
                nl = t.find(b"\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, tok: bytes) -> bool:
        self.skip()
        return self.text.startswith(tok, self.pos)

    def expect(self, tok: bytes):
        if not self.peek(tok):
            found = self.text[self.pos:self.pos + 10]
            self.error(f"expected {tok.decode()!r}, found {found!r}")
        self.pos += len(tok)

    def word(self) -> bytes:
        self.skip()
        m = _WORD_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group()

    def register(self) -> str:
        self.skip()
        start = self.pos
        m = _REG_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a register")
        name = m.group().decode()
        if name not in REGISTERS:
            self.error(f"unknown register {name!r}", start)
        self.pos = m.end()
        return name

    def literal(self) -> Literal:
        self.skip()
        start = self.pos
        self.expect(b'"')
        t = self.text
        i = self.pos
        while True:
            if i >= len(t):
                self.error("unterminated literal", start)
            ch = t[i]
            if ch == 0x22:
                break
            if ch == 0x5C:
                if i + 1 >= len(t) or t[i + 1] not in (0x5C, 0x22):
                    self.error("bad escape in literal", i)
                i += 2
            else:
                i += 1
        raw = t[self.pos:i]
        self.pos = i + 1
        return Literal(unescape(raw))

    def source(self) -> Source:
        if self.peek(b'"'):
            return self.literal()
        return self.register()

    def program(self) -> KernelProgram:
        defs = []
        seen = set()
        while not self.at_end():
            start = self.pos
            name = self.word()
            if not IDENT_RE.fullmatch(name):
                self.error(f"bad function name {name.decode()!r}", start)
            if name in seen:
                self.error(f"duplicate definition {name.decode()!r}", start)
            seen.add(name)
            self.expect(b"(")
            self.expect(b")")
            body = self.block()
            defs.append(FunctionDef(name.decode(), body))
        if not defs:
            self.error("empty program")
        return KernelProgram(tuple(defs))

    def block(self) -> tuple:
        self.expect(b"{")
        stmts = []
        while not self.peek(b"}"):
            if self.at_end():
                self.error("unbalanced braces: missing '}'")
            stmts.append(self.statement())
        self.expect(b"}")
        return tuple(stmts)

    def statement(self) -> Stmt:
        start = self.pos
        w = self.word()
        if w.endswith(b"_"):
            self.expect(b"(")
            self.expect(b")")
            self.expect(b";")
            return Call(w.decode())
        if w == b"eval":
            self.expect(b"(")
            self.expect(b")")
            self.expect(b";")
            return Eval()
        if w == b"ifeq":
            self.expect(b"(")
            reg = self.register()
            self.expect(b",")
            lit = self.literal()
            self.expect(b")")
            then = self.block()
            orelse = ()
            self.skip()
            m = _WORD_RE.match(self.text, self.pos)
            if m and m.group() == b"else":
                self.pos = m.end()
                orelse = self.block()
            return IfEq(reg, lit, then, orelse)
        if w not in (b"strcpy", b"strcat", b"strcatq", b"strcatfn"):
            self.error(f"unknown statement {w.decode()!r}", start)
        self.expect(b"(")
        dst = self.register()
        self.expect(b",")
        if w in (b"strcpy", b"strcat"):
            src = self.source()
        else:
            src = self.register()
        self.expect(b")")
        self.expect(b";")
        return {b"strcpy": Copy, b"strcat": Cat,
                b"strcatq": CatEsc, b"strcatfn": CatFn}[w](dst, src)


@lru_cache(maxsize=4096)
def _parse_bytes(text: bytes) -> KernelProgram:
    return _Parser(text).program()


def parse(text: Union[str, bytes]) -> KernelProgram:
    """Parse pretty or canonical kernel source; raises :class:`ParseError`."""
    return _parse_bytes(_b(text))


# -- canonical form ---------------------------------------------------------

def _src(s: Source) -> bytes:
    if isinstance(s, Literal):
        return b'"' + escape(s.value) + b'"'
    return s.encode()


def _stmt(st: Stmt) -> bytes:
    if isinstance(st, Copy):
        return b"strcpy(%s,%s);" % (st.dst.encode(), _src(st.src))
    if isinstance(st, Cat):
        return b"strcat(%s,%s);" % (st.dst.encode(), _src(st.src))
    if isinstance(st, CatEsc):
        return b"strcatq(%s,%s);" % (st.dst.encode(), st.src.encode())
    if isinstance(st, CatFn):
        return b"strcatfn(%s,%s);" % (st.dst.encode(), st.src.encode())
    if isinstance(st, Call):
        return st.name.encode() + b"();"
    if isinstance(st, Eval):
        return b"eval();"
    if isinstance(st, IfEq):
        return (b"ifeq(%s,%s){" % (st.reg.encode(), _src(st.lit))
                + b"".join(map(_stmt, st.then)) + b"}else{"
                + b"".join(map(_stmt, st.orelse)) + b"}")
    raise TypeError(f"not a statement: {st!r}")


def serialize(p: KernelProgram) -> bytes:
    return b"".join(d.name.encode() + b"(){" + b"".join(map(_stmt, d.body)) + b"}"
                    for d in p.defs)


def canonical(text: Union[str, bytes]) -> bytes:
    """Shorthand for ``serialize(parse(text))``."""
    return serialize(parse(text))


def fn_name(text: Union[str, bytes]) -> str:
    """Name of the definition heading ``text``: ``b"id_(){..."`` -> ``"id_"``."""
    text = _b(text)
    i = text.find(b"(")
    if i < 0:
        raise ParseError("no '(' in text", 0)
    name = text[:i]
    if not IDENT_RE.fullmatch(name):
        raise ParseError(f"{name!r} is not an identifier", 0)
    return name.decode()


def read_kc(path) -> bytes:
    """Read a ``.kc`` file; one trailing newline is not part of the program."""
    data = Path(path).read_bytes()
    if data.endswith(b"\r\n"):
        return data[:-2]
    if data.endswith(b"\n"):
        return data[:-1]
    return data
