"""Reading and writing ``.rel`` model files.

Grammar::

    model      := (relset | map | conjecture)*
    relset     := "relset" IDENT "{" "elements:" IDENT* ";" "le:" (pair ("," pair)*)? ";" "}"
    pair       := IDENT IDENT
    map        := "map" IDENT ":" IDENT "{" (IDENT "->" IDENT ";")* "}"
    conjecture := "conjecture" IDENT "{" "assume:" (atom ("," atom)*)? ";" "conclude:" atom ";" "}"
    atom       := IDENT ("(" IDENT ")")?

``#`` starts a comment running to the end of the line.  The order of names
after ``elements:`` fixes carrier indices.  Input may use LF or CRLF; output
always uses LF.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import EndoMap, RelatedSet, check_cap, members
from .errors import InputError, ParseError

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>->|[{};:,()])")


@dataclass
class Model:
    relsets: dict[str, RelatedSet] = field(default_factory=dict)
    maps: dict[str, tuple[str, EndoMap]] = field(default_factory=dict)
    conjectures: dict = field(default_factory=dict)

    def relset(self, name: str) -> RelatedSet:
        try:
            return self.relsets[name]
        except KeyError:
            raise InputError(f"no relset named {name!r}") from None

    def endo_map(self, name: str) -> tuple[str, EndoMap]:
        try:
            return self.maps[name]
        except KeyError:
            raise InputError(f"no map named {name!r}") from None

    def conjecture(self, name: str):
        try:
            return self.conjectures[name]
        except KeyError:
            raise InputError(f"no conjecture named {name!r}") from None


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    text = text.replace("\r\n", "\n")
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        if m.lastgroup:
            toks.append(_Tok(m.lastgroup, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.model = Model()
        self.names: set[str] = set()

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            shown = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        self.i += 1
        return tok

    def ident(self) -> _Tok:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected identifier, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def declare(self, tok: _Tok) -> None:
        if tok.text in self.names:
            raise self.error(f"duplicate name {tok.text!r}", tok)
        self.names.add(tok.text)

    def parse(self) -> Model:
        while self.peek().kind != "eof":
            kw = self.ident()
            if kw.text == "relset":
                self.relset()
            elif kw.text == "map":
                self.map()
            elif kw.text == "conjecture":
                self.conjecture()
            else:
                raise self.error(f"expected 'relset', 'map' or 'conjecture', found {kw.text!r}", kw)
        return self.model

    def relset(self) -> None:
        name = self.ident()
        self.declare(name)
        self.expect("{")
        self.expect("elements")
        self.expect(":")
        elems: list[str] = []
        while self.peek().kind == "ident":
            tok = self.ident()
            if tok.text in elems:
                raise self.error(f"duplicate element {tok.text!r}", tok)
            elems.append(tok.text)
        self.expect(";")
        try:
            check_cap(len(elems))
        except Exception as exc:
            raise self.error(str(exc), name) from None
        idx = {e: k for k, e in enumerate(elems)}
        rows = [0] * len(elems)
        self.expect("le")
        self.expect(":")
        if self.peek().text != ";":
            while True:
                a = self.element(idx)
                b = self.element(idx)
                rows[a] |= 1 << b
                if self.peek().text != ",":
                    break
                self.expect(",")
        self.expect(";")
        self.expect("}")
        self.model.relsets[name.text] = RelatedSet(tuple(elems), tuple(rows))

    def element(self, idx: dict[str, int]) -> int:
        tok = self.ident()
        if tok.text not in idx:
            raise self.error(f"unknown identifier {tok.text!r}", tok)
        return idx[tok.text]

    def map(self) -> None:
        name = self.ident()
        self.declare(name)
        self.expect(":")
        rel_tok = self.ident()
        if rel_tok.text not in self.model.relsets:
            raise self.error(f"unknown identifier {rel_tok.text!r}", rel_tok)
        R = self.model.relsets[rel_tok.text]
        idx = R.index
        self.expect("{")
        target: list[int | None] = [None] * R.n
        while self.peek().text != "}":
            src_tok = self.peek()
            a = self.element(idx)
            self.expect("->")
            b = self.element(idx)
            self.expect(";")
            if target[a] is not None:
                raise self.error(f"duplicate assignment for {src_tok.text!r}", src_tok)
            target[a] = b
        close = self.expect("}")
        missing = [R.names[k] for k, t in enumerate(target) if t is None]
        if missing:
            raise self.error(f"map {name.text!r} is not total: missing {', '.join(missing)}", close)
        self.model.maps[name.text] = (rel_tok.text, EndoMap(tuple(target)))  # type: ignore[arg-type]

    def atom(self) -> str:
        from .search import is_atom

        tok = self.ident()
        text = tok.text
        if self.peek().text == "(":
            self.expect("(")
            arg = self.ident()
            self.expect(")")
            text = f"{text}({arg.text})"
        if not is_atom(text):
            raise self.error(f"unknown atom {text!r}", tok)
        return text

    def conjecture(self) -> None:
        from .search import Conjecture

        name = self.ident()
        self.declare(name)
        self.expect("{")
        self.expect("assume")
        self.expect(":")
        assume: list[str] = []
        if self.peek().text != ";":
            assume.append(self.atom())
            while self.peek().text == ",":
                self.expect(",")
                assume.append(self.atom())
        self.expect(";")
        self.expect("conclude")
        self.expect(":")
        conclude_tok = self.peek()
        conclude = self.atom()
        self.expect(";")
        self.expect("}")
        try:
            conj = Conjecture(name.text, tuple(assume), conclude)
        except ValueError as exc:
            raise self.error(str(exc), conclude_tok) from None
        self.model.conjectures[name.text] = conj


def parse_model(text: str) -> Model:
    return _Parser(text).parse()


def load_model(path) -> Model:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_model(fh.read())


def serialize_relset(name: str, R: RelatedSet) -> str:
    pairs = ", ".join(f"{R.names[i]} {R.names[j]}" for i in range(R.n) for j in members(R.rows[i]))
    elems = " ".join(R.names)
    return (f"relset {name} {{\n"
            f"  elements:{' ' + elems if elems else ''};\n"
            f"  le:{' ' + pairs if pairs else ''};\n"
            f"}}\n")


def serialize_map(name: str, rel_name: str, R: RelatedSet, f: EndoMap) -> str:
    lines = [f"map {name} : {rel_name} {{"]
    lines += [f"  {R.names[i]} -> {R.names[t]};" for i, t in enumerate(f.target)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_conjecture(c) -> str:
    return (f"conjecture {c.name} {{\n"
            f"  assume:{' ' + ', '.join(c.assume) if c.assume else ''};\n"
            f"  conclude: {c.conclude};\n"
            f"}}\n")


def serialize_model(model: Model) -> str:
    blocks = [serialize_relset(n, R) for n, R in model.relsets.items()]
    for name, (rel_name, f) in model.maps.items():
        blocks.append(serialize_map(name, rel_name, model.relsets[rel_name], f))
    blocks += [serialize_conjecture(c) for c in model.conjectures.values()]
    return "\n".join(blocks)
