"""Text format for diagrams (``.sfd`` files).

A module starts with a field header and continues with definitions::

    field Qs
    # a double integrator
    let integrate = scale(1/s)
    let ii = integrate ; integrate

``;`` composes top to bottom (left operand first) and ``*`` places terms
side by side; ``*`` binds tighter.  Terms are typechecked while parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .diagram import (
    ADD,
    BRAID,
    CAP,
    CUP,
    DELETE,
    DUP,
    ID,
    ZERO,
    Diagram,
    Empty,
    Gen,
    Kind,
    Par,
    Seq,
    identity_n,
    scale,
)
from .errors import DuplicateName, FieldMismatch, ParseError, TypeMismatch, UnknownName
from .exactfield import QS, Field, GF, QQ, format_scalar, parse_scalar

ATOMS = {
    "add": ADD,
    "zero": ZERO,
    "dup": DUP,
    "del": DELETE,
    "cup": CUP,
    "cap": CAP,
    "swap": BRAID,
    "id": ID,
}
KEYWORDS = set(ATOMS) | {"scale", "let", "field"}

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<sym>[;*()\[\]=])")


@dataclass
class Token:
    kind: str  # name, int, sym, scalar, end
    text: str
    pos: int

    @property
    def end(self) -> int:
        return self.pos + max(len(self.text), 1)


def _tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        if kind is not None:
            toks.append(Token(kind, m.group(), i))
        i = m.end()
        if kind == "name" and m.group() == "scale":
            j = i
            while j < n and text[j] in " \t\r\n":
                j += 1
            if j < n and text[j] == "(":
                toks.append(Token("sym", "(", j))
                depth, k = 1, j + 1
                while k < n and depth:
                    if text[k] == "(":
                        depth += 1
                    elif text[k] == ")":
                        depth -= 1
                    k += 1
                if depth:
                    raise ParseError("unclosed '(' in scale", j)
                toks.append(Token("scalar", text[j + 1 : k - 1], j + 1))
                toks.append(Token("sym", ")", k - 1))
                i = k
    toks.append(Token("end", "", n))
    return toks


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


@dataclass
class ModuleSource:
    field: Field
    definitions: dict[str, Diagram] = dc_field(default_factory=dict)

    def __getitem__(self, name: str) -> Diagram:
        try:
            return self.definitions[name]
        except KeyError:
            raise UnknownName(f"no definition named {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.definitions

    def names(self) -> list[str]:
        return list(self.definitions)


class _Parser:
    def __init__(self, text: str, field: Field | None = None, env: dict | None = None):
        self.text = text
        try:
            self.toks = _tokenize(text)
        except ParseError as e:
            raise self.locate(ParseError, e.message, e.position) from None
        self.i = 0
        self.field = field
        self.env: dict[str, Diagram] = dict(env or {})

    def peek(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("sym", "name") and t.text == text

    def expect(self, text: str, what: str | None = None) -> Token:
        if not self.at(text):
            self.fail(f"expected {what or repr(text)} but found {self.describe(self.peek())}", self.peek())
        return self.advance()

    @staticmethod
    def describe(tok: Token) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def locate(self, exc_type, message: str, pos: int, **extra):
        line, col = _line_col(self.text, pos)
        err = exc_type(message, pos, line, col)
        for k, v in extra.items():
            setattr(err, k, v)
        return err

    def fail(self, message: str, tok: Token):
        raise self.locate(ParseError, message, tok.pos)

    # module := header def*
    def module(self) -> ModuleSource:
        self.expect("field", "'field' header")
        declared = self.field_name()
        self.field = self.field or declared
        mod = ModuleSource(self.field)
        while self.peek().kind != "end":
            self.expect("let", "'let'")
            tok = self.advance()
            if tok.kind != "name" or tok.text in KEYWORDS:
                self.fail(f"expected a definition name but found {self.describe(tok)}", tok)
            if tok.text in self.env:
                raise self.locate(DuplicateName, f"{tok.text!r} is already defined", tok.pos)
            self.expect("=")
            self.env[tok.text] = mod.definitions[tok.text] = self.term()
        return mod

    def field_name(self) -> Field:
        tok = self.advance()
        if tok.kind == "name":
            if tok.text == "Q":
                return QQ
            if tok.text == "Qs":
                return QS
            p_text = None
            if tok.text == "GF" and self.peek().kind == "int":
                p_text = self.advance().text
            elif re.fullmatch(r"GF[0-9]+", tok.text):
                p_text = tok.text[2:]
            if p_text is not None:
                try:
                    return GF(int(p_text))
                except ValueError as e:
                    self.fail(str(e), tok)
        self.fail(f"expected Q, Qs or GF p but found {self.describe(tok)}", tok)

    # seq := par (';' par)*
    def term(self) -> Diagram:
        d = self.par()
        while self.at(";"):
            self.advance()
            start = self.peek()
            rhs = self.par()
            if d.cod != rhs.dom:
                raise self.locate(
                    TypeMismatch,
                    f"cannot compose: left side has {d.cod} output(s), right side takes {rhs.dom} input(s)",
                    start.pos,
                    expected=d.cod,
                    found=rhs.dom,
                )
            d = Seq(d, rhs)
        return d

    # par := atom ('*' atom)*
    def par(self) -> Diagram:
        d = self.atom()
        while self.at("*"):
            self.advance()
            d = Par(d, self.atom())
        return d

    def atom(self) -> Diagram:
        tok = self.advance()
        if tok.kind == "sym" and tok.text == "(":
            d = self.term()
            self.expect(")", "')'")
            return d
        if tok.kind != "name":
            self.fail(f"expected a term but found {self.describe(tok)}", tok)
        if tok.text == "id" and self.at("["):
            self.advance()
            n = self.advance()
            if n.kind != "int":
                self.fail(f"expected a wire count but found {self.describe(n)}", n)
            self.expect("]", "']'")
            return identity_n(int(n.text))
        if tok.text in ATOMS:
            return ATOMS[tok.text]
        if tok.text == "scale":
            self.expect("(", "'('")
            lit = self.advance()
            if lit.kind != "scalar":
                self.fail("expected a scalar", lit)
            self.expect(")", "')'")
            return scale(self.scalar(lit))
        if tok.text in KEYWORDS:
            self.fail(f"unexpected keyword {tok.text!r}", tok)
        if tok.text not in self.env:
            raise self.locate(UnknownName, f"{tok.text!r} is not defined", tok.pos)
        return self.env[tok.text]

    def scalar(self, lit: Token):
        try:
            return parse_scalar(lit.text, self.field or QS, base=lit.pos)
        except ParseError as e:
            raise self.locate(ParseError, e.message, e.position) from None
        except FieldMismatch as e:
            raise self.locate(ParseError, f"{e}", lit.pos) from None


def parse_module(text: str, field: Field | None = None) -> ModuleSource:
    """Parse a whole module; ``field`` overrides the declared header field."""
    return _Parser(text, field).module()


def parse_term(text: str, field: Field = QS, env: dict | None = None) -> Diagram:
    """Parse a single term; ``env`` supplies names it may refer to."""
    p = _Parser(text, field, env)
    d = p.term()
    if p.peek().kind != "end":
        p.fail(f"unexpected {p.describe(p.peek())} after term", p.peek())
    return d


def _print(d: Diagram) -> str:
    if isinstance(d, Empty):
        return "id[0]"
    if isinstance(d, Gen):
        if d.kind is Kind.SCALE:
            return f"scale({format_scalar(d.scalar)})"
        return d.kind.value
    op = " ; " if isinstance(d, Seq) else " * "
    left = _print(d.left)
    if isinstance(d.left, (Seq, Par)) and type(d.left) is not type(d):
        left = f"({left})"
    right = _print(d.right)
    if isinstance(d.right, (Seq, Par)):
        right = f"({right})"
    return left + op + right


def print_diagram(d: Diagram) -> str:
    return _print(d)


def print_module(field: Field, definitions: dict[str, Diagram]) -> str:
    head = f"field GF {field.p}" if field.kind == "GF" else f"field {field.kind}"
    return "\n".join([head] + [f"let {k} = {print_diagram(v)}" for k, v in definitions.items()]) + "\n"
