"""Tokenizer and expression parsers shared by the ring layer and the CLI.

Errors carry a machine-readable code, a 1-based line and column, and the set
of tokens that would have been accepted.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .errors import KrullKitError

LEXICAL = "lex-error"
SYNTAX = "syntax-error"
NAME = "name-error"
ARITY = "arity-error"
TYPE = "type-error"


class ParseError(KrullKitError):
    def __init__(self, code: str, message: str, line: int = 0, col: int = 0, expected: Sequence[str] = ()):
        self.code = code
        self.message = message
        self.line = line
        self.col = col
        self.expected = sorted(set(expected))
        where = f"{line}:{col}: " if line else ""
        hint = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{code}: {message}{hint}")

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "line": self.line, "col": self.col, "expected": self.expected}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "op" or "eof"
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<op>\|-|->|[{}()\[\];:,|&+\-*/^=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(LEXICAL, f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class TokenStream:
    tokens: list[Token]
    pos: int = 0
    _expected: set = field(default_factory=set)

    @classmethod
    def of(cls, text: str) -> TokenStream:
        return cls(tokenize(text))

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind in ("op", "ident") and tok.text == text:
            return True
        self._expected.add(repr(text))
        return False

    def at_kind(self, kind: str) -> bool:
        if self.peek().kind == kind:
            return True
        self._expected.add(kind)
        return False

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        self._expected = set()
        return tok

    def accept(self, text: str) -> Token | None:
        return self.advance() if self.at(text) else None

    def expect(self, text: str) -> Token:
        if self.at(text):
            return self.advance()
        self.fail()

    def expect_kind(self, kind: str) -> Token:
        if self.at_kind(kind):
            return self.advance()
        self.fail()

    def fail(self, message: str | None = None):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(SYNTAX, message or f"unexpected {found}", tok.line, tok.col, self._expected)

    def expect_end(self) -> None:
        if not self.at_kind("eof"):
            self.fail()


# ring element expressions: integers, variables, + - * ^ and parentheses;
# ``/`` only where the caller supplies a division


@dataclass(frozen=True)
class ExprOps:
    const: Callable[[int], object]
    var: Callable[[str], object]
    add: Callable
    sub: Callable
    mul: Callable
    neg: Callable
    pow: Callable
    div: Callable | None = None


def parse_expr(ts: TokenStream, ops: ExprOps):
    value = _term(ts, ops)
    while True:
        if ts.accept("+"):
            value = ops.add(value, _term(ts, ops))
        elif ts.accept("-"):
            value = ops.sub(value, _term(ts, ops))
        else:
            return value


def _term(ts: TokenStream, ops: ExprOps):
    value = _unary(ts, ops)
    while True:
        if ts.accept("*"):
            value = ops.mul(value, _unary(ts, ops))
        elif ops.div is not None and ts.accept("/"):
            tok = ts.peek()
            value = ops.div(value, _unary(ts, ops), tok)
        else:
            return value


def _unary(ts: TokenStream, ops: ExprOps):
    if ts.accept("-"):
        return ops.neg(_unary(ts, ops))
    return _power(ts, ops)


def _power(ts: TokenStream, ops: ExprOps):
    base = _atom(ts, ops)
    if ts.accept("^"):
        exp = ts.expect_kind("int")
        return ops.pow(base, int(exp.text))
    return base


def _atom(ts: TokenStream, ops: ExprOps):
    if ts.at_kind("int"):
        return ops.const(int(ts.advance().text))
    if ts.at_kind("ident"):
        tok = ts.advance()
        try:
            return ops.var(tok.text)
        except KeyError:
            raise ParseError(NAME, f"unknown variable {tok.text!r}", tok.line, tok.col) from None
    if ts.accept("("):
        value = parse_expr(ts, ops)
        ts.expect(")")
        return value
    ts.fail()


def parse_expression(text: str, ops: ExprOps):
    ts = TokenStream.of(text)
    value = parse_expr(ts, ops)
    ts.expect_end()
    return value


# lattice terms: generators, 0, 1, & (meet), | (join), parentheses


def parse_lattice_term(ts: TokenStream) -> tuple:
    parts = [_meet_term(ts)]
    while ts.accept("|"):
        parts.append(_meet_term(ts))
    return parts[0] if len(parts) == 1 else ("join", *parts)


def _meet_term(ts: TokenStream) -> tuple:
    parts = [_lattice_atom(ts)]
    while ts.accept("&"):
        parts.append(_lattice_atom(ts))
    return parts[0] if len(parts) == 1 else ("meet", *parts)


def _lattice_atom(ts: TokenStream) -> tuple:
    if ts.at_kind("int"):
        tok = ts.peek()
        if tok.text in ("0", "1"):
            ts.advance()
            return (tok.text,)
        raise ParseError(SYNTAX, "only 0 and 1 are lattice constants", tok.line, tok.col, ["'0'", "'1'", "ident"])
    if ts.at_kind("ident"):
        tok = ts.advance()
        return ("gen", tok.text, tok.line, tok.col)
    if ts.accept("("):
        inner = parse_lattice_term(ts)
        ts.expect(")")
        return inner
    ts.fail()


def strip_positions(term: tuple) -> tuple:
    if term[0] == "gen":
        return ("gen", term[1])
    if term[0] in ("meet", "join"):
        return (term[0], *(strip_positions(t) for t in term[1:]))
    return term


def eval_lattice_term(term: tuple, lattice) -> int:
    """Evaluate a term against the named generators of ``lattice``."""
    kind = term[0]
    if kind == "0":
        return lattice.bot
    if kind == "1":
        return lattice.top
    if kind == "gen":
        try:
            return lattice.generators[term[1]]
        except KeyError:
            line, col = (term[2], term[3]) if len(term) > 3 else (0, 0)
            raise ParseError(NAME, f"unknown generator {term[1]!r}", line, col) from None
    values = [eval_lattice_term(t, lattice) for t in term[1:]]
    return lattice.meet(*values) if kind == "meet" else lattice.join(*values)


def format_lattice_term(term: tuple, parent: str | None = None) -> str:
    kind = term[0]
    if kind in ("0", "1"):
        return kind
    if kind == "gen":
        return term[1]
    sep = " & " if kind == "meet" else " | "
    body = sep.join(format_lattice_term(t, kind) for t in term[1:])
    return f"({body})" if parent is not None and parent != kind else body


def parse_chain(ts: TokenStream) -> list[tuple[list[tuple], list[tuple]]]:
    """``{ j1, j2 ; u1 } | { ; u2 } | ...`` as a list of (J terms, U terms)."""
    levels = [_chain_level(ts)]
    while ts.accept("|"):
        levels.append(_chain_level(ts))
    return levels


def _term_list(ts: TokenStream, stops: tuple[str, ...]) -> list[tuple]:
    out = []
    if any(ts.at(s) for s in stops):
        return out
    out.append(parse_lattice_term(ts))
    while ts.accept(","):
        out.append(parse_lattice_term(ts))
    return out


def _chain_level(ts: TokenStream) -> tuple[list[tuple], list[tuple]]:
    ts.expect("{")
    js = _term_list(ts, (";",))
    ts.expect(";")
    us = _term_list(ts, ("}",))
    ts.expect("}")
    return js, us


def parse_chain_text(text: str) -> list[tuple[list[tuple], list[tuple]]]:
    ts = TokenStream.of(text)
    levels = parse_chain(ts)
    ts.expect_end()
    return levels
