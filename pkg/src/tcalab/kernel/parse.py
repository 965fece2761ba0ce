"""Surface syntax.

    type ::= "N" | "Unit" | "Empty" | type "->" type | type "*" type
           | type "+" type | "(" type ")"
    term ::= name | nat | "fn" name ":" type "." term | term term | "(" term ")"

`->` is right-associative and binds loosest; `*` binds tighter than `+`.
A literal k stands for succ^k zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .terms import COMBINATORS, App, Const, Lam, Term, Var, numeral
from .types import EMPTY, N, UNIT, Arrow, Prod, Sum, TypeExpr


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # name | nat | sym | eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"\s+|(?P<arrow>->)|(?P<sym>[().:*+])|(?P<nat>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind is not None:
            tokens.append(Token("sym" if kind == "arrow" else kind, m.group(), line, col))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, env: Optional[dict[str, Term]] = None):
        self.toks = tokenize(text)
        self.i = 0
        self.env = env or {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def take(self, text: Optional[str] = None, kind: Optional[str] = None) -> Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "name")

    def done(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # types
    def type_(self) -> TypeExpr:
        left = self.sum_type()
        if self.at("->"):
            self.take("->")
            return Arrow(left, self.type_())
        return left

    def sum_type(self) -> TypeExpr:
        left = self.prod_type()
        if self.at("+"):
            self.take("+")
            return Sum(left, self.sum_type())
        return left

    def prod_type(self) -> TypeExpr:
        left = self.atom_type()
        if self.at("*"):
            self.take("*")
            return Prod(left, self.prod_type())
        return left

    def atom_type(self) -> TypeExpr:
        tok = self.tok
        if self.at("("):
            self.take("(")
            t = self.type_()
            self.take(")")
            return t
        if tok.kind == "name" and tok.text in ("N", "Unit", "Empty"):
            self.i += 1
            return {"N": N, "Unit": UNIT, "Empty": EMPTY}[tok.text]
        raise self.error(f"expected a type, found {tok.text!r}" if tok.kind != "eof" else "expected a type, found end of input")

    # terms
    def term(self, scope: dict[str, Optional[TypeExpr]]) -> Term:
        if self.at("fn"):
            return self.lam(scope)
        head = self.atom(scope)
        if head is None:
            tok = self.tok
            raise self.error(f"expected a term, found {tok.text!r}" if tok.kind != "eof" else "expected a term, found end of input")
        while True:
            if self.at("fn"):
                return App(head, self.lam(scope))
            arg = self.atom(scope)
            if arg is None:
                return head
            head = App(head, arg)

    def lam(self, scope: dict[str, Optional[TypeExpr]]) -> Term:
        self.take("fn")
        tok = self.take(kind="name")
        if tok.text in COMBINATORS or tok.text == "fn":
            raise self.error(f"cannot bind reserved name {tok.text!r}", tok)
        ty = None
        if self.at(":"):
            self.take(":")
            ty = self.type_()
        self.take(".")
        body = self.term({**scope, tok.text: ty})
        return Lam(tok.text, ty, body)

    def atom(self, scope: dict[str, Optional[TypeExpr]]) -> Optional[Term]:
        tok = self.tok
        if tok.kind == "nat":
            self.i += 1
            return numeral(int(tok.text))
        if tok.kind == "name" and tok.text != "fn":
            self.i += 1
            if tok.text in scope:
                return Var(tok.text, scope[tok.text])
            if tok.text in self.env:
                return self.env[tok.text]
            if tok.text in COMBINATORS:
                return Const(tok.text)
            raise self.error(f"unbound name {tok.text!r}", tok)
        if self.at("("):
            self.take("(")
            t = self.term(scope)
            self.take(")")
            return t
        return None


def parse_term(text: str, env: Optional[dict[str, Term]] = None) -> Term:
    """Parse a term; names in `env` are spliced in as the given (closed) terms."""
    p = _Parser(text, env)
    t = p.term({})
    p.done()
    return t


def parse_type(text: str) -> TypeExpr:
    p = _Parser(text)
    t = p.type_()
    p.done()
    return t
