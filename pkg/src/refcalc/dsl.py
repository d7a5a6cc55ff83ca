"""Recursive-descent parser for index terms, described subsets and families.

Grammar::

    index  := "Atom" NAME | "FinSet" INT | "Sum(" index "," index ")"
            | "Prod(" index "," index ")"
    subset := "Fin{" ints "}" | "Cofin{" ints "}" | "Pair(" subset "," subset ")"
            | "Rect(" subset "," subset ")" | "Graph(" INT ["," "Cofin{" ints "}"] ")"
            | "Union(" subset {"," subset} ")"
    family := "FIN" | "FULL" | "POLAR(" family ")" | "SUMFAM(" family "," family ")"
            | "RECT(" family "," family ")"

``Finite{..}`` and ``Cofinite{..}`` are accepted as spellings of ``Fin{..}``
and ``Cofin{..}``.  Printing is ``str()`` on the AST nodes; parsing the
printed form gives back an equal AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import index_language as il
from .families import FIN, FULL, POLAR, RECT, SUMFAM, check_family


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, PUNCT, EOF
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z0-9_]*)|([(){},]))")


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Split `text` into tokens; positions are 1-based and offset by (line, column)."""
    tokens = []
    pos = 0
    cur_line, line_start = line, -(column - 1)

    def where(p):
        nl = text.count("\n", 0, p)
        if nl:
            return cur_line + nl, p - text.rfind("\n", 0, p)
        return cur_line, p - line_start + 1

    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            stripped = len(rest) - len(rest.lstrip())
            p = pos + stripped
            if p >= len(text):
                tokens.append(Token("EOF", "", *where(len(text))))
                return tokens
            raise DSLSyntaxError(f"unexpected character {text[p]!r}", *where(p))
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(Token("INT", m.group(1), *where(start)))
        elif m.group(2) is not None:
            tokens.append(Token("NAME", m.group(2), *where(start)))
        else:
            tokens.append(Token("PUNCT", m.group(3), *where(start)))
        pos = m.end()


class Parser:
    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.tokens = tokenize(text, line, column)
        self.i = 0

    # -- token helpers
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise DSLSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text or tok.kind == "EOF":
            self.fail(f"expected {text!r}")
        return self.next()

    def expect_kind(self, kind, what):
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {what}")
        return self.next()

    def end(self):
        if self.peek().kind != "EOF":
            self.fail("expected end of input")

    # -- grammar
    def index(self):
        tok = self.expect_kind("NAME", "an index term")
        if tok.text == "Atom":
            name = self.expect_kind("NAME", "an atom name")
            return il.Atom(name.text)
        if tok.text == "FinSet":
            n = self.expect_kind("INT", "a cardinality")
            if int(n.text) < 0:
                raise DSLSyntaxError("FinSet cardinality must be >= 0", n.line, n.column)
            return il.FinSet(int(n.text))
        if tok.text in ("Sum", "Prod"):
            self.expect("(")
            left = self.index()
            self.expect(",")
            right = self.index()
            self.expect(")")
            return (il.Sum if tok.text == "Sum" else il.Prod)(left, right)
        self.fail("expected Atom, FinSet, Sum or Prod", tok)

    def ints(self):
        self.expect("{")
        vals = []
        if self.peek().text != "}":
            vals.append(int(self.expect_kind("INT", "an integer").text))
            while self.peek().text == ",":
                self.next()
                vals.append(int(self.expect_kind("INT", "an integer").text))
        self.expect("}")
        return vals

    def subset(self):
        tok = self.expect_kind("NAME", "a subset")
        t = tok.text
        if t in ("Fin", "Finite"):
            return il.finite(self.ints())
        if t in ("Cofin", "Cofinite"):
            return il.cofinite(self.ints())
        if t in ("Pair", "Rect"):
            self.expect("(")
            left = self.subset()
            self.expect(",")
            right = self.subset()
            self.expect(")")
            return il.Pair(left, right) if t == "Pair" else il.union_of([il.Rect(left, right)])
        if t == "Graph":
            self.expect("(")
            k = int(self.expect_kind("INT", "an offset").text)
            excl = ()
            if self.peek().text == ",":
                self.next()
                name = self.expect_kind("NAME", "Cofin")
                if name.text not in ("Cofin", "Cofinite"):
                    self.fail("expected Cofin", name)
                excl = self.ints()
            self.expect(")")
            return il.union_of([il.graph(k, excl)])
        if t == "Union":
            self.expect("(")
            parts = [self.subset()]
            while self.peek().text == ",":
                self.next()
                parts.append(self.subset())
            self.expect(")")
            for sub in parts:
                if not isinstance(sub, il.Union):
                    self.fail(f"Union members must be product subsets, got {sub}", tok)
            return il.union_of(parts)
        self.fail("expected Fin, Cofin, Pair, Rect, Graph or Union", tok)

    def family(self, index):
        tok = self.expect_kind("NAME", "a family")
        t = tok.text
        if t == "FIN":
            return FIN(index)
        if t == "FULL":
            return FULL(index)
        if t == "POLAR":
            self.expect("(")
            inner = self.family(index)
            self.expect(")")
            return POLAR(inner)
        if t in ("SUMFAM", "RECT"):
            want = il.Sum if t == "SUMFAM" else il.Prod
            if not isinstance(index, want):
                raise il.IndexTypeError(
                    f"line {tok.line}, column {tok.column}: {t} needs a "
                    f"{want.__name__} index, got {index}"
                )
            self.expect("(")
            left = self.family(index.left)
            self.expect(",")
            right = self.family(index.right)
            self.expect(")")
            return (SUMFAM if t == "SUMFAM" else RECT)(left, right)
        self.fail("expected FIN, FULL, POLAR, SUMFAM or RECT", tok)


def parse_index_term(text: str, line: int = 1, column: int = 1):
    p = Parser(text, line, column)
    out = p.index()
    p.end()
    return out


def parse_subset(text: str, index=None, line: int = 1, column: int = 1):
    """Parse a subset; when `index` is given the result is type-checked against it."""
    p = Parser(text, line, column)
    out = p.subset()
    p.end()
    if index is not None:
        il.check_subset(out, index)
    return out


def parse_family(text: str, index, line: int = 1, column: int = 1):
    p = Parser(text, line, column)
    out = p.family(index)
    p.end()
    check_family(out, index)
    return out
