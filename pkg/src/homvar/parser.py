"""Recursive-descent parser for scalar expressions and parameter maps.

Grammar (whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' int)?
    base   := int | atom | '(' expr ')' | '-' base
    atom   := 'u' int ('_' digits)?      digits in {1, 2}
            | 't1' | 't2'                (parameter maps only)

Atoms with unsorted digit strings are canonicalized (u1_21 means u1_12).
Parsing yields a small AST of tagged tuples which is then evaluated either
to a Scalar (jet coordinates) or to a bivariate parameter polynomial.
"""

from __future__ import annotations

import re

from .jet_index import JetCoord, MultiIndex
from .symexpr import Scalar, rational


class ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(f"column {pos + 1}: {message}")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\w*)|(?P<op>[-+*/^()]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = n - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        for kind in ("int", "name", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val, m.start(kind)))
                break
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


_ATOM_RE = re.compile(r"u(\d+)(?:_(\d+))?$")


class _Parser:
    def __init__(self, text: str, allow_params: bool):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.allow_params = allow_params

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != symbol:
            raise ParseError(f"expected {symbol!r}", pos)
        return self.take()

    def parse(self):
        ast = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return ast

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if val == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                node = ("mul" if val == "*" else "div", node, rhs)
            else:
                return node

    def factor(self):
        node = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                self.take()
                sign = -1
                kind, val, pos = self.peek()
            if kind != "int":
                raise ParseError("exponent must be an integer literal", pos)
            self.take()
            node = ("pow", node, sign * int(val))
        return node

    def base(self):
        # note '-' base is itself a base, so a trailing '^' applies to the
        # negated value; the renderer avoids emitting that shape
        kind, val, pos = self.take()
        if kind == "int":
            return ("num", int(val))
        if kind == "op" and val == "-":
            return ("neg", self.base())
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            return self.atom(val, pos)
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)

    def atom(self, name: str, pos: int):
        if name in ("t1", "t2"):
            if not self.allow_params:
                raise ParseError("parameter atoms are only allowed in maps", pos)
            return ("param", int(name[1]))
        m = _ATOM_RE.match(name)
        if m is None:
            raise ParseError(f"unrecognized atom {name!r}", pos)
        if self.allow_params:
            raise ParseError("jet coordinates are not allowed in maps", pos)
        field = int(m.group(1))
        if field < 1:
            raise ParseError("field index must be >= 1", pos)
        digits = m.group(2) or ""
        entries = []
        for ch in digits:
            if ch not in "12":
                raise ParseError(f"index digit {ch!r} out of range (must be 1 or 2)", pos)
            entries.append(int(ch))
        return ("coord", JetCoord.make(field, MultiIndex.from_entries(entries)))


def parse(text: str):
    """Parse to the tagged-tuple AST."""
    return _Parser(text, allow_params=False).parse()


def _ast_to_scalar(ast) -> Scalar:
    tag = ast[0]
    if tag == "num":
        return Scalar.from_int(ast[1])
    if tag == "coord":
        return Scalar.coordinate(ast[1])
    if tag == "neg":
        return -_ast_to_scalar(ast[1])
    if tag == "pow":
        return _ast_to_scalar(ast[1]) ** ast[2]
    if tag == "div" and ast[2][0] == "pow":
        # keep powered denominators factored: a / b^k = a * b^-k
        return _ast_to_scalar(ast[1]) * _ast_to_scalar(ast[2][1]) ** (-ast[2][2])
    a = _ast_to_scalar(ast[1])
    b = _ast_to_scalar(ast[2])
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return a / b
    raise ValueError(f"unknown AST node {tag!r}")


def parse_scalar(text: str) -> Scalar:
    return _ast_to_scalar(parse(text))


def _ast_to_tpoly(ast) -> dict:
    tag = ast[0]
    if tag == "num":
        return {(0, 0): ast[1]} if ast[1] else {}
    if tag == "param":
        return {((1, 0) if ast[1] == 1 else (0, 1)): 1}
    if tag == "neg":
        return {k: -v for k, v in _ast_to_tpoly(ast[1]).items()}
    if tag == "pow":
        if ast[2] < 0:
            raise ParseError("map components must be polynomials", 0)
        out = {(0, 0): 1}
        for _ in range(ast[2]):
            out = _tp_mul(out, _ast_to_tpoly(ast[1]))
        return out
    a = _ast_to_tpoly(ast[1])
    b = _ast_to_tpoly(ast[2])
    if tag == "add":
        return _tp_add(a, b, 1)
    if tag == "sub":
        return _tp_add(a, b, -1)
    if tag == "mul":
        return _tp_mul(a, b)
    if tag == "div":
        if set(b) - {(0, 0)}:
            raise ParseError("map components may only be divided by constants", 0)
        c = b.get((0, 0), 0)
        if c == 0:
            raise ParseError("division by zero in map", 0)
        return {k: rational(1) * v / c for k, v in a.items()}
    raise ValueError(f"unknown AST node {tag!r}")


def _tp_add(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _tp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (e1, e2), va in a.items():
        for (f1, f2), vb in b.items():
            k = (e1 + f1, e2 + f2)
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def parse_map(text: str) -> list[dict]:
    """Parse a comma-separated list of bivariate polynomials in t1, t2."""
    parts = text.split(",")
    out = []
    for part in parts:
        if not part.strip():
            raise ParseError("empty map component", 0)
        ast = _Parser(part, allow_params=True).parse()
        out.append(_ast_to_tpoly(ast))
    return out
