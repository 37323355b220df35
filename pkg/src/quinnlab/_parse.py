"""Tiny recursive-descent parser for the package's exact text formats.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*        # juxtaposition multiplies
    factor := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names are single identifiers (``x``, ``y``, ``t``, ``i``, ``w``).  The
parser is parameterised by an *algebra*: any object providing ``const``,
``var``, ``add``, ``sub``, ``mul``, ``div``, ``neg`` and ``pow``.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*'?)|(\S))")


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r} in {text!r}")
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, algebra, variables):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.alg = algebra
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, sym):
        kind, val = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        kind, val = self.peek()
        negate = False
        if kind == "sym" and val in "+-":
            self.take()
            negate = val == "-"
        value = self.term()
        if negate:
            value = self.alg.neg(value)
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                rhs = self.term()
                value = self.alg.add(value, rhs) if val == "+" else self.alg.sub(value, rhs)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "sym" and val in "*/":
                self.take()
                rhs = self.factor()
                value = self.alg.mul(value, rhs) if val == "*" else self.alg.div(value, rhs)
            elif kind in ("int", "name") or (kind == "sym" and val == "("):
                value = self.alg.mul(value, self.factor())
            else:
                return value

    def factor(self):
        base_tok = self.peek()
        value = self.atom()
        kind, val = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, exp = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            value = self.alg.pow(value, exp, base_tok)
        return value

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.alg.const(val)
        if kind == "name":
            if val not in self.variables:
                raise ParseError(
                    f"unknown variable {val!r} in {self.text!r}; allowed: {sorted(self.variables)}")
            return self.alg.var(val)
        if kind == "sym" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_expression(text: str, algebra, variables) -> object:
    return _Parser(text, algebra, set(variables)).parse()


def split_matrix(text: str) -> list:
    """Split ``"[[a,b],[c,d]]"`` into ``[["a","b"],["c","d"]]``."""
    s = text.strip()
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError(f"matrix must look like [[a,b],[c,d]], got {text!r}")
    rows, depth, cur, row = [], 0, "", []
    for ch in s[1:-1]:
        if ch == "[" and depth == 0:
            depth, cur, row = 1, "", []
            continue
        if ch == "]" and depth == 1:
            row.append(cur.strip())
            rows.append(row)
            depth = 0
            continue
        if depth == 0:
            if ch not in ", \t":
                raise ParseError(f"malformed matrix {text!r}")
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 1:
            row.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ParseError(f"expected a 2x2 matrix, got {text!r}")
    return rows
