"""Parser for diagram expressions such as ``2*psi(1)*y(2)^3*e(1 2) - e(2 1)``.

Grammar (whitespace-insensitive)::

    sum    := prod (('+' | '-') prod)*
    prod   := unary ('*' unary)*
    unary  := '-' unary | atom
    atom   := NUMBER ['/' NUMBER] | gen ['^' INT] | '(' sum ')'
    gen    := 'e' '(' VERTEX* ')' | 'y' '(' INT ')' | 'psi' '(' INT ')'

Products are read like composition of operators: the rightmost factor acts
first, so every monomial must end in an idempotent ``e(...)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..rootdata import RootDatum
from .algebra import KLRElement, algebra_for

__all__ = ["ExprSyntaxError", "evaluate_expression", "parse_expression"]


class ExprSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos, self.expected = text, pos, expected
        found = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(f"parse error at position {pos}: expected {expected}, found {found}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while True:
            m = re.compile(r"\s*").match(text, pos)
            pos = m.end()
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ExprSyntaxError(text, pos, "a number, name or operator")
            start = m.start(m.lastgroup)
            self.toks.append((m.lastgroup, m.group(m.lastgroup), start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str, what: str | None = None):
        kind, val, pos = self.peek()
        if val != value or kind == "end":
            raise ExprSyntaxError(self.text, pos, what or repr(value))
        return self.next()

    def integer(self, what: str) -> int:
        kind, val, pos = self.peek()
        if kind != "num":
            raise ExprSyntaxError(self.text, pos, what)
        self.next()
        return int(val)


# A parsed expression is a list of (coefficient, tokens) monomials.

def _mul(a: list, b: list) -> list:
    return [(c1 * c2, t1 + t2) for c1, t1 in a for c2, t2 in b]


def _parse_sum(lx: _Lexer, vertex) -> list:
    out = _parse_prod(lx, vertex)
    while lx.peek()[1] in ("+", "-") and lx.peek()[0] == "op":
        op = lx.next()[1]
        rhs = _parse_prod(lx, vertex)
        out = out + ([(c, t) for c, t in rhs] if op == "+" else [(-c, t) for c, t in rhs])
    return out


def _parse_prod(lx: _Lexer, vertex) -> list:
    out = _parse_unary(lx, vertex)
    while lx.peek()[1] == "*" and lx.peek()[0] == "op":
        lx.next()
        out = _mul(out, _parse_unary(lx, vertex))
    return out


def _parse_unary(lx: _Lexer, vertex) -> list:
    if lx.peek()[1] == "-" and lx.peek()[0] == "op":
        lx.next()
        return [(-c, t) for c, t in _parse_unary(lx, vertex)]
    return _parse_atom(lx, vertex)


def _power(lx: _Lexer, base: list) -> list:
    if lx.peek()[1] == "^" and lx.peek()[0] == "op":
        lx.next()
        m = lx.integer("an exponent")
        out = [(Fraction(1), ())]
        for _ in range(m):
            out = _mul(out, base)
        return out
    return base


def _parse_atom(lx: _Lexer, vertex) -> list:
    kind, val, pos = lx.peek()
    if kind == "num":
        lx.next()
        c = Fraction(int(val))
        if lx.peek()[1] == "/" and lx.peek()[0] == "op":
            lx.next()
            den = lx.integer("a denominator")
            if den == 0:
                raise ExprSyntaxError(lx.text, lx.toks[lx.i - 1][2], "a nonzero denominator")
            c /= den
        return [(c, ())]
    if kind == "op" and val == "(":
        lx.next()
        inner = _parse_sum(lx, vertex)
        lx.expect(")", "')'")
        return _power(lx, inner)
    if kind == "name" and val in ("e", "y", "psi"):
        lx.next()
        lx.expect("(", "'(' after " + val)
        if val == "e":
            word = []
            while lx.peek()[0] in ("num", "name"):
                k2, v2, p2 = lx.next()
                try:
                    word.append(vertex(v2))
                except KeyError:
                    raise ExprSyntaxError(lx.text, p2, "a declared vertex") from None
            lx.expect(")", "a vertex or ')'")
            tok = ("e", tuple(word))
        else:
            k = lx.integer("a strand index")
            lx.expect(")", "')'")
            tok = (val, k)
        return _power(lx, [(Fraction(1), (tok,))])
    raise ExprSyntaxError(lx.text, pos, "a number, e(...), y(k), psi(k) or '('")


def parse_expression(text: str, d: RootDatum | None = None) -> list[tuple[Fraction, tuple]]:
    """Parse into monomials (coefficient, generator tokens)."""
    vertex = d.vertex if d is not None else (lambda s: s)
    lx = _Lexer(text)
    if lx.peek()[0] == "end":
        raise ExprSyntaxError(text, 0, "an expression")
    out = _parse_sum(lx, vertex)
    kind, val, pos = lx.peek()
    if kind != "end":
        raise ExprSyntaxError(text, pos, "'+', '-', '*' or end of input")
    return out


def evaluate_expression(d: RootDatum, text: str) -> KLRElement:
    """Parse and multiply out to normal form."""
    monos = parse_expression(text, d)
    alg = algebra_for(d)
    n = None
    total = None
    for c, toks in monos:
        if not toks or toks[-1][0] != "e":
            raise ExprSyntaxError(text, len(text), "every monomial to end with an idempotent e(...)")
        word = toks[-1][1]
        if n is None:
            n, total = len(word), KLRElement(len(word))
        elif len(word) != n:
            raise ValueError(f"strand-count mismatch: {n} vs {len(word)}")
        for kind, arg in toks:
            limit = n if kind == "y" else n - 1
            if kind == "e" and len(arg) != n:
                raise ValueError(f"strand-count mismatch: {n} vs {len(arg)}")
            if kind in ("y", "psi") and not 1 <= arg <= limit:
                raise ValueError(f"{kind}({arg}) out of range for {n} strands")
        if c:
            total = total + alg.product(toks[:-1], KLRElement.idempotent(word)) * c
    return total
