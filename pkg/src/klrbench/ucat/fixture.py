"""Line-oriented text format for candidate actions.

::

    weight 1,0 dim 1
    end 1,0 = q^2 + 1
    matrix E 1 at -1,1 shape 1x1
      row 1
    table 2 words 1 1; 1 2
      degrees -1 1
      op psi 1 shape 2x2
        row 0 1
        row 0 0
    sideways 1 2 shape 2x2
      S
        row 1 0
        row 0 1
      Sprime
        ...
    identity <label> shape RxC
      lhs
        row ...
      rhs
        row ...

Laurent entries in a ``matrix`` row are separated by `` ; ``; rational
entries in operator rows by spaces.  Vertices are written by their labels.
``print_candidate`` and ``parse_candidate`` are mutually inverse.
"""

from __future__ import annotations

from fractions import Fraction

from ..laurent import LaurentPoly, Matrix, format_fraction, parse_fraction
from ..rootdata import RootDatum, Weight
from .certify import CandidateAction, CandidateError, OperatorTable

__all__ = ["FixtureError", "parse_candidate", "print_candidate"]


class FixtureError(CandidateError):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


def _w(mu: Weight) -> str:
    return ",".join(str(a) for a in mu.coords)


def _rat_rows(m) -> list[str]:
    return ["row " + " ".join(format_fraction(x) for x in row) if row else "row" for row in m]


def _shape(m) -> str:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return f"{rows}x{cols}"


def print_candidate(d: RootDatum, c: CandidateAction) -> str:
    out = []
    for mu in c.weights:
        out.append(f"weight {_w(mu)} dim {c.dim(mu)}")
    for mu in c.weights:
        if mu in c.end_dims:
            out.append(f"end {_w(mu)} = {c.end_dims[mu]}")
    for name, table in (("E", c.E), ("F", c.F)):
        keys = sorted(table, key=lambda k: (d.index[k[0]], k[1].coords))
        for i, mu in keys:
            m = table[(i, mu)]
            out.append(f"matrix {name} {i} at {_w(mu)} shape {m.nrows}x{m.ncols}")
            for row in m.rows:
                out.append("  row " + " ; ".join(str(x) for x in row) if row else "  row")
    for t in c.tables:
        words = "; ".join(" ".join(str(v) for v in w) for w in t.words)
        out.append(f"table {t.n} words {words}")
        if t.degrees is not None:
            out.append("  degrees " + " ".join(str(g) for g in t.degrees))
        for key in t.ops:
            arg = " ".join(str(v) for v in key[1]) if key[0] == "e" else str(key[1])
            out.append(f"  op {key[0]} {arg} shape {_shape(t.ops[key])}")
            out.extend("    " + r for r in _rat_rows(t.ops[key]))
    for i, j, S, Sp in c.sideways:
        out.append(f"sideways {i} {j} shape {_shape(S)}")
        out.append("  S")
        out.extend("    " + r for r in _rat_rows(S))
        out.append("  Sprime")
        out.extend("    " + r for r in _rat_rows(Sp))
    for kind, items in (("identity", c.identities), ("zigzag", c.zigzags)):
        for label, lhs, rhs in items:
            out.append(f"{kind} {label} shape {_shape(lhs)}")
            out.append("  lhs")
            out.extend("    " + r for r in _rat_rows(lhs))
            out.append("  rhs")
            out.extend("    " + r for r in _rat_rows(rhs))
    return "\n".join(out) + "\n"


class _Lines:
    def __init__(self, text: str):
        self.items = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines())
                      if ln.strip() and not ln.strip().startswith("#")]
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self):
        item = self.peek()
        if item[0] is None:
            raise FixtureError(self.items[-1][0] if self.items else 0, "unexpected end of input")
        self.pos += 1
        return item


def _parse_weight(lineno: int, text: str, d: RootDatum) -> Weight:
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise FixtureError(lineno, f"bad weight {text!r}") from None
    if len(coords) != d.rank:
        raise FixtureError(lineno, f"weight {text!r} needs {d.rank} coordinates")
    return Weight(coords)


def _parse_shape(lineno: int, text: str) -> tuple[int, int]:
    try:
        r, c = text.split("x")
        return int(r), int(c)
    except ValueError:
        raise FixtureError(lineno, f"bad shape {text!r}") from None


def _rat_block(lines: _Lines, rows: int, cols: int) -> list[list[Fraction]]:
    out = []
    for _ in range(rows):
        lineno, ln = lines.next()
        parts = ln.split()
        if not parts or parts[0] != "row":
            raise FixtureError(lineno, "expected 'row'")
        try:
            vals = [parse_fraction(x) for x in parts[1:]]
        except ValueError as exc:
            raise FixtureError(lineno, str(exc)) from None
        if len(vals) != cols:
            raise FixtureError(lineno, f"row has {len(vals)} entries, expected {cols}")
        out.append(vals)
    return out


def _keyword(lines: _Lines, word: str):
    lineno, ln = lines.next()
    if ln != word:
        raise FixtureError(lineno, f"expected '{word}'")


def _vertex(d: RootDatum, lineno: int, name: str):
    try:
        return d.vertex(name)
    except KeyError:
        raise FixtureError(lineno, f"undeclared vertex {name}") from None


def parse_candidate(d: RootDatum, text: str) -> CandidateAction:
    lines = _Lines(text)
    c = CandidateAction([], {})
    while lines.peek()[0] is not None:
        lineno, ln = lines.next()
        head, _, rest = ln.partition(" ")
        if head == "weight":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "dim":
                raise FixtureError(lineno, "expected 'weight <coords> dim <n>'")
            mu = _parse_weight(lineno, parts[0], d)
            if mu in c.dims:
                raise FixtureError(lineno, f"weight {parts[0]} declared twice")
            c.weights.append(mu)
            c.dims[mu] = int(parts[2])
        elif head == "end":
            wtext, eq, poly = rest.partition("=")
            if not eq:
                raise FixtureError(lineno, "expected 'end <coords> = <laurent>'")
            try:
                c.end_dims[_parse_weight(lineno, wtext.strip(), d)] = LaurentPoly.parse(poly)
            except ValueError as exc:
                raise FixtureError(lineno, str(exc)) from None
        elif head == "matrix":
            parts = rest.split()
            if len(parts) != 6 or parts[0] not in ("E", "F") or parts[2] != "at" or parts[4] != "shape":
                raise FixtureError(lineno, "expected 'matrix E|F <vertex> at <coords> shape RxC'")
            i = _vertex(d, lineno, parts[1])
            mu = _parse_weight(lineno, parts[3], d)
            rows, cols = _parse_shape(lineno, parts[5])
            m = Matrix(rows, cols, zero=LaurentPoly())
            for r in range(rows):
                ln2, row = lines.next()
                if not (row == "row" or row.startswith("row ")):
                    raise FixtureError(ln2, "expected 'row'")
                body = row[3:].strip()
                entries = [e for e in body.split(";")] if body else []
                if len(entries) != cols:
                    raise FixtureError(ln2, f"row has {len(entries)} entries, expected {cols}")
                for k, e in enumerate(entries):
                    try:
                        m[r, k] = LaurentPoly.parse(e)
                    except ValueError as exc:
                        raise FixtureError(ln2, str(exc)) from None
            (c.E if parts[0] == "E" else c.F)[(i, mu)] = m
        elif head == "table":
            n_text, kw, words_text = rest.partition(" words ")
            if not kw:
                raise FixtureError(lineno, "expected 'table <n> words <w>; <w>; ...'")
            n = int(n_text)
            words = [tuple(_vertex(d, lineno, v) for v in w.split()) for w in words_text.split(";")]
            t = OperatorTable(n, words, {})
            while True:
                ln2, row = lines.peek()
                if row is None:
                    break
                if row.startswith("degrees"):
                    lines.next()
                    t.degrees = [int(x) for x in row.split()[1:]]
                elif row.startswith("op "):
                    lines.next()
                    parts = row.split()
                    if "shape" not in parts:
                        raise FixtureError(ln2, "operator needs a shape")
                    k = parts.index("shape")
                    kind, args = parts[1], parts[2:k]
                    if kind == "e":
                        key = ("e", tuple(_vertex(d, ln2, v) for v in args))
                    elif kind in ("y", "psi") and len(args) == 1:
                        key = (kind, int(args[0]))
                    else:
                        raise FixtureError(ln2, f"unknown operator {' '.join(parts[1:k])}")
                    rows, cols = _parse_shape(ln2, parts[k + 1])
                    t.ops[key] = _rat_block(lines, rows, cols)
                else:
                    break
            c.tables.append(t)
        elif head == "sideways":
            parts = rest.split()
            if len(parts) != 4 or parts[2] != "shape":
                raise FixtureError(lineno, "expected 'sideways <i> <j> shape RxC'")
            i, j = _vertex(d, lineno, parts[0]), _vertex(d, lineno, parts[1])
            rows, cols = _parse_shape(lineno, parts[3])
            _keyword(lines, "S")
            S = _rat_block(lines, rows, cols)
            _keyword(lines, "Sprime")
            Sp = _rat_block(lines, cols, rows)
            c.sideways.append((i, j, S, Sp))
        elif head in ("identity", "zigzag"):
            label, kw, shape = rest.rpartition(" shape ")
            if not kw:
                raise FixtureError(lineno, f"expected '{head} <label> shape RxC'")
            rows, cols = _parse_shape(lineno, shape)
            _keyword(lines, "lhs")
            lhs = _rat_block(lines, rows, cols)
            _keyword(lines, "rhs")
            rhs = _rat_block(lines, rows, cols)
            (c.identities if head == "identity" else c.zigzags).append((label, lhs, rhs))
        else:
            raise FixtureError(lineno, f"unknown directive {head!r}")
    return c
