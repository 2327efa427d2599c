"""Exact Laurent polynomials in q, rational functions over Q(q), and small
field-generic linear algebra used by the decategorified layer."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "RationalFunctionQ",
    "as_fraction",
    "format_fraction",
    "parse_fraction",
    "rank",
    "solve",
    "row_reduce",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_fraction(x)
    return Fraction(x)


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class LaurentPoly:
    """Finitely supported Laurent polynomial sum_k c_k q^k with rational c_k.

    Instances are immutable and hashable.  ``str`` gives the canonical text
    form (descending exponents, ``q^-2`` style), which `parse` inverts.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = as_fraction(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            (k, v), = self._c.items()
            return LaurentPoly({k * n: Fraction(1) / v ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-k: v for k, v in self._c.items()})

    def evaluate(self, x) -> Fraction:
        x = as_fraction(x)
        return sum((v * x ** k for k, v in self._c.items()), Fraction(0))

    def truncate(self, max_exp: int) -> "LaurentPoly":
        return LaurentPoly({k: v for k, v in self._c.items() if k <= max_exp})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if isinstance(other, RationalFunctionQ):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            v = self._c[k]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if k == 0:
                body = format_fraction(a)
            else:
                qk = "q" if k == 1 else f"q^{k}"
                body = qk if a == 1 else f"{format_fraction(a)}*{qk}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(
        r"\s*(?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?"
        r"(?P<q>q(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse strings such as ``q^2 + 1 + q^-2`` or ``-3/2*q - 1``."""
        s = text.strip()
        if not s:
            raise ValueError("empty Laurent polynomial")
        pos = 0
        sign = 1
        c: dict[int, Fraction] = {}
        expect_term = True
        first = True
        while pos < len(s):
            while pos < len(s) and s[pos].isspace():
                pos += 1
            if pos >= len(s):
                break
            if s[pos] in "+-":
                if not expect_term or first:
                    sign = -1 if s[pos] == "-" else 1
                    pos += 1
                    expect_term = True
                    first = False
                    continue
                raise ValueError(f"unexpected {s[pos]!r} at position {pos} in {text!r}")
            if not expect_term:
                raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
            m = cls._TERM.match(s, pos)
            if not m or (m.group("coef") is None and m.group("q") is None):
                raise ValueError(f"expected a term at position {pos} in {text!r}")
            if m.group("star") and m.group("q") is None:
                raise ValueError(f"expected 'q' after '*' at position {m.end()} in {text!r}")
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            exp = 0
            if m.group("q") is not None:
                exp = int(m.group("exp")) if m.group("exp") is not None else 1
            c[exp] = c.get(exp, 0) + sign * coef
            pos = m.end()
            sign = 1
            expect_term = False
            first = False
        if expect_term:
            raise ValueError(f"dangling operator in {text!r}")
        return cls(c)


# --- univariate polynomial helpers (dense, lowest degree first) -------------

def _ptrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_ptrim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bv in enumerate(b):
            a[i + shift] -= f * bv
        a.pop()
    return _ptrim(q), a


def _pgcd(a: list, b: list) -> list:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [x / lead for x in a]


def _to_dense(p: LaurentPoly) -> tuple[int, list]:
    if p.is_zero():
        return 0, []
    lo = p.min_exp()
    return lo, [p[lo + i] for i in range(p.max_exp() - lo + 1)]


def _from_dense(lo: int, d: list) -> LaurentPoly:
    return LaurentPoly({lo + i: v for i, v in enumerate(d) if v})


class RationalFunctionQ:
    """Element of Q(q) stored as a reduced quotient of Laurent polynomials.

    Normal form: the denominator is a polynomial with nonzero constant term and
    leading coefficient 1; numerator and denominator are coprime.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.const(1)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._reduce(num, den)
        self._hash = None

    @staticmethod
    def _reduce(num: LaurentPoly, den: LaurentPoly):
        if num.is_zero():
            return num, LaurentPoly.const(1)
        dlo, dd = _to_dense(den)
        nlo, nd = _to_dense(num)
        if len(dd) > 1 and len(nd) > 1:
            g = _pgcd(nd, dd)
            if len(g) > 1:
                nd, _ = _pdivmod(nd, g)
                dd, _ = _pdivmod(dd, g)
        lead = dd[-1]
        nd = [x / lead for x in nd]
        dd = [x / lead for x in dd]
        return _from_dense(nlo - dlo, nd), _from_dense(0, dd)

    def _coerce(self, other):
        if isinstance(other, RationalFunctionQ):
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RationalFunctionQ(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunctionQ(self.num + other.num, self.den)
        return RationalFunctionQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunctionQ":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunctionQ(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self) -> bool:
        return self.den == LaurentPoly.const(1)

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def specialize(self, x) -> Fraction:
        """Evaluate at q = x; fails if the denominator vanishes there."""
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return self.num.evaluate(x) / d

    def bar(self) -> "RationalFunctionQ":
        return RationalFunctionQ(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# --- field-generic linear algebra ------------------------------------------

def _is_zero(x) -> bool:
    return x == 0 if isinstance(x, (int, Fraction)) else x.is_zero()


def row_reduce(rows: Iterable[list], one=Fraction(1)):
    """Reduced row echelon form over a field.

    Returns ``(rref_rows, pivot_columns)``; zero rows are dropped.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list], one=Fraction(1)) -> int:
    if not rows:
        return 0
    return len(row_reduce(rows, one)[1])


def solve(a: list[list], b: list, one=Fraction(1)) -> list:
    """Solve the square nonsingular system a x = b."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, piv = row_reduce(aug, one)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


class Matrix:
    """Dense matrix over Fraction, LaurentPoly or RationalFunctionQ that keeps
    its shape even when a dimension is zero."""

    __slots__ = ("nrows", "ncols", "rows", "zero")

    def __init__(self, nrows: int, ncols: int, rows=None, zero=Fraction(0)):
        self.nrows, self.ncols, self.zero = nrows, ncols, zero
        if rows is None:
            rows = [[zero] * ncols for _ in range(nrows)]
        self.rows = [list(r) for r in rows]
        if len(self.rows) != nrows or any(len(r) != ncols for r in self.rows):
            raise ValueError(f"rows do not match shape {nrows}x{ncols}")

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "Matrix":
        return cls(n, n, [[one if r == c else zero for c in range(n)] for r in range(n)], zero)

    @classmethod
    def scalar(cls, n: int, s, zero=Fraction(0)) -> "Matrix":
        return cls(n, n, [[s if r == c else zero for c in range(n)] for r in range(n)], zero)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, rc):
        return self.rows[rc[0]][rc[1]]

    def __setitem__(self, rc, v):
        self.rows[rc[0]][rc[1]] = v

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.nrows, other.ncols, zero=self.zero)
        for r in range(self.nrows):
            row = self.rows[r]
            for c in range(other.ncols):
                acc = self.zero
                for k in range(self.ncols):
                    a = row[k]
                    if _is_zero(a):
                        continue
                    b = other.rows[k][c]
                    if not _is_zero(b):
                        acc = acc + a * b
                out.rows[r][c] = acc
        return out

    def _zip(self, other: "Matrix", f) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.nrows, self.ncols,
                      [[f(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.zero)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda a: -a)

    def scale(self, s) -> "Matrix":
        return self.map(lambda a: a * s)

    def map(self, f) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [[f(a) for a in r] for r in self.rows], self.zero)

    def is_zero(self) -> bool:
        return all(_is_zero(a) for r in self.rows for a in r)

    def first_nonzero(self):
        """(row, col, entry) of the first nonzero entry, or None."""
        for r, row in enumerate(self.rows):
            for c, a in enumerate(row):
                if not _is_zero(a):
                    return r, c, a
        return None

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {[[str(a) for a in r] for r in self.rows]})"
