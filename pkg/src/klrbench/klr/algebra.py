"""Quiver Hecke (KLR) algebra elements and multiplication by rewriting.

Normal form: ``psi_w y^a e(i)``, i.e. an idempotent on the right, then a dot
monomial, then one fixed reduced expression for ``w`` (the lexicographically
least).  Products are computed by left-multiplying normal forms by single
generators.  Every rewrite is one of the defining relations:

* ``y_k psi_k e(u) = psi_k y_{k+1} e(u) + [u_k = u_{k+1}] e(u)``
* ``y_k psi_{k-1} e(u) = psi_{k-1} y_{k-1} e(u) - [u_{k-1} = u_k] e(u)``
* ``psi_k^2 e(u) = 0`` if u_k = u_{k+1}, else ``Q_{u_k u_{k+1}}(y_k, y_{k+1}) e(u)``
* ``(psi_k psi_{k+1} psi_k - psi_{k+1} psi_k psi_{k+1}) e(u)`` equals
  ``(Q_ij(y_{k+2}, y_{k+1}) - Q_ij(y_k, y_{k+1})) / (y_{k+2} - y_k) e(u)`` when
  u = (..., i, j, i, ...) with i != j at positions k, k+1, k+2, and 0 otherwise.

Diagrams are read with the domain at the top, so the dot monomial of a normal
form sits at the top of the picture and crossings below it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterable, Mapping

from ..laurent import LaurentPoly
from ..polyrep import MultiPoly
from ..rootdata import RootDatum, q_polynomial

__all__ = [
    "DiagramBasisElement",
    "KLRAlgebra",
    "KLRElement",
    "RewriteLimitExceeded",
    "algebra_for",
    "canonical_word",
    "degree",
    "graded_dim_hom",
    "multiply",
    "perm_of_word",
]


class RewriteLimitExceeded(RuntimeError):
    pass


# --- permutations ----------------------------------------------------------
# A permutation is stored as a tuple p with (w . u)[t] = u[p[t]] for words u.

def _swap(p: tuple, k: int) -> tuple:
    q = list(p)
    q[k - 1], q[k] = q[k], q[k - 1]
    return tuple(q)


@lru_cache(maxsize=None)
def perm_of_word(red: tuple, n: int) -> tuple:
    """Permutation s_{r1} ... s_{rm} (rightmost factor acts first)."""
    p = tuple(range(n))
    for k in reversed(red):
        p = _swap(p, k)
    return p


def perm_length(p: tuple) -> int:
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


@lru_cache(maxsize=None)
def canonical_word(p: tuple) -> tuple:
    """Lexicographically least reduced expression of p."""
    out = []
    while True:
        k = next((k for k in range(1, len(p)) if p[k - 1] > p[k]), None)
        if k is None:
            return tuple(out)
        out.append(k)
        p = _swap(p, k)


def act_on_word(p: tuple, word: tuple) -> tuple:
    return tuple(word[x] for x in p)


def _neighbours(x: tuple):
    for q in range(len(x) - 1):
        if abs(x[q] - x[q + 1]) > 1:
            yield x[:q] + (x[q + 1], x[q]) + x[q + 2:], q, "commute"
    for q in range(len(x) - 2):
        a, b, c = x[q:q + 3]
        if a == c and abs(a - b) == 1:
            yield x[:q] + (b, a, b) + x[q + 3:], q, "braid"


@lru_cache(maxsize=None)
def braid_path(start: tuple, goal: tuple) -> tuple:
    """Shortest sequence of (word, position, kind) moves from start to goal."""
    if start == goal:
        return ()
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, q, kind in _neighbours(x):
            if y in parent:
                continue
            parent[y] = (x, q, kind)
            if y == goal:
                steps = []
                while parent[y] is not None:
                    px, pq, pk = parent[y]
                    steps.append((px, pq, pk))
                    y = px
                return tuple(reversed(steps))
            queue.append(y)
    raise ValueError(f"{start} and {goal} are not reduced words of one permutation")


# --- elements --------------------------------------------------------------

@dataclass(frozen=True)
class DiagramBasisElement:
    """``psi_perm y^dots e(word)``; ``perm`` is the canonical reduced word."""

    word: tuple
    perm: tuple
    dots: tuple

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def permutation(self) -> tuple:
        return perm_of_word(self.perm, len(self.word))

    @property
    def target(self) -> tuple:
        return act_on_word(self.permutation, self.word)


def _fmt_word(word) -> str:
    return " ".join(str(v) for v in word)


def format_basis(b: DiagramBasisElement) -> str:
    parts = [f"psi({k})" for k in b.perm]
    for k, a in enumerate(b.dots, start=1):
        if a == 1:
            parts.append(f"y({k})")
        elif a > 1:
            parts.append(f"y({k})^{a}")
    parts.append(f"e({_fmt_word(b.word)})")
    return "*".join(parts)


class KLRElement:
    """Finite rational combination of normal-form basis elements on n strands."""

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[DiagramBasisElement, object] | None = None):
        self.n = n
        t = {}
        for b, c in (terms or {}).items():
            if b.n != n:
                raise ValueError(f"term {b} does not have {n} strands")
            c = Fraction(c)
            if c:
                t[b] = t.get(b, 0) + c
        self._t = {b: c for b, c in t.items() if c}

    @classmethod
    def idempotent(cls, word: Iterable) -> "KLRElement":
        word = tuple(word)
        return cls(len(word), {DiagramBasisElement(word, (), (0,) * len(word)): 1})

    @classmethod
    def basis(cls, b: DiagramBasisElement, c=1) -> "KLRElement":
        return cls(b.n, {b: c})

    def items(self):
        return self._t.items()

    @property
    def terms(self) -> dict[DiagramBasisElement, Fraction]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def _check(self, other: "KLRElement"):
        if self.n != other.n:
            raise ValueError(f"strand-count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "KLRElement") -> "KLRElement":
        self._check(other)
        t = dict(self._t)
        for b, c in other._t.items():
            t[b] = t.get(b, 0) + c
        return KLRElement(self.n, t)

    def __neg__(self):
        return KLRElement(self.n, {b: -c for b, c in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, KLRElement):
            raise TypeError("use multiply(datum, x, y) or KLRAlgebra.mul for products")
        return KLRElement(self.n, {b: v * Fraction(c) for b, v in self._t.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, KLRElement):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __hash__(self):
        return hash((self.n, frozenset(self._t.items())))

    def sorted_terms(self, order: Mapping | None = None) -> list[tuple[DiagramBasisElement, Fraction]]:
        def key(item):
            b, _ = item
            w = tuple(order[v] for v in b.word) if order else tuple(str(v) for v in b.word)
            return (len(b.perm), b.perm, tuple(-a for a in b.dots), w)
        return sorted(self._t.items(), key=key)

    def to_string(self, order: Mapping | None = None) -> str:
        if not self._t:
            return "0"
        out = ""
        for b, c in self.sorted_terms(order):
            body = format_basis(b)
            a = abs(c)
            coef = "" if a == 1 else (f"{a.numerator}" if a.denominator == 1 else f"{a.numerator}/{a.denominator}") + "*"
            if not out:
                out = ("-" if c < 0 else "") + coef + body
            else:
                out += (" - " if c < 0 else " + ") + coef + body
        return out

    def __str__(self):
        return self.to_string()

    __repr__ = __str__


# --- the rewriting engine ---------------------------------------------------

def _add(acc: dict, src: Mapping, coef=1) -> dict:
    for b, c in src.items():
        v = acc.get(b, 0) + c * coef
        if v:
            acc[b] = v
        else:
            acc.pop(b, None)
    return acc


class KLRAlgebra:
    """The KLR algebra of a root datum, with memoized normal-form rewriting."""

    def __init__(self, d: RootDatum, max_steps: int = 2_000_000):
        self.d = d
        self.max_steps = max_steps
        self.steps = 0
        self._lpsi: dict = {}
        self._ly: dict = {}
        self._red: dict = {}
        self._order = {v: k for k, v in enumerate(d.vertices)}

    # -- generators as elements
    def e(self, word) -> KLRElement:
        return KLRElement.idempotent(tuple(word))

    def _tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise RewriteLimitExceeded(f"rewriting exceeded {self.max_steps} steps")

    # -- degrees
    def crossing_degree(self, a, b) -> int:
        return -self.d.cartan(a, b)

    def degree(self, b: DiagramBasisElement) -> int:
        deg = 2 * sum(b.dots)
        u = b.word
        for k in reversed(b.perm):
            deg += self.crossing_degree(u[k - 1], u[k])
            u = u[: k - 1] + (u[k], u[k - 1]) + u[k + 1:]
        return deg

    def element_degree(self, x: KLRElement) -> int | None:
        """Common degree of all terms, or None if inhomogeneous or zero."""
        degs = {self.degree(b) for b, _ in x.items()}
        return degs.pop() if len(degs) == 1 else None

    # -- polynomial pieces
    def braid_correction(self, u: tuple, k: int) -> MultiPoly:
        """(psi_k psi_{k+1} psi_k - psi_{k+1} psi_k psi_{k+1}) e(u) as a polynomial."""
        n = len(u)
        i, j, i2 = u[k - 1], u[k], u[k + 1]
        if i != i2 or i == j:
            return MultiPoly(n)
        out: dict = {}
        for (a, b), c in q_polynomial(self.d, i, j).coeffs.items():
            # (y_{k+2}^a - y_k^a) / (y_{k+2} - y_k) * y_{k+1}^b
            for t in range(a):
                e = [0] * n
                e[k + 1] += t
                e[k - 1] += a - 1 - t
                e[k] += b
                out[tuple(e)] = out.get(tuple(e), 0) + c
        return MultiPoly(n, out)

    def double_crossing(self, u: tuple, k: int) -> MultiPoly:
        """psi_k^2 e(u) as a polynomial."""
        n = len(u)
        i, j = u[k - 1], u[k]
        if i == j:
            return MultiPoly(n)
        out: dict = {}
        for (a, b), c in q_polynomial(self.d, i, j).coeffs.items():
            e = [0] * n
            e[k - 1] += a
            e[k] += b
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return MultiPoly(n, out)

    # -- left multiplication by single generators on normal forms
    def lmul_y(self, k: int, x: Mapping) -> dict:
        acc: dict = {}
        for b, c in x.items():
            _add(acc, self._lmul_y_basis(k, b), c)
        return acc

    def lmul_psi(self, k: int, x: Mapping) -> dict:
        acc: dict = {}
        for b, c in x.items():
            _add(acc, self._lmul_psi_basis(k, b), c)
        return acc

    def lmul_e(self, word: tuple, x: Mapping) -> dict:
        word = tuple(word)
        return {b: c for b, c in x.items() if b.target == word}

    def lmul_poly(self, f: MultiPoly, x: Mapping) -> dict:
        acc: dict = {}
        for exps, c in f.items():
            y = dict(x)
            for k, a in enumerate(exps, start=1):
                for _ in range(a):
                    y = self.lmul_y(k, y)
            _add(acc, y, c)
        return acc

    def _lmul_y_basis(self, k: int, b: DiagramBasisElement) -> dict:
        key = (k, b)
        hit = self._ly.get(key)
        if hit is not None:
            return hit
        self._tick()
        if not 1 <= k <= b.n:
            raise IndexError(f"y({k}) out of range for {b.n} strands")
        if not b.perm:
            dots = list(b.dots)
            dots[k - 1] += 1
            res = {DiagramBasisElement(b.word, (), tuple(dots)): Fraction(1)}
        else:
            r1 = b.perm[0]
            rest = DiagramBasisElement(b.word, b.perm[1:], b.dots)
            u = rest.target
            corr = 0
            if r1 == k:
                k2 = k + 1
                if u[k - 1] == u[k]:
                    corr = 1
            elif r1 == k - 1:
                k2 = k - 1
                if u[k - 2] == u[k - 1]:
                    corr = -1
            else:
                k2 = k
            res = self.lmul_psi(r1, self._lmul_y_basis(k2, rest))
            if corr:
                _add(res, {rest: Fraction(1)}, corr)
        self._ly[key] = res
        return res

    def _lmul_psi_basis(self, k: int, b: DiagramBasisElement) -> dict:
        key = (k, b)
        hit = self._lpsi.get(key)
        if hit is not None:
            return hit
        self._tick()
        n = b.n
        if not 1 <= k < n:
            raise IndexError(f"psi({k}) out of range for {n} strands")
        p = b.permutation
        if p[k - 1] < p[k]:
            longer = (k,) + b.perm
            c = canonical_word(_swap(p, k))
            res = {DiagramBasisElement(b.word, c, b.dots): Fraction(1)}
            if longer != c:
                _add(res, self._convert(longer, c, b.dots, b.word))
        else:
            v = canonical_word(_swap(p, k))
            alt = (k,) + v
            inner = DiagramBasisElement(b.word, v, b.dots)
            u = inner.target
            res = self.lmul_poly(self.double_crossing(u, k), {inner: Fraction(1)})
            if alt != b.perm:
                _add(res, self.lmul_psi(k, self._convert(b.perm, alt, b.dots, b.word)))
        self._lpsi[key] = res
        return res

    def from_reduced(self, red: tuple, dots: tuple, word: tuple) -> dict:
        """Normal form of psi_{r1} ... psi_{rm} y^dots e(word) for a reduced word r."""
        key = (red, dots, word)
        hit = self._red.get(key)
        if hit is not None:
            return hit
        x = {DiagramBasisElement(word, (), dots): Fraction(1)}
        for k in reversed(red):
            x = self.lmul_psi(k, x)
        self._red[key] = x
        return x

    def _convert(self, start: tuple, goal: tuple, dots: tuple, word: tuple) -> dict:
        """psi_start y^dots e(word) - psi_goal y^dots e(word) for two reduced
        words of the same permutation, as a normal form."""
        acc: dict = {}
        for x, q, kind in braid_path(start, goal):
            if kind == "commute":
                continue
            k = min(x[q], x[q + 1])
            sign = 1 if x[q:q + 3] == (k, k + 1, k) else -1
            suffix = x[q + 3:]
            below = self.from_reduced(suffix, dots, word)
            u = act_on_word(perm_of_word(suffix, len(word)), word)
            term = self.lmul_poly(self.braid_correction(u, k), below)
            for g in reversed(x[:q]):
                term = self.lmul_psi(g, term)
            _add(acc, term, sign)
        return acc

    # -- products
    def lmul_token(self, tok: tuple, x: Mapping) -> dict:
        kind, arg = tok
        if kind == "e":
            return self.lmul_e(arg, x)
        if kind == "y":
            return self.lmul_y(arg, x)
        if kind == "psi":
            return self.lmul_psi(arg, x)
        raise ValueError(f"unknown generator {tok!r}")

    def mul(self, x: KLRElement, y: KLRElement) -> KLRElement:
        if x.n != y.n:
            raise ValueError(f"strand-count mismatch: {x.n} vs {y.n}")
        self.steps = 0
        acc: dict = {}
        ydict = dict(y.items())
        for b, c in x.items():
            z = self.lmul_e(b.word, ydict)
            if not z:
                continue
            for k, a in enumerate(b.dots, start=1):
                for _ in range(a):
                    z = self.lmul_y(k, z)
            for k in reversed(b.perm):
                z = self.lmul_psi(k, z)
            _add(acc, z, c)
        return KLRElement(x.n, acc)

    def product(self, tokens: Iterable[tuple], right: KLRElement) -> KLRElement:
        """tokens[0] * tokens[1] * ... * right."""
        self.steps = 0
        z = dict(right.items())
        for tok in reversed(list(tokens)):
            z = self.lmul_token(tok, z)
        return KLRElement(right.n, z)

    # -- bases
    def words(self, content: Mapping) -> list[tuple]:
        """All words with the given vertex multiplicities, in a fixed order."""
        letters = []
        for v in self.d.vertices:
            letters += [v] * int(content.get(v, 0))
        ws = sorted(set(permutations(letters)), key=lambda w: tuple(self._order[v] for v in w))
        return ws

    def content(self, word: tuple) -> dict:
        c: dict = {}
        for v in word:
            c[v] = c.get(v, 0) + 1
        return c

    def crossing_skeleta(self, words: list[tuple]) -> list[tuple[tuple, tuple, int]]:
        """(word, canonical reduced word, degree of psi_w e(word)) for every w."""
        out = []
        if not words:
            return out
        n = len(words[0])
        perms = sorted(permutations(range(n)), key=lambda p: (perm_length(p), canonical_word(p)))
        for word in words:
            for p in perms:
                b = DiagramBasisElement(word, canonical_word(p), (0,) * n)
                out.append((word, b.perm, self.degree(b)))
        return out

    def basis_of_degree(self, words: list[tuple], deg: int) -> list[DiagramBasisElement]:
        out = []
        for word, red, d0 in self.crossing_skeleta(words):
            rest = deg - d0
            if rest < 0 or rest % 2:
                continue
            for dots in _compositions(rest // 2, len(word)):
                out.append(DiagramBasisElement(word, red, dots))
        return out

    def fmt(self, x: KLRElement) -> str:
        return x.to_string(self._order)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_ALGEBRAS: dict = {}


def algebra_for(d: RootDatum) -> KLRAlgebra:
    """Shared memoized algebra for a datum."""
    alg = _ALGEBRAS.get(d)
    if alg is None:
        alg = _ALGEBRAS[d] = KLRAlgebra(d)
    return alg


def multiply(d: RootDatum, x: KLRElement, y: KLRElement) -> KLRElement:
    return algebra_for(d).mul(x, y)


def degree(d: RootDatum, b: DiagramBasisElement) -> int:
    return algebra_for(d).degree(b)


def graded_dim_hom(d: RootDatum, i: Iterable, j: Iterable, max_deg: int) -> LaurentPoly:
    """sum of q^deg over basis elements psi_w y^a e(i) with w(i) = j and
    deg <= max_deg.  Words of different content give 0."""
    i, j = tuple(i), tuple(j)
    if len(i) != len(j) or sorted(map(str, i)) != sorted(map(str, j)):
        return LaurentPoly()
    alg = algebra_for(d)
    n = len(i)
    coeffs: dict[int, int] = {}
    for p in permutations(range(n)):
        if act_on_word(p, i) != j:
            continue
        d0 = alg.degree(DiagramBasisElement(i, canonical_word(p), (0,) * n))
        m = 0
        while d0 + 2 * m <= max_deg:
            coeffs[d0 + 2 * m] = coeffs.get(d0 + 2 * m, 0) + comb(m + n - 1, n - 1) if n else 1
            if n == 0:
                break
            m += 1
    return LaurentPoly(coeffs)
