"""Polynomials in y_1..y_n, divided differences, and the faithful polynomial
representation of the KLR algebra.

Crossings act on ``f e(i)`` by the divided difference when i_k = i_{k+1};
otherwise ``f`` is multiplied by p(y_k, y_{k+1}) = (y_{k+1} - y_k)^eps(i_k, i_{k+1})
and then the two variables are transposed.  With this placement the double
crossing acts by Q_{i_k i_{k+1}}(y_k, y_{k+1}).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .rootdata import BivariatePoly, RootDatum

__all__ = [
    "MultiPoly",
    "PolyVector",
    "act_element",
    "apply_generator",
    "divided_difference",
    "monomials_up_to",
]


class MultiPoly:
    """Polynomial in y_1..y_n with rational coefficients; deg y_k = 2."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[tuple, object] | None = None):
        self.n = n
        c = {}
        for k, v in (coeffs or {}).items():
            if len(k) != n:
                raise ValueError(f"exponent {k} has wrong length for n={n}")
            v = Fraction(v)
            if v:
                c[tuple(k)] = c.get(tuple(k), 0) + v
        self._c = {k: v for k, v in c.items() if v}

    @classmethod
    def const(cls, n: int, c=1) -> "MultiPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, k: int) -> "MultiPoly":
        """y_k (1-based)."""
        e = [0] * n
        e[k - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: tuple, c=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    @property
    def coeffs(self) -> dict[tuple, Fraction]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return MultiPoly(self.n, c)

    def __neg__(self):
        return MultiPoly(self.n, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.n, {k: v * other for k, v in self._c.items()})
        c: dict = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                k = tuple(p + q for p, q in zip(a, b))
                c[k] = c.get(k, 0) + x * y
        return MultiPoly(self.n, c)

    __rmul__ = __mul__

    def swap(self, k: int) -> "MultiPoly":
        """s_k: exchange y_k and y_{k+1}."""
        out = {}
        for e, v in self._c.items():
            e = list(e)
            e[k - 1], e[k] = e[k], e[k - 1]
            out[tuple(e)] = v
        return MultiPoly(self.n, out)

    def times_var_power(self, k: int, m: int) -> "MultiPoly":
        out = {}
        for e, v in self._c.items():
            e = list(e)
            e[k - 1] += m
            out[tuple(e)] = v
        return MultiPoly(self.n, out)

    def degree(self) -> int | None:
        """Graded degree (2 per variable) if homogeneous, else None."""
        degs = {2 * sum(e) for e in self._c}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else None

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, v in self._c.items():
            t = v
            for x, p in zip(point, e):
                t *= Fraction(x) ** p
            total += t
        return total

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash((self.n, frozenset(self._c.items())))

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for e, v in sorted(self._c.items(), reverse=True):
            mono = "*".join(f"y{k + 1}" if p == 1 else f"y{k + 1}^{p}" for k, p in enumerate(e) if p)
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            else:
                terms.append(f"{v}*{mono}")
        return " + ".join(terms)


def divided_difference(f: MultiPoly, k: int) -> MultiPoly:
    """(f - s_k f) / (y_k - y_{k+1}), computed monomial by monomial."""
    if not 1 <= k < f.n:
        raise IndexError(f"divided difference index {k} out of range for n={f.n}")
    out: dict = {}
    for e, v in f.items():
        a, b = e[k - 1], e[k]
        if a == b:
            continue
        sign = 1 if a > b else -1
        hi, lo = max(a, b), min(a, b)
        # (u^hi v^lo - u^lo v^hi)/(u - v) = u^lo v^lo * sum_t u^(hi-lo-1-t) v^t
        for t in range(hi - lo):
            m = list(e)
            m[k - 1] = lo + (hi - lo - 1 - t)
            m[k] = lo + t
            m = tuple(m)
            out[m] = out.get(m, 0) + sign * v
    return MultiPoly(f.n, out)


def bivariate_in(p: BivariatePoly, n: int, k: int, l: int) -> MultiPoly:
    """p(y_k, y_l) as a polynomial in n variables."""
    out = {}
    for (a, b), v in p.coeffs.items():
        e = [0] * n
        e[k - 1] += a
        e[l - 1] += b
        out[tuple(e)] = out.get(tuple(e), 0) + v
    return MultiPoly(n, out)


class PolyVector:
    """Element of the direct sum over words i of k[y_1..y_n] e(i)."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, components: Mapping[tuple, MultiPoly] | None = None):
        self.n = n
        self._c = {}
        for w, f in (components or {}).items():
            w = tuple(w)
            if len(w) != n or f.n != n:
                raise ValueError("component does not match strand count")
            if f:
                self._c[w] = self._c[w] + f if w in self._c else f
        self._c = {w: f for w, f in self._c.items() if f}

    @classmethod
    def single(cls, word: tuple, f: MultiPoly) -> "PolyVector":
        return cls(len(word), {tuple(word): f})

    @property
    def components(self) -> dict[tuple, MultiPoly]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: "PolyVector") -> "PolyVector":
        c = dict(self._c)
        for w, f in other._c.items():
            c[w] = c[w] + f if w in c else f
        return PolyVector(self.n, c)

    def __neg__(self):
        return PolyVector(self.n, {w: -f for w, f in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PolyVector":
        return PolyVector(self.n, {w: f * Fraction(c) for w, f in self._c.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({f})*e({' '.join(map(str, w))})" for w, f in sorted(self._c.items(), key=str))


def _psi_on_component(d: RootDatum, k: int, word: tuple, f: MultiPoly) -> tuple[tuple, MultiPoly]:
    a, b = word[k - 1], word[k]
    if a == b:
        return word, divided_difference(f, k)
    e = d.epsilon(a, b)
    if e:
        # p(y_k, y_{k+1}) = (y_{k+1} - y_k)^eps, applied before the transposition
        lin = MultiPoly.var(f.n, k + 1) - MultiPoly.var(f.n, k)
        for _ in range(e):
            f = f * lin
    new = word[: k - 1] + (b, a) + word[k + 1:]
    return new, f.swap(k)


def apply_generator(d: RootDatum, gen: tuple, v: PolyVector) -> PolyVector:
    """Apply one generator token ('e', word) | ('y', k) | ('psi', k)."""
    kind, arg = gen
    if kind == "e":
        arg = tuple(arg)
        return PolyVector(v.n, {arg: f for w, f in v.items() if w == arg})
    if kind == "y":
        if not 1 <= arg <= v.n:
            raise IndexError(f"y({arg}) out of range for n={v.n}")
        return PolyVector(v.n, {w: f.times_var_power(arg, 1) for w, f in v.items()})
    if kind == "psi":
        if not 1 <= arg < v.n:
            raise IndexError(f"psi({arg}) out of range for n={v.n}")
        out: dict = {}
        for w, f in v.items():
            nw, g = _psi_on_component(d, arg, w, f)
            out[nw] = out[nw] + g if nw in out else g
        return PolyVector(v.n, out)
    raise ValueError(f"unknown generator {gen!r}")


def act_element(d: RootDatum, x, v: PolyVector) -> PolyVector:
    """Action of a KLR element (normal-form terms psi_w y^a e(i)) on ``v``."""
    if x.n != v.n:
        raise ValueError(f"strand-count mismatch: element has {x.n}, vector has {v.n}")
    total = PolyVector(v.n)
    for b, c in x.items():
        comp = v._c.get(b.word)
        if comp is None:
            continue
        w = PolyVector(v.n, {b.word: comp * MultiPoly.monomial(b.dots)})
        for k in reversed(b.perm):
            w = apply_generator(d, ("psi", k), w)
        total = total + w.scale(c)
    return total


def act_word(d: RootDatum, gens: Iterable[tuple], v: PolyVector) -> PolyVector:
    """Apply a product of generator tokens, rightmost first."""
    for g in reversed(list(gens)):
        v = apply_generator(d, g, v)
    return v


def monomials_up_to(n: int, max_deg: int) -> list[tuple]:
    """Exponent vectors of total polynomial degree <= max_deg (grading 2*deg)."""
    out = []
    for total in range(max_deg + 1):
        for combo in combinations_with_replacement(range(n), total):
            e = [0] * n
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return out
