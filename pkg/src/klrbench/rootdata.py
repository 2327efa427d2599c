"""Cartan data of an oriented graph, weights, and the scalars (Q_ij, t_ij,
quantum integers) consumed by the rest of the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .laurent import LaurentPoly, as_fraction

__all__ = [
    "BivariatePoly",
    "RootDatum",
    "Weight",
    "build_root_datum",
    "cartan_pairing",
    "mu_from_dimvec",
    "q_polynomial",
    "quantum_factorial",
    "quantum_integer",
    "t_scalar",
]


class BivariatePoly:
    """Polynomial in two commuting variables u, v with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        self._c = {}
        for k, v in (coeffs or {}).items():
            v = as_fraction(v)
            if v:
                self._c[(int(k[0]), int(k[1]))] = v

    @classmethod
    def linear(cls, a, b) -> "BivariatePoly":
        """a*u + b*v"""
        return cls({(1, 0): a, (0, 1): b})

    @property
    def coeffs(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._c)

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return BivariatePoly(c)

    def __neg__(self):
        return BivariatePoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BivariatePoly({k: v * other for k, v in self._c.items()})
        c: dict = {}
        for (a, b), x in self._c.items():
            for (e, f), y in other._c.items():
                key = (a + e, b + f)
                c[key] = c.get(key, 0) + x * y
        return BivariatePoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BivariatePoly({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def swap(self) -> "BivariatePoly":
        """p(u, v) -> p(v, u)"""
        return BivariatePoly({(b, a): v for (a, b), v in self._c.items()})

    def evaluate(self, u, v) -> Fraction:
        u, v = as_fraction(u), as_fraction(v)
        return sum((c * u ** a * v ** b for (a, b), c in self._c.items()), Fraction(0))

    def degree(self) -> int:
        return max((a + b for a, b in self._c), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivariatePoly({(0, 0): other})
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "BivariatePoly(0)"
        terms = []
        for (a, b), v in sorted(self._c.items(), reverse=True):
            mono = "*".join(x for x in (
                "" if a == 0 else ("u" if a == 1 else f"u^{a}"),
                "" if b == 0 else ("v" if b == 1 else f"v^{b}")) if x)
            terms.append(f"{v}*{mono}" if mono else f"{v}")
        return "BivariatePoly(" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class Weight:
    """A weight stored by its coroot values alpha_i^vee(lambda), in the vertex
    order of the datum it belongs to."""

    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True)
class RootDatum:
    """Symmetric Cartan datum of an oriented graph without loops.

    ``epsilon(i, j)`` counts edges oriented i -> j.  ``t_overrides`` exists only
    to build deliberately inconsistent data for negative controls.
    """

    vertices: tuple
    edges: tuple = ()
    t_overrides: frozenset = field(default=frozenset(), compare=True)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        names = set(self.vertices)
        for a, b in self.edges:
            if a not in names or b not in names:
                bad = a if a not in names else b
                raise ValueError(f"edge ({a}, {b}) references undeclared vertex {bad}")
            if a == b:
                raise ValueError(f"loop edge at vertex {a}: graphs must have no loops")

    # -- indexing
    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def vertex(self, name) -> Hashable:
        """Resolve a vertex from its label or the label's string form."""
        if name in self.index:
            return name
        for v in self.vertices:
            if str(v) == str(name):
                return v
        raise KeyError(f"undeclared vertex {name}")

    # -- tables
    @cached_property
    def _eps(self) -> dict:
        e: dict = {}
        for a, b in self.edges:
            e[(a, b)] = e.get((a, b), 0) + 1
        return e

    def epsilon(self, i, j) -> int:
        return self._eps.get((i, j), 0)

    def cartan(self, i, j) -> int:
        if i == j:
            return 2
        return -(self.epsilon(i, j) + self.epsilon(j, i))

    def d(self, i) -> int:
        return 1

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.cartan(i, j) for j in self.vertices) for i in self.vertices)

    def t(self, i, j) -> int:
        for (a, b, s) in self.t_overrides:
            if (a, b) == (i, j):
                return s
        if i == j:
            return 1
        return (-1) ** self.epsilon(i, j)

    def with_t_sign(self, i, j, sign: int) -> "RootDatum":
        """Copy with t_ij forced to ``sign`` (negative-control helper)."""
        return RootDatum(self.vertices, self.edges, self.t_overrides | {(i, j, sign)})

    def adjacent(self, i, j) -> bool:
        return i != j and self.cartan(i, j) != 0

    # -- weights and roots
    def weight(self, coords: Mapping | Sequence[int]) -> Weight:
        if isinstance(coords, Mapping):
            return Weight(tuple(int(coords.get(v, 0)) for v in self.vertices))
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"weight needs {self.rank} coordinates, got {len(coords)}")
        return Weight(coords)

    def simple_root(self, i) -> Weight:
        return Weight(tuple(self.cartan(i, j) for j in self.vertices))

    def fundamental_weight(self, i) -> Weight:
        return Weight(tuple(1 if v == i else 0 for v in self.vertices))

    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        """sum_i beta_i alpha_i as a weight."""
        out = [0] * self.rank
        for b, i in zip(beta, self.vertices):
            if b:
                for k, j in enumerate(self.vertices):
                    out[k] += b * self.cartan(i, j)
        return Weight(tuple(out))

    def root_form(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Symmetric form (alpha, beta) on the root lattice."""
        return sum(x * y * self.cartan(i, j)
                   for x, i in zip(a, self.vertices) if x
                   for y, j in zip(b, self.vertices) if y)

    def weight_root_form(self, lam: Weight, beta: Sequence[int]) -> int:
        """(lambda, beta) for lambda a weight and beta in the root lattice."""
        return sum(b * c for b, c in zip(beta, lam.coords))

    def is_finite_type(self) -> bool:
        import numpy as np

        if not self.vertices:
            return True
        return bool(np.all(np.linalg.eigvalsh(np.array(self.cartan_matrix, dtype=float)) > 1e-9))

    def __repr__(self):
        return f"RootDatum(vertices={self.vertices!r}, edges={self.edges!r})"


def build_root_datum(vertices: Iterable, edges: Iterable[tuple] = ()) -> RootDatum:
    """Cartan datum of an oriented graph; rejects loops and unknown vertices."""
    return RootDatum(tuple(vertices), tuple(tuple(e) for e in edges))


def q_polynomial(d: RootDatum, i, j) -> BivariatePoly:
    """Q_ij(u, v) = t_ij (u - v)^(eps_ij + eps_ji), i.e. (v-u)^eps_ij (u-v)^eps_ji
    for the default sign t_ij = (-1)^eps_ij."""
    if i == j:
        raise ValueError("Q_ii is not defined; equal labels are handled separately")
    n = d.epsilon(i, j) + d.epsilon(j, i)
    return BivariatePoly.linear(1, -1) ** n * d.t(i, j)


def t_scalar(d: RootDatum, i, j) -> int:
    return d.t(i, j)


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n), with [-n] = -[n]."""
    if n == 0:
        return LaurentPoly()
    m = abs(n)
    s = 1 if n > 0 else -1
    return LaurentPoly({m - 1 - 2 * k: s for k in range(m)})


def quantum_factorial(n: int) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


def cartan_pairing(d: RootDatum, mu: Weight, i) -> int:
    """alpha_i^vee(mu)."""
    return mu.coords[d.index[i]]


def mu_from_dimvec(d: RootDatum, lam: Weight, v: Mapping | Sequence[int]) -> Weight:
    """lambda - sum_i v_i alpha_i for dominant lambda."""
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    vv = _dimvec(d, v)
    if any(x < 0 for x in vv):
        raise ValueError("dimension vector must be nonnegative")
    return lam - d.root_to_weight(vv)


def framing(d: RootDatum, lam: Weight) -> tuple[int, ...]:
    """w_i = alpha_i^vee(lambda)."""
    return lam.coords


def _dimvec(d: RootDatum, v) -> tuple[int, ...]:
    if isinstance(v, Mapping):
        return tuple(int(v.get(x, 0)) for x in d.vertices)
    v = tuple(int(x) for x in v)
    if len(v) != d.rank:
        raise ValueError(f"dimension vector needs {d.rank} entries, got {len(v)}")
    return v
