"""Combinatorics of framed quiver representations: dimensions of the
representation space and gauge group, the period coefficients of the
reduction quantization, line-bundle twist integrality, and nonemptiness.

The framing is w_i = alpha_i^vee(lambda) and the variety sits at weight
mu = lambda - sum_i v_i alpha_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..laurent import as_fraction
from ..rootdata import RootDatum, Weight, build_root_datum
from .weights import multiplicity_at_depth, string_support

__all__ = [
    "QuiverDims",
    "nakajima_nonempty",
    "nakajima_string",
    "period_class",
    "period_coefficients",
    "quiver_space_dims",
    "twist_coordinates",
    "twist_integrality",
]


def _dimvec(d: RootDatum, v) -> tuple[int, ...]:
    if isinstance(v, Mapping):
        out = [0] * d.rank
        for k, x in v.items():
            out[d.index[d.vertex(k)]] = int(x)
        return tuple(out)
    v = tuple(int(x) for x in v)
    if len(v) != d.rank:
        raise ValueError(f"dimension vector needs {d.rank} entries, got {len(v)}")
    if any(x < 0 for x in v):
        raise ValueError(f"dimension vector {v} has a negative entry")
    return v


def _edges(d: RootDatum):
    """(i, j, multiplicity) for each oriented pair with edges i -> j."""
    for a, i in enumerate(d.vertices):
        for b, j in enumerate(d.vertices):
            e = d.epsilon(i, j)
            if e:
                yield a, b, e


@dataclass
class QuiverDims:
    dim_E: int
    dim_G: int
    expected_dim: int
    period: dict = field(default_factory=dict)
    period_integral: bool = True
    orientation_independent: bool = True


def period_coefficients(d: RootDatum, w: Sequence[int], v: Sequence[int]) -> dict:
    out = {}
    for a, i in enumerate(d.vertices):
        incoming = sum(e * v[s] for s, t, e in _edges(d) if t == a)
        outgoing = sum(e * v[t] for s, t, e in _edges(d) if s == a)
        out[i] = Fraction(w[a] + incoming - outgoing, 2)
    return out


def period_class(d: RootDatum, lam: Weight, v) -> tuple[dict, bool, bool]:
    """Coefficients of c_1(L_i) h in the period, whether they are all
    integers, and whether their classes mod Z agree for every orientation
    of the graph."""
    v = _dimvec(d, v)
    w = lam.coords
    coeffs = period_coefficients(d, w, v)
    integral = all(c.denominator == 1 for c in coeffs.values())
    edges = []
    for s, t, e in _edges(d):
        edges += [(d.vertices[s], d.vertices[t])] * e
    independent = True
    # flipping one edge at a time generates all orientations
    for k in range(len(edges)):
        flipped = edges[:k] + [edges[k][::-1]] + edges[k + 1:]
        other = period_coefficients(build_root_datum(d.vertices, flipped), w, v)
        if any((other[i] - coeffs[i]).denominator != 1 for i in d.vertices):
            independent = False
    return coeffs, integral, independent


def quiver_space_dims(d: RootDatum, lam: Weight, v) -> QuiverDims:
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    v = _dimvec(d, v)
    w = lam.coords
    dim_E = sum(e * v[s] * v[t] for s, t, e in _edges(d)) + sum(a * b for a, b in zip(v, w))
    dim_G = sum(x * x for x in v)
    coeffs, integral, independent = period_class(d, lam, v)
    return QuiverDims(dim_E, dim_G, 2 * (dim_E - dim_G), coeffs, integral, independent)


def nakajima_nonempty(d: RootDatum, lam: Weight, v) -> bool:
    """Whether the weight lambda - sum v_i alpha_i occurs in V(lambda)."""
    v = _dimvec(d, v)
    return multiplicity_at_depth(d, lam, v) > 0


def nakajima_string(d: RootDatum, lam: Weight, v, i, bound: int = 64) -> tuple[list[int], bool]:
    """The k with a nonempty variety at mu + k alpha_i, and whether that set
    is certified finite."""
    v = _dimvec(d, v)
    return string_support(d, lam, v, d.vertex(i), bound)


def twist_integrality(a: Mapping, b: Mapping, i) -> bool:
    """Whether a line bundle realizing the pair of twists a, b exists on the
    correspondence for vertex i: a_i, b_i and every a_j - b_j integral."""
    a = {k: as_fraction(x) for k, x in a.items()}
    b = {k: as_fraction(x) for k, x in b.items()}
    if set(a) != set(b):
        raise ValueError("twist tables must share a vertex set")
    if i not in a:
        raise ValueError(f"vertex {i} missing from the twist tables")
    if a[i].denominator != 1 or b[i].denominator != 1:
        return False
    return all((a[j] - b[j]).denominator == 1 for j in a)


def twist_coordinates(a: Mapping, b: Mapping, i) -> dict:
    """Coordinates of p_1^* chi_1 - p_2^* chi_2 in the integral basis of the
    correspondence: one class per vertex pulled back along p_1, plus the
    class of vertex i pulled back along p_2 (key ``(i, "p2")``).

    Away from i both pullbacks of a line bundle coincide, so the p_2 pullback
    of vertex j != i is rewritten as the p_1 pullback."""
    coords: dict = {j: Fraction(0) for j in a}
    coords[(i, "p2")] = Fraction(0)
    for j, x in a.items():
        coords[j] += as_fraction(x)
    for j, x in b.items():
        key = (i, "p2") if j == i else j
        coords[key] -= as_fraction(x)
    return coords
