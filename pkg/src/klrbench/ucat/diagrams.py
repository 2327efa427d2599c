"""1-morphism words and layered string diagrams with their degrees.

A strand is ``("E", i)`` (oriented upward) or ``("F", i)`` (oriented
downward).  Regions are labelled by weights, determined by the weight of the
rightmost region: crossing an upward i-strand from right to left adds alpha_i,
crossing a downward one subtracts it.

A diagram is read bottom to top as a sequence of layers, each layer a single
generator acting on the current strand sequence:

* ``("dot", p)``                     dot on strand p
* ``("cross", p)``                   crossing of strands p and p+1
* ``("cup", p, left, i)``            creates strands p, p+1 colored i; ``left`` is
                                     "E" or "F", the right strand gets the other
* ``("cap", p)``                     closes strands p, p+1 (same color, opposite
                                     orientation)

Cups and caps are graded by the weight of the region they enclose:

==========  ===========  ========================
generator   (left,right)  degree
==========  ===========  ========================
cup         (F, E)        <lam, alpha_i> - d_i
cup         (E, F)        -<lam, alpha_i> - d_i
cap         (E, F)        -<lam, alpha_i> - d_i
cap         (F, E)        <lam, alpha_i> - d_i
==========  ===========  ========================

With this convention both zigzags have degree zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..rootdata import RootDatum, Weight

__all__ = [
    "DiagramTypeError",
    "OneMorWord",
    "StringDiagram",
    "diagram_degree",
    "generator_degree",
    "one_mor_weight",
    "swap_layers",
]


class DiagramTypeError(ValueError):
    pass


def _check_symbol(sym):
    if not (isinstance(sym, tuple) and len(sym) == 2 and sym[0] in ("E", "F")):
        raise ValueError(f"bad 1-morphism symbol {sym!r}; expected ('E', i) or ('F', i)")


@dataclass(frozen=True)
class OneMorWord:
    """Composite of E_i / F_i read as a word; ``symbols`` lists ("E", i) or
    ("F", i) from left to right."""

    symbols: tuple
    domain: Weight | None = None

    def __post_init__(self):
        for s in self.symbols:
            _check_symbol(s)

    def __add__(self, other: "OneMorWord") -> "OneMorWord":
        return OneMorWord(self.symbols + other.symbols, other.domain)

    def codomain(self, d: RootDatum) -> Weight:
        if self.domain is None:
            raise ValueError("word has no domain weight")
        w = self.domain
        for v, c in one_mor_weight(self).items():
            w = w + d.simple_root(v).scale(c)
        return w


def one_mor_weight(w: OneMorWord | Sequence) -> dict:
    """Root-lattice element sum of +alpha_i (for E_i) and -alpha_i (for F_i),
    as a table vertex -> coefficient with zero entries dropped."""
    syms = w.symbols if isinstance(w, OneMorWord) else tuple(w)
    out: dict = {}
    for kind, i in syms:
        out[i] = out.get(i, 0) + (1 if kind == "E" else -1)
    return {k: v for k, v in out.items() if v}


def _region_weights(d: RootDatum, strands: Sequence, right: Weight) -> list[Weight]:
    """Weights of the len+1 regions, leftmost first."""
    regions = [right]
    for kind, i in reversed(strands):
        a = d.simple_root(i)
        regions.append(regions[-1] + a if kind == "E" else regions[-1] - a)
    return list(reversed(regions))


def _pair(d: RootDatum, lam: Weight, i) -> int:
    return d.d(i) * lam.coords[d.index[i]]


def generator_degree(d: RootDatum, gen: tuple, strands: Sequence, right: Weight) -> int:
    """Degree of one generator applied to the strand sequence ``strands``."""
    kind = gen[0]
    if kind == "dot":
        _, i = strands[gen[1]]
        return 2 * d.d(i)
    if kind == "cross":
        p = gen[1]
        return -d.cartan(strands[p][1], strands[p + 1][1])
    regions = _region_weights(d, strands, right)
    if kind == "cup":
        _, p, left, i = gen
        # the enclosed region is the region at slot p after insertion, which
        # is the region between the two new strands
        new = list(strands[:p]) + [(left, i), ("F" if left == "E" else "E", i)] + list(strands[p:])
        inner = _region_weights(d, new, right)[p + 1]
        m = _pair(d, inner, i)
        return (m if left == "F" else -m) - d.d(i)
    if kind == "cap":
        p = gen[1]
        left, i = strands[p]
        inner = regions[p + 1]
        m = _pair(d, inner, i)
        return (-m if left == "E" else m) - d.d(i)
    raise DiagramTypeError(f"unknown generator {gen!r}")


def _apply(gen: tuple, strands: tuple, layer: int) -> tuple:
    kind = gen[0]
    n = len(strands)
    if kind == "dot":
        p = gen[1]
        if not 0 <= p < n:
            raise DiagramTypeError(f"layer {layer}: dot position {p} outside 0..{n - 1}")
        return strands
    if kind == "cross":
        p = gen[1]
        if not 0 <= p < n - 1:
            raise DiagramTypeError(f"layer {layer}: crossing position {p} needs strands {p}, {p + 1} of {n}")
        return strands[:p] + (strands[p + 1], strands[p]) + strands[p + 2:]
    if kind == "cup":
        if len(gen) != 4 or gen[2] not in ("E", "F"):
            raise DiagramTypeError(f"layer {layer}: cup must be ('cup', p, 'E'|'F', color)")
        _, p, left, i = gen
        if not 0 <= p <= n:
            raise DiagramTypeError(f"layer {layer}: cup position {p} outside 0..{n}")
        right = "F" if left == "E" else "E"
        return strands[:p] + ((left, i), (right, i)) + strands[p:]
    if kind == "cap":
        p = gen[1]
        if not 0 <= p < n - 1:
            raise DiagramTypeError(f"layer {layer}: cap position {p} needs strands {p}, {p + 1} of {n}")
        (a, i), (b, j) = strands[p], strands[p + 1]
        if i != j or a == b:
            raise DiagramTypeError(
                f"layer {layer}: cap joins {a}{i} and {b}{j}; needs one color and opposite orientations")
        return strands[:p] + strands[p + 2:]
    raise DiagramTypeError(f"layer {layer}: unknown generator {gen!r}")


@dataclass(frozen=True)
class StringDiagram:
    """Layered diagram: bottom boundary, rightmost region weight, layers
    applied bottom to top, and optionally the expected top boundary."""

    bottom: tuple
    right_weight: Weight
    layers: tuple = ()
    top: tuple | None = None

    def interfaces(self) -> list[tuple]:
        """Strand sequences between layers (type-checks as it goes)."""
        for s in self.bottom:
            try:
                _check_symbol(s)
            except ValueError as exc:
                raise DiagramTypeError(f"interface 0: {exc}") from None
        seqs = [tuple(self.bottom)]
        for k, gen in enumerate(self.layers, start=1):
            seqs.append(_apply(gen, seqs[-1], k))
        if self.top is not None and tuple(self.top) != seqs[-1]:
            raise DiagramTypeError(
                f"interface {len(self.layers)}: top boundary {seqs[-1]} does not match declared {tuple(self.top)}")
        return seqs

    def region_weights(self, d: RootDatum) -> list[list[Weight]]:
        return [_region_weights(d, s, self.right_weight) for s in self.interfaces()]


def diagram_degree(d: RootDatum, s: StringDiagram) -> int:
    seqs = s.interfaces()
    for seq in seqs:
        for _, i in seq:
            if i not in d.index:
                raise DiagramTypeError(f"strand color {i} is not a vertex")
    return sum(generator_degree(d, g, seqs[k], s.right_weight) for k, g in enumerate(s.layers))


def _span(gen: tuple) -> tuple[int, int, int]:
    """(first, last+1) input slots touched, and the width change."""
    kind, p = gen[0], gen[1]
    if kind == "dot":
        return p, p + 1, 0
    if kind == "cross":
        return p, p + 2, 0
    if kind == "cup":
        return p, p, 2
    return p, p + 2, -2


def swap_layers(s: StringDiagram, k: int) -> StringDiagram:
    """Exchange layers k and k+1 (0-based) when they act on disjoint strands,
    shifting positions as needed.  Raises if they overlap."""
    g1, g2 = s.layers[k], s.layers[k + 1]
    s.interfaces()
    a1, b1, w1 = _span(g1)
    # g2's span measured on the sequence after g1
    a2, b2, w2 = _span(g2)
    if b1 + w1 <= a2:
        # g2 lies to the right of g1's output: pull it down past g1
        new2 = (g2[0], g2[1] - w1) + tuple(g2[2:])
        new1 = g1
    elif b2 <= a1:
        # g2 lies to the left of g1: g1 moves right by g2's width change
        new2 = g2
        new1 = (g1[0], g1[1] + w2) + tuple(g1[2:])
    else:
        raise DiagramTypeError(f"layers {k} and {k + 1} overlap; they do not commute by isotopy")
    layers = s.layers[:k] + (new2, new1) + s.layers[k + 2:]
    return StringDiagram(s.bottom, s.right_weight, layers, s.top)
