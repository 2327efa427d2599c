"""Cyclotomic quotients R^lambda_nu = R_nu / <y_1^{a(i_1)} e(i)>, with
a(i) = alpha_i^vee(lambda), computed degree by degree by exact linear algebra
on the normal-form spanning set.

Stabilization is certified, not guessed: for every word i we look for the
smallest N_i such that all dot monomials of total degree N_i on e(i) lie in the
ideal.  Then the quotient is spanned by psi_w y^a e(i) with |a| < N_i, which
bounds the top nonzero degree.  If the cap reaches that bound the computed
quotient is complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..laurent import LaurentPoly, row_reduce
from ..rootdata import RootDatum, Weight
from .algebra import DiagramBasisElement, KLRAlgebra, KLRElement, _compositions, algebra_for

__all__ = ["CyclotomicQuotient", "SparseEchelon", "cyclotomic_quotient"]


class SparseEchelon:
    """Incrementally maintained echelon basis of a subspace of Q^N, with
    vectors stored as dicts index -> Fraction.  A row's pivot is its smallest
    index, and no row has a nonzero entry at another row's pivot."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def reduce(self, v: Mapping[int, Fraction]) -> dict:
        v = {k: c for k, c in v.items() if c}
        for p in sorted(self.rows):
            c = v.get(p)
            if c:
                for k, x in self.rows[p].items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def insert(self, v: Mapping[int, Fraction]) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in r.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return True

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)


@dataclass
class CyclotomicQuotient:
    d: RootDatum
    lam: Weight
    content: dict
    deg_cap: int
    words: list
    basis: list                      # quotient basis, DiagramBasisElement
    degrees: list
    graded_dim: LaurentPoly
    stabilized: bool
    dot_bounds: dict                 # word -> N_i (or None if not found under the cap)
    _alg: KLRAlgebra = field(repr=False, default=None)
    _spaces: dict = field(repr=False, default_factory=dict)   # degree -> (basis list, index, echelon)
    _qindex: dict = field(repr=False, default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return sum(self.content.values())

    # -- reduction to quotient coordinates
    def coordinates(self, x: KLRElement) -> list[Fraction]:
        """Coordinates of the image of x in the quotient basis."""
        out = [Fraction(0)] * len(self.basis)
        bydeg: dict[int, dict] = {}
        for b, c in x.items():
            deg = self._alg.degree(b)
            if deg > self.deg_cap:
                if not self.stabilized:
                    raise ValueError(f"degree {deg} exceeds the cap of an unstabilized quotient")
                continue
            bydeg.setdefault(deg, {})[b] = c
        for deg, terms in bydeg.items():
            space = self._spaces.get(deg)
            if space is None:
                continue
            blist, index, ech = space
            v = {index[b]: c for b, c in terms.items()}
            for k, c in ech.reduce(v).items():
                out[self._qindex[(deg, k)]] += c
        return out

    def element(self, coords: Sequence) -> KLRElement:
        return KLRElement(self.n, {b: c for b, c in zip(self.basis, coords) if c})

    def multiply(self, a: Sequence, b: Sequence) -> list[Fraction]:
        x, y = self.element(a), self.element(b)
        return self.coordinates(self._alg.mul(x, y))

    def structure_constants(self) -> dict:
        """(a, b) -> coordinate list of basis[a] * basis[b]."""
        table = {}
        for a, ba in enumerate(self.basis):
            for b, bb in enumerate(self.basis):
                table[(a, b)] = self.coordinates(self._alg.mul(KLRElement.basis(ba), KLRElement.basis(bb)))
        return table

    def _generators(self) -> list[tuple]:
        gens = [("e", w) for w in self.words]
        gens += [("y", k) for k in range(1, self.n + 1)]
        gens += [("psi", k) for k in range(1, self.n)]
        return gens

    def operator_tables(self, side: str = "left") -> dict:
        """Matrices of multiplication by each generator on the quotient basis
        (columns are images of basis vectors)."""
        D = len(self.basis)
        tables = {}
        for g in self._generators():
            cols = []
            for b in self.basis:
                if side == "left":
                    img = self._alg.product([g], KLRElement.basis(b))
                else:
                    img = self._alg.mul(KLRElement.basis(b), _token_element(self._alg, g, self.words, self.n))
                cols.append(self.coordinates(img))
            tables[g] = [[cols[c][r] for c in range(D)] for r in range(D)]
        return tables

    def center_graded_dim(self) -> LaurentPoly:
        """Graded dimension of the center, as the common kernel of
        left-minus-right multiplication by every generator."""
        if not self.stabilized:
            raise ValueError("center requires a stabilized quotient")
        L = self.operator_tables("left")
        R = self.operator_tables("right")
        out = {}
        for deg in sorted(set(self.degrees)):
            cols = [k for k, dg in enumerate(self.degrees) if dg == deg]
            rows = []
            for g in L:
                for r in range(len(self.basis)):
                    rows.append([L[g][r][c] - R[g][r][c] for c in cols])
            rk = len(row_reduce(rows)[1]) if rows else 0
            if len(cols) - rk:
                out[deg] = len(cols) - rk
        return LaurentPoly(out)


def _token_element(alg: KLRAlgebra, tok: tuple, words: list, n: int) -> KLRElement:
    """A generator as an element of R_nu (sum over idempotents of the block)."""
    if tok[0] == "e":
        return KLRElement.idempotent(tok[1])
    total = KLRElement(n)
    for w in words:
        total = total + alg.product([tok], KLRElement.idempotent(w))
    return total


def _content_of(d: RootDatum, nu) -> dict:
    if isinstance(nu, Mapping):
        c = {d.vertex(k): int(v) for k, v in nu.items()}
    else:
        nu = tuple(int(x) for x in nu)
        if len(nu) != d.rank:
            raise ValueError(f"root-lattice element needs {d.rank} entries")
        c = dict(zip(d.vertices, nu))
    if any(v < 0 for v in c.values()):
        raise ValueError("nu must be a nonnegative combination of simple roots")
    return {k: v for k, v in c.items() if v}


def cyclotomic_quotient(d: RootDatum, lam: Weight, nu, deg_cap: int) -> CyclotomicQuotient:
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    content = _content_of(d, nu)
    alg = algebra_for(d)
    words = alg.words(content)
    n = sum(content.values())
    skel = alg.crossing_skeleta(words)
    mindeg = min(s[2] for s in skel)
    maxcross = {w: max(s[2] for s in skel if s[0] == w) for w in words}
    level = {w: (lam.coords[d.index[w[0]]] if n else 0) for w in words}

    # basis of R_nu in each degree, grouped for the ideal products
    spaces: dict[int, tuple] = {}

    def space(deg):
        if deg not in spaces:
            blist = alg.basis_of_degree(words, deg)
            spaces[deg] = (blist, {b: k for k, b in enumerate(blist)}, SparseEchelon())
        return spaces[deg]

    # The ideal is spanned by y^a' psi_w' y_1^N e(i) psi_w y^a.  Seeds are the
    # products with no outer dots; degree d of the ideal is the span of the
    # degree-d seeds together with y_k * I_{d-2} and I_{d-2} * y_k.
    seeds: dict[int, list] = {}
    if n:
        by_target: dict[tuple, list] = {}
        for word, red, d0 in skel:
            b = DiagramBasisElement(word, red, (0,) * n)
            by_target.setdefault(b.target, []).append((b, d0))
        for i in words:
            N = level[i]
            for b2, d2 in by_target.get(i, []):
                z = {b2: Fraction(1)}
                for _ in range(N):
                    z = alg.lmul_y(1, z)
                if not z:
                    continue
                for word, red, d1 in skel:
                    if word != i:
                        continue
                    x = z
                    for k in reversed(red):
                        x = alg.lmul_psi(k, x)
                    if x:
                        seeds.setdefault(d1 + 2 * N + d2, []).append(x)

    for deg in range(mindeg, deg_cap + 1):
        blist, index, ech = space(deg)
        for x in seeds.get(deg, []):
            ech.insert({index[b]: c for b, c in x.items()})
        prev = spaces.get(deg - 2)
        if prev is None or not prev[2].rows:
            continue
        pblist = prev[0]
        for row in list(prev[2].rows.values()):
            for k in range(1, n + 1):
                left: dict = {}
                right: dict = {}
                for idx, c in row.items():
                    b = pblist[idx]
                    for bb, cc in alg._lmul_y_basis(k, b).items():
                        j = index[bb]
                        left[j] = left.get(j, 0) + c * cc
                    dots = list(b.dots)
                    dots[k - 1] += 1
                    j = index[DiagramBasisElement(b.word, b.perm, tuple(dots))]
                    right[j] = right.get(j, 0) + c
                ech.insert(left)
                ech.insert(right)

    # quotient basis = non-pivot elements
    qbasis, qdeg, qindex = [], [], {}
    for deg in range(mindeg, deg_cap + 1):
        blist, index, ech = spaces[deg]
        piv = ech.pivots
        for k, b in enumerate(blist):
            if k not in piv:
                qindex[(deg, k)] = len(qbasis)
                qbasis.append(b)
                qdeg.append(deg)

    # certified stabilization
    dot_bounds: dict = {}
    for w in words:
        dot_bounds[w] = None
        for N in range(0, deg_cap // 2 + 1):
            blist, index, ech = spaces.get(2 * N, (None, None, None)) if 2 * N >= mindeg else (None, None, None)
            if blist is None:
                continue
            if all(not ech.reduce({index[DiagramBasisElement(w, (), a)]: Fraction(1)})
                   for a in _compositions(N, n)):
                dot_bounds[w] = N
                break
    if n == 0:
        stabilized = True
    else:
        stabilized = all(dot_bounds[w] is not None for w in words) and deg_cap >= max(
            maxcross[w] + 2 * (dot_bounds[w] - 1) for w in words)

    gd: dict[int, int] = {}
    for dg in qdeg:
        gd[dg] = gd.get(dg, 0) + 1
    return CyclotomicQuotient(
        d=d, lam=lam, content=content, deg_cap=deg_cap, words=words, basis=qbasis,
        degrees=qdeg, graded_dim=LaurentPoly(gd), stabilized=stabilized, dot_bounds=dot_bounds,
        _alg=alg, _spaces=spaces, _qindex=qindex)
