"""Instantiation of the KLR defining relations and their evaluation in several
realizations: normal-form rewriting, the polynomial representation, and
arbitrary matrices assigned to the generators.  A further cross-check acts
with the rewritten normal form of each term and compares against acting
with its generators one at a time.

A relation instance is a formal combination ``sum c * (g_1 ... g_m)`` that must
vanish.  Every product ends in an idempotent ``('e', u)`` so that all three
realizations can evaluate it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from ..polyrep import MultiPoly, PolyVector, act_element, act_word, monomials_up_to
from ..rootdata import RootDatum, q_polynomial
from .algebra import KLRAlgebra, KLRElement, algebra_for

__all__ = [
    "FAMILIES",
    "RelationInstance",
    "RelationReport",
    "check_relations",
    "check_relations_matrices",
    "relation_instances",
]

FAMILIES = (
    "idempotent",
    "idempotent-dot",
    "idempotent-crossing",
    "dot-dot",
    "crossing-dot-far",
    "crossing-crossing-far",
    "dot-slide",
    "double-crossing",
    "braid",
)


@dataclass(frozen=True)
class RelationInstance:
    family: str
    word: tuple
    terms: tuple  # ((coef, (token, ...)), ...)

    def describe(self) -> str:
        parts = []
        for c, toks in self.terms:
            body = "*".join(_fmt_tok(t) for t in toks)
            parts.append(f"{'+' if c > 0 else '-'} {'' if abs(c) == 1 else str(abs(c)) + '*'}{body}")
        text = " ".join(parts).lstrip("+ ")
        return f"{self.family}: {text} = 0"


def _fmt_tok(t) -> str:
    kind, arg = t
    if kind == "e":
        return "e(" + " ".join(str(v) for v in arg) + ")"
    return f"{kind}({arg})"


def _poly_tokens(f: MultiPoly) -> list[tuple[Fraction, tuple]]:
    out = []
    for exps, c in sorted(f.items()):
        toks = []
        for k, a in enumerate(exps, start=1):
            toks += [("y", k)] * a
        out.append((c, tuple(toks)))
    return out


def relation_instances(d: RootDatum, word: tuple, families: Iterable[str] = FAMILIES) -> list[RelationInstance]:
    """All relation instances whose rightmost idempotent is e(word)."""
    word = tuple(word)
    n = len(word)
    fams = set(families)
    E = ("e", word)
    out: list[RelationInstance] = []

    def add(fam, terms):
        if fam in fams:
            out.append(RelationInstance(fam, word, tuple((Fraction(c), tuple(t)) for c, t in terms)))

    def swapped(u, k):
        return u[: k - 1] + (u[k], u[k - 1]) + u[k + 1:]

    # e(u) e(u) = e(u); e(v) e(u) = 0 for the other orderings of u
    add("idempotent", [(1, (E, E)), (-1, (E,))])
    others = {swapped(word, k) for k in range(1, n)} | {tuple(reversed(word))}
    for v in sorted(others - {word}, key=str):
        add("idempotent", [(1, (("e", v), E))])

    # e(v) y_k e(u) = delta_uv y_k e(u);  e(v) psi_k e(u) = delta_{v, s_k u} psi_k e(u)
    for k in range(1, n + 1):
        add("idempotent-dot", [(1, (E, ("y", k), E)), (-1, (("y", k), E))])
    for k in range(1, n):
        v = swapped(word, k)
        add("idempotent-crossing", [(1, (("e", v), ("psi", k), E)), (-1, (("psi", k), E))])
        if v != word:
            add("idempotent-crossing", [(1, (E, ("psi", k), E))])

    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            add("dot-dot", [(1, (("y", k), ("y", l), E)), (-1, (("y", l), ("y", k), E))])

    for k in range(1, n):
        for l in range(1, n + 1):
            if l not in (k, k + 1):
                add("crossing-dot-far", [(1, (("psi", k), ("y", l), E)), (-1, (("y", l), ("psi", k), E))])
    for k in range(1, n):
        for l in range(k + 2, n):
            add("crossing-crossing-far", [(1, (("psi", k), ("psi", l), E)), (-1, (("psi", l), ("psi", k), E))])

    for k in range(1, n):
        same = word[k - 1] == word[k]
        P, Yk, Yk1 = ("psi", k), ("y", k), ("y", k + 1)
        # psi_k y_{k+1} - y_k psi_k = -[same] ;  psi_k y_k - y_{k+1} psi_k = [same]
        t1 = [(1, (P, Yk1, E)), (-1, (Yk, P, E))]
        t2 = [(1, (P, Yk, E)), (-1, (Yk1, P, E))]
        if same:
            t1.append((1, (E,)))
            t2.append((-1, (E,)))
        add("dot-slide", t1)
        add("dot-slide", t2)

    for k in range(1, n):
        P = ("psi", k)
        terms = [(1, (P, P, E))]
        i, j = word[k - 1], word[k]
        if i != j:
            # the Q polynomial is read off the datum here, independently of
            # the rewriting engine's copy
            for (a, b), c in q_polynomial(d, i, j).coeffs.items():
                exps = [0] * n
                exps[k - 1], exps[k] = a, b
                for cc, toks in _poly_tokens(MultiPoly(n, {tuple(exps): c})):
                    terms.append((-cc, toks + (E,)))
        add("double-crossing", terms)

    alg = algebra_for(d)
    for k in range(1, n - 1):
        A, B = ("psi", k), ("psi", k + 1)
        terms = [(1, (A, B, A, E)), (-1, (B, A, B, E))]
        for c, toks in _poly_tokens(alg.braid_correction(word, k)):
            terms.append((-c, toks + (E,)))
        add("braid", terms)
    return out


# --- realizations -----------------------------------------------------------

def eval_rewriting(alg: KLRAlgebra, inst: RelationInstance) -> KLRElement:
    n = len(inst.word)
    total = KLRElement(n)
    for c, toks in inst.terms:
        # the rightmost token is e(word); start from it as an element
        total = total + alg.product(toks[:-1], KLRElement.idempotent(toks[-1][1])) * c
    return total


def eval_polyrep(d: RootDatum, inst: RelationInstance, f: MultiPoly) -> PolyVector:
    n = len(inst.word)
    v = PolyVector.single(inst.word, f)
    total = PolyVector(n)
    for c, toks in inst.terms:
        total = total + act_word(d, toks, v).scale(c)
    return total


def normal_form_mismatch(d: RootDatum, alg: KLRAlgebra, inst: RelationInstance, f: MultiPoly):
    """The first term whose normal form acts on f * e(word) differently from
    its generator sequence, or None."""
    v = PolyVector.single(inst.word, f)
    for _, toks in inst.terms:
        nf = alg.product(toks[:-1], KLRElement.idempotent(toks[-1][1]))
        if act_element(d, nf, v) != act_word(d, toks, v):
            return toks
    return None


@dataclass
class RelationReport:
    passed: bool
    checked: int
    by_family: dict = field(default_factory=dict)
    first_failure: str | None = None
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}: {self.checked} relation instances checked" + (
            f"; first failure: {self.first_failure}" if self.first_failure else "")


def _all_words(pool: Sequence, n: int) -> list[tuple]:
    return [tuple(w) for w in product(pool, repeat=n)]


def check_relations(
    d: RootDatum,
    n: int,
    pool: Sequence | None = None,
    *,
    poly_degree: int = 3,
    words: Iterable[tuple] | None = None,
    realizations: tuple = ("rewriting", "polyrep", "normal-form"),
    max_failures: int = 20,
) -> RelationReport:
    """Check every relation instance on words of length exactly ``n`` over
    ``pool`` (default: all vertices).  The polynomial realization is tested on
    all monomials of polynomial degree <= ``poly_degree``."""
    start = time.perf_counter()
    pool = list(d.vertices if pool is None else pool)
    ws = list(words) if words is not None else _all_words(pool, n)
    alg = algebra_for(d)
    monos = [MultiPoly.monomial(m) for m in monomials_up_to(n, poly_degree)]
    rep = RelationReport(passed=True, checked=0)
    for w in ws:
        for inst in relation_instances(d, w):
            rep.checked += 1
            fam = rep.by_family.setdefault(inst.family, {"checked": 0, "failed": 0})
            fam["checked"] += 1
            witness = None
            if "rewriting" in realizations:
                val = eval_rewriting(alg, inst)
                if not val.is_zero():
                    witness = f"{inst.describe()} [rewriting] evaluates to {alg.fmt(val)}"
            if witness is None and "polyrep" in realizations:
                for f in monos:
                    val = eval_polyrep(d, inst, f)
                    if not val.is_zero():
                        witness = f"{inst.describe()} [polynomial rep] on {f}*e({' '.join(map(str, w))}) gives {val}"
                        break
            if witness is None and "normal-form" in realizations:
                for f in monos:
                    bad = normal_form_mismatch(d, alg, inst, f)
                    if bad is not None:
                        witness = (f"{inst.describe()} [normal form] term {'*'.join(map(_fmt_tok, bad))} "
                                   f"acts differently on {f}*e({' '.join(map(str, w))})")
                        break
            if witness is not None:
                fam["failed"] += 1
                rep.passed = False
                if rep.first_failure is None:
                    rep.first_failure = witness
                if len(rep.failures) < max_failures:
                    rep.failures.append(witness)
    rep.seconds = time.perf_counter() - start
    return rep


def check_relations_matrices(
    d: RootDatum,
    n: int,
    ops: Mapping[tuple, object],
    words: Iterable[tuple],
    *,
    max_failures: int = 20,
) -> RelationReport:
    """Check the relations for matrices assigned to generators.

    ``ops`` maps ('e', word), ('y', k), ('psi', k) to square matrices (lists of
    rows, numpy object arrays, or anything supporting ``@``).  Missing
    idempotents act as zero; every word is tested."""
    import numpy as np

    start = time.perf_counter()
    mats = {k: np.array(v, dtype=object) for k, v in ops.items()}
    size = next(iter(mats.values())).shape[0] if mats else 0
    zero = np.zeros((size, size), dtype=object)
    for key, m in mats.items():
        if m.shape != (size, size):
            raise ValueError(f"operator {key} has shape {m.shape}, expected {(size, size)}")

    def mat(tok):
        if tok[0] == "e":
            return mats.get(("e", tuple(tok[1])), zero)
        if tok not in mats:
            raise KeyError(f"no operator table for {_fmt_tok(tok)}")
        return mats[tok]

    rep = RelationReport(passed=True, checked=0)
    for w in words:
        for inst in relation_instances(d, w):
            rep.checked += 1
            fam = rep.by_family.setdefault(inst.family, {"checked": 0, "failed": 0})
            fam["checked"] += 1
            total = zero.copy()
            for c, toks in inst.terms:
                m = np.identity(size, dtype=object) * Fraction(1)
                for t in toks:
                    m = m.dot(mat(t))
                total = total + m * c
            if any(x != 0 for x in total.flat):
                fam["failed"] += 1
                rep.passed = False
                idx = next(k for k, x in enumerate(total.flat) if x != 0)
                witness = f"{inst.describe()} [matrices] nonzero entry {divmod(idx, size)}"
                if rep.first_failure is None:
                    rep.first_failure = witness
                if len(rep.failures) < max_failures:
                    rep.failures.append(witness)
    rep.seconds = time.perf_counter() - start
    return rep
