"""Certifier for candidate categorical actions.

A candidate gives, for a finite set of weights, graded multiplicity matrices
for E_i and F_i, and optionally finite operator tables on which the KLR
generators (and sideways crossings, cups, caps) act.  ``certify`` runs five
independent checks:

1. integrability: along every i-string the weight spaces form a finite,
   unbroken, s_i-symmetric segment and E_i, F_i are nilpotent on it;
2. positivity: the graded endomorphism dimension of each identity is
   concentrated in degrees >= 0 with a one-dimensional degree-0 part;
3. commutator: E_i F_i = F_i E_i + [n] Id when n = <alpha_i, mu> >= 0, and
   F_i E_i = E_i F_i + [-n] Id when n <= 0;
4. KLR action: operator tables satisfy the KLR relations, opposite
   sideways crossings cancel up to t_ij, and supplied identities such as
   cross-and-cap moves and zigzags hold;
5. mixed commutation: E_j F_i = F_i E_j for i != j.

``E[(i, mu)]`` maps the mu-space to the (mu + alpha_i)-space and
``F[(i, mu)]`` maps it to the (mu - alpha_i)-space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..klr.relations import check_relations_matrices
from ..laurent import LaurentPoly, Matrix
from ..rootdata import RootDatum, Weight, quantum_integer, t_scalar

__all__ = [
    "CandidateAction",
    "CandidateError",
    "CertReport",
    "OperatorTable",
    "certify",
    "ground_truth_action",
    "perturb",
]

LZERO = LaurentPoly()
LONE = LaurentPoly.const(1)


class CandidateError(ValueError):
    pass


@dataclass
class OperatorTable:
    """KLR generators acting on a finite graded space.

    ``ops`` maps ('e', word), ('y', k), ('psi', k) to square rational
    matrices given as lists of rows; ``degrees`` (optional) lists the degree
    of each basis vector."""

    n: int
    words: list
    ops: dict
    degrees: list | None = None


@dataclass
class CandidateAction:
    weights: list
    dims: dict                     # Weight -> int
    E: dict = field(default_factory=dict)
    F: dict = field(default_factory=dict)
    end_dims: dict = field(default_factory=dict)    # Weight -> LaurentPoly
    tables: list = field(default_factory=list)      # OperatorTable
    sideways: list = field(default_factory=list)    # (i, j, S, S_prime) rational matrices
    identities: list = field(default_factory=list)  # (label, lhs, rhs)
    zigzags: list = field(default_factory=list)     # (label, lhs, rhs)
    cyclicity: list | None = None

    def dim(self, mu: Weight) -> int:
        return self.dims.get(mu, 0)


@dataclass
class CertReport:
    conditions: dict = field(default_factory=dict)   # "1".."5" -> "pass" | "fail" | "not checked"
    witnesses: dict = field(default_factory=dict)    # condition -> list of strings
    details: dict = field(default_factory=dict)
    cyclicity: str = "not checked"

    def record(self, cond: str, ok: bool, witness: str | None = None):
        cur = self.conditions.get(cond, "pass")
        self.conditions[cond] = "pass" if (ok and cur == "pass") else "fail"
        if not ok and witness:
            self.witnesses.setdefault(cond, []).append(witness)

    @property
    def passed(self) -> bool:
        return all(v != "fail" for v in self.conditions.values())

    def passes(self, *conds: str) -> bool:
        return all(self.conditions.get(c) == "pass" for c in conds)

    def summary(self) -> str:
        lines = []
        for c in sorted(self.conditions):
            line = f"condition ({c}): {self.conditions[c]}"
            if c in self.witnesses:
                line += f"; {self.witnesses[c][0]}"
            lines.append(line)
        lines.append(f"cyclicity: {self.cyclicity}")
        return "\n".join(lines)


# --- structure --------------------------------------------------------------

def _laurent_matrix(m, rows: int, cols: int, label: str) -> Matrix:
    if m is None:
        return Matrix(rows, cols, zero=LZERO)
    if not isinstance(m, Matrix):
        try:
            m = Matrix(len(m), len(m[0]) if m else cols, m, zero=LZERO)
        except (TypeError, IndexError) as exc:
            raise CandidateError(f"{label}: not a matrix ({exc})") from None
    if m.shape != (rows, cols):
        raise CandidateError(f"{label}: shape {m.shape}, expected {(rows, cols)}")
    return m.map(lambda x: x if isinstance(x, LaurentPoly) else LaurentPoly.const(x))


def _validate(d: RootDatum, c: CandidateAction) -> None:
    wset = set(c.weights)
    if len(wset) != len(c.weights):
        raise CandidateError("weight set has repeated entries")
    for mu in c.weights:
        if len(mu.coords) != d.rank:
            raise CandidateError(f"weight {mu} has {len(mu.coords)} coordinates, expected {d.rank}")
        if c.dims.get(mu, 0) < 0:
            raise CandidateError(f"negative dimension at weight {mu}")
    for mu in c.dims:
        if mu not in wset:
            raise CandidateError(f"dimension given for undeclared weight {mu}")
    for table, sign, name in ((c.E, 1, "E"), (c.F, -1, "F")):
        for key, m in table.items():
            i, mu = key
            if i not in d.index:
                raise CandidateError(f"{name} matrix for unknown vertex {i}")
            if mu not in wset:
                raise CandidateError(f"{name}_{i} matrix at undeclared weight {mu}")
            tgt = mu + d.simple_root(i).scale(sign)
            table[key] = _laurent_matrix(m, c.dim(tgt), c.dim(mu), f"{name}_{i} at {mu}")
    for t in c.tables:
        sizes = {len(m) for m in t.ops.values()}
        if len(sizes) > 1:
            raise CandidateError(f"operator table on {t.n} strands mixes sizes {sorted(sizes)}")
        size = sizes.pop() if sizes else 0
        for key, m in t.ops.items():
            if any(len(row) != size for row in m):
                raise CandidateError(f"operator {key} is not square")
        if t.degrees is not None:
            if len(t.degrees) != size:
                raise CandidateError(f"operator table on {t.n} strands: {len(t.degrees)} degrees for size {size}")
            _check_homogeneous(d, t)


def _check_homogeneous(d: RootDatum, t: OperatorTable) -> None:
    for key, m in t.ops.items():
        for r, row in enumerate(m):
            for col, x in enumerate(row):
                if x == 0:
                    continue
                shift = t.degrees[r] - t.degrees[col]
                if key[0] == "e":
                    ok = shift == 0
                elif key[0] == "y":
                    ok = shift == 2
                else:
                    # a crossing has degree -c_ij for the labels it swaps,
                    # which depends on the idempotent; accept any legal value
                    ok = shift in {-d.cartan(a, b) for a in d.vertices for b in d.vertices}
                if not ok:
                    raise CandidateError(
                        f"operator {key} is not homogeneous: entry ({r},{col}) shifts degree by {shift}")


# --- conditions -------------------------------------------------------------

def _pair(d: RootDatum, mu: Weight, i) -> int:
    return mu.coords[d.index[i]] * d.d(i)


def _e(d, c, i, mu) -> Matrix:
    tgt = mu + d.simple_root(i)
    m = c.E.get((i, mu))
    return m if m is not None else Matrix(c.dim(tgt), c.dim(mu), zero=LZERO)


def _f(d, c, i, mu) -> Matrix:
    tgt = mu - d.simple_root(i)
    m = c.F.get((i, mu))
    return m if m is not None else Matrix(c.dim(tgt), c.dim(mu), zero=LZERO)


def _cond_integrability(d, c, rep: CertReport):
    wset = set(c.weights)
    for i in d.vertices:
        a = d.simple_root(i)
        seen = set()
        for mu in sorted(c.weights, key=lambda w: w.coords):
            if mu in seen or not c.dim(mu):
                continue
            # walk the string through mu inside the declared weight set
            lo = mu
            while lo - a in wset and c.dim(lo - a):
                lo = lo - a
            string = []
            cur = lo
            while cur in wset and c.dim(cur):
                string.append(cur)
                seen.add(cur)
                cur = cur + a
                if len(string) > len(c.weights):
                    break
            dims = [c.dim(w) for w in string]
            top, bottom = string[-1], string[0]
            if _pair(d, top, i) != -_pair(d, bottom, i):
                rep.record("1", False, f"{i}-string from {bottom} to {top} is not s_{i}-symmetric")
                continue
            if dims != dims[::-1]:
                rep.record("1", False, f"{i}-string through {mu} has dimensions {dims}, not s_{i}-symmetric")
                continue
            # nilpotency of E_i and F_i along the string
            e_chain = Matrix.identity(c.dim(bottom), LONE, LZERO)
            for w in string:
                e_chain = _e(d, c, i, w) @ e_chain
            f_chain = Matrix.identity(c.dim(top), LONE, LZERO)
            for w in reversed(string):
                f_chain = _f(d, c, i, w) @ f_chain
            ok = e_chain.is_zero() and f_chain.is_zero()
            rep.record("1", ok, None if ok else f"E_{i} or F_{i} not nilpotent on the string through {mu}")
    rep.conditions.setdefault("1", "pass")


def _cond_positivity(d, c, rep: CertReport):
    if not c.end_dims:
        rep.conditions["2"] = "not checked"
        return
    for mu in c.weights:
        if not c.dim(mu):
            continue
        g = c.end_dims.get(mu)
        if g is None:
            rep.record("2", False, f"no endomorphism dimensions at {mu}")
            continue
        neg = [k for k in g.exponents() if k < 0]
        if neg:
            rep.record("2", False, f"End(1_{mu}) has degree {neg[0]} part {g[neg[0]]}")
        elif g[0] != 1:
            rep.record("2", False, f"End(1_{mu}) is {g[0]}-dimensional in degree 0")
        else:
            rep.record("2", True)


def _cond_commutator(d, c, rep: CertReport):
    for i in d.vertices:
        a = d.simple_root(i)
        for mu in c.weights:
            size = c.dim(mu)
            if not size:
                continue
            n = _pair(d, mu, i)
            ef = _e(d, c, i, mu - a) @ _f(d, c, i, mu)
            fe = _f(d, c, i, mu + a) @ _e(d, c, i, mu)
            branches = []
            if n >= 0:
                branches.append((ef, fe + Matrix.scalar(size, quantum_integer(n), LZERO), "E F = F E + [%d] Id" % n))
            if n <= 0:
                branches.append((fe, ef + Matrix.scalar(size, quantum_integer(-n), LZERO), "F E = E F + [%d] Id" % -n))
            for lhs, rhs, text in branches:
                diff = lhs - rhs
                if diff.is_zero():
                    rep.record("3", True)
                else:
                    r, col, x = diff.first_nonzero()
                    rep.record("3", False, f"{text} fails for i={i} at mu={mu}: entry ({r},{col}) off by {x}")
            # the observed summand: EF - FE if it is a scalar matrix
            comm = ef - fe
            s = comm[0, 0]
            scalar = comm == Matrix.scalar(size, s, LZERO)
            rep.details.setdefault("3", {})[(i, mu)] = str(s) if scalar else "not scalar"


def _cond_klr(d, c, rep: CertReport):
    if not (c.tables or c.sideways or c.identities or c.zigzags):
        rep.conditions["4"] = "not checked"
        return
    for t in c.tables:
        r = check_relations_matrices(d, t.n, t.ops, t.words)
        rep.details.setdefault("4", []).append(f"{t.n} strands: {r.checked} relation instances")
        rep.record("4", r.passed, None if r.passed else f"KLR relation on {t.n} strands: {r.first_failure}")
    for i, j, S, Sp in c.sideways:
        S = Matrix(len(S), len(S[0]) if S else 0, S)
        Sp = Matrix(len(Sp), len(Sp[0]) if Sp else 0, Sp)
        for prod, scalar, label in ((Sp @ S, t_scalar(d, i, j), "S'S"), (S @ Sp, t_scalar(d, j, i), "SS'")):
            ok = prod == Matrix.scalar(prod.nrows, Fraction(scalar))
            rep.record("4", ok, None if ok else f"opposite crossings ({i},{j}): {label} != t * Id")
    for label, lhs, rhs in list(c.identities) + list(c.zigzags):
        L = Matrix(len(lhs), len(lhs[0]) if lhs else 0, lhs)
        R = Matrix(len(rhs), len(rhs[0]) if rhs else 0, rhs)
        ok = L.shape == R.shape and L == R
        rep.record("4", ok, None if ok else f"identity '{label}' fails")


def _cond_mixed(d, c, rep: CertReport):
    for i in d.vertices:
        for j in d.vertices:
            if i == j:
                continue
            for mu in c.weights:
                if not c.dim(mu):
                    continue
                mid1 = mu - d.simple_root(i)
                mid2 = mu + d.simple_root(j)
                lhs = _e(d, c, j, mid1) @ _f(d, c, i, mu)
                rhs = _f(d, c, i, mid2) @ _e(d, c, j, mu)
                diff = lhs - rhs
                if diff.is_zero():
                    rep.record("5", True)
                else:
                    r, col, x = diff.first_nonzero()
                    rep.record("5", False, f"E_{j} F_{i} != F_{i} E_{j} at mu={mu}: entry ({r},{col}) off by {x}")
    rep.conditions.setdefault("5", "pass")


def certify(d: RootDatum, c: CandidateAction) -> CertReport:
    _validate(d, c)
    rep = CertReport()
    _cond_integrability(d, c, rep)
    _cond_positivity(d, c, rep)
    _cond_commutator(d, c, rep)
    rep.conditions.setdefault("3", "pass")
    _cond_klr(d, c, rep)
    _cond_mixed(d, c, rep)
    if c.cyclicity is not None:
        ok = all(Matrix(len(a), len(a[0]), a) == Matrix(len(b), len(b[0]), b) for _, a, b in c.cyclicity)
        rep.cyclicity = "pass" if ok else "fail"
    return rep


# --- reference data ---------------------------------------------------------

def ground_truth_action(d: RootDatum, lam: Weight, *, with_end_dims: bool = True) -> CandidateAction:
    """Multiplicity data of V(lambda) (finite type) as a candidate action.

    Matrices come from the exact module construction; they must have Laurent
    polynomial entries in the monomial basis."""
    from ..klr.cyclotomic import cyclotomic_quotient
    from ..uqrep.module import build_module
    from ..uqrep.weights import multiplicity_at_depth

    if not d.is_finite_type():
        raise ValueError("ground truth needs a finite-type datum")
    depth = 0
    while True:
        M = build_module(d, lam, depth)
        if M.complete:
            break
        depth += 1
    weights = [M.weight(b) for b in sorted(M.basis)]
    cand = CandidateAction(weights, {M.weight(b): len(v) for b, v in M.basis.items()})

    def lau(m: Matrix, label: str) -> Matrix:
        def conv(x):
            if not x.is_laurent():
                raise ValueError(f"{label} has a non-Laurent entry {x}")
            return x.as_laurent()
        return Matrix(m.nrows, m.ncols, [[conv(x) for x in row] for row in m.rows], LZERO)

    for (i, beta), m in M.E.items():
        cand.E[(i, M.weight(beta))] = lau(m, f"E_{i}")
    for (i, beta), m in M.F.items():
        cand.F[(i, M.weight(beta))] = lau(m, f"F_{i}")
    if with_end_dims:
        for beta in M.basis:
            if not any(beta):
                cand.end_dims[M.weight(beta)] = LONE
                continue
            cap = 4
            while True:
                C = cyclotomic_quotient(d, lam, beta, cap)
                if C.stabilized:
                    break
                cap += 2
            assert C.dimension >= multiplicity_at_depth(d, lam, beta)
            cand.end_dims[M.weight(beta)] = C.center_graded_dim()
    return cand


def _random_laurent(rng: random.Random) -> LaurentPoly:
    while True:
        p = LaurentPoly({rng.randint(-3, 3): rng.choice([-2, -1, 1, 2, Fraction(1, 2)]) for _ in range(rng.randint(1, 2))})
        if not p.is_zero():
            return p


def perturb(c: CandidateAction, rng: random.Random) -> tuple[CandidateAction, str]:
    """Copy of ``c`` with one entry of one E or F matrix changed by a random
    nonzero Laurent polynomial."""
    slots = [(name, key, r, col)
             for name, table in (("E", c.E), ("F", c.F))
             for key, m in sorted(table.items(), key=lambda kv: (str(kv[0][0]), kv[0][1].coords))
             for r in range(m.nrows) for col in range(m.ncols)]
    if not slots:
        raise ValueError("candidate has no matrix entries to perturb")
    name, key, r, col = rng.choice(slots)
    delta = _random_laurent(rng)
    new = CandidateAction(list(c.weights), dict(c.dims), dict(c.E), dict(c.F), dict(c.end_dims),
                          list(c.tables), list(c.sideways), list(c.identities), list(c.zigzags), c.cyclicity)
    table = new.E if name == "E" else new.F
    m = table[key].map(lambda x: x)
    m[r, col] = m[r, col] + delta
    table[key] = m
    return new, f"{name}_{key[0]} at {key[1]}, entry ({r},{col}) + ({delta})"
