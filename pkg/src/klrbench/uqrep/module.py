"""Integrable highest-weight modules V(lambda) over Q(q), built from the
contravariant (Shapovalov) form on F-monomials, and exact checks of the
defining relations of U_q(g) on them.

Conventions.  For a word u = (u_1, ..., u_m), F_u v = F_{u_1} ... F_{u_m} v
(u_m acts first).  On a vector of weight nu, K_mu acts by q^{(mu|nu)} for mu
in the root lattice, and E_i F_i - F_i E_i acts by [alpha_i^vee(nu)].  The
form satisfies <F_i x, y> = <x, E_i y> and <v, v> = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from ..laurent import LaurentPoly, Matrix, RationalFunctionQ, row_reduce
from ..rootdata import RootDatum, Weight, quantum_factorial, quantum_integer
from .weights import multiplicity_at_depth

__all__ = [
    "IntegrableModule",
    "UqReport",
    "build_module",
    "rf_matrix",
    "shapovalov_cyclotomic_dim",
    "shapovalov_form",
    "verify_uq_relations",
]

RF = RationalFunctionQ
ONE = RF(LaurentPoly.const(1))
ZERO = RF(LaurentPoly())
_PROBE = Fraction(7, 3)


class _Form:
    """Memoized Shapovalov form on F-monomials for one highest weight."""

    def __init__(self, d: RootDatum, lam: Weight):
        self.d, self.lam = d, lam
        self.memo: dict = {}

    def weight_after(self, u: tuple) -> list[int]:
        """Coroot values of the weight of F_u v."""
        w = list(self.lam.coords)
        for i in u:
            for k, j in enumerate(self.d.vertices):
                w[k] -= self.d.cartan(i, j)
        return w

    def e_action(self, i, u: tuple) -> list[tuple[LaurentPoly, tuple]]:
        """E_i F_u v as a combination of shorter monomials."""
        out = []
        idx = self.d.index[i]
        for t, ut in enumerate(u):
            if ut != i:
                continue
            # weight of F_{u[t+1:]} v
            p = self.weight_after(u[t + 1:])[idx]
            if p:
                out.append((quantum_integer(p), u[:t] + u[t + 1:]))
        return out

    def __call__(self, w: tuple, u: tuple) -> LaurentPoly:
        if len(w) != len(u):
            return LaurentPoly()
        key = (w, u)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not w:
            val = LaurentPoly.const(1)
        elif sorted(map(str, w)) != sorted(map(str, u)):
            val = LaurentPoly()
        else:
            val = LaurentPoly()
            for c, rest in self.e_action(w[0], u):
                val = val + c * self(w[1:], rest)
        self.memo[key] = val
        return val


def shapovalov_form(d: RootDatum, lam: Weight, w: Sequence, u: Sequence) -> LaurentPoly:
    """<F_w v, F_u v> in V(lambda)."""
    return _Form(d, lam)(tuple(w), tuple(u))


def _words_of_depth(d: RootDatum, beta: tuple) -> list[tuple]:
    letters = []
    for v, b in zip(d.vertices, beta):
        letters += [v] * b
    order = {v: k for k, v in enumerate(d.vertices)}
    return sorted(set(permutations(letters)), key=lambda w: tuple(order[x] for x in w))


def _inverse(m: list[list[RF]]) -> list[list[RF]]:
    n = len(m)
    aug = [list(m[r]) + [ONE if c == r else ZERO for c in range(n)] for r in range(n)]
    red, piv = row_reduce(aug, one=ONE)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("Gram matrix is singular")
    return [row[n:] for row in red]


def _mat_vec(m, v):
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in m]


def rf_matrix(nrows: int, ncols: int, rows=None) -> Matrix:
    return Matrix(nrows, ncols, rows, zero=ZERO)


def _rank_at(rows: list[list[LaurentPoly]], x: Fraction) -> int:
    if not rows:
        return 0
    return len(row_reduce([[e.evaluate(x) for e in r] for r in rows])[1])


@dataclass
class IntegrableModule:
    """Truncation of V(lambda) to depths of height <= ``depth``.

    ``E[(i, beta)]`` maps the space at depth beta to depth beta - alpha_i and
    ``F[(i, beta)]`` to beta + alpha_i; columns are images of basis vectors."""

    d: RootDatum
    lam: Weight
    depth: int
    basis: dict = field(default_factory=dict)
    grams: dict = field(default_factory=dict)
    E: dict = field(default_factory=dict)
    F: dict = field(default_factory=dict)
    complete: bool = False

    def weight(self, beta: tuple) -> Weight:
        return self.lam - self.d.root_to_weight(beta)

    @property
    def dims(self) -> dict:
        return {b: len(v) for b, v in self.basis.items()}

    def weight_dims(self) -> dict:
        return {self.weight(b): len(v) for b, v in self.basis.items()}

    def dim(self, beta: tuple) -> int:
        return len(self.basis.get(tuple(beta), ()))

    def shift(self, beta: tuple, i, sign: int) -> tuple:
        k = self.d.index[i]
        return beta[:k] + (beta[k] + sign,) + beta[k + 1:]

    def e_matrix(self, i, beta: tuple) -> Matrix:
        """E_i on the space at depth beta (a zero matrix when either side is
        empty)."""
        m = self.E.get((i, beta))
        if m is None:
            return rf_matrix(self.dim(self.shift(beta, i, -1)), self.dim(beta))
        return m

    def f_matrix(self, i, beta: tuple) -> Matrix:
        m = self.F.get((i, beta))
        if m is None:
            return rf_matrix(self.dim(self.shift(beta, i, +1)), self.dim(beta))
        return m

    def identity(self, beta: tuple) -> Matrix:
        return Matrix.identity(self.dim(beta), ONE, ZERO)


def build_module(d: RootDatum, lam: Weight, depth: int) -> IntegrableModule:
    """Weight spaces of V(lambda) down to ``depth`` F's, with E_i and F_i
    matrices over Q(q)."""
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    form = _Form(d, lam)
    M = IntegrableModule(d, lam, depth)
    n = d.rank
    origin = (0,) * n
    M.basis[origin] = [()]
    M.grams[origin] = [[LaurentPoly.const(1)]]
    layer = {origin}
    for _ in range(depth):
        nxt = {beta[:k] + (beta[k] + 1,) + beta[k + 1:] for beta in layer for k in range(n)}
        layer = set()
        for beta in sorted(nxt):
            words = _words_of_depth(d, beta)
            chosen: list[tuple] = []
            for w in words:
                trial = chosen + [w]
                rows = [[form(a, b) for b in trial] for a in trial]
                if _rank_at(rows, _PROBE) == len(trial):
                    chosen = trial
            chosen = _certify_basis(form, words, chosen)
            if chosen:
                M.basis[beta] = chosen
                M.grams[beta] = [[form(a, b) for b in chosen] for a in chosen]
                layer.add(beta)
    inv = {beta: _inverse([[RF(x) for x in row] for row in g]) for beta, g in M.grams.items()}
    for beta, words in M.basis.items():
        for i in d.vertices:
            for sign, table in ((+1, M.F), (-1, M.E)):
                tgt = M.shift(beta, i, sign)
                if tgt not in M.basis:
                    continue
                mat = rf_matrix(len(M.basis[tgt]), len(words))
                for c, b in enumerate(words):
                    if sign > 0:
                        # <b', F_i b> for target basis b'
                        rhs = [RF(form(bp, (i,) + b)) for bp in M.basis[tgt]]
                    else:
                        # <b', E_i b> = <F_i b', b>
                        rhs = [RF(form((i,) + bp, b)) for bp in M.basis[tgt]]
                    for r, x in enumerate(_mat_vec(inv[tgt], rhs)):
                        mat[r, c] = x
                table[(i, beta)] = mat
    M.complete = _is_complete(d, lam, depth)
    return M


def _certify_basis(form: _Form, words: list[tuple], chosen: list[tuple]) -> list[tuple]:
    """Extend ``chosen`` until the Gram matrix of all words has the same rank
    over Q(q) as the chosen block, checked via a vanishing Schur complement."""
    while True:
        if not chosen:
            nz = [w for w in words if not form(w, w).is_zero()]
            if not nz:
                # all diagonal entries vanish; the form is zero iff every entry is
                nz = [w for w in words if any(not form(w, u).is_zero() for u in words)]
                if not nz:
                    return []
            chosen = [nz[0]]
        Ginv = _inverse([[RF(form(a, b)) for b in chosen] for a in chosen])
        others = [w for w in words if w not in chosen]
        proj = {x: _mat_vec(Ginv, [RF(form(a, x)) for a in chosen]) for x in others}
        bad = None
        for x in others:
            for y in others:
                cy = [RF(form(y, a)) for a in chosen]
                val = RF(form(y, x)) - sum((p * q for p, q in zip(cy, proj[x])), ZERO)
                if not val.is_zero():
                    bad = x
                    break
            if bad is not None:
                break
        if bad is None:
            return chosen
        chosen = chosen + [bad]


def _is_complete(d: RootDatum, lam: Weight, depth: int) -> bool:
    """True when V(lambda) is finite dimensional and has no weights deeper
    than ``depth``."""
    if not d.is_finite_type():
        return False
    n = d.rank
    layer = {(0,) * n}
    height = 0
    while layer:
        nxt = {beta[:k] + (beta[k] + 1,) + beta[k + 1:] for beta in layer for k in range(n)}
        layer = {b for b in nxt if multiplicity_at_depth(d, lam, b)}
        if layer:
            height += 1
    return depth >= height


# --- relation checks --------------------------------------------------------

@dataclass
class UqReport:
    passed: bool = True
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    classical: bool = True
    truncated: bool = False

    def fail(self, rel: str, text: str):
        self.passed = False
        self.failures.append(f"({rel}) {text}")

    def count(self, rel: str):
        self.checked[rel] = self.checked.get(rel, 0) + 1

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"{k}:{v}" for k, v in sorted(self.checked.items()))
        return f"{status} ({counts})" + (f"; first failure: {self.failures[0]}" if self.failures else "")


def _k_matrix(M: IntegrableModule, mu: Sequence[int], beta: tuple) -> Matrix:
    """K_mu on depth beta, mu given by simple-root coefficients."""
    p = sum(c * x for c, x in zip(mu, M.weight(beta).coords))
    return Matrix.scalar(M.dim(beta), RF(LaurentPoly.monomial(p)), ZERO)


def _step(M: IntegrableModule, kind: str, i, beta: tuple):
    """(matrix, target) for E_i or F_i out of depth beta; None when the
    target lies beyond the constructed depth."""
    if kind == "F":
        tgt = M.shift(beta, i, +1)
        if sum(tgt) > M.depth:
            return None
        return M.f_matrix(i, beta), tgt
    tgt = M.shift(beta, i, -1)
    return M.e_matrix(i, beta), tgt


def _divided_power(M: IntegrableModule, kind: str, i, a: int, beta: tuple):
    m = M.identity(beta)
    cur = beta
    for _ in range(a):
        st = _step(M, kind, i, cur)
        if st is None:
            return None
        mat, cur = st
        m = mat @ m
    if a > 1:
        m = m.scale(ONE / RF(quantum_factorial(a)))
    return m, cur


def verify_uq_relations(d: RootDatum, M: IntegrableModule) -> UqReport:
    """Check the defining relations of U_q(g) as exact matrix identities on
    every weight space where all factors were constructed, together with the
    q -> 1 limit of [E_i, F_i]."""
    rep = UqReport(truncated=not M.complete)
    n = d.rank
    unit = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    probes = [(0,) * n] + unit + [tuple(-x for x in u) for u in unit]
    spaces = sorted(M.basis)

    # (i) K_0 = 1, K_a K_b = K_{a+b}
    for beta in spaces:
        rep.count("i")
        if _k_matrix(M, (0,) * n, beta) != M.identity(beta):
            rep.fail("i", f"K_0 is not the identity at depth {beta}")
        for a in probes:
            for b in probes:
                s = tuple(x + y for x, y in zip(a, b))
                rep.count("i")
                if _k_matrix(M, a, beta) @ _k_matrix(M, b, beta) != _k_matrix(M, s, beta):
                    rep.fail("i", f"K_{a} K_{b} differs from K_{s} at depth {beta}")

    # (ii) K E_i K^-1 = q^{(mu|alpha_i)} E_i,  (iii) K F_i K^-1 = q^{-(mu|alpha_i)} F_i
    for beta in spaces:
        for i in d.vertices:
            ai = unit[d.index[i]]
            for mu in probes[1:]:
                pw = d.root_form(mu, ai)
                for kind, rel, sign in (("E", "ii", 1), ("F", "iii", -1)):
                    st = _step(M, kind, i, beta)
                    if st is None:
                        continue
                    X, tgt = st
                    lhs = _k_matrix(M, mu, tgt) @ X
                    rhs = (X @ _k_matrix(M, mu, beta)).scale(RF(LaurentPoly.monomial(sign * pw)))
                    rep.count(rel)
                    if lhs != rhs:
                        rep.fail(rel, f"K_{mu} {kind}_{i} at depth {beta}")

    # (iv) E_i F_j - F_j E_i = delta_ij [alpha_i^vee(nu)]
    for beta in spaces:
        nu = M.weight(beta)
        for i in d.vertices:
            for j in d.vertices:
                up = _step(M, "F", j, beta)
                if up is None:
                    continue
                fj, mid_up = up
                ei_down, mid_down = _step(M, "E", i, beta)
                comm = M.e_matrix(i, mid_up) @ fj - M.f_matrix(j, mid_down) @ ei_down
                size = M.dim(beta)
                if i == j:
                    p = nu.coords[d.index[i]]
                    target = Matrix.scalar(size, RF(quantum_integer(p)), ZERO)
                    classical = comm.map(lambda x: x.specialize(1))
                    if classical != Matrix.scalar(size, Fraction(p)):
                        rep.classical = False
                        rep.fail("iv", f"q -> 1 limit of [E_{i}, F_{i}] at depth {beta} is not {p}")
                else:
                    target = rf_matrix(*comm.shape)
                rep.count("iv")
                diff = comm - target
                if not diff.is_zero():
                    r, c, x = diff.first_nonzero()
                    rep.fail("iv", f"E_{i} F_{j} - F_{j} E_{i} at depth {beta}, entry ({r},{c}) off by {x}")

    # (v) quantum Serre relations, with divided powers
    for beta in spaces:
        for i in d.vertices:
            for j in d.vertices:
                if i == j:
                    continue
                top = 1 - d.cartan(i, j)
                for kind in ("E", "F"):
                    total = None
                    for a in range(top + 1):
                        first = _divided_power(M, kind, i, top - a, beta)
                        if first is None:
                            total = None
                            break
                        m1, t1 = first
                        st = _step(M, kind, j, t1)
                        if st is None:
                            total = None
                            break
                        mj, t2 = st
                        second = _divided_power(M, kind, i, a, t2)
                        if second is None:
                            total = None
                            break
                        term = second[0] @ (mj @ m1)
                        if a % 2:
                            term = -term
                        total = term if total is None else total + term
                    if total is None:
                        continue
                    rep.count("v")
                    if not total.is_zero():
                        rep.fail("v", f"Serre relation for {kind}_{i}, {kind}_{j} at depth {beta}")
    return rep


def shapovalov_cyclotomic_dim(d: RootDatum, lam: Weight, nu: Sequence[int]) -> LaurentPoly:
    """Graded dimension of the cyclotomic quotient at content nu, computed
    from the q-Shapovalov form alone:

        sum over words i, j of content nu of  q^{(lam|nu) - (nu|nu)/2} <F_i v, F_j v>.
    """
    nu = tuple(int(x) for x in nu)
    form = _Form(d, lam)
    words = _words_of_depth(d, nu)
    total = LaurentPoly()
    for a in words:
        for b in words:
            total = total + form(a, b)
    shift = sum(c * x for c, x in zip(nu, lam.coords)) - d.root_form(nu, nu) // 2
    return total.shift(shift)
