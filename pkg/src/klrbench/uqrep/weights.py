"""Root multiplicities and weight multiplicities of integrable highest-weight
modules for symmetric Kac-Moody data.

Everything is indexed by the depth ``beta`` = lambda - mu, a nonnegative
integer vector in the root lattice, so the affine case needs no extra
bookkeeping for the null root.  Root multiplicities come from the Weyl
denominator identity, weight multiplicities from Freudenthal's formula.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Sequence

from ..rootdata import RootDatum, Weight

__all__ = [
    "depth_of",
    "freudenthal_multiplicity",
    "multiplicity_at_depth",
    "root_multiplicity",
    "string_support",
]


def _form(d: RootDatum, a: Sequence[int], b: Sequence[int]) -> int:
    return d.root_form(a, b)


def _below(beta: tuple) -> list[tuple]:
    """Nonzero vectors gamma with 0 <= gamma <= beta componentwise."""
    return [g for g in product(*(range(b + 1) for b in beta)) if any(g)]


_ROOT_CACHE: dict = {}


def _weyl_denominator(d: RootDatum, box: tuple) -> dict:
    """sum over w of sign(w) e^{-(rho - w rho)}, truncated to depths <= box.

    Walks up the Weyl group by length-increasing simple reflections; the
    depth rho - w rho grows along such walks, so pruning at the box is safe."""
    n = d.rank
    start = ((0,) * n, (1,) * n)  # (depth, coroot values of w rho)
    seen = {start[0]: 1}
    frontier = [(start, 1)]
    while frontier:
        nxt = []
        for (beta, p), sign in frontier:
            for a in range(n):
                if p[a] <= 0:
                    continue
                nb = list(beta)
                nb[a] += p[a]
                nb = tuple(nb)
                if any(x > b for x, b in zip(nb, box)) or nb in seen:
                    continue
                vi = d.vertices[a]
                np_ = tuple(p[j] - p[a] * d.cartan(vi, d.vertices[j]) for j in range(n))
                seen[nb] = -sign
                nxt.append(((nb, np_), -sign))
        frontier = nxt
    return {b: Fraction(s) for b, s in seen.items()}


def _series_mul(a: dict, b: dict, box: tuple) -> dict:
    out: dict = {}
    for x, u in a.items():
        for y, v in b.items():
            z = tuple(p + q for p, q in zip(x, y))
            if all(t <= m for t, m in zip(z, box)):
                out[z] = out.get(z, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _log_coefficients(d: RootDatum, box: tuple) -> dict:
    """c_beta with sum_beta c_beta e^{-beta} = -log(Weyl denominator), so that
    c_beta = sum_{n | beta} mult(beta / n) / n."""
    den = _weyl_denominator(d, box)
    x = {k: v for k, v in den.items() if any(k)}
    out: dict = {}
    power = {(0,) * d.rank: Fraction(1)}
    for k in range(1, sum(box) + 1):
        power = _series_mul(power, x, box)
        if not power:
            break
        for beta, v in power.items():
            # -log(1 + X) = sum_k (-1)^k X^k / k
            out[beta] = out.get(beta, 0) + (-1) ** k * v / k
    return out


def _log_coefficient(d: RootDatum, beta: tuple) -> Fraction:
    cache = _ROOT_CACHE.setdefault(d, {})
    box = cache.get("box")
    if box is None or any(b > m for b, m in zip(beta, box)):
        box = tuple(max(b, m) for b, m in zip(beta, box or beta))
        cache.clear()
        cache["box"] = box
        cache["c"] = _log_coefficients(d, box)
    return cache["c"].get(beta, Fraction(0))


def root_multiplicity(d: RootDatum, beta: Sequence[int]) -> int:
    """Dimension of the root space g_beta for beta > 0 (0 if not a root)."""
    beta = tuple(int(b) for b in beta)
    if any(b < 0 for b in beta) or not any(beta):
        return 0
    val = _log_coefficient(d, beta)
    cache = _ROOT_CACHE[d]
    key = ("m", beta)
    if key in cache:
        return cache[key]
    g = reduce(gcd, beta)
    for n in range(2, g + 1):
        if g % n == 0:
            val -= Fraction(root_multiplicity(d, tuple(b // n for b in beta)), n)
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"non-integral root multiplicity {val} at {beta}")
    cache[key] = int(val)
    return int(val)


_MULT_CACHE: dict = {}


def multiplicity_at_depth(d: RootDatum, lam: Weight, beta: Sequence[int]) -> int:
    """Multiplicity of lambda - beta in V(lambda) (Freudenthal)."""
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    beta = tuple(int(b) for b in beta)
    if len(beta) != d.rank:
        raise ValueError(f"depth vector needs {d.rank} entries")
    if any(b < 0 for b in beta):
        return 0
    cache = _MULT_CACHE.setdefault((d, lam), {})
    if beta in cache:
        return cache[beta]
    if not any(beta):
        cache[beta] = 1
        return 1
    lam_pair = lam.coords  # alpha_i^vee(lambda) = (lambda | alpha_i)
    denom = 2 * sum(b * (l + 1) for b, l in zip(beta, lam_pair)) - _form(d, beta, beta)
    num = 0
    for alpha in _below(beta):
        ma = root_multiplicity(d, alpha)
        if not ma:
            continue
        lam_alpha = sum(a * l for a, l in zip(alpha, lam_pair))
        aa = _form(d, alpha, alpha)
        ba = _form(d, beta, alpha)
        k = 1
        while True:
            rest = tuple(b - k * a for b, a in zip(beta, alpha))
            if any(r < 0 for r in rest):
                break
            m = multiplicity_at_depth(d, lam, rest)
            if m:
                # (mu + k alpha | alpha) with mu = lambda - beta
                num += ma * (lam_alpha - ba + k * aa) * m
            k += 1
    num *= 2
    if denom == 0:
        if num != 0:
            raise ArithmeticError(f"Freudenthal formula degenerate at depth {beta}")
        val = 0
    else:
        if num % denom:
            raise ArithmeticError(f"non-integral multiplicity {Fraction(num, denom)} at depth {beta}")
        val = num // denom
    cache[beta] = val
    return val


def depth_of(d: RootDatum, lam: Weight, mu: Weight) -> tuple | None:
    """beta with mu = lambda - sum beta_i alpha_i, or None if there is no
    nonnegative integral solution.  Needs a nonsingular Cartan matrix."""
    import numpy as np

    C = np.array(d.cartan_matrix, dtype=float)
    diff = np.array([a - b for a, b in zip(lam.coords, mu.coords)], dtype=float)
    if abs(np.linalg.det(C)) < 1e-9:
        raise ValueError("weights do not determine depth for a singular Cartan matrix; pass the depth vector")
    # row j of the Cartan matrix is alpha_j in coroot coordinates
    sol = np.linalg.solve(C.T, diff)
    beta = tuple(int(round(x)) for x in sol)
    if any(abs(x - b) > 1e-9 for x, b in zip(sol, beta)):
        return None
    if d.root_to_weight(beta) != Weight(tuple(int(x) for x in diff)):
        return None
    if any(b < 0 for b in beta):
        return None
    return beta


def freudenthal_multiplicity(d: RootDatum, lam: Weight, mu: Weight | Sequence[int]) -> int:
    """Multiplicity of mu in V(lambda).  ``mu`` may be a Weight (finite type)
    or directly a depth vector."""
    if not lam.is_dominant():
        raise ValueError(f"weight {lam} is not dominant")
    if isinstance(mu, Weight):
        beta = depth_of(d, lam, mu)
        if beta is None:
            return 0
    else:
        beta = tuple(mu)
    return multiplicity_at_depth(d, lam, beta)


def string_support(d: RootDatum, lam: Weight, beta: Sequence[int], i, bound: int = 64) -> tuple[list[int], bool]:
    """Integers k with lambda - beta + k alpha_i a weight of V(lambda), and
    whether that set is certified finite.

    The scan starts at the largest admissible k (depth_i >= 0) and walks
    down.  Multiplicities are invariant under s_i, which mirrors the string
    about the point where the alpha_i-pairing vanishes; if nothing turns up
    before that point the string is empty.  Otherwise the walk continues
    through the nonzero run, and the set is certified when the run ends
    (a zero below it) at the mirror image of its top.  ``bound`` caps how far
    below k = 0 the walk may go."""
    beta = list(int(b) for b in beta)
    idx = d.index[i]
    # alpha_i-pairing of mu + k alpha_i is p0 + 2k
    p0 = lam.coords[idx] - sum(b * d.cartan(v, i) for b, v in zip(beta, d.vertices))

    def occurs(k: int) -> bool:
        b2 = beta.copy()
        b2[idx] -= k
        return b2[idx] >= 0 and multiplicity_at_depth(d, lam, b2) > 0

    k = beta[idx]
    while 2 * k >= -p0 and not occurs(k):
        k -= 1
    if 2 * k < -p0:
        return [], True
    hi = k
    ks = []
    while k >= -bound and occurs(k):
        ks.append(k)
        k -= 1
    lo = ks[-1]
    finite = k >= -bound and (p0 + 2 * lo) == -(p0 + 2 * hi)
    return sorted(ks), finite
