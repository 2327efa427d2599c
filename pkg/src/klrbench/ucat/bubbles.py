"""Bubble series in a region of weight lambda and the fake-bubble solver.

With m = <lambda, alpha_i>, a clockwise i-bubble carrying k dots has degree
2(k - m + 1) and a counterclockwise one has degree 2(k + m + 1).  Bubbles of
negative degree vanish and those of degree 0 equal 1.  Entries with a negative
number of dots are "fake": they are not diagrams, and are defined by requiring

    sum_k  cw(k) * ccw(j - k) = 1 if j = -2, 0 if j > -2.

Indexing by half-degree (cw_t = cw(t + m - 1), ccw_t = ccw(t - m - 1)) this
says the two generating series are inverse: sum_{a+b=t} cw_a ccw_b = [t = 0].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..laurent import as_fraction
from ..rootdata import RootDatum, Weight

__all__ = ["BubbleError", "BubbleSeries", "bubble_convolution", "solve_fake_bubbles"]


class BubbleError(ValueError):
    pass


@dataclass
class BubbleSeries:
    """Bubble values keyed by dot count (negative counts are fake bubbles).

    ``m`` is <lambda, alpha_i> for the region the bubbles sit in."""

    color: object
    m: int
    cw: dict = field(default_factory=dict)
    ccw: dict = field(default_factory=dict)

    def cw_degree(self, dots: int) -> int:
        return 2 * (dots - self.m + 1)

    def ccw_degree(self, dots: int) -> int:
        return 2 * (dots + self.m + 1)

    def cw_dots(self, degree: int) -> int:
        return degree // 2 + self.m - 1

    def ccw_dots(self, degree: int) -> int:
        return degree // 2 - self.m - 1

    def cw_at(self, degree: int):
        """Clockwise value in the given degree, or None if not recorded."""
        if degree < 0:
            return Fraction(0)
        if degree == 0:
            return Fraction(1)
        return self.cw.get(self.cw_dots(degree))

    def ccw_at(self, degree: int):
        if degree < 0:
            return Fraction(0)
        if degree == 0:
            return Fraction(1)
        return self.ccw.get(self.ccw_dots(degree))

    def is_fake_cw(self, dots: int) -> bool:
        return dots < 0

    def is_fake_ccw(self, dots: int) -> bool:
        return dots < 0


def _validate(s: BubbleSeries) -> None:
    for name, table, deg in (("clockwise", s.cw, s.cw_degree), ("counterclockwise", s.ccw, s.ccw_degree)):
        for k, v in table.items():
            v = as_fraction(v)
            g = deg(k)
            if g < 0 and v != 0:
                raise BubbleError(f"{name} bubble with {k} dots has degree {g} < 0 but value {v}; must be 0")
            if g == 0 and v != 1:
                raise BubbleError(f"{name} bubble with {k} dots has degree 0 but value {v}; must be 1")


def bubble_convolution(s: BubbleSeries, j: int) -> Fraction:
    """sum_k cw(k) ccw(j - k) over the nonvanishing range; missing entries
    raise."""
    total = Fraction(0)
    t = j + 2  # half of the total degree
    for a in range(0, t + 1):
        c, cc = s.cw_at(2 * a), s.ccw_at(2 * (t - a))
        if c is None or cc is None:
            raise BubbleError(f"bubble values missing in half-degree {a} / {t - a}")
        total += c * cc
    return total


def solve_fake_bubbles(d: RootDatum, i, lam: Weight, real_bubbles: BubbleSeries | Mapping, max_deg: int) -> BubbleSeries:
    """Fill in every bubble value of degree <= max_deg.

    In each half-degree t >= 1, the identity reads cw_t + ccw_t + (known) = 0.
    Whichever of cw_t, ccw_t was supplied determines the other; if both are
    supplied they are checked, and if neither is the system is
    underdetermined."""
    m = lam.coords[d.index[i]] * d.d(i)
    if isinstance(real_bubbles, BubbleSeries):
        given = real_bubbles
        if given.m != m:
            raise BubbleError(f"series is for <lambda, alpha_i> = {given.m}, region has {m}")
    else:
        given = BubbleSeries(i, m, dict(real_bubbles.get("cw", {})), dict(real_bubbles.get("ccw", {})))
    _validate(given)
    out = BubbleSeries(i, m)
    cw = {0: Fraction(1)}
    ccw = {0: Fraction(1)}
    for t in range(1, max_deg // 2 + 1):
        known = sum((cw[a] * ccw[t - a] for a in range(1, t)), Fraction(0))
        c = given.cw.get(t + m - 1)
        cc = given.ccw.get(t - m - 1)
        if c is not None and cc is not None:
            c, cc = as_fraction(c), as_fraction(cc)
            if c + cc + known != 0:
                raise BubbleError(
                    f"supplied bubbles in degree {2 * t} violate the inversion identity: "
                    f"{c} + {cc} + {known} != 0")
        elif c is not None:
            c = as_fraction(c)
            cc = -c - known
        elif cc is not None:
            cc = as_fraction(cc)
            c = -cc - known
        else:
            raise BubbleError(f"no bubble value supplied in degree {2 * t}; the solve is underdetermined")
        cw[t], ccw[t] = c, cc
    for t in range(0, max_deg // 2 + 1):
        out.cw[t + m - 1] = cw[t]
        out.ccw[t - m - 1] = ccw[t]
    # re-verification pass
    for t in range(0, max_deg // 2 + 1):
        expected = 1 if t == 0 else 0
        if bubble_convolution(out, t - 2) != expected:
            raise BubbleError(f"inversion identity fails after solving in degree {2 * t}")
    return out
