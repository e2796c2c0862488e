"""Points of P^N(Q_p), the chordal metric, disks, and the affine chart.

A point stores its primitive integer lift: coordinates are coprime integers
with the first nonzero one positive. Some coordinate is then a p-adic unit, so
the lift has sup norm 1, and the representative is unique, which makes
dataclass equality coincide with equality of points.

Distances are reported as valuations ``w`` with Delta = p**(-w); coincident
points have ``w = INFINITY``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, NotIntegral, PivotNotUnit, ZeroVector
from .padic import INFINITY, PrimeContext, Valuation, to_fraction, vp, vp_int


@lru_cache(maxsize=None)
def _context(p: int) -> PrimeContext:
    return PrimeContext(p)


def primitive(coords: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by its content and fix the sign."""
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    if g == 0:
        raise ZeroVector("zero vector has no projective class")
    for c in coords:
        if c:
            if c < 0:
                g = -g
            break
    return tuple(c // g for c in coords)


def integer_lift(coords: Sequence) -> tuple[int, ...]:
    fr = [to_fraction(c) for c in coords]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return tuple(int(x * den) for x in fr)


@dataclass(frozen=True)
class ProjectivePoint:
    lift: tuple[int, ...]
    p: int

    @property
    def dimension(self) -> int:
        return len(self.lift) - 1

    @property
    def context(self) -> PrimeContext:
        return _context(self.p)

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.lift) + ")"


def make_point(coords: Sequence, p: int) -> ProjectivePoint:
    _context(p)
    if len(coords) < 2:
        raise DimensionMismatch("a point of P^N needs at least two coordinates")
    return ProjectivePoint(primitive(integer_lift(coords)), p)


def _check_pair(P: ProjectivePoint, Q: ProjectivePoint) -> None:
    if P.p != Q.p:
        raise DimensionMismatch(f"points over different primes {P.p}, {Q.p}")
    if len(P.lift) != len(Q.lift):
        raise DimensionMismatch(f"P^{P.dimension} vs P^{Q.dimension}")


def cross_term_valuation(x: Sequence[int], y: Sequence[int], p: int) -> Valuation:
    """min over i<j of v(x_i y_j - x_j y_i)."""
    w = INFINITY
    n = len(x)
    for i in range(n):
        xi, yi = x[i], y[i]
        for j in range(i + 1, n):
            t = xi * y[j] - x[j] * yi
            if t:
                v = vp_int(t, p)
                if v < w:
                    w = v
                    if w == 0:
                        return 0
    return w


def chordal_distance(P: ProjectivePoint, Q: ProjectivePoint) -> Valuation:
    """Valuation w of the chordal distance, Delta(P, Q) = p**(-w).

    Lifts are normalized, so the denominator ||x||*||y|| is 1.
    """
    _check_pair(P, Q)
    return cross_term_valuation(P.lift, Q.lift, P.p)


def delta_float(w: Valuation, p: int) -> float:
    return 0.0 if w == INFINITY else float(p) ** (-w)


@dataclass(frozen=True)
class Disk:
    """D_r(P) (open) or the closed disk, with r = p**(-radius_valuation) <= 1."""

    center: ProjectivePoint
    radius_valuation: int
    open: bool = True

    def __post_init__(self):
        if self.radius_valuation < 0:
            raise ValueError("disk radius must be at most 1")

    def __contains__(self, Q: ProjectivePoint) -> bool:
        w = chordal_distance(self.center, Q)
        return w > self.radius_valuation if self.open else w >= self.radius_valuation


def embed_at(a: Sequence, k: int, p: int) -> ProjectivePoint:
    """(a_1..a_N) -> point with 1 inserted at index k; requires |a_i| <= 1."""
    fr = [to_fraction(x) for x in a]
    for x in fr:
        if vp(x, p) < 0:
            raise NotIntegral(f"{x} is not p-integral for p={p}")
    return make_point(fr[:k] + [Fraction(1)] + fr[k:], p)


def affine_embed(a: Sequence, p: int) -> ProjectivePoint:
    """sigma: (x_1..x_N) -> (1 : x_1 : ... : x_N) on the closed unit polydisk."""
    return embed_at(a, 0, p)


def affine_extract(P: ProjectivePoint, k: int) -> tuple[Fraction, ...]:
    """Dehomogenize at a unit coordinate: (x_i / x_k) for i != k."""
    xk = P.lift[k]
    if vp_int(xk, P.p) != 0:
        raise PivotNotUnit(f"coordinate {k} of {P} is not a unit")
    return tuple(Fraction(x, xk) for i, x in enumerate(P.lift) if i != k)


def unit_indices(P: ProjectivePoint) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(P.lift) if x % P.p)
