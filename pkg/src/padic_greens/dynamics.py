"""Green functions, good-reduction classification and the explicit constants.

All logarithmic quantities are LogValues (exact multiples of log p), computed
from the minimal lift.

Orbit valuations. For a normalized lift x_k of phi^k(P), write
v_k = v_p(||Phi_min(x_k)||), so that g(phi^k P) = -(v_k / d) log p and
0 <= v_k <= v_res. Iterating exactly makes coordinates grow like d^k in bit
size, which is hopeless at depth 20. The default route instead carries x_k
modulo p^K_k: if x_k is known mod p^K with K > v_res then Phi_min(x_k) is known
mod p^K, its valuation v_k < K is exact, and dividing by p^v_k leaves the next
lift known mod p^(K - v_k). Starting from K_0 = n*v_res + 1 keeps K_k > v_res
for every k < n, so the valuations (and hence g_n) are exact, not
approximations. ``method="exact"`` iterates the rational lift instead and is
used to cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .errors import BadRange, ZeroVector
from .morphism import (
    HomogeneousMap,
    ResidueMap,
    eval_forms,
    projective_residue,
    reduce_map,
    reduce_point,
    step,
)
from .padic import INFINITY, LogValue, sup_norm_valuation, to_fraction, vp_int
from .projective import ProjectivePoint, chordal_distance, embed_at, make_point, unit_indices

DEFAULT_DEPTH = 20


def _check(phi: HomogeneousMap, P: ProjectivePoint) -> None:
    if P.p != phi.p or P.dimension != phi.N:
        raise ValueError(f"point {P} does not live on the domain of {phi}")


def truncated_orbit(phi: HomogeneousMap, lift: Sequence[int], n: int, precision: int):
    """Yield (x_k mod p^K_k, K_k, v_k) for k < n, starting from precision K_0.

    Raises RuntimeError if precision runs out before a valuation is determined.
    """
    p = phi.p
    K = precision
    mod = p**K
    x = [c % mod for c in lift]
    forms = phi.integral_forms
    for _ in range(n):
        y = [c % mod for c in eval_forms(forms, x)]
        v = min(vp_int(c, p) for c in y)
        if v >= K:
            raise RuntimeError("p-adic precision exhausted")
        yield x, K, v
        K -= v
        scale = p**v
        mod = p**K
        x = [(c // scale) % mod for c in y]


def orbit_valuations(phi: HomogeneousMap, P: ProjectivePoint, n: int, method: str = "fixed") -> list[int]:
    """[v_0, ..., v_{n-1}] along the forward orbit of P."""
    _check(phi, P)
    if n <= 0:
        return []
    if method == "exact":
        out = []
        x = P.lift
        for _ in range(n):
            x, v = step(phi, x)
            out.append(v)
        return out
    if method != "fixed":
        raise ValueError(f"unknown method {method!r}")
    K0 = n * phi.v_res + 1
    return [v for _, _, v in truncated_orbit(phi, P.lift, n, K0)]


def g(phi: HomogeneousMap, P: ProjectivePoint) -> LogValue:
    """(1/d) log||Phi(x)|| - log||x|| for the minimal lift; lies in [-v_res/d, 0] log p."""
    _check(phi, P)
    _, v = step(phi, P.lift)
    return LogValue(Fraction(-v, phi.d), phi.p)


def g_n(phi: HomogeneousMap, P: ProjectivePoint, n: int, method: str = "fixed") -> LogValue:
    """Partial sum sum_{k<n} d^-k g(phi^k P) = d^-n log||Phi^n(x)|| - log||x||."""
    if n < 0:
        raise BadRange("n must be nonnegative")
    d = phi.d
    total = Fraction(0)
    for k, v in enumerate(orbit_valuations(phi, P, n, method)):
        if v:
            total -= Fraction(v, d ** (k + 1))
    return LogValue(total, phi.p)


@dataclass(frozen=True)
class GreenEstimate:
    """Certified bracket [partial_sum - tail_bound, partial_sum] around the Green function."""

    partial_sum: LogValue
    tail_bound: LogValue
    n_used: int

    @property
    def lower(self) -> LogValue:
        return self.partial_sum - self.tail_bound

    @property
    def upper(self) -> LogValue:
        return self.partial_sum

    @property
    def width(self) -> LogValue:
        return self.tail_bound

    @property
    def exact(self) -> bool:
        return self.tail_bound.coeff == 0

    def __contains__(self, value: LogValue) -> bool:
        return self.lower <= value <= self.upper

    def shifted(self, delta: LogValue) -> "GreenEstimate":
        return GreenEstimate(self.partial_sum + delta, self.tail_bound, self.n_used)

    def to_json(self) -> dict:
        from .padic import round_sig

        return {
            "partial_sum": self.partial_sum.to_json(),
            "tail_bound": self.tail_bound.to_json(),
            "n": self.n_used,
            "lower_approx": round_sig(float(self.lower)),
            "upper_approx": round_sig(float(self.upper)),
        }


def tail_constant(phi: HomogeneousMap) -> LogValue:
    """C_1 = log(|Res|^-1) / (d-1)."""
    return LogValue(Fraction(phi.v_res, phi.d - 1), phi.p)


def depth_for_tolerance(phi: HomogeneousMap, tol: LogValue) -> int:
    """Least n with C_1 / d^n <= tol."""
    if tol.coeff <= 0:
        raise BadRange("tolerance must be positive")
    c1 = tail_constant(phi).coeff
    n = 0
    while c1 / phi.d**n > tol.coeff:
        n += 1
    return n


def green_hat(
    phi: HomogeneousMap,
    P: ProjectivePoint,
    tol: LogValue | None = None,
    n: int | None = None,
    method: str = "fixed",
) -> GreenEstimate:
    """Bracket for the modified Green function of the minimal lift at P.

    Every omitted series term is <= 0 and >= -v_res/d^(k+1), so the partial sum
    is an upper bound and dropping the tail costs at most C_1/d^n. Depth is
    ``n`` if given, else the least depth meeting ``tol``, else 20.
    """
    _check(phi, P)
    p = phi.p
    if phi.v_res == 0:
        return GreenEstimate(LogValue.zero(p), LogValue.zero(p), 0)
    if n is None:
        n = DEFAULT_DEPTH if tol is None else depth_for_tolerance(phi, tol)
    if n < 0:
        raise BadRange("n must be nonnegative")
    tail = LogValue(tail_constant(phi).coeff / phi.d**n, p)
    return GreenEstimate(g_n(phi, P, n, method), tail, n)


def green_homogeneous(
    phi: HomogeneousMap,
    x: Sequence,
    tol: LogValue | None = None,
    n: int | None = None,
    method: str = "fixed",
) -> GreenEstimate:
    """Bracket for G_Phi(x) = lim d^-n log||Phi^n(x)|| using the lift Phi as given.

    G_Phi(x) = ghat(pi(x)) + log||x|| - m/(d-1) log p, where Phi = p^m * Phi_min.
    """
    fr = [to_fraction(c) for c in x]
    v = sup_norm_valuation(fr, phi.p)
    if v == INFINITY:
        raise ZeroVector("G is undefined at the origin")
    est = green_hat(phi, make_point(fr, phi.p), tol=tol, n=n, method=method)
    shift = Fraction(-v) - Fraction(phi.min_scale, phi.d - 1)
    return est.shifted(LogValue(shift, phi.p))


def good_reduction_at(phi: HomogeneousMap, P: ProjectivePoint) -> bool:
    _check(phi, P)
    return step(phi, P.lift)[1] == 0


@dataclass(frozen=True)
class OrbitalGood:
    preperiod: int
    period: int

    def to_json(self) -> dict:
        return {"verdict": "orbital_good", "preperiod": self.preperiod, "period": self.period}


@dataclass(frozen=True)
class BadAtIterate:
    n: int

    def to_json(self) -> dict:
        return {"verdict": "bad", "at_iterate": self.n}


OrbitClassification = Union[OrbitalGood, BadAtIterate]


@lru_cache(maxsize=256)
def _residue_map(phi: HomogeneousMap) -> ResidueMap:
    return reduce_map(phi)


def residue_orbit(phi: HomogeneousMap, P: ProjectivePoint) -> tuple[list[tuple[int, ...]], OrbitClassification]:
    """Trace P~ under phi~ over F_p until it repeats or lands where Phi~ vanishes.

    While reduction is good along the orbit, reduction commutes with phi, so the
    trace follows the reductions of the true iterates. Terminates within
    |P^N(F_p)| + 1 steps.
    """
    _check(phi, P)
    red = _residue_map(phi)
    p = phi.p
    r = projective_residue(reduce_point(P), p)
    seen: dict[tuple[int, ...], int] = {}
    trace = []
    k = 0
    while r not in seen:
        seen[r] = k
        trace.append(r)
        y = red(r)
        if not any(y):
            return trace, BadAtIterate(k)
        r = projective_residue(y, p)
        k += 1
    return trace, OrbitalGood(seen[r], k - seen[r])


def classify_orbit(phi: HomogeneousMap, P: ProjectivePoint) -> OrbitClassification:
    return residue_orbit(phi, P)[1]


@dataclass(frozen=True)
class CertifiedFatou:
    """P is in the Fatou set: every iterate is nonexpanding on D_{|Res|}(P)."""

    nonexpanding_radius_valuation: int
    via: OrbitalGood

    def to_json(self) -> dict:
        return {
            "verdict": "certified_fatou",
            "nonexpanding_radius_valuation": self.nonexpanding_radius_valuation,
            "via": self.via.to_json(),
        }


@dataclass(frozen=True)
class Unknown:
    """No Fatou certificate. A negative bracket proves bad orbital reduction, not Julia membership."""

    classification: OrbitClassification
    bracket: GreenEstimate
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": "unknown",
            "classification": self.classification.to_json(),
            "ghat": self.bracket.to_json(),
            "evidence": self.evidence,
        }


FatouCertificate = Union[CertifiedFatou, Unknown]


def _sampled_constancy(phi: HomogeneousMap, P: ProjectivePoint, base: GreenEstimate, extra: int = 4) -> dict:
    """Compare ghat brackets at P against points at distance p^-w, w = v_res+1 .. v_res+extra."""
    k = min(unit_indices(P))
    a = [to_fraction(c) / P.lift[k] for i, c in enumerate(P.lift) if i != k]
    overlaps = []
    for w in range(phi.v_res + 1, phi.v_res + 1 + extra):
        b = list(a)
        b[0] += Fraction(phi.p**w)
        Q = embed_at(b, k, phi.p)
        est = green_hat(phi, Q, n=base.n_used)
        overlaps.append(est.lower <= base.upper and base.lower <= est.upper)
    return {
        "label": "heuristic",
        "sampled_radius_valuations": list(range(phi.v_res + 1, phi.v_res + 1 + extra)),
        "brackets_overlap_at_all_samples": all(overlaps),
    }


def certify_fatou(phi: HomogeneousMap, P: ProjectivePoint, n: int | None = None) -> FatouCertificate:
    verdict = classify_orbit(phi, P)
    if isinstance(verdict, OrbitalGood):
        return CertifiedFatou(phi.v_res, verdict)
    bracket = green_hat(phi, P, n=n)
    return Unknown(verdict, bracket, _sampled_constancy(phi, P, bracket))


def iterate(phi: HomogeneousMap, P: ProjectivePoint, n: int) -> list[ProjectivePoint]:
    """[P, phi(P), ..., phi^n(P)] computed exactly."""
    _check(phi, P)
    out = [P]
    x = P.lift
    for _ in range(n):
        x, _ = step(phi, x)
        out.append(ProjectivePoint(x, P.p))
    return out


def lipschitz_constant(phi: HomogeneousMap) -> LogValue:
    """log of |Res|^-2: Delta(phi P, phi Q) <= |Res|^-2 Delta(P, Q)."""
    return LogValue(Fraction(2 * phi.v_res), phi.p)


def local_constancy_radius(phi: HomogeneousMap) -> int:
    """g(P) = g(Q) whenever the distance valuation of P, Q exceeds this."""
    return phi.v_res


@dataclass(frozen=True)
class HolderConstants:
    """u = max{2d, |Res|^-2}; ghat is (log d/log u)-Hölder with coefficient 2u log u / d."""

    d: int
    p: int
    v_res: int

    @property
    def u(self) -> int:
        return max(2 * self.d, self.p ** (2 * self.v_res))

    @property
    def coefficient(self) -> float:
        u = self.u
        return 2 * u * math.log(u) / self.d

    @property
    def exponent(self) -> float:
        return math.log(self.d) / math.log(self.u)

    def bound(self, w) -> float:
        """Right-hand side at distance p^-w."""
        if w == INFINITY:
            return 0.0
        return self.coefficient * math.exp(-w * math.log(self.p) * self.exponent)

    def to_json(self) -> dict:
        from .padic import round_sig

        branch = "2d" if 2 * self.d >= self.p ** (2 * self.v_res) else "resultant"
        return {
            "u": str(self.u),
            "u_branch": branch,
            "two_d": 2 * self.d,
            "res_exponent": 2 * self.v_res,
            "coefficient": round_sig(self.coefficient),
            "exponent": round_sig(self.exponent),
        }


def holder_constants(phi: HomogeneousMap) -> HolderConstants:
    return HolderConstants(phi.d, phi.p, phi.v_res)


@dataclass(frozen=True)
class MinBound:
    min_value: float
    argmin: int
    bound: float
    holds: bool

    def to_json(self) -> dict:
        return {"min_value": self.min_value, "k": self.argmin, "bound": self.bound, "holds": self.holds}


def min_bound_lemma(D: float, a: float, b: float, k_max: int | None = None, rel_tol: float = 1e-9) -> MinBound:
    """Brute-force min_{k>=1} D a^k + b^-k against 2a D^(log b / log ab).

    k -> D a^k + b^-k is convex with real minimizer k* = log(log b / (D log a)) / log(ab),
    so the search covers k = 1..max(k_max, floor(t)+1, ceil(k*)+1), where
    t = log(1/D)/log(ab) is the integer the closed-form argument picks.
    ``k_max`` defaults to 64.
    """
    if not (0 < D <= 1 and a > 1 and b > 1):
        raise BadRange(f"need 0 < D <= 1, a > 1, b > 1; got D={D}, a={a}, b={b}")
    if k_max is None:
        k_max = 64
    if k_max < 1:
        raise BadRange("k_max must be positive")
    t = math.log(1 / D) / math.log(a * b)
    k_star = math.log(math.log(b) / (D * math.log(a))) / math.log(a * b)
    top = max(k_max, math.floor(t) + 1, math.ceil(k_star) + 1)
    best, arg = math.inf, 0
    for k in range(1, top + 1):
        val = D * a**k + b ** (-k)
        if val < best:
            best, arg = val, k
    bound = 2 * a * D ** (math.log(b) / math.log(a * b))
    return MinBound(best, arg, bound, best <= bound * (1 + rel_tol))
