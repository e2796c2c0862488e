"""Homogeneous polynomial maps of P^N, minimal lifts, resultants, reduction mod p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import DegreeMismatch, DimensionMismatch, NotAMorphism, ParseError
from .padic import INFINITY, PrimeContext, Valuation, format_rational, to_fraction, vp, vp_int
from .projective import ProjectivePoint, integer_lift, primitive
from .resultant import integer_resultant, rational_resultant

Exps = tuple[int, ...]


def _clean_form(form) -> tuple[tuple[Exps, Fraction], ...]:
    items = form.items() if isinstance(form, Mapping) else form
    acc: dict[Exps, Fraction] = {}
    for exps, c in items:
        exps = tuple(int(e) for e in exps)
        acc[exps] = acc.get(exps, Fraction(0)) + to_fraction(c)
    return tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))


@dataclass(frozen=True)
class HomogeneousMap:
    """Phi = (Phi_0, ..., Phi_N), each a form of degree d with rational coefficients.

    Construction validates degrees and that Phi is a morphism (Res != 0). The
    minimal-lift resultant valuation is computed eagerly and cached.
    """

    forms: tuple[tuple[tuple[Exps, Fraction], ...], ...]
    d: int
    p: int

    def __post_init__(self):
        PrimeContext(self.p)
        object.__setattr__(self, "forms", tuple(_clean_form(f) for f in self.forms))
        if self.d < 2:
            raise DegreeMismatch(f"degree must be >= 2, got {self.d}")
        n = len(self.forms)
        if n < 2:
            raise DimensionMismatch("need at least two forms")
        for i, form in enumerate(self.forms):
            for exps, _ in form:
                if len(exps) != n:
                    raise DimensionMismatch(f"form {i}: exponent vector {exps} has wrong length")
                if any(e < 0 for e in exps) or sum(exps) != self.d:
                    raise DegreeMismatch(f"form {i}: monomial {exps} does not have degree {self.d}")
        if any(not f for f in self.forms):
            raise NotAMorphism("a coordinate form is identically zero")
        if self.v_res == INFINITY:
            raise NotAMorphism("the forms have a common nontrivial zero (resultant is 0)")

    @property
    def N(self) -> int:
        return len(self.forms) - 1

    @property
    def context(self) -> PrimeContext:
        return PrimeContext(self.p)

    def form_dicts(self) -> list[dict[Exps, Fraction]]:
        return [dict(f) for f in self.forms]

    @cached_property
    def min_scale(self) -> int:
        """m = min coefficient valuation, so Phi = p^m * (minimal lift)."""
        return min(vp(c, self.p) for f in self.forms for _, c in f)

    @cached_property
    def minimal_forms(self) -> tuple[tuple[tuple[Exps, Fraction], ...], ...]:
        s = Fraction(self.p) ** (-self.min_scale)
        return tuple(tuple((e, c * s) for e, c in f) for f in self.forms)

    @cached_property
    def integral_forms(self) -> tuple[tuple[tuple[Exps, int], ...], ...]:
        """The minimal lift times the lcm of its denominators (a p-adic unit)."""
        den = 1
        for f in self.minimal_forms:
            for _, c in f:
                den = den * c.denominator // math.gcd(den, c.denominator)
        return tuple(tuple((e, int(c * den)) for e, c in f) for f in self.minimal_forms)

    @cached_property
    def v_res(self) -> Valuation:
        """v_p of the Macaulay resultant of the minimal lift."""
        r = integer_resultant([dict(f) for f in self.integral_forms], self.d)
        return vp_int(r, self.p)

    @cached_property
    def resultant(self) -> Fraction:
        """Res of this lift's own coefficients (not normalized), up to sign."""
        return rational_resultant(self.form_dicts(), self.d)

    def scaled(self, c) -> "HomogeneousMap":
        c = to_fraction(c)
        return HomogeneousMap(tuple(tuple((e, v * c) for e, v in f) for f in self.forms), self.d, self.p)

    def __str__(self):
        names = "XYZW" if self.N < 4 else None
        parts = []
        for f in self.forms:
            terms = []
            for e, c in f:
                mon = "".join(
                    (names[j] if names else f"x{j}") + (f"^{k}" if k > 1 else "")
                    for j, k in enumerate(e)
                    if k
                )
                terms.append(mon if c == 1 else f"{format_rational(c)}{mon}")
            parts.append(" + ".join(terms))
        return "(" + " : ".join(parts) + ")"


def make_map(forms: Sequence, p: int, d: int | None = None) -> HomogeneousMap:
    """Build from a list of ``{exps: coeff}`` dicts (or (exps, coeff) pairs)."""
    cleaned = [_clean_form(f) for f in forms]
    if d is None:
        d = next((sum(e) for f in cleaned for e, _ in f), 0)
    return HomogeneousMap(tuple(cleaned), d, p)


def parse_map(spec: Mapping) -> HomogeneousMap:
    """Map from the JSON object {"p", "N", "d", "forms": [[{"exps", "coeff"}, ...], ...]}."""
    try:
        p = int(spec["p"])
        d = int(spec["d"])
        raw_forms = spec["forms"]
        N = int(spec.get("N", len(raw_forms) - 1))
        forms = [[(tuple(t["exps"]), to_fraction(str(t["coeff"]))) for t in f] for f in raw_forms]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed map specification: {exc}") from exc
    if len(forms) != N + 1:
        raise DimensionMismatch(f"N={N} but {len(forms)} forms given")
    return HomogeneousMap(tuple(forms), d, p)


def map_to_json(phi: HomogeneousMap) -> dict:
    return {
        "p": phi.p,
        "N": phi.N,
        "d": phi.d,
        "forms": [[{"exps": list(e), "coeff": format_rational(c)} for e, c in f] for f in phi.forms],
    }


@dataclass(frozen=True)
class MinimalLift:
    map: HomogeneousMap
    scaling_exponent: int


def minimal_lift(phi: HomogeneousMap) -> MinimalLift:
    return MinimalLift(HomogeneousMap(phi.minimal_forms, phi.d, phi.p), phi.min_scale)


@dataclass(frozen=True)
class ResultantValuation:
    v_res: int
    p: int

    @property
    def abs(self) -> Fraction:
        """|Res(phi)| = p^(-v_res)."""
        return Fraction(1, self.p**self.v_res)

    def to_json(self) -> dict:
        return {"v_res": self.v_res, "abs": f"{self.p}^-{self.v_res}"}


def macaulay_resultant_valuation(phi: HomogeneousMap) -> ResultantValuation:
    return ResultantValuation(phi.v_res, phi.p)


def eval_forms(forms, x: Sequence) -> list:
    """Evaluate forms given as ((exps, coeff), ...) at x; works for ints and Fractions."""
    n = len(x)
    maxdeg = max((max(e) for f in forms for e, _ in f), default=0)
    powers = []
    for xi in x:
        row = [1]
        for _ in range(maxdeg):
            row.append(row[-1] * xi)
        powers.append(row)
    out = []
    for f in forms:
        acc = 0
        for e, c in f:
            t = c
            for j in range(n):
                if e[j]:
                    t *= powers[j][e[j]]
                    if not t:
                        break
            acc += t
        out.append(acc)
    return out


def evaluate(phi: HomogeneousMap, x: Sequence) -> tuple[Fraction, ...]:
    """Phi(x) with this lift's own coefficients."""
    if len(x) != phi.N + 1:
        raise DimensionMismatch(f"expected {phi.N + 1} coordinates, got {len(x)}")
    return tuple(Fraction(v) for v in eval_forms(phi.forms, [to_fraction(c) for c in x]))


def step(phi: HomogeneousMap, lift: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """One application on a primitive integer lift.

    Returns the primitive lift of phi(P) and v = v_p(||Phi_min(x)||).
    """
    y = eval_forms(phi.integral_forms, lift)
    g = 0
    for c in y:
        g = math.gcd(g, c)
    return primitive(y), vp_int(g, phi.p)


def apply(phi: HomogeneousMap, P: ProjectivePoint) -> ProjectivePoint:
    if P.p != phi.p or P.dimension != phi.N:
        raise DimensionMismatch("point and map do not match")
    return ProjectivePoint(step(phi, P.lift)[0], P.p)


def image_valuation(phi: HomogeneousMap, P: ProjectivePoint) -> int:
    """v_p(||Phi_min(x)||) for the normalized lift x of P; lies in [0, v_res]."""
    return step(phi, P.lift)[1]


# Polynomials on the closed unit polydisk: dicts mapping exponent tuples to coefficients.


def eval_poly(poly: Mapping[Exps, object], x: Sequence) -> Fraction:
    return Fraction(eval_forms([tuple(poly.items())], [to_fraction(c) for c in x])[0])


def gauss_norm_valuation(poly: Mapping[Exps, object], p: int) -> Valuation:
    """Gauss norm on the closed unit polydisk is max |coeff|; returns min v(coeff)."""
    return min((vp(to_fraction(c), p) for c in poly.values()), default=INFINITY)


# Reduction modulo p.


def reduce_rational(x: Fraction, p: int) -> int:
    x = to_fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def reduce_point(P: ProjectivePoint) -> tuple[int, ...]:
    """Coordinatewise reduction of the normalized lift; never the zero vector."""
    return tuple(c % P.p for c in P.lift)


def projective_residue(v: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale a nonzero F_p vector so its first nonzero entry is 1."""
    for c in v:
        if c % p:
            inv = pow(c, -1, p)
            return tuple(x * inv % p for x in v)
    raise ValueError("zero vector in F_p^(N+1)")


@dataclass(frozen=True)
class ResidueMap:
    forms: tuple[tuple[tuple[Exps, int], ...], ...]
    p: int

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        return tuple(c % p for c in eval_forms(self.forms, [x % p for x in v]))


def reduce_map(phi: HomogeneousMap | MinimalLift) -> ResidueMap:
    """Coefficientwise reduction of the minimal lift."""
    if isinstance(phi, MinimalLift):
        phi = phi.map
    p = phi.p
    forms = tuple(
        tuple((e, r) for e, c in f if (r := reduce_rational(c, p))) for f in phi.minimal_forms
    )
    return ResidueMap(forms, p)


def integer_point(coords: Sequence, p: int) -> tuple[int, ...]:
    """Primitive integer representative of a coordinate vector."""
    return primitive(integer_lift(coords))
