"""Seeded point generators and the property-verification suites.

Every property draws its samples from its own ``random.Random`` seeded by
(seed, property name), builds the whole sample list up front, then evaluates
checks through an ordered ``Executor.map``. Reports are therefore identical
for any worker count.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .dynamics import (
    BadAtIterate,
    OrbitalGood,
    classify_orbit,
    g,
    g_n,
    green_hat,
    green_homogeneous,
    holder_constants,
    truncated_orbit,
)
from .errors import BadStrategy
from .morphism import (
    HomogeneousMap,
    apply,
    eval_poly,
    gauss_norm_valuation,
    map_to_json,
    projective_residue,
    reduce_map,
    reduce_point,
    step,
)
from .padic import INFINITY, format_rational, round_sig, vp
from .projective import (
    ProjectivePoint,
    affine_embed,
    affine_extract,
    chordal_distance,
    cross_term_valuation,
    embed_at,
    make_point,
    unit_indices,
)
from .resultant import binary_coefficients, integer_resultant, sylvester_resultant

BOUND = 10**4
STRATEGIES = ("uniform-integral", "near-pair", "boundary")
THREADS_ENV = "PADIC_GREENS_THREADS"


def _rng(seed, *tags) -> random.Random:
    return random.Random("|".join(str(t) for t in (seed,) + tags))


def random_unit(rng: random.Random, p: int, bound: int = BOUND) -> Fraction:
    """A p-adic unit a/b with |a|, b <= bound."""
    while True:
        a = rng.randint(1, bound) * rng.choice((-1, 1))
        b = rng.randint(1, bound)
        if a % p and b % p:
            return Fraction(a, b)


def random_integral(rng: random.Random, p: int, bound: int = BOUND) -> Fraction:
    """A p-integral rational; a third of the draws carry an explicit p-power."""
    while True:
        b = rng.randint(1, bound)
        if b % p:
            break
    r = rng.random()
    if r < 0.1:
        return Fraction(0)
    if r < 0.4:
        e = rng.randint(1, 3)
        top = max(1, bound // p**e)
        return Fraction(rng.randint(-top, top) * p**e, b)
    return Fraction(rng.randint(-bound, bound), b)


def random_point(rng: random.Random, p: int, N: int) -> ProjectivePoint:
    while True:
        coords = [random_integral(rng, p) for _ in range(N + 1)]
        if any(coords):
            return make_point(coords, p)


def near_point(rng: random.Random, P: ProjectivePoint, w: int) -> ProjectivePoint:
    """A point at chordal distance exactly p^-w from P, via the affine chart at a unit coordinate."""
    k = min(unit_indices(P))
    a = list(affine_extract(P, k))
    j = rng.randrange(len(a))
    a[j] += P.p**w * random_unit(rng, P.p)
    return embed_at(a, k, P.p)


def boundary_points(p: int, N: int) -> list[ProjectivePoint]:
    pts = []
    for i in range(N + 1):
        pts.append(make_point([int(j == i) for j in range(N + 1)], p))
    pts.append(make_point([1] * (N + 1), p))
    pts.append(make_point([1] + [p] * N, p))
    pts.append(make_point([p] * N + [1], p))
    return list(dict.fromkeys(pts))


def point_generator(seed, count: int, p: int, N: int, strategy: str = "uniform-integral", w: int | None = None):
    """Deterministic stream of points (or (P, Q) pairs for ``near-pair``)."""
    if strategy not in STRATEGIES:
        raise BadStrategy(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy == "boundary":
        return boundary_points(p, N)[:count]
    rng = _rng(seed, strategy, p, N, w)
    if strategy == "uniform-integral":
        return [random_point(rng, p, N) for _ in range(count)]
    if w is None or w < 0:
        raise BadStrategy("near-pair needs a target valuation w >= 0")
    out = []
    for _ in range(count):
        P = random_point(rng, p, N)
        out.append((P, near_point(rng, P, w)))
    return out


def random_polynomial(rng: random.Random, p: int, nvars: int, max_degree: int = 4) -> dict:
    poly = {}
    for _ in range(rng.randint(1, 6)):
        exps = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        poly[exps] = poly.get(exps, 0) + random_integral(rng, p, 50) * Fraction(p) ** rng.randint(0, 2)
    return {e: c for e, c in poly.items() if c} or {(0,) * nvars: Fraction(1)}


@dataclass
class PropertyResult:
    name: str
    samples: int
    failures: int
    worst_margin: object = None
    examples: list = field(default_factory=list)

    def to_json(self) -> dict:
        m = self.worst_margin
        if isinstance(m, Fraction):
            m = format_rational(m)
        elif isinstance(m, float):
            m = None if m == INFINITY else round_sig(m)
        return {
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "worst_margin": m,
            "failure_examples": self.examples,
        }


@dataclass
class VerifyReport:
    map: dict
    seed: int
    samples: int
    properties: list[PropertyResult]

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.properties)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "map": self.map,
            "seed": self.seed,
            "samples": self.samples,
            "ok": self.ok,
            "failures": self.failures,
            "properties": [r.to_json() for r in self.properties],
        }


Check = Callable[[object], tuple]  # sample -> (ok, margin)


def _run(name: str, samples: Sequence, check: Check, pool) -> PropertyResult:
    results = list(pool.map(check, samples)) if pool else [check(s) for s in samples]
    res = PropertyResult(name, len(samples), 0)
    worst = None
    for s, (ok, margin) in zip(samples, results):
        if not ok:
            res.failures += 1
            if len(res.examples) < 3:
                res.examples.append(_describe(s))
        if margin is not None and margin != INFINITY and (worst is None or margin < worst):
            worst = margin
    res.worst_margin = worst
    return res


def _describe(sample) -> str:
    if isinstance(sample, tuple):
        return ", ".join(_describe(s) for s in sample)
    if isinstance(sample, Fraction):
        return format_rational(sample)
    return str(sample)


def _min_margin(*ms):
    ms = [m for m in ms if m is not None and m != INFINITY]
    return min(ms) if ms else None


def worker_count(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else 1
    return max(1, threads)


# ----- individual suites ---------------------------------------------------------


def _pairs(rng, phi, count, ws):
    """Half uniform pairs, half near-pairs at valuations drawn from ws."""
    out = []
    for i in range(count):
        P = random_point(rng, phi.p, phi.N)
        if i % 2 == 0:
            out.append((P, random_point(rng, phi.p, phi.N)))
        else:
            out.append((P, near_point(rng, P, rng.choice(ws))))
    return out


def suite_scalar_ultrametric(phi, rng, count):
    p = phi.p

    def draw():
        x = random_integral(rng, p) * Fraction(p) ** rng.randint(-3, 3)
        return x

    samples = [(draw(), draw()) for _ in range(count)]

    def check(s):
        a, b = s
        va, vb, vs = vp(a, p), vp(b, p), vp(a + b, p)
        ok = vs >= min(va, vb)
        if va != vb:
            ok = ok and vs == min(va, vb)
        if a and b:
            ok = ok and vp(a * b, p) == va + vb
        return ok, (vs - min(va, vb)) if vs != INFINITY and min(va, vb) != INFINITY else None

    return samples, check


def suite_metric_axioms(phi, rng, count):
    p, N = phi.p, phi.N
    samples = []
    for i in range(count):
        P = random_point(rng, p, N)
        if i % 2:
            Q = near_point(rng, P, rng.randint(0, 4))
            R = near_point(rng, Q, rng.randint(0, 4))
        else:
            Q, R = random_point(rng, p, N), random_point(rng, p, N)
        samples.append((P, Q, R))

    def check(s):
        P, Q, R = s
        wpq, wqp = chordal_distance(P, Q), chordal_distance(Q, P)
        wqr, wpr = chordal_distance(Q, R), chordal_distance(P, R)
        ok = wpq == wqp and chordal_distance(P, P) == INFINITY
        ok = ok and ((wpq == INFINITY) == (P == Q))
        ok = ok and min(wpq, wqr, wpr) >= 0
        ok = ok and wpr >= min(wpq, wqr)
        return ok, wpr - min(wpq, wqr) if min(wpq, wqr) != INFINITY else None

    return samples, check


def suite_lift_invariance(phi, rng, count):
    p, N = phi.p, phi.N
    samples = []
    for _ in range(count):
        P = random_point(rng, p, N)
        c = random_unit(rng, p) * Fraction(p) ** rng.randint(-4, 4)
        samples.append((P, c, random_point(rng, p, N)))

    def check(s):
        P, c, Q = s
        P2 = make_point([c * x for x in P.lift], p)
        return P2 == P and chordal_distance(P2, Q) == chordal_distance(P, Q), 0

    return samples, check


def suite_affine_isometry(phi, rng, count):
    p, N = phi.p, phi.N
    samples = []
    for i in range(count):
        a = [random_integral(rng, p) for _ in range(N)]
        if i % 2:
            b = [x + Fraction(p) ** rng.randint(0, 5) * random_integral(rng, p) for x in a]
        else:
            b = [random_integral(rng, p) for _ in range(N)]
        samples.append((tuple(a), tuple(b)))

    def check(s):
        a, b = s
        w = chordal_distance(affine_embed(a, p), affine_embed(b, p))
        expected = min(vp(x - y, p) for x, y in zip(a, b))
        ok = w == expected and affine_extract(affine_embed(a, p), 0) == a
        return ok, 0

    return samples, check


def suite_index_preservation(phi, rng, count):
    p, N = phi.p, phi.N
    samples = []
    for _ in range(count):
        P = random_point(rng, p, N)
        samples.append((P, near_point(rng, P, rng.randint(1, 5))))

    def check(s):
        P, Q = s
        if chordal_distance(P, Q) < 1:
            return True, None
        return unit_indices(P) == unit_indices(Q), 0

    return samples, check


def suite_resultant_bounds(phi, rng, count):
    p, N = phi.p, phi.N
    samples = [random_point(rng, p, N) for _ in range(count)] + boundary_points(p, N)

    def check(P):
        v = step(phi, P.lift)[1]
        return 0 <= v <= phi.v_res, min(v, phi.v_res - v)

    return samples, check


def suite_lipschitz(phi, rng, count):
    ws = list(range(0, 3 * phi.v_res + 4))
    samples = _pairs(rng, phi, count, ws)
    loss = 2 * phi.v_res

    def check(s):
        P, Q = s
        w = chordal_distance(P, Q)
        wi = chordal_distance(apply(phi, P), apply(phi, Q))
        if w == INFINITY:
            return wi == INFINITY, None
        return wi >= w - loss, wi - (w - loss)

    return samples, check


def suite_local_constancy(phi, rng, count):
    p, N, v = phi.p, phi.N, phi.v_res
    samples = []
    for _ in range(count):
        P = random_point(rng, p, N)
        w = rng.randint(v + 1, v + 4)
        samples.append((P, near_point(rng, P, w)))

    def check(s):
        P, Q = s
        return chordal_distance(P, Q) > v and g(phi, P) == g(phi, Q), None

    return samples, check


def suite_holder(phi, rng, count, depth=20):
    ws = list(range(0, phi.v_res + 7))
    samples = _pairs(rng, phi, count, ws)
    hc = holder_constants(phi)

    def check(s):
        P, Q = s
        w = chordal_distance(P, Q)
        a, b = green_hat(phi, P, n=depth), green_hat(phi, Q, n=depth)
        if w == INFINITY:
            return a == b, None
        # largest difference compatible with both brackets
        diff = max(float(a.upper - b.lower), float(b.upper - a.lower))
        rhs = hc.bound(w)
        return diff <= rhs, rhs - diff

    return samples, check


def suite_green_nesting(phi, rng, count):
    samples = [random_point(rng, phi.p, phi.N) for _ in range(count)]

    def check(P):
        coarse, fine = green_hat(phi, P, n=5), green_hat(phi, P, n=20)
        ok = fine.upper <= 0 and coarse.upper <= 0
        ok = ok and coarse.lower <= fine.lower and fine.upper <= coarse.upper
        return ok, -fine.upper.coeff

    return samples, check


def suite_functional_equation(phi, rng, count, depth=20):
    samples = [random_point(rng, phi.p, phi.N) for _ in range(count)]
    d = phi.d

    def check(P):
        lhs = g_n(phi, apply(phi, P), depth)
        rhs = d * g_n(phi, P, depth + 1) - d * g(phi, P)
        return lhs == rhs, 0

    return samples, check


def suite_classification(phi, rng, count, depth=20):
    samples = [random_point(rng, phi.p, phi.N) for _ in range(count)] + boundary_points(phi.p, phi.N)

    def check(P):
        verdict = classify_orbit(phi, P)
        if isinstance(verdict, OrbitalGood):
            return g_n(phi, P, depth).coeff == 0, None
        k = verdict.n
        ok = g_n(phi, P, k).coeff == 0 and green_hat(phi, P, n=k + 1).upper < 0
        return ok, None

    return samples, check


def suite_nonexpansion(phi, rng, count, horizon=10):
    p, N, v = phi.p, phi.N, phi.v_res
    samples = []
    tries = 0
    while len(samples) < count and tries < 20 * count:
        tries += 1
        P = random_point(rng, p, N)
        if not isinstance(classify_orbit(phi, P), OrbitalGood):
            continue
        Q = near_point(rng, P, rng.randint(v + 1, v + 4))
        R = near_point(rng, P, rng.randint(v + 1, v + 4))
        samples.append((P, Q, R))

    def check(s):
        _, Q, R = s
        w0 = chordal_distance(Q, R)
        if w0 == INFINITY:
            return True, None
        K0 = w0 + (horizon + 1) * v + 1
        oq = truncated_orbit(phi, step(phi, Q.lift)[0], horizon, K0)
        orr = truncated_orbit(phi, step(phi, R.lift)[0], horizon, K0)
        worst = None
        for (x, kx, _), (y, ky, _) in zip(oq, orr):
            km = min(kx, ky)
            wc = cross_term_valuation(x, y, p)
            wn = wc if wc < km else km  # true distance valuation is >= km in the second case
            if wn < w0:
                return False, wn - w0
            worst = wn - w0 if worst is None else min(worst, wn - w0)
        return True, worst

    return samples, check


def suite_gauss_norm(phi, rng, count):
    p = phi.p
    nvars = max(1, phi.N)
    samples = []
    for _ in range(count):
        poly = random_polynomial(rng, p, nvars)
        x = tuple(random_integral(rng, p) for _ in range(nvars))
        e = rng.randint(0, 4)
        y = tuple(c + Fraction(p) ** e * random_integral(rng, p) for c in x)
        samples.append((poly, x, y))

    def check(s):
        poly, x, y = s
        gn = gauss_norm_valuation(poly, p)
        lhs = vp(eval_poly(poly, x) - eval_poly(poly, y), p)
        rhs = gn + min(vp(a - b, p) for a, b in zip(x, y))
        if rhs == INFINITY:
            return lhs == INFINITY, None
        return lhs >= rhs, lhs - rhs

    return samples, check


def suite_reduction_commutes(phi, rng, count):
    samples = [random_point(rng, phi.p, phi.N) for _ in range(count)]
    red = reduce_map(phi)
    p = phi.p

    def check(P):
        if step(phi, P.lift)[1] != 0:
            return True, None
        lhs = projective_residue(reduce_point(apply(phi, P)), p)
        rhs = projective_residue(red(reduce_point(P)), p)
        return lhs == rhs, 0

    return samples, check


def suite_resultant_scaling(phi, rng, count):
    samples = [rng.randint(1, 2) for _ in range(min(count, 2))]
    expected = (phi.N + 1) * phi.d**phi.N
    base = vp(phi.resultant, phi.p)

    def check(e):
        scaled = phi.scaled(Fraction(phi.p) ** e)
        ok = vp(scaled.resultant, phi.p) - base == expected * e and scaled.v_res == phi.v_res
        return ok, 0

    return samples, check


def suite_macaulay_sylvester(phi, rng, count):
    if phi.N != 1:
        return [], None
    samples = [0]

    def check(_):
        forms = [dict(f) for f in phi.integral_forms]
        mac = integer_resultant(forms, phi.d)
        syl = sylvester_resultant(*(binary_coefficients(f, phi.d) for f in forms))
        return abs(mac) == abs(syl), 0

    return samples, check


def suite_near_pairs(phi, rng, count):
    samples = []
    for _ in range(count):
        w = rng.randint(0, 8)
        P = random_point(rng, phi.p, phi.N)
        samples.append((w, P, near_point(rng, P, w)))

    def check(s):
        w, P, Q = s
        return chordal_distance(P, Q) == w, 0

    return samples, check


def suite_green_scaling(phi, rng, count, depth=12):
    p, N = phi.p, phi.N
    samples = []
    for _ in range(count):
        x = [random_integral(rng, p) for _ in range(N + 1)]
        if not any(x):
            x[0] = Fraction(1)
        c = random_unit(rng, p) * Fraction(p) ** rng.randint(-3, 3)
        samples.append((tuple(x), c))
    e = 1
    scaled = phi.scaled(Fraction(p) ** e)

    def check(s):
        x, c = s
        base = green_homogeneous(phi, x, n=depth)
        moved = green_homogeneous(phi, [c * t for t in x], n=depth)
        ok = (moved.partial_sum - base.partial_sum).coeff == -vp(c, p)
        other = green_homogeneous(scaled, x, n=depth)
        ok = ok and (other.partial_sum - base.partial_sum).coeff == Fraction(-e, phi.d - 1)
        ok = ok and green_hat(scaled, make_point(x, p), n=depth) == green_hat(phi, make_point(x, p), n=depth)
        return ok, 0

    return samples, check


SUITES = {
    "scalar_ultrametric": suite_scalar_ultrametric,
    "metric_axioms": suite_metric_axioms,
    "lift_invariance": suite_lift_invariance,
    "affine_isometry": suite_affine_isometry,
    "index_preservation": suite_index_preservation,
    "resultant_bounds": suite_resultant_bounds,
    "resultant_scaling": suite_resultant_scaling,
    "macaulay_sylvester": suite_macaulay_sylvester,
    "gauss_norm_lipschitz": suite_gauss_norm,
    "reduction_commutes": suite_reduction_commutes,
    "lipschitz": suite_lipschitz,
    "local_constancy": suite_local_constancy,
    "green_nesting": suite_green_nesting,
    "functional_equation": suite_functional_equation,
    "green_scaling_laws": suite_green_scaling,
    "holder": suite_holder,
    "classification_consistency": suite_classification,
    "nonexpansion_orbital": suite_nonexpansion,
    "near_pair_generator": suite_near_pairs,
}


def verify(
    phi: HomogeneousMap,
    samples: int = 200,
    seed: int = 0,
    threads: int | None = None,
    only: Iterable[str] | None = None,
) -> VerifyReport:
    names = list(SUITES) if only is None else list(only)
    workers = worker_count(threads)
    results = []
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for name in names:
            sample_list, check = SUITES[name](phi, _rng(seed, name), samples)
            if check is None:
                continue
            results.append(_run(name, sample_list, check, pool))
    finally:
        if pool:
            pool.shutdown()
    return VerifyReport(map_to_json(phi), seed, samples, results)
