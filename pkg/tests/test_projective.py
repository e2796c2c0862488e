from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from padic_greens.errors import DimensionMismatch, NotIntegral, PivotNotUnit, ZeroVector
from padic_greens.padic import INFINITY, sup_norm_valuation, vp
from padic_greens.projective import (
    Disk,
    affine_embed,
    affine_extract,
    chordal_distance,
    embed_at,
    make_point,
)

primes = st.sampled_from([2, 3, 5])


def coords(n):
    return st.lists(st.fractions(max_denominator=50).map(lambda x: x.limit_denominator(50)), min_size=n, max_size=n).filter(any)


def distance_oracle(x, y, p):
    """Chordal distance from the defining quotient with arbitrary (unnormalized) lifts."""
    num = min((vp(Fraction(x[i]) * y[j] - Fraction(x[j]) * y[i], p) for i, j in combinations(range(len(x)), 2)))
    if num == INFINITY:
        return INFINITY
    return num - sup_norm_valuation(x, p) - sup_norm_valuation(y, p)


class TestMakePoint:
    def test_examples(self):
        assert make_point([3, 9], 3).lift == (1, 3)
        P = make_point([Fraction(1, 5), 1], 5)
        assert P.lift == (1, 5)
        assert sup_norm_valuation(P.lift, 5) == 0
        with pytest.raises(ZeroVector):
            make_point([0, 0], 2)

    @given(coords(3), st.fractions().filter(bool), primes)
    def test_scaling_invariance(self, xs, c, p):
        assert make_point(xs, p) == make_point([c * x for x in xs], p)

    @given(coords(3), primes)
    def test_lift_is_normalized(self, xs, p):
        assert sup_norm_valuation(make_point(xs, p).lift, p) == 0


class TestChordalDistance:
    def test_examples(self):
        assert chordal_distance(make_point([1, 0], 3), make_point([0, 1], 3)) == 0
        P = make_point([2, 7], 5)
        assert chordal_distance(P, P) == INFINITY
        assert chordal_distance(make_point([1, 3], 3), make_point([1, 0], 3)) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            chordal_distance(make_point([1, 0], 3), make_point([1, 0, 0], 3))
        with pytest.raises(DimensionMismatch):
            chordal_distance(make_point([1, 0], 3), make_point([1, 0], 5))

    @given(coords(3), coords(3), primes)
    def test_matches_unnormalized_oracle(self, x, y, p):
        assert chordal_distance(make_point(x, p), make_point(y, p)) == distance_oracle(x, y, p)

    @given(coords(3), coords(3), coords(3), primes)
    def test_metric_axioms(self, x, y, z, p):
        P, Q, R = (make_point(v, p) for v in (x, y, z))
        w = chordal_distance
        assert w(P, Q) >= 0  # Delta <= 1
        assert w(P, Q) == w(Q, P)
        assert (w(P, Q) == INFINITY) == (P == Q)
        assert w(P, R) >= min(w(P, Q), w(Q, R))


class TestAffine:
    def test_embed_examples(self):
        assert affine_embed([3], 3) == make_point([1, 3], 3)
        with pytest.raises(NotIntegral):
            affine_embed([Fraction(1, 3)], 3)
        assert affine_embed([2, 10], 5).lift == (1, 2, 10)

    def test_extract_examples(self):
        assert affine_extract(make_point([1, 3], 3), 0) == (3,)
        assert affine_extract(make_point([3, 1], 3), 1) == (3,)
        with pytest.raises(PivotNotUnit):
            affine_extract(make_point([1, 3], 3), 1)

    @given(st.lists(st.integers(-500, 500), min_size=2, max_size=2), st.lists(st.integers(-500, 500), min_size=2, max_size=2), primes)
    def test_isometry(self, a, b, p):
        """On the unit polydisk the chordal distance is the sup distance."""
        w = chordal_distance(affine_embed(a, p), affine_embed(b, p))
        assert w == min(vp(Fraction(x - y), p) for x, y in zip(a, b))

    @given(st.lists(st.integers(-500, 500), min_size=2, max_size=2), st.integers(0, 2), primes)
    def test_roundtrip(self, a, k, p):
        P = embed_at(a, k, p)
        assert affine_extract(P, k) == tuple(Fraction(x) for x in a)


class TestDisk:
    def test_membership(self):
        P = make_point([1, 0], 3)
        assert make_point([1, 9], 3) in Disk(P, 1)
        assert make_point([1, 3], 3) not in Disk(P, 1)
        assert make_point([1, 3], 3) in Disk(P, 1, open=False)
