import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_greens import (
    BadAtIterate,
    CertifiedFatou,
    LogValue,
    OrbitalGood,
    Unknown,
    certify_fatou,
    classify_orbit,
    evaluate,
    g,
    g_n,
    good_reduction_at,
    green_hat,
    green_homogeneous,
    holder_constants,
    lipschitz_constant,
    local_constancy_radius,
    make_map,
    make_point,
    min_bound_lemma,
)
from padic_greens.corpus import corpus, corpus_map
from padic_greens.dynamics import depth_for_tolerance, orbit_valuations, tail_constant
from padic_greens.errors import BadRange, ZeroVector
from padic_greens.padic import sup_norm_valuation

L3 = lambda c: LogValue(Fraction(c), 3)  # noqa: E731


def green_oracle(phi, x, n):
    """d^-n log||Phi^n(x)|| by plain rational iteration of the lift as given."""
    y = [Fraction(c) for c in x]
    for _ in range(n):
        y = list(evaluate(phi, y))
    return LogValue(Fraction(-sup_norm_valuation(y, phi.p), phi.d**n), phi.p)


def int_points(N, bound=40):
    return st.lists(st.integers(-bound, bound), min_size=N + 1, max_size=N + 1).filter(any)


class TestOneStep:
    def test_examples(self, sq, bad):
        for P in ([1, 0], [0, 1], [2, 7]):
            assert g(sq, make_point(P, 3)) == L3(0)
        assert g(bad, make_point([0, 1], 3)) == L3(Fraction(-1, 2))
        assert g(bad, make_point([1, 0], 3)) == L3(0)

    def test_good_reduction(self, sq, bad):
        assert good_reduction_at(bad, make_point([1, 0], 3))
        assert not good_reduction_at(bad, make_point([0, 1], 3))
        assert all(good_reduction_at(sq, make_point(P, 3)) for P in ([1, 0], [0, 1], [5, 9]))


class TestPartialSums:
    def test_examples(self, sq, bad):
        P = make_point([0, 1], 3)
        assert g_n(bad, P, 0) == L3(0)
        assert g_n(bad, P, 2) == L3(Fraction(-3, 4))
        assert all(g_n(sq, make_point([2, 3], 3), n) == L3(0) for n in range(6))

    def test_negative_n(self, bad):
        with pytest.raises(BadRange):
            g_n(bad, make_point([0, 1], 3), -1)

    @pytest.mark.parametrize("key", sorted(corpus()))
    def test_fixed_precision_matches_exact(self, key):
        phi = corpus_map(key)
        rng = random.Random(key)
        for _ in range(5):
            P = make_point([rng.randint(-50, 50) for _ in range(phi.N)] + [rng.choice([1, phi.p, 2 * phi.p])], phi.p)
            assert orbit_valuations(phi, P, 8, "fixed") == orbit_valuations(phi, P, 8, "exact")

    @given(int_points(1))
    @settings(max_examples=30)
    def test_partial_sum_is_telescoped_green(self, x):
        phi = make_map([{(2, 0): 1, (1, 1): 1}, {(0, 2): 1, (2, 0): 3}], 3)
        P = make_point(x, 3)
        n = 5
        expected = green_oracle(phi, P.lift, n)  # ||lift|| = 1
        assert g_n(phi, P, n) == expected


class TestGreenHat:
    def test_good_reduction_is_exact_zero(self, sq):
        est = green_hat(sq, make_point([4, 7], 3))
        assert est.exact and est.partial_sum == L3(0) and est.n_used == 0

    def test_repelling_fixed_point(self, bad):
        # Geometric series: sum_{k>=1} 2^-k * (-1) = -1, i.e. ghat = -log 3.
        for n in (1, 5, 20):
            est = green_hat(bad, make_point([0, 1], 3), n=n)
            assert est.partial_sum == L3(-(1 - Fraction(1, 2**n)))
            assert L3(-1) in est
        # Functional equation at the fixed point: ghat = 2 ghat + log 3 forces ghat = -log 3.
        assert L3(-1) == 2 * L3(-1) + L3(1)

    def test_orbit_with_good_reduction(self, bad):
        for n in range(0, 21, 4):
            assert green_hat(bad, make_point([1, 1], 3), n=n).partial_sum == L3(0)
            assert green_hat(bad, make_point([1, 0], 3), n=n).partial_sum == L3(0)

    def test_tolerance_depth(self, bad):
        tol = L3(Fraction(1, 1000))
        n = depth_for_tolerance(bad, tol)
        assert tail_constant(bad).coeff / 2**n <= tol.coeff < tail_constant(bad).coeff / 2 ** (n - 1)
        assert green_hat(bad, make_point([0, 1], 3), tol=tol).width <= tol

    @given(int_points(1))
    @settings(max_examples=30)
    def test_nested_and_nonpositive(self, x):
        phi = make_map([{(2, 0): 1, (1, 1): 1}, {(0, 2): 1, (2, 0): 3}], 2)
        P = make_point(x, 2)
        coarse, fine = green_hat(phi, P, n=4), green_hat(phi, P, n=12)
        assert fine.upper <= 0
        assert coarse.lower <= fine.lower <= fine.upper <= coarse.upper


class TestGreenHomogeneous:
    def test_examples(self, sq, bad):
        assert green_homogeneous(sq, [1, 1]).partial_sum == L3(0)
        est = green_homogeneous(bad, [0, 3])
        assert L3(-2) in est
        assert green_homogeneous(sq, [3, 3]).partial_sum == L3(-1)
        with pytest.raises(ZeroVector):
            green_homogeneous(sq, [0, 0])

    @given(int_points(1, 30), st.integers(-3, 3), st.sampled_from([1, 2, 5]))
    @settings(max_examples=30)
    def test_scaling_laws(self, x, e, u):
        """G(cx) = G(x) + log|c| and G_{c Phi} = G_Phi + log|c| / (d-1)."""
        phi = make_map([{(2, 0): 1, (1, 1): 1}, {(0, 2): 1, (2, 0): 3}], 3)
        c = Fraction(u) * Fraction(3) ** e
        base = green_homogeneous(phi, x, n=10)
        moved = green_homogeneous(phi, [c * t for t in x], n=10)
        assert moved.partial_sum == base.partial_sum + L3(-e)
        lifted = green_homogeneous(phi.scaled(c), x, n=10)
        assert lifted.partial_sum == base.partial_sum + L3(Fraction(-e, 1))

    def test_homogeneous_against_direct_iteration(self, bad):
        x = [1, 3]
        est = green_homogeneous(bad, x, n=6)
        assert est.partial_sum == green_oracle(bad, x, 6)


class TestClassification:
    def test_examples(self, bad):
        assert classify_orbit(bad, make_point([0, 1], 3)) == BadAtIterate(0)
        assert classify_orbit(bad, make_point([1, 1], 3)) == OrbitalGood(1, 1)
        assert classify_orbit(bad, make_point([1, 0], 3)) == OrbitalGood(0, 1)

    @given(int_points(1))
    def test_good_reduction_map_is_orbital_good(self, x):
        phi = make_map([{(2, 0): 1}, {(0, 2): 1}], 5)
        assert isinstance(classify_orbit(phi, make_point(x, 5)), OrbitalGood)

    @given(int_points(2, 20))
    @settings(max_examples=30)
    def test_agrees_with_green(self, x):
        phi = corpus_map("X2_Y2_3Z2@3")
        P = make_point(x, 3)
        verdict = classify_orbit(phi, P)
        if isinstance(verdict, OrbitalGood):
            assert g_n(phi, P, 20) == 0
        else:
            assert g_n(phi, P, verdict.n) == 0
            assert green_hat(phi, P, n=verdict.n + 1).upper < 0


class TestCertify:
    def test_examples(self, sq, bad):
        cert = certify_fatou(bad, make_point([1, 1], 3))
        assert isinstance(cert, CertifiedFatou) and cert.nonexpanding_radius_valuation == 2
        cert = certify_fatou(bad, make_point([0, 1], 3))
        assert isinstance(cert, Unknown)
        assert L3(-1) in cert.bracket
        assert cert.evidence["label"] == "heuristic"
        cert = certify_fatou(sq, make_point([2, 5], 3))
        assert isinstance(cert, CertifiedFatou) and cert.nonexpanding_radius_valuation == 0

    def test_json_never_claims_julia(self, bad):
        out = certify_fatou(bad, make_point([0, 1], 3)).to_json()
        assert out["verdict"] == "unknown"
        assert "julia" not in str(out).lower()


class TestConstants:
    def test_lipschitz_and_constancy(self, sq, bad):
        assert lipschitz_constant(sq) == L3(0)
        assert lipschitz_constant(bad) == L3(4)
        assert lipschitz_constant(make_map([{(2, 0): 3}, {(0, 2): 3}], 3)) == L3(0)
        assert local_constancy_radius(bad) == 2
        assert local_constancy_radius(sq) == 0

    def test_local_constancy(self, bad):
        P = make_point([0, 1], 3)
        for w in (3, 4, 5):
            Q = make_point([3**w, 1], 3)
            assert g(bad, P) == g(bad, Q)

    @pytest.mark.parametrize(
        "d, v_res, p, u, exponent",
        [(2, 0, 7, 4, 0.5), (2, 2, 3, 81, math.log(2) / math.log(81)), (3, 0, 5, 6, math.log(3) / math.log(6))],
    )
    def test_holder_examples(self, d, v_res, p, u, exponent):
        from padic_greens.dynamics import HolderConstants

        h = HolderConstants(d, p, v_res)
        assert h.u == u
        assert h.exponent == pytest.approx(exponent, rel=1e-12)
        assert h.coefficient == pytest.approx(2 * u * math.log(u) / d, rel=1e-12)

    def test_holder_of_map(self, bad):
        assert holder_constants(bad).u == 81


class TestMinBoundLemma:
    @pytest.mark.parametrize(
        "D, a, b, mn, k, bound",
        [
            (1.0, 2.0, 2.0, 2.5, 1, 4.0),
            (0.25, 2.0, 2.0, 1.0, 1, 2.0),
            (1.0, math.e, math.e, math.e + 1 / math.e, 1, 2 * math.e),
        ],
    )
    def test_examples(self, D, a, b, mn, k, bound):
        res = min_bound_lemma(D, a, b)
        assert res.min_value == pytest.approx(mn, rel=1e-12)
        assert res.argmin == k
        assert res.bound == pytest.approx(bound, rel=1e-12)
        assert res.holds

    def test_bad_range(self):
        for args in ((0.0, 2, 2), (1.5, 2, 2), (0.5, 1.0, 2), (0.5, 2, 0.9)):
            with pytest.raises(BadRange):
                min_bound_lemma(*args)

    @given(
        st.floats(min_value=1e-12, max_value=1.0),
        st.floats(min_value=1.05, max_value=20),
        st.floats(min_value=1.05, max_value=20),
    )
    def test_bound_holds(self, D, a, b):
        res = min_bound_lemma(D, a, b)
        # Independent scan: D a^k is increasing, so stop once it alone exceeds the k=1 value.
        brute, k = math.inf, 1
        while D * a**k <= D * a + 1 / b:
            brute = min(brute, D * a**k + b ** (-k))
            k += 1
        brute = min(brute, D * a**k + b ** (-k))
        assert res.min_value == pytest.approx(brute, rel=1e-12)
        assert res.holds
