import json

import pytest

from padic_greens import make_point
from padic_greens.corpus import corpus_map
from padic_greens.errors import BadStrategy
from padic_greens.harness import SUITES, point_generator, verify, worker_count
from padic_greens.padic import sup_norm_valuation
from padic_greens.projective import chordal_distance


class TestPointGenerator:
    def test_near_pairs_hit_requested_distance(self):
        pairs = point_generator(11, 50, 3, 1, "near-pair", w=3)
        assert len(pairs) == 50
        assert all(chordal_distance(P, Q) == 3 for P, Q in pairs)

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_near_pairs_higher_dimension(self, N):
        assert all(chordal_distance(P, Q) == 2 for P, Q in point_generator(0, 20, 5, N, "near-pair", w=2))

    def test_boundary_contains_basis(self):
        pts = point_generator(0, 100, 3, 2, "boundary")
        for e in ([1, 0, 0], [0, 1, 0], [0, 0, 1]):
            assert make_point(e, 3) in pts

    def test_deterministic(self):
        assert point_generator(5, 30, 7, 2) == point_generator(5, 30, 7, 2)
        assert point_generator(5, 30, 7, 2) != point_generator(6, 30, 7, 2)

    def test_points_normalized(self):
        assert all(sup_norm_valuation(P.lift, 2) == 0 for P in point_generator(1, 40, 2, 2))

    def test_bad_strategy(self):
        with pytest.raises(BadStrategy):
            point_generator(0, 5, 3, 1, "gaussian")
        with pytest.raises(BadStrategy):
            point_generator(0, 5, 3, 1, "near-pair")


class TestVerify:
    def test_good_reduction_map_passes(self):
        report = verify(corpus_map("X2_Y2@5"), samples=60, seed=7)
        assert report.ok
        assert {r.name for r in report.properties} <= set(SUITES)

    def test_only(self):
        report = verify(corpus_map("X2_3Y2@3"), samples=20, only=["lipschitz", "holder"])
        assert [r.name for r in report.properties] == ["lipschitz", "holder"]
        assert report.ok

    def test_thread_count_does_not_change_report(self):
        phi = corpus_map("X2+XY_Y2+3X2@2")
        a = verify(phi, samples=40, seed=3, threads=1).to_json()
        b = verify(phi, samples=40, seed=3, threads=4).to_json()
        assert json.dumps(a) == json.dumps(b)

    def test_worker_count_env(self, monkeypatch):
        monkeypatch.setenv("PADIC_GREENS_THREADS", "3")
        assert worker_count() == 3
        assert worker_count(2) == 2
        monkeypatch.delenv("PADIC_GREENS_THREADS")
        assert worker_count() == 1
