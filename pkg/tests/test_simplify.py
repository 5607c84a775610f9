import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frechetsimp.geometry import Metric
from frechetsimp.oracle import shortcut_is_valid
from frechetsimp.simplify import (InvalidInputError, link_distance_table,
                                  nu_diagnostics, preprocess, simplify,
                                  simplify_baseline)
from frechetsimp.verify import VerifyConfig, random_instance

from oracles import min_nu_bruteforce

METRICS = (Metric.L2, Metric.L1, Metric.LINF)


class TestSimplifyExamples:
    def test_collinear_two_vertices_remain(self):
        res = simplify([(0, 0), (1, 0), (2, 0), (3, 0)], 0.1)
        assert res.indices == [0, 3]
        assert res.link_count == 1

    def test_zigzag_inside_tube(self):
        res = simplify([(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], 1.0)
        assert res.indices == [0, 4]
        assert shortcut_is_valid([(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], 0, 4, 1.0)

    def test_zigzag_small_delta_keeps_all(self):
        res = simplify([(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], 0.5)
        assert res.indices == [0, 1, 2, 3, 4]

    def test_baseline_matches_on_examples(self):
        for pts, delta in ([[(0, 0), (1, 0), (2, 0), (3, 0)], 0.1],
                           [[(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], 1.0],
                           [[(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)], 0.5]):
            a = simplify(pts, delta)
            b = simplify_baseline(pts, delta)
            assert a.link_count == b.link_count

    def test_two_vertices(self):
        for m in METRICS:
            assert simplify([(0, 0), (5, 5)], 0.01, m).indices == [0, 1]
            assert simplify_baseline([(0, 0), (5, 5)], 0.01, m).indices == [0, 1]

    def test_delta_above_diameter_collapses(self):
        rng = np.random.default_rng(2)
        pts = rng.uniform(0, 4, (9, 2)).tolist()
        for m in METRICS:
            res = simplify(pts, 50.0, m)
            assert res.indices == [0, 8]


class TestEdgeCasesAndErrors:
    def test_consecutive_duplicates_collapse(self):
        pts = [(0, 0), (0, 0), (1, 0), (1, 0), (1, 0), (2, 0), (3, 0), (3, 0)]
        res = simplify(pts, 0.1)
        assert res.indices[0] == 0
        assert res.indices[-1] == len(pts) - 1
        assert res.link_count == 1

    def test_all_identical_vertices(self):
        res = simplify([(2, 2)] * 5, 1.0)
        assert res.indices == [0, 4]
        assert res.link_count == 1

    def test_non_consecutive_duplicates_kept(self):
        poly = preprocess([(0, 0), (5, 0), (0, 0), (7, 0)])
        assert poly.n == 4

    def test_errors(self):
        with pytest.raises(InvalidInputError):
            simplify([(0, 0)], 1.0)
        with pytest.raises(InvalidInputError):
            simplify([(0, 0), (1, 1)], 0.0)
        with pytest.raises(InvalidInputError):
            simplify([(0, 0), (1, 1)], -2.0)
        with pytest.raises(InvalidInputError):
            simplify([(0, 0), (float("nan"), 1)], 1.0)
        with pytest.raises(InvalidInputError):
            simplify([(0, 0), (float("inf"), 1)], 1.0)
        with pytest.raises(InvalidInputError):
            simplify([(0, 0), (1, 1)], 1.0, algo="quantum")

    def test_tie_break_smallest_index(self):
        # whenever several targets reach the end equally fast, the smallest
        # index is chosen; check the emitted chain against the table
        rng = np.random.default_rng(42)
        for _ in range(25):
            n = int(rng.integers(4, 20))
            pts = [tuple(p) for p in rng.uniform(0, 6, (n, 2))]
            delta = float(rng.uniform(0.5, 3.0))
            d, parent, _ = link_distance_table(pts, delta, Metric.L2)
            res = simplify(pts, delta)
            at = 0
            ties_seen = 0
            for nxt in res.indices[1:]:
                targets = [k for k in range(at + 1, n)
                           if shortcut_is_valid(pts, at, k, delta)]
                minimizers = [k for k in targets if d[k] == d[at] - 1]
                ties_seen += len(minimizers) > 1
                assert nxt == min(minimizers)
                at = nxt


class TestOptimalityProperties:
    @pytest.mark.parametrize("metric", METRICS)
    def test_wavefront_equals_baseline_sizes(self, metric):
        cfg = VerifyConfig(count=120, seed=606, metrics=(metric,))
        for idx in range(120):
            pts, delta, _ = random_instance(cfg, idx)
            pts_l = [tuple(p) for p in pts]
            a = simplify(pts_l, delta, metric)
            b = simplify_baseline(pts_l, delta, metric)
            assert a.link_count == b.link_count
            assert a.indices[0] == 0 and a.indices[-1] == len(pts_l) - 1
            assert all(x < y for x, y in zip(a.indices, a.indices[1:]))
            for x, y in zip(a.indices, a.indices[1:]):
                assert shortcut_is_valid(pts_l, x, y, delta, metric)

    @given(st.integers(0, 100_000))
    @settings(max_examples=40)
    def test_distance_table_steps_by_at_most_one(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 18))
        pts = [tuple(p) for p in rng.uniform(0, 10, (n, 2))]
        delta = float(rng.uniform(0.1, 3.0))
        d, parent, _ = link_distance_table(pts, delta, METRICS[seed % 3])
        assert d[-1] == 0
        for i in range(n - 1):
            assert d[i] <= d[i + 1] + 1
            assert 1 <= d[i] <= n - 1 - i

    def test_parallel_two_pass_matches_sequential(self):
        rng = np.random.default_rng(4)
        pts = [tuple(p) for p in rng.uniform(0, 10, (120, 2))]
        seq = simplify(pts, 1.5)
        par = simplify(pts, 1.5, workers=2)
        assert seq.indices == par.indices


class TestNuDiagnostics:
    def test_spread_grid_ball_of_one(self):
        pts = [(x * 10.0, y * 10.0) for x in range(4) for y in range(3)]
        d = nu_diagnostics(pts, 1.0)
        assert d["max_vertices_in_delta_ball"] == 1

    def test_clustered_ball_counts_everyone(self):
        rng = np.random.default_rng(6)
        pts = [(5 + 1e-4 * rng.uniform(), 5 + 1e-4 * rng.uniform()) for _ in range(8)]
        d = nu_diagnostics(pts, 1.0)
        assert d["max_vertices_in_delta_ball"] == 8

    def test_estimator_within_factor_four_of_bruteforce(self):
        pts = [(float(k), 0.0) for k in range(8)]
        est = nu_diagnostics(pts, 1.0)["nu_estimate"]
        exact = min_nu_bruteforce(pts)
        assert exact / 4.0 <= est <= exact * (1 + 1e-9)

    def test_implied_bound_floor(self):
        d = nu_diagnostics([(0, 0), (100, 100)], 0.001)
        assert d["implied_wavefront_bound"] >= 1.0
