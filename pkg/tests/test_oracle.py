import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frechetsimp.geometry import Metric
from frechetsimp.oracle import (ball_segment_interval, shortcut_is_valid,
                                shortcut_matrix_dense, valid_targets_from)
from frechetsimp.verify import instance_margin

from oracles import dp_reachable, interval_scan

METRICS = (Metric.L2, Metric.L1, Metric.LINF)


class TestBallSegmentInterval:
    def test_tangent_case_exact(self):
        iv = ball_segment_interval((1, 1), 1.0, Metric.L2, (0, 0), (4, 0))
        assert iv == (0.25, 0.25)

    def test_quadratic_case_frozen(self):
        iv = ball_segment_interval((3, 0.5), 1.0, Metric.L2, (0, 0), (4, 0))
        lo = (3 - math.sqrt(0.75)) / 4
        hi = (3 + math.sqrt(0.75)) / 4
        assert iv == pytest.approx((lo, hi), abs=1e-12)
        scan = interval_scan((3, 0.5), 1.0, Metric.L2, (0, 0), (4, 0))
        assert iv[0] == pytest.approx(scan[0], abs=2e-6)
        assert iv[1] == pytest.approx(scan[1], abs=2e-6)

    def test_far_center_empty(self):
        for m in METRICS:
            assert ball_segment_interval((10, 10), 1.0, m, (0, 0), (4, 0)) is None

    @pytest.mark.parametrize("metric", METRICS)
    def test_matches_scan(self, metric):
        rng = np.random.default_rng(17)
        for _ in range(120):
            c = rng.uniform(-3, 3, 2)
            a = rng.uniform(-3, 3, 2)
            b = rng.uniform(-3, 3, 2)
            delta = rng.uniform(0.2, 2.0)
            iv = ball_segment_interval(c, delta, metric, a, b)
            scan = interval_scan(c, delta, metric, a, b, samples=200_001)
            if iv is None:
                # a scan hit with margin would contradict emptiness
                assert scan is None or scan[1] - scan[0] < 1e-3
            else:
                assert scan is not None
                assert iv[0] == pytest.approx(scan[0], abs=1e-3)
                assert iv[1] == pytest.approx(scan[1], abs=1e-3)

    def test_degenerate_segment(self):
        assert ball_segment_interval((0, 0.5), 1.0, Metric.L2, (1, 1), (1, 1)) is None
        assert ball_segment_interval((1, 1.2), 1.0, Metric.L2, (1, 1), (1, 1)) == (0.0, 1.0)


class TestShortcutIsValid:
    def test_deviation_exactly_delta(self):
        L = [(0, 0), (2, 1), (4, 0)]
        assert shortcut_is_valid(L, 0, 2, 1.0) is True
        assert shortcut_is_valid(L, 0, 2, 0.5) is False

    def test_order_violation_hausdorff_would_pass(self):
        L = [(0, 0), (3, 0.5), (1, 0.5), (4, 0)]
        assert shortcut_is_valid(L, 0, 3, 1.0) is False
        # the same two interior vertices are each within delta of the segment
        assert ball_segment_interval((3, 0.5), 1.0, Metric.L2, (0, 0), (4, 0))
        assert ball_segment_interval((1, 0.5), 1.0, Metric.L2, (0, 0), (4, 0))

    def test_adjacent_always_valid(self):
        L = [(0, 0), (100, 100), (0, 1)]
        for m in METRICS:
            assert shortcut_is_valid(L, 0, 1, 1e-9, m)
            assert shortcut_is_valid(L, 1, 2, 1e-9, m)

    def test_on_segment_in_order_any_delta(self):
        L = [(0, 0), (1, 0), (2.5, 0), (7, 0), (9, 0)]
        for m in METRICS:
            assert shortcut_is_valid(L, 0, 4, 1e-12, m)

    def test_zero_length_shortcut_rule(self):
        L = [(0, 0), (0.5, 0), (0, 0)]
        assert shortcut_is_valid(L, 0, 2, 0.6)
        assert not shortcut_is_valid(L, 0, 2, 0.4)

    def test_index_errors(self):
        with pytest.raises(IndexError):
            shortcut_is_valid([(0, 0), (1, 1)], 1, 1, 1.0)
        with pytest.raises(IndexError):
            shortcut_is_valid([(0, 0), (1, 1)], 0, 2, 1.0)

    @given(st.integers(0, 10_000))
    @settings(max_examples=80)
    def test_monotone_in_delta(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 10))
        pts = rng.uniform(0, 10, (n, 2))
        d1 = float(rng.uniform(0.1, 2.0))
        d2 = d1 + float(rng.uniform(0.01, 2.0))
        m = METRICS[seed % 3]
        for i in range(n - 1):
            for k in range(i + 1, n):
                if shortcut_is_valid(pts, i, k, d1, m):
                    assert shortcut_is_valid(pts, i, k, d2, m)


def test_greedy_agrees_with_free_space_dp():
    """10^4 seeded instances, n <= 12, delta kept 1e-3 clear of criticality:
    the greedy interval sweep and a 2000-step reachability DP agree exactly
    on a random shortcut per instance."""
    agree = 0
    for idx in range(10_000):
        rng = np.random.default_rng([2024, idx])
        for _ in range(50):
            n = int(rng.integers(3, 13))
            pts = rng.uniform(0, 10, (n, 2))
            delta = float(rng.uniform(0.3, 3.0))
            if instance_margin(pts, delta) > 1e-3 * delta:
                break
        m = METRICS[idx % 3]
        i = int(rng.integers(0, n - 1))
        k = int(rng.integers(i + 1, n))
        g = shortcut_is_valid(pts, i, k, delta, m)
        d = dp_reachable(pts, i, k, delta, m)
        assert g == d, (idx, i, k, m)
        agree += 1
    assert agree == 10_000


@pytest.mark.parametrize("metric", METRICS)
def test_vectorized_routes_match_scalar(metric):
    rng = np.random.default_rng(123)
    for _ in range(150):
        n = int(rng.integers(2, 16))
        pts = rng.uniform(0, 10, (n, 2))
        delta = float(rng.uniform(0.1, 3.0))
        M = shortcut_matrix_dense(pts, delta, metric)
        for i in range(n - 1):
            batch = set(valid_targets_from(pts, i, delta, metric).tolist())
            for k in range(i + 1, n):
                s = shortcut_is_valid(pts, i, k, delta, metric)
                assert M[i, k] == s
                assert (k in batch) == s
