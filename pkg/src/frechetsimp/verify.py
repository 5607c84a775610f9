"""Randomized differential verification of the sweeps against the oracle.

Instances are seeded and resampled until no critical distance (vertex-vertex
or vertex-segment, under any requested metric) comes within a margin of
delta, so the combinatorial answer is stable under floating point.  For each
instance the wavefront shortcut sets must equal the oracle's exactly, the
minimum link counts of both algorithms must agree, and every emitted link must
revalidate.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import oracle
from ._engine import VALID, sweep_targets
from .diagnostics import InvariantChecker
from .geometry import CircleKernel, InternalGeometryError, Metric, SquareKernel, l1_to_linf

DEFAULT_METRICS = (Metric.L2, Metric.L1, Metric.LINF)


@dataclass
class VerifyConfig:
    count: int = 1000
    max_n: int = 30
    coord_range: float = 10.0
    delta_range: tuple[float, float] = (0.1, 3.0)
    metrics: tuple[Metric, ...] = DEFAULT_METRICS
    seed: int = 0
    strict: bool = False          # attach the invariant checker to every sweep
    ray_samples: int = 360
    workers: int = 1
    style: str = "uniform"        # uniform | walk | cluster


@dataclass
class VerifyReport:
    checked: int = 0
    sweeps: int = 0
    resamples: int = 0
    max_wavefront_size: int = 0
    max_segment_count: int = 0
    wall_s: float = 0.0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


# ---------------------------------------------------------------------------
# instance generation with criticality margins
# ---------------------------------------------------------------------------


def _pairwise(pts: np.ndarray, metric: Metric) -> np.ndarray:
    d = pts[:, None, :] - pts[None, :, :]
    if metric is Metric.L2:
        return np.hypot(d[..., 0], d[..., 1])
    if metric is Metric.L1:
        return np.abs(d[..., 0]) + np.abs(d[..., 1])
    return np.maximum(np.abs(d[..., 0]), np.abs(d[..., 1]))


def _seg_point_dists(pts: np.ndarray, metric: Metric) -> np.ndarray:
    """dist[a, b, c] = metric distance from vertex c to segment (a, b)."""
    P = pts
    if metric is Metric.L1:
        P = np.column_stack((pts[:, 0] + pts[:, 1], pts[:, 1] - pts[:, 0]))
    A = P[:, None, None, :]
    B = P[None, :, None, :]
    C = P[None, None, :, :]
    V = B - A                     # (a, b, 1, 2)
    X0 = A - C                    # (a, 1, c, 2)
    if metric is Metric.L2:
        vv = (V * V).sum(-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = -(X0 * V).sum(-1) / vv
        t = np.where(vv == 0.0, 0.0, np.clip(t, 0.0, 1.0))
        E = X0 + t[..., None] * V
        return np.hypot(E[..., 0], E[..., 1])
    x0 = X0[..., 0]
    y0 = X0[..., 1]
    vx = V[..., 0]
    vy = V[..., 1]
    cands = [np.zeros_like(x0 + vx), np.ones_like(x0 + vx)]
    with np.errstate(divide="ignore", invalid="ignore"):
        for num, den in ((-x0, vx), (-y0, vy),
                         (-(x0 - y0), vx - vy), (-(x0 + y0), vx + vy)):
            t = num / (den + np.zeros_like(num))
            cands.append(np.where(np.isfinite(t), np.clip(t, 0.0, 1.0), 0.0))
    best = None
    for t in cands:
        val = np.maximum(np.abs(x0 + t * vx), np.abs(y0 + t * vy))
        best = val if best is None else np.minimum(best, val)
    return best


def instance_margin(pts: np.ndarray, delta: float,
                    metrics: Sequence[Metric] = DEFAULT_METRICS) -> float:
    """Smallest |critical distance - delta| (and vertex separation) of the instance."""
    n = len(pts)
    margin = np.inf
    ii = np.arange(n)
    between = (ii[:, None, None] < ii[None, None, :]) & (ii[None, None, :] < ii[None, :, None])
    for m in metrics:
        pw = _pairwise(pts, m)
        off = pw[~np.eye(n, dtype=bool)]
        if off.size:
            margin = min(margin, float(np.min(np.abs(off - delta))), float(np.min(off)))
        if n >= 3:
            sd = _seg_point_dists(pts, m)
            rel = np.abs(sd - delta)[between]
            if rel.size:
                margin = min(margin, float(np.min(rel)))
    return margin


def _draw(rng, cfg: VerifyConfig):
    n = int(rng.integers(2, cfg.max_n + 1))
    delta = float(rng.uniform(*cfg.delta_range))
    if cfg.style == "walk":
        # slow wander: steps comparable to delta, so circles keep interacting
        steps = rng.normal(0.0, 0.6 * delta, (n, 2))
        pts = np.cumsum(steps, axis=0)
    elif cfg.style == "cluster":
        k = max(1, n // 6)
        centers = rng.uniform(0.0, cfg.coord_range, (k, 2))
        pts = centers[rng.integers(0, k, n)] + rng.normal(0.0, delta, (n, 2))
    else:
        pts = rng.uniform(0.0, cfg.coord_range, (n, 2))
    return pts, delta


def random_instance(cfg: VerifyConfig, idx: int):
    """Seeded random polyline with stable combinatorics; returns (pts, delta, resamples)."""
    resamples = 0
    for attempt in range(200):
        rng = np.random.default_rng([cfg.seed, idx, attempt])
        pts, delta = _draw(rng, cfg)
        if instance_margin(pts, delta, cfg.metrics) > 1e-6 * delta:
            return pts, delta, resamples
        resamples += 1
    raise RuntimeError(f"could not generate a clean instance for index {idx}")


# ---------------------------------------------------------------------------
# per-instance differential check
# ---------------------------------------------------------------------------


def _sweep_sets(pts_list, delta: float, metric: Metric, strict: bool,
                ray_samples: int):
    """Wavefront shortcut targets per start vertex, plus sweep statistics."""
    if metric is Metric.L2:
        work = pts_list
        kern = CircleKernel
    else:
        work = l1_to_linf(pts_list) if metric is Metric.L1 else pts_list
        kern = SquareKernel
    n = len(work)
    sets = []
    max_arcs = 0
    max_segs = 0
    for i in range(n - 1):
        checker = InvariantChecker(ray_samples=ray_samples) if strict else None
        targets, sw = sweep_targets(work, i, delta, kern, checker=checker)
        sets.append(targets)
        max_arcs = max(max_arcs, sw.stats.max_arc_count)
        max_segs = max(max_segs, sw.stats.max_segment_count)
    return sets, max_arcs, max_segs


def check_instance(pts, delta: float, metric: Metric, strict: bool = False,
                   ray_samples: int = 360):
    """Compare sweeps against the oracle; returns (problems, max_arcs, max_segs)."""
    pts_list = [(float(p[0]), float(p[1])) for p in pts]
    coords = np.asarray(pts_list)
    n = len(pts_list)
    problems = []
    M = oracle.shortcut_matrix_dense(coords, delta, metric)
    try:
        sets, max_arcs, max_segs = _sweep_sets(pts_list, delta, metric, strict, ray_samples)
    except InternalGeometryError as exc:
        return [{"kind": "invariant", "detail": str(exc)}], 0, 0
    d_o = [0] * n
    d_w = [0] * n
    par_w = [-1] * n
    for i in range(n - 2, -1, -1):
        otargets = np.nonzero(M[i])[0].tolist()
        wtargets = sets[i]
        if otargets != wtargets:
            problems.append({
                "kind": "shortcut_set", "i": i,
                "oracle": otargets, "wavefront": wtargets,
            })
        d_o[i] = 1 + min(d_o[j] for j in otargets)
        best = None
        for j in wtargets:
            if best is None or d_w[j] + 1 < best:
                best = d_w[j] + 1
                par_w[i] = j
        d_w[i] = best if best is not None else d_w[i + 1] + 1
    if d_o[0] != d_w[0]:
        problems.append({"kind": "link_count", "oracle": d_o[0], "wavefront": d_w[0]})
    # revalidate the emitted wavefront path link by link
    at = 0
    while at != n - 1 and par_w[at] != -1:
        j = par_w[at]
        if not oracle.shortcut_is_valid(pts_list, at, j, delta, metric):
            problems.append({"kind": "invalid_link", "i": at, "j": j})
        at = j
    return problems, max_arcs, max_segs


# ---------------------------------------------------------------------------
# driver (optionally multi-process)
# ---------------------------------------------------------------------------


def _run_range(args):
    cfg, lo, hi = args
    part = VerifyReport()
    for idx in range(lo, hi):
        pts, delta, resamples = random_instance(cfg, idx)
        part.resamples += resamples
        for metric in cfg.metrics:
            problems, max_arcs, max_segs = check_instance(
                pts, delta, metric, strict=cfg.strict, ray_samples=cfg.ray_samples)
            part.checked += 1
            part.sweeps += len(pts) - 1
            part.max_wavefront_size = max(part.max_wavefront_size, max_arcs)
            part.max_segment_count = max(part.max_segment_count, max_segs)
            for p in problems:
                p["instance"] = idx
                p["metric"] = metric.value
                p["delta"] = delta
                p["points"] = [tuple(q) for q in pts]
                part.mismatches.append(p)
    return part


def run_verify(cfg: VerifyConfig) -> VerifyReport:
    t0 = time.perf_counter()
    report = VerifyReport()
    if cfg.workers <= 1:
        parts = [_run_range((cfg, 0, cfg.count))]
    else:
        chunk = max(1, cfg.count // (cfg.workers * 8))
        ranges = [(cfg, lo, min(lo + chunk, cfg.count))
                  for lo in range(0, cfg.count, chunk)]
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            parts = list(ex.map(_run_range, ranges))
    for p in parts:
        report.checked += p.checked
        report.sweeps += p.sweeps
        report.resamples += p.resamples
        report.max_wavefront_size = max(report.max_wavefront_size, p.max_wavefront_size)
        report.max_segment_count = max(report.max_segment_count, p.max_segment_count)
        report.mismatches.extend(p.mismatches)
    report.wall_s = time.perf_counter() - t0
    return report
