"""Planar primitives for unit circles of radius delta under the L1, L2 and Linf norms.

Everything here works on plain float pairs.  A "unit circle" of radius delta is
a Euclidean disk for L2 and an axis-aligned square of side 2*delta for Linf.
L1 is reduced to Linf by the exact change of coordinates (x, y) -> (x+y, y-x),
under which the L1 ball becomes the Linf ball of the same radius; only one
square code path exists.

Coordinates are double precision.  Coincidence decisions use the relative
tolerance EPS_REL; there is no exact arithmetic.  Callers that need clean
combinatorics (test generators) are expected to keep critical distances away
from delta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

EPS_REL = 1e-9      # relative tolerance for coincidence tests
EPS_ANGLE = 1e-12   # closed-wedge slack in radians

_TAU = 2.0 * math.pi


class Metric(str, Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


class GeometryError(ValueError):
    """Invalid geometric input."""


class CoincidentCirclesError(GeometryError):
    """Two unit circles share a center; their boundary intersection is not pointwise."""


class InternalGeometryError(AssertionError):
    """A structural invariant that should be unreachable was violated."""


Point = tuple[float, float]


def lp_distance(p: Sequence[float], q: Sequence[float], metric: Metric = Metric.L2) -> float:
    """Distance between two points under the given norm."""
    dx = abs(p[0] - q[0])
    dy = abs(p[1] - q[1])
    if metric is Metric.L2:
        return math.hypot(dx, dy)
    if metric is Metric.L1:
        return dx + dy
    return dx if dx > dy else dy


def l1_to_linf_xy(x: float, y: float) -> Point:
    """Map a point so that L1 distances in the source equal Linf distances in the image."""
    return (x + y, y - x)


def l1_to_linf(points: Sequence[Sequence[float]]) -> list[Point]:
    return [(p[0] + p[1], p[1] - p[0]) for p in points]


def _wrap_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    a = math.fmod(a, _TAU)
    if a <= -math.pi:
        a += _TAU
    elif a > math.pi:
        a -= _TAU
    return a


@dataclass(frozen=True)
class AngularFrame:
    """A rotated angular coordinate system anchored at ``apex``.

    ``key(p)`` is atan2 measured from the apex minus ``rotation``, wrapped to
    (-pi, pi].  A sweep picks the rotation so every direction it will ever
    compare lands in (0, pi); keys are then a monotone, wrap-free ordering.
    """

    apex: Point
    rotation: float

    @classmethod
    def toward(cls, apex: Sequence[float], target: Sequence[float]) -> "AngularFrame":
        """Frame in which the direction apex->target gets key pi/2 (maps to +y)."""
        ax, ay = apex
        ang = math.atan2(target[1] - ay, target[0] - ax)
        return cls((ax, ay), ang - 0.5 * math.pi)

    def key(self, p: Sequence[float]) -> float:
        dx = p[0] - self.apex[0]
        dy = p[1] - self.apex[1]
        if dx == 0.0 and dy == 0.0:
            raise GeometryError("angle of the apex itself is undefined")
        return _wrap_angle(math.atan2(dy, dx) - self.rotation)

    def unit(self, key: float) -> Point:
        """World-coordinates unit vector of the ray with the given key."""
        a = key + self.rotation
        return (math.cos(a), math.sin(a))


def angle_in_frame(frame: AngularFrame, p: Sequence[float]) -> float:
    """Angle of the apex->p direction in the rotated frame (radians)."""
    return frame.key(p)


@dataclass(frozen=True)
class Ray:
    """Ray from ``origin`` with direction given by a frame ``angle`` key."""

    origin: Point
    angle: float
    unit: Point

    @classmethod
    def from_frame(cls, frame: AngularFrame, key: float) -> "Ray":
        return cls(frame.apex, key, frame.unit(key))


# ---------------------------------------------------------------------------
# Metric kernels: the few shape primitives the sweep needs, one namespace per
# unit-circle shape.  All take unpacked floats; hot paths avoid tuples where
# cheap to do so.
# ---------------------------------------------------------------------------

_COINCIDENT = "coincident"


class CircleKernel:
    """Euclidean disks of radius delta."""

    metric = Metric.L2

    @staticmethod
    def distance(ax: float, ay: float, bx: float, by: float) -> float:
        return math.hypot(bx - ax, by - ay)

    @staticmethod
    def contains(cx: float, cy: float, px: float, py: float, delta: float, slack: float) -> bool:
        return math.hypot(px - cx, py - cy) <= delta * (1.0 + slack)

    @staticmethod
    def ray_hits(ax: float, ay: float, ux: float, uy: float,
                 cx: float, cy: float, delta: float) -> tuple[float, ...]:
        """Intersection parameters t>=0 of ray apex+t*u with the circle boundary.

        Returns () for a miss, (t_exit,) when the apex is inside, and
        (t_near, t_far) otherwise; a grazing ray yields t_near == t_far.
        """
        ox = cx - ax
        oy = cy - ay
        m = ux * ox + uy * oy
        dd = ox * ox + oy * oy
        rr = delta * delta
        if dd <= rr:
            # apex inside or on the boundary: single exit point
            disc = m * m - dd + rr
            if disc < 0.0:
                disc = 0.0
            return (m + math.sqrt(disc),)
        disc = m * m - dd + rr
        if disc < 0.0:
            if disc >= -1e-12 * (dd + rr) and m > 0.0:
                return (m, m)  # numerically grazing tangent
            return ()
        root = math.sqrt(disc)
        t1 = m - root
        t2 = m + root
        if t2 < 0.0:
            return ()
        if t1 < 0.0:
            return (t2,)
        return (t1, t2)

    @staticmethod
    def tangent_points(ax: float, ay: float, cx: float, cy: float,
                       delta: float) -> Optional[tuple[Point, ...]]:
        """Boundary points where the tangents from the apex touch, or None if apex inside."""
        ox = cx - ax
        oy = cy - ay
        dd = ox * ox + oy * oy
        d = math.sqrt(dd)
        if d <= delta:
            return None
        ll = dd - delta * delta
        if ll < 0.0:
            ll = 0.0
        tlen = math.sqrt(ll)           # tangent length
        c = ll / dd                    # cos(beta) * tlen / d  folded below
        s = tlen * delta / dd          # sin(beta) scaled
        # rotate (ox, oy) by +-beta and scale to tangent length
        p1 = (ax + c * ox - s * oy, ay + s * ox + c * oy)
        p2 = (ax + c * ox + s * oy, ay - s * ox + c * oy)
        return (p1, p2)

    @staticmethod
    def boundary_intersections(c1x: float, c1y: float, c2x: float, c2y: float,
                               delta: float):
        """Boundary-boundary intersection points of two radius-delta circles.

        Returns a tuple of 0-2 points, or the string marker "coincident" when
        the centers coincide within tolerance.
        """
        dx = c2x - c1x
        dy = c2y - c1y
        dd = dx * dx + dy * dy
        if dd <= (EPS_REL * delta) ** 2:
            return _COINCIDENT
        d = math.sqrt(dd)
        if d > 2.0 * delta:
            if d <= 2.0 * delta * (1.0 + EPS_REL):
                return ((c1x + 0.5 * dx, c1y + 0.5 * dy),)
            return ()
        hh = delta * delta - 0.25 * dd
        if hh <= 0.0:
            return ((c1x + 0.5 * dx, c1y + 0.5 * dy),)
        h = math.sqrt(hh) / d
        mx = c1x + 0.5 * dx
        my = c1y + 0.5 * dy
        return ((mx - h * dy, my + h * dx), (mx + h * dy, my - h * dx))

    @staticmethod
    def on_near_side(ax: float, ay: float, cx: float, cy: float,
                     px: float, py: float, delta: float) -> bool:
        """True if boundary point p lies on the bottom arc of the circle as seen from the apex."""
        return (px - ax) * (px - cx) + (py - ay) * (py - cy) <= EPS_REL * delta * delta

    @staticmethod
    def wave_path(ax: float, ay: float, cx: float, cy: float, delta: float,
                  p_start: Point, p_end: Point) -> tuple[Point, ...]:
        """Polyline-ish description of the bottom arc piece (endpoints only for circles)."""
        return (p_start, p_end)

    @staticmethod
    def graze_fallback(ax: float, ay: float, ux: float, uy: float,
                       cx: float, cy: float, delta: float) -> float:
        """Touch parameter for a ray that should graze the circle but missed numerically."""
        return ux * (cx - ax) + uy * (cy - ay)


class SquareKernel:
    """Axis-aligned squares of half-side delta (the Linf ball; L1 via coordinate change)."""

    metric = Metric.LINF

    @staticmethod
    def distance(ax: float, ay: float, bx: float, by: float) -> float:
        dx = abs(bx - ax)
        dy = abs(by - ay)
        return dx if dx > dy else dy

    @staticmethod
    def contains(cx: float, cy: float, px: float, py: float, delta: float, slack: float) -> bool:
        lim = delta * (1.0 + slack)
        return abs(px - cx) <= lim and abs(py - cy) <= lim

    @staticmethod
    def ray_hits(ax: float, ay: float, ux: float, uy: float,
                 cx: float, cy: float, delta: float) -> tuple[float, ...]:
        tol = EPS_REL * delta
        lo = -math.inf
        hi = math.inf
        for a, u, c in ((ax, ux, cx), (ay, uy, cy)):
            if abs(u) < 1e-300:
                if abs(a - c) > delta + tol:
                    return ()
                continue
            t1 = (c - delta - a) / u
            t2 = (c + delta - a) / u
            if t1 > t2:
                t1, t2 = t2, t1
            if t1 > lo:
                lo = t1
            if t2 < hi:
                hi = t2
        if lo > hi:
            if lo - hi <= tol / max(abs(ux), abs(uy)):
                lo = hi = 0.5 * (lo + hi)  # corner graze
            else:
                return ()
        if hi < 0.0:
            return ()
        if lo < 0.0:
            return (hi,)
        return (lo, hi)

    @staticmethod
    def tangent_points(ax: float, ay: float, cx: float, cy: float,
                       delta: float) -> Optional[tuple[Point, ...]]:
        """The four corners; the angular extremes among them are the tangent corners."""
        dx = abs(cx - ax)
        dy = abs(cy - ay)
        if max(dx, dy) <= delta:
            return None
        return (
            (cx - delta, cy - delta),
            (cx - delta, cy + delta),
            (cx + delta, cy - delta),
            (cx + delta, cy + delta),
        )

    @staticmethod
    def boundary_intersections(c1x: float, c1y: float, c2x: float, c2y: float,
                               delta: float):
        tol = EPS_REL * delta
        if abs(c2x - c1x) <= tol and abs(c2y - c1y) <= tol:
            return _COINCIDENT
        xlo, plo_x = (c1x - delta, 1) if c1x >= c2x else (c2x - delta, 2)
        xhi, phi_x = (c1x + delta, 1) if c1x <= c2x else (c2x + delta, 2)
        ylo, plo_y = (c1y - delta, 1) if c1y >= c2y else (c2y - delta, 2)
        yhi, phi_y = (c1y + delta, 1) if c1y <= c2y else (c2y + delta, 2)
        if xlo > xhi + tol or ylo > yhi + tol:
            return ()
        xtie = abs(c1x - c2x) <= tol
        ytie = abs(c1y - c2y) <= tol
        pts = []
        for x, px in ((xlo, plo_x), (xhi, phi_x)):
            for y, py in ((ylo, plo_y), (yhi, phi_y)):
                on1 = px == 1 or py == 1 or xtie or ytie
                on2 = px == 2 or py == 2 or xtie or ytie
                mixed = (px != py) or xtie or ytie
                if on1 and on2 and mixed:
                    pts.append((x, y))
        # dedupe
        out: list[Point] = []
        for p in pts:
            if not any(abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol for q in out):
                out.append(p)
        if len(out) > 2:
            # shared-edge overlap: keep the two extreme points of the shared segment
            best = None
            pair = None
            for i in range(len(out)):
                for j in range(i + 1, len(out)):
                    d = abs(out[i][0] - out[j][0]) + abs(out[i][1] - out[j][1])
                    if best is None or d > best:
                        best = d
                        pair = (out[i], out[j])
            out = list(pair)
        return tuple(out)

    @staticmethod
    def on_near_side(ax: float, ay: float, cx: float, cy: float,
                     px: float, py: float, delta: float) -> bool:
        dx = px - ax
        dy = py - ay
        dist = math.hypot(dx, dy)
        if dist <= EPS_REL * delta:
            return False
        hits = SquareKernel.ray_hits(ax, ay, dx / dist, dy / dist, cx, cy, delta)
        if not hits:
            return False
        return abs(hits[0] - dist) <= 1e-6 * (delta + dist)

    @staticmethod
    def wave_path(ax: float, ay: float, cx: float, cy: float, delta: float,
                  p_start: Point, p_end: Point) -> tuple[Point, ...]:
        """Walk the visible boundary from p_start to p_end (at most one corner between)."""
        tol = 1e-7 * delta

        def sides(px: float, py: float) -> set[str]:
            s = set()
            if abs(px - (cx - delta)) <= tol:
                s.add("W")
            if abs(px - (cx + delta)) <= tol:
                s.add("E")
            if abs(py - (cy - delta)) <= tol:
                s.add("S")
            if abs(py - (cy + delta)) <= tol:
                s.add("N")
            return s

        # points on a common visible side need no corner between them
        s1 = sides(*p_start)
        s2 = sides(*p_end)
        if s1 & s2:
            return (p_start, p_end)
        corner_x = cx - delta if ax < cx else cx + delta
        corner_y = cy - delta if ay < cy else cy + delta
        corner = (corner_x, corner_y)
        if (abs(corner[0] - p_start[0]) <= tol and abs(corner[1] - p_start[1]) <= tol) or (
            abs(corner[0] - p_end[0]) <= tol and abs(corner[1] - p_end[1]) <= tol
        ):
            return (p_start, p_end)
        return (p_start, corner, p_end)

    @staticmethod
    def graze_fallback(ax: float, ay: float, ux: float, uy: float,
                       cx: float, cy: float, delta: float) -> float:
        """Touch parameter for a ray grazing the square: project the nearest corner."""
        best_t = 0.0
        best_err = math.inf
        for sx in (-delta, delta):
            for sy in (-delta, delta):
                wx = cx + sx - ax
                wy = cy + sy - ay
                err = abs(ux * wy - uy * wx)
                if err < best_err:
                    best_err = err
                    best_t = ux * wx + uy * wy
        return best_t


def kernel_for(metric: Metric):
    """Kernel implementing the unit-circle shape for a metric (L1 shares the square kernel)."""
    return CircleKernel if metric is Metric.L2 else SquareKernel


# ---------------------------------------------------------------------------
# Public operations in frame terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitCircle:
    center: Point
    radius: float
    metric: Metric


@dataclass(frozen=True)
class LocalWedge:
    """Tangent cone of one unit circle as seen from an apex, or the whole plane."""

    whole_plane: bool
    apex: Point
    center: Point
    radius: float
    metric: Metric
    left_ray: Optional[Ray] = None
    right_ray: Optional[Ray] = None
    left_touch: Optional[Point] = None
    right_touch: Optional[Point] = None


@dataclass(frozen=True)
class WaveArc:
    """Bottom arc of a unit circle between the tangent touch points (empty if whole plane)."""

    empty: bool
    center: Point
    radius: float
    metric: Metric
    start: Optional[Point] = None   # at the frame-right tangent
    end: Optional[Point] = None     # at the frame-left tangent
    path: tuple[Point, ...] = ()


def circle_circle_intersections(a: UnitCircle, b: UnitCircle) -> tuple[Point, ...]:
    """Boundary intersection points of two equal-radius unit circles.

    A touching point is returned once; overlapping square edges return the two
    extreme points of the shared segment.  Coincident centers raise.
    """
    if a.radius != b.radius or a.metric != b.metric:
        raise GeometryError("unit circles must share radius and metric")
    if a.metric is Metric.L1:
        ta = l1_to_linf_xy(*a.center)
        tb = l1_to_linf_xy(*b.center)
        res = SquareKernel.boundary_intersections(ta[0], ta[1], tb[0], tb[1], a.radius)
        if res == _COINCIDENT:
            raise CoincidentCirclesError("coincident unit circles")
        # map back: inverse of (x,y)->(x+y, y-x) is (u,v)->((u-v)/2, (u+v)/2)
        return tuple(((u - v) / 2.0, (u + v) / 2.0) for (u, v) in res)
    kern = kernel_for(a.metric)
    res = kern.boundary_intersections(a.center[0], a.center[1], b.center[0], b.center[1], a.radius)
    if res == _COINCIDENT:
        raise CoincidentCirclesError("coincident unit circles")
    return tuple(res)


def ray_circle_intersections(ray: Ray, c: UnitCircle) -> tuple[Point, ...]:
    """Intersections of a ray with a unit-circle boundary, ordered near to far."""
    if c.metric is Metric.L1:
        raise GeometryError("ray queries run in the Linf-transformed plane for L1")
    kern = kernel_for(c.metric)
    ts = kern.ray_hits(ray.origin[0], ray.origin[1], ray.unit[0], ray.unit[1],
                       c.center[0], c.center[1], c.radius)
    ox, oy = ray.origin
    ux, uy = ray.unit
    return tuple((ox + t * ux, oy + t * uy) for t in ts)


def local_wedge(apex: Sequence[float], center: Sequence[float], delta: float,
                metric: Metric, frame: AngularFrame) -> LocalWedge:
    """Tangent cone of the unit circle around ``center`` from ``apex``.

    Whole-plane marker when the apex lies inside (or on) the circle.
    """
    if metric is Metric.L1:
        raise GeometryError("build L1 wedges in the Linf-transformed plane")
    kern = kernel_for(metric)
    ax, ay = apex
    pts = kern.tangent_points(ax, ay, center[0], center[1], delta)
    apexp = (ax, ay)
    centp = (center[0], center[1])
    if pts is None:
        return LocalWedge(True, apexp, centp, delta, metric)
    # order by offset from the center direction so a cone pointing near the
    # frame's wrap seam still comes out contiguous
    ck = frame.key(centp)
    keyed = sorted((_wrap_angle(frame.key(p) - ck), p) for p in pts)
    off_r, p_r = keyed[0]
    off_l, p_l = keyed[-1]
    k_r = ck + off_r
    k_l = ck + off_l
    return LocalWedge(
        False, apexp, centp, delta, metric,
        left_ray=Ray(apexp, k_l, _unit_to(apexp, p_l)),
        right_ray=Ray(apexp, k_r, _unit_to(apexp, p_r)),
        left_touch=p_l,
        right_touch=p_r,
    )


def _unit_to(origin: Point, p: Point) -> Point:
    dx = p[0] - origin[0]
    dy = p[1] - origin[1]
    n = math.hypot(dx, dy)
    return (dx / n, dy / n)


def wave_of(w: LocalWedge) -> WaveArc:
    """Bottom arc of the wedge's circle between its touch points (empty for whole plane)."""
    if w.whole_plane:
        return WaveArc(True, w.center, w.radius, w.metric)
    kern = kernel_for(w.metric)
    path = kern.wave_path(w.apex[0], w.apex[1], w.center[0], w.center[1], w.radius,
                          w.right_touch, w.left_touch)
    return WaveArc(False, w.center, w.radius, w.metric,
                   start=w.right_touch, end=w.left_touch, path=tuple(path))


def segment_point_distance(p: Sequence[float], a: Sequence[float], b: Sequence[float],
                           metric: Metric = Metric.L2) -> float:
    """min over t in [0,1] of ||a + t*(b-a) - p|| under the metric."""
    x0 = a[0] - p[0]
    y0 = a[1] - p[1]
    vx = b[0] - a[0]
    vy = b[1] - a[1]
    if metric is Metric.L2:
        vv = vx * vx + vy * vy
        if vv == 0.0:
            return math.hypot(x0, y0)
        t = -(x0 * vx + y0 * vy) / vv
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        return math.hypot(x0 + t * vx, y0 + t * vy)
    # piecewise linear: minimum occurs at a kink or an endpoint
    cands = [0.0, 1.0]
    for num, den in ((-x0, vx), (-y0, vy)):
        if den != 0.0:
            t = num / den
            if 0.0 < t < 1.0:
                cands.append(t)
    if metric is Metric.LINF:
        den = vx - vy
        if den != 0.0:
            t = (y0 - x0) / den
            if 0.0 < t < 1.0:
                cands.append(t)
        den = vx + vy
        if den != 0.0:
            t = -(x0 + y0) / den
            if 0.0 < t < 1.0:
                cands.append(t)
        return min(max(abs(x0 + t * vx), abs(y0 + t * vy)) for t in cands)
    return min(abs(x0 + t * vx) + abs(y0 + t * vy) for t in cands)
