"""Wedge/wavefront sweep from a fixed start vertex.

One sweep walks the polyline once, maintaining

  * a *wedge*: the angular region at the start vertex that can still contain
    valid shortcut endpoints, stored as a pair of ray keys (kr < kl) in a
    rotated frame chosen so no relevant angle wraps;
  * a *wavefront*: an angle-ordered sequence of arcs, each a piece of the
    bottom (apex-facing) boundary of one vertex's unit circle.  The arcs tile
    the wedge span exactly; the valid region is everything inside the wedge on
    or beyond the wavefront.

Each step intersects the wedge with the new circle's tangent cone, clips the
wavefront, classifies the boundary pattern on both rays (T = wavefront beyond
the circle, M = inside it, B = short of it), and applies the matching surgery.
Arcs are stored in a plain list ordered by start key together with a parallel
key list; every surgery is a contiguous splice, and each arc is removed at
most once per sweep, so the list walkers are amortized.

The engine is metric-generic: it only talks to a kernel (Euclidean disk or
axis-aligned square) through a handful of shape primitives.  Vertices whose
circle contains the apex get the whole plane as their cone but still run the
narrowing step, which is what enforces the Frechet ordering (skipping it
admits shortcuts that visit vertices out of order).
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

from .geometry import EPS_ANGLE, EPS_REL, InternalGeometryError, _wrap_angle

_PI = math.pi
_TAU = 2.0 * math.pi
_KEY_SLACK = 1e-9          # radians: key-span filters and closed-wedge tests
_COINC = "coincident"


class Location(Enum):
    OUTSIDE_WEDGE = "outside_wedge"
    BELOW_WAVEFRONT = "below_wavefront"
    IN_VALID_REGION = "in_valid_region"


OUTSIDE = Location.OUTSIDE_WEDGE
BELOW = Location.BELOW_WAVEFRONT
VALID = Location.IN_VALID_REGION

# step case labels (TB/BT are provably unreachable and raise)
CASES = ("PREFIX", "INIT", "WEDGE_EMPTY", "TT_EMPTY",
         "TT", "TM", "MT", "MM", "MB", "BM", "BB")


class SweepAbortedError(RuntimeError):
    """step() called on a sweep whose valid region is already empty."""


class Arc:
    """A contiguous piece of the bottom arc of one unit circle, keyed by angle."""

    __slots__ = ("k0", "k1", "x0", "y0", "x1", "y1", "cx", "cy", "idx", "ck")

    def __init__(self, k0, k1, x0, y0, x1, y1, cx, cy, idx, ck):
        self.k0 = k0
        self.k1 = k1
        self.x0 = x0
        self.y0 = y0
        self.x1 = x1
        self.y1 = y1
        self.cx = cx
        self.cy = cy
        self.idx = idx
        self.ck = ck

    @property
    def start_point(self):
        return (self.x0, self.y0)

    @property
    def end_point(self):
        return (self.x1, self.y1)

    def __repr__(self):
        return (f"Arc(j={self.idx}, k=[{self.k0:.6f},{self.k1:.6f}], "
                f"c=({self.cx:.4f},{self.cy:.4f}))")


@dataclass
class StepReport:
    case: str
    removed_arcs: int = 0
    shortcut_candidate_checked: bool = False


@dataclass
class SweepStats:
    max_arc_count: int = 0
    max_segment_count: int = 0
    inserted: int = 0
    removed: int = 0
    steps: int = 0
    case_histogram: dict = field(default_factory=dict)

    def bump(self, case: str):
        h = self.case_histogram
        h[case] = h.get(case, 0) + 1


class Sweep:
    """Mutable per-start-vertex sweep state (single-threaded during its sweep)."""

    __slots__ = ("pts", "i", "n", "delta", "kern", "ax", "ay", "rot",
                 "kr", "kl", "ur", "ul", "arcs", "keys", "aborted", "stats",
                 "strict", "checker", "svg_sink", "_loc_cache")

    def __init__(self, pts: Sequence[Sequence[float]], i: int, delta: float, kern,
                 strict: bool = False, checker=None,
                 svg_sink: Optional[Callable[[int, int, str], None]] = None):
        self.pts = pts
        self.i = i
        self.n = len(pts)
        self.delta = float(delta)
        self.kern = kern
        self.ax, self.ay = float(pts[i][0]), float(pts[i][1])
        self.rot = None          # frame rotation, fixed at the first proper step
        self.kr = self.kl = None  # wedge ray keys (None = whole plane)
        self.ur = self.ul = None  # wedge ray unit vectors
        self.arcs: list[Arc] = []
        self.keys: list[float] = []
        self.aborted = False
        self.stats = SweepStats()
        self.strict = strict
        self.checker = checker
        self.svg_sink = svg_sink
        self._loc_cache = None

    # -- frame ------------------------------------------------------------

    def _init_frame(self, px: float, py: float):
        self.rot = math.atan2(py - self.ay, px - self.ax) - 0.5 * _PI

    def _key(self, px: float, py: float) -> float:
        a = math.atan2(py - self.ay, px - self.ax) - self.rot
        if a <= -_PI:
            a += _TAU
        elif a > _PI:
            a -= _TAU
        return a

    def _center_key(self, px: float, py: float) -> float:
        """Key of a circle center, unwrapped into (-pi/2, 3pi/2].

        Centers sit within pi/2 of any ray meeting their circle, and every
        wedge ray has a key in (0, pi), so this branch is the unique one in
        which center keys order consistently with the arcs.
        """
        k = self._key(px, py)
        return k if k > -0.5 * _PI else k + _TAU

    def _unit_to(self, px: float, py: float):
        dx = px - self.ax
        dy = py - self.ay
        d = math.hypot(dx, dy)
        return (dx / d, dy / d)

    # -- queries ----------------------------------------------------------

    def locate(self, p: Sequence[float]) -> Location:
        """Classify a point against the current wedge and wavefront."""
        if self.aborted:
            raise SweepAbortedError("sweep already aborted")
        px, py = float(p[0]), float(p[1])
        dx = px - self.ax
        dy = py - self.ay
        if dx == 0.0 and dy == 0.0:
            return VALID if not self.arcs else BELOW
        if not self.arcs:
            return VALID
        k = self._key(px, py)
        if k < self.kr - _KEY_SLACK or k > self.kl + _KEY_SLACK:
            return OUTSIDE
        dist = math.hypot(dx, dy)
        w = self._front_dist_at(k, dx / dist, dy / dist)
        self._loc_cache = (px, py, k, dist)
        return VALID if dist >= w - EPS_REL * (self.delta + dist) else BELOW

    def locate_vertex(self, j: int) -> Location:
        return self.locate(self.pts[j])

    def _front_dist_at(self, k: float, ux: float, uy: float) -> float:
        """Distance from the apex to the wavefront along the ray with key k."""
        arcs = self.arcs
        pos = bisect_right(self.keys, k) - 1
        if pos < 0:
            pos = 0
        for cand in (pos, pos - 1, pos + 1):
            if 0 <= cand < len(arcs):
                a = arcs[cand]
                if a.k0 - _KEY_SLACK <= k <= a.k1 + _KEY_SLACK:
                    ts = self.kern.ray_hits(self.ax, self.ay, ux, uy, a.cx, a.cy, self.delta)
                    if ts:
                        return ts[0]
        raise InternalGeometryError(f"no wavefront arc covers key {k!r}")

    # -- step -------------------------------------------------------------

    def step(self, j: int) -> StepReport:
        """Process vertex j: narrow the wedge, update the wavefront."""
        if self.aborted:
            raise SweepAbortedError("sweep already aborted")
        pts = self.pts
        px, py = float(pts[j][0]), float(pts[j][1])
        delta = self.delta
        kern = self.kern
        st = self.stats
        st.steps += 1
        d = kern.distance(self.ax, self.ay, px, py)
        if d <= delta:
            if not self.arcs:
                report = StepReport("PREFIX")      # within delta before any constraint
            else:
                report = self._step_inside(j, px, py)
        else:
            report = self._step_proper(j, px, py)
        st.bump(report.case)
        if len(self.arcs) > st.max_arc_count:
            st.max_arc_count = len(self.arcs)
        if self.kern.metric.value != "l2":
            segs = self._segment_count()
            if segs > st.max_segment_count:
                st.max_segment_count = segs
        if self.checker is not None and not self.aborted:
            self.checker.after_step(self, j, report)
        if self.svg_sink is not None:
            from . import svgdebug
            self.svg_sink(self.i, j, svgdebug.render_frame(self, j, report.case))
        return report

    def _segment_count(self) -> int:
        if self.kern.metric.value == "l2":
            return len(self.arcs)
        total = 0
        for a in self.arcs:
            path = self.kern.wave_path(self.ax, self.ay, a.cx, a.cy, self.delta,
                                       (a.x0, a.y0), (a.x1, a.y1))
            total += max(1, len(path) - 1)
        return total

    def _step_proper(self, j: int, px: float, py: float) -> StepReport:
        kern = self.kern
        delta = self.delta
        corners = kern.tangent_points(self.ax, self.ay, px, py, delta)
        if self.rot is None:
            self._init_frame(px, py)
        ck = self._center_key(px, py)
        off_r = off_l = 0.0
        tp_r = tp_l = None
        for p in corners:
            off = _wrap_angle(self._key(p[0], p[1]) - ck)
            if tp_r is None or off < off_r:
                off_r, tp_r = off, p
            if tp_l is None or off > off_l:
                off_l, tp_l = off, p
        if not self.arcs:
            # first proper step: re-center the frame on the cone midpoint, so
            # the whole sweep (every later wedge is a subset) lives in keys
            # well inside (0, pi) and never straddles the wrap seam
            shift = ck + 0.5 * (off_r + off_l) - 0.5 * _PI
            self.rot += shift
            ck -= shift
        dkr = ck + off_r
        dkl = ck + off_l
        if not self.arcs:
            # the wedge is the cone, the wavefront its wave
            self.kr, self.kl = dkr, dkl
            self.ur = self._unit_to(*tp_r)
            self.ul = self._unit_to(*tp_l)
            arc = Arc(dkr, dkl, tp_r[0], tp_r[1], tp_l[0], tp_l[1], px, py, j, ck)
            self.arcs = [arc]
            self.keys = [dkr]
            self.stats.inserted += 1
            return StepReport("INIT")
        # (a) wedge := wedge ∩ cone (wrap-aware: the cone may sit across the seam)
        nkr = nkl = None
        for shift in (0.0, _TAU, -_TAU):
            r = dkr + shift
            l = dkl + shift
            if l < self.kr - EPS_ANGLE or r > self.kl + EPS_ANGLE:
                continue
            nkr = max(self.kr, r)
            nkl = min(self.kl, l)
            if nkr <= r + EPS_ANGLE:
                n_ur = self._unit_to(*tp_r)
            else:
                n_ur = self.ur
            if nkl >= l - EPS_ANGLE:
                n_ul = self._unit_to(*tp_l)
            else:
                n_ul = self.ul
            break
        if nkr is None or nkl < nkr - EPS_ANGLE:
            self.aborted = True
            return StepReport("WEDGE_EMPTY", len(self.arcs))
        if nkl < nkr:
            nkl = nkr
        removed = self._clip(nkr, nkl, n_ur, n_ul)
        self.kr, self.kl, self.ur, self.ul = nkr, nkl, n_ur, n_ul
        rep = self._narrow(j, px, py, inside=False)
        rep.removed_arcs += removed
        return rep

    def _step_inside(self, j: int, px: float, py: float) -> StepReport:
        """Vertex within delta of the apex: whole-plane cone, but the narrowing
        step still runs so the visit order stays enforced."""
        return self._narrow(j, px, py, inside=True)

    # -- clip to wedge ------------------------------------------------------

    def _arc_point_at(self, arc: Arc, k: float, ux: float, uy: float):
        ts = self.kern.ray_hits(self.ax, self.ay, ux, uy, arc.cx, arc.cy, self.delta)
        if ts:
            t = ts[0]
        else:
            t = self.kern.graze_fallback(self.ax, self.ay, ux, uy, arc.cx, arc.cy, self.delta)
            if t <= 0.0:
                raise InternalGeometryError("wedge ray misses an arc it should cross")
        return (self.ax + t * ux, self.ay + t * uy)

    def _clip(self, nkr: float, nkl: float, n_ur, n_ul) -> int:
        """Restrict the wavefront to [nkr, nkl]; returns number of dropped arcs."""
        arcs = self.arcs
        keys = self.keys
        lo = bisect_right(keys, nkr) - 1
        if lo < 0:
            lo = 0
        while lo < len(arcs) - 1 and arcs[lo].k1 < nkr - _KEY_SLACK:
            lo += 1
        hi = bisect_right(keys, nkl) - 1
        if hi < lo:
            hi = lo
        while hi > lo and arcs[hi].k0 > nkl + _KEY_SLACK:
            hi -= 1
        dropped = lo + (len(arcs) - 1 - hi)
        if dropped:
            del arcs[hi + 1:]
            del keys[hi + 1:]
            del arcs[:lo]
            del keys[:lo]
            self.stats.removed += dropped
        first = arcs[0]
        if first.k0 < nkr - EPS_ANGLE:
            x, y = self._arc_point_at(first, nkr, n_ur[0], n_ur[1])
            first.k0 = nkr
            first.x0 = x
            first.y0 = y
            keys[0] = nkr
        last = arcs[-1]
        if last.k1 > nkl + EPS_ANGLE:
            x, y = self._arc_point_at(last, nkl, n_ul[0], n_ul[1])
            last.k1 = nkl
            last.x1 = x
            last.y1 = y
        return dropped

    # -- pattern classification ---------------------------------------------

    def _ray_q(self, ux: float, uy: float, px: float, py: float):
        ts = self.kern.ray_hits(self.ax, self.ay, ux, uy, px, py, self.delta)
        if not ts:
            # wedge rays lie inside the circle's cone by construction, so a
            # miss can only be a grazing ray lost to rounding
            t = self.kern.graze_fallback(self.ax, self.ay, ux, uy, px, py, self.delta)
            if t <= 0.0:
                raise InternalGeometryError("wedge ray points away from the new circle")
            return (t, t)
        if len(ts) == 1:
            return (0.0, ts[0])
        return ts

    def _classify(self, w: float, q, at_left: bool, px: float, py: float) -> str:
        q1, q2 = q
        tau = EPS_REL * (self.delta + w + q2)
        if q2 - q1 <= tau and abs(w - q1) <= tau:
            return "M"                     # degenerate q1 = l = q2
        if w < q1 - tau:
            return "B"
        if w > q2 + tau:
            return "T"
        if q1 + tau < w < q2 - tau:
            return "M"
        return self._classify_nudged(at_left, px, py)

    def _classify_nudged(self, at_left: bool, px: float, py: float) -> str:
        """Tie on a boundary ray: compare again on a ray nudged into the wedge."""
        width = self.kl - self.kr
        h = min(1e-7, 0.25 * width) if width > 0.0 else 0.0
        if h <= 0.0:
            return "M"
        k = (self.kl - h) if at_left else (self.kr + h)
        a = k + self.rot
        ux, uy = math.cos(a), math.sin(a)
        try:
            w = self._front_dist_at(k, ux, uy)
        except InternalGeometryError:
            return "M"
        q = self._ray_q(ux, uy, px, py)
        if q is None:
            return "T"
        q1, q2 = q
        if w < q1:
            return "B"
        if w > q2:
            return "T"
        return "M"

    # -- arc/circle crossings -------------------------------------------------

    def _arc_crossings(self, arc: Arc, px: float, py: float):
        """Boundary crossings of circle C_j with one wavefront arc.

        Returns "coincident" for (near-)identical circles, else a list of
        (key, point) sorted by key.
        """
        kern = self.kern
        res = kern.boundary_intersections(arc.cx, arc.cy, px, py, self.delta)
        if res == _COINC:
            return _COINC
        out = []
        for (x, y) in res:
            if not kern.on_near_side(self.ax, self.ay, arc.cx, arc.cy, x, y, self.delta):
                continue
            k = self._key(x, y)
            if arc.k0 - _KEY_SLACK <= k <= arc.k1 + _KEY_SLACK:
                out.append((k, (x, y)))
        out.sort(key=lambda kp: kp[0])
        return out

    def _contained(self, arc: Arc, px: float, py: float) -> bool:
        kern = self.kern
        delta = self.delta
        return (kern.contains(px, py, arc.x0, arc.y0, delta, 4.0 * EPS_REL)
                and kern.contains(px, py, arc.x1, arc.y1, delta, 4.0 * EPS_REL))

    # -- the narrowing step and its cases -------------------------------------

    def _narrow(self, j: int, px: float, py: float, inside: bool) -> StepReport:
        l_arc = self.arcs[-1]
        r_arc = self.arcs[0]
        wl = math.hypot(l_arc.x1 - self.ax, l_arc.y1 - self.ay)
        wr = math.hypot(r_arc.x0 - self.ax, r_arc.y0 - self.ay)
        ql = self._ray_q(self.ul[0], self.ul[1], px, py)
        qr = self._ray_q(self.ur[0], self.ur[1], px, py)
        pat_l = self._classify(wl, ql, True, px, py)
        pat_r = self._classify(wr, qr, False, px, py)
        case = pat_l + pat_r
        if inside and ("B" in case):
            raise InternalGeometryError(
                f"pattern {case} with the apex inside C_{j} should be impossible")
        if case in ("TB", "BT"):
            raise InternalGeometryError(f"unreachable wavefront case {case}")
        if self.checker is not None:
            self.checker.before_surgery(self, j, px, py, case)
        if case == "TT":
            return self._case_tt(j, px, py)
        if case == "TM":
            return self._case_tm(j, px, py)
        if case == "MT":
            return self._case_mt(j, px, py)
        if case == "MM":
            return self._case_mm(j, px, py, allow_insert=not inside)
        if case == "MB":
            return self._case_mb(j, px, py, qr)
        if case == "BM":
            return self._case_bm(j, px, py, ql)
        return self._case_bb(j, px, py, ql, qr)

    def _splice(self, lo: int, hi: int, new_arcs: list[Arc]):
        """Replace arcs[lo:hi] with new_arcs, keeping the key list in sync."""
        removed = hi - lo
        self.arcs[lo:hi] = new_arcs
        self.keys[lo:hi] = [a.k0 for a in new_arcs]
        self.stats.removed += removed
        self.stats.inserted += len(new_arcs)

    def _resync_key(self, idx: int):
        self.keys[idx] = self.arcs[idx].k0

    def _scan_left(self, px: float, py: float):
        """From the left end inward: first arc meeting C_j's boundary.

        Returns (index, key, point) of the crossing nearest the left end, or
        None when no arc crosses.
        """
        arcs = self.arcs
        for idx in range(len(arcs) - 1, -1, -1):
            crs = self._arc_crossings(arcs[idx], px, py)
            if crs == _COINC:
                a = arcs[idx]
                return (idx, a.k1, (a.x1, a.y1))
            if crs:
                k, p = crs[-1]
                return (idx, k, p)
        return None

    def _scan_right(self, px: float, py: float):
        arcs = self.arcs
        for idx in range(len(arcs)):
            crs = self._arc_crossings(arcs[idx], px, py)
            if crs == _COINC:
                a = arcs[idx]
                return (idx, a.k0, (a.x0, a.y0))
            if crs:
                k, p = crs[0]
                return (idx, k, p)
        return None

    def _case_tt(self, j: int, px: float, py: float) -> StepReport:
        left = self._scan_left(px, py)
        if left is None:
            removed = len(self.arcs)
            self.aborted = True
            return StepReport("TT_EMPTY", removed)
        il, k1, p1 = left
        right = self._scan_right(px, py)
        ir, k2, p2 = right
        if ir > il or k2 > k1 + _KEY_SLACK:
            raise InternalGeometryError("TT crossings out of order")
        if ir == il:
            a = self.arcs[il]
            a.k0, a.x0, a.y0 = k2, p2[0], p2[1]
            a.k1, a.x1, a.y1 = (k1 if k1 >= k2 else k2), p1[0], p1[1]
            self._splice(il + 1, len(self.arcs), [])
            self._splice(0, il, [])
            self._resync_key(0)
        else:
            al = self.arcs[il]
            al.k1, al.x1, al.y1 = k1, p1[0], p1[1]
            ar = self.arcs[ir]
            ar.k0, ar.x0, ar.y0 = k2, p2[0], p2[1]
            self._splice(il + 1, len(self.arcs), [])
            self._splice(0, ir, [])
            self._resync_key(0)
        self.kr, self.ur = k2, self._unit_to(*p2)
        self.kl, self.ul = k1, self._unit_to(*p1)
        return StepReport("TT")

    def _case_tm(self, j: int, px: float, py: float) -> StepReport:
        left = self._scan_left(px, py)
        if left is None:
            raise InternalGeometryError("case TM must have one crossing")
        il, k1, p1 = left
        a = self.arcs[il]
        a.k1, a.x1, a.y1 = k1, p1[0], p1[1]
        if a.k0 > a.k1:
            a.k0 = a.k1
            self._resync_key(il)
        self._splice(il + 1, len(self.arcs), [])
        self.kl, self.ul = k1, self._unit_to(*p1)
        return StepReport("TM")

    def _case_mt(self, j: int, px: float, py: float) -> StepReport:
        right = self._scan_right(px, py)
        if right is None:
            raise InternalGeometryError("case MT must have one crossing")
        ir, k2, p2 = right
        a = self.arcs[ir]
        a.k0, a.x0, a.y0 = k2, p2[0], p2[1]
        if a.k1 < a.k0:
            a.k1 = a.k0
        self._resync_key(ir)
        self._splice(0, ir, [])
        self.kr, self.ur = k2, self._unit_to(*p2)
        return StepReport("MT")

    def _case_mb(self, j: int, px: float, py: float, qr) -> StepReport:
        """Circle beyond the wavefront at the right ray: its bottom arc joins there."""
        found = self._scan_right(px, py)
        if found is None:
            raise InternalGeometryError("case MB must have one crossing")
        ir, k1, p1 = found
        a = self.arcs[ir]
        a.k0, a.x0, a.y0 = k1, p1[0], p1[1]
        if a.k1 < a.k0:
            a.k1 = a.k0
        self._resync_key(ir)
        q3 = self._q_point(self.ur, qr[0])
        ck = self._center_key(px, py)
        new = Arc(self.kr, k1, q3[0], q3[1], p1[0], p1[1], px, py, j, ck)
        self._splice(0, ir, [new])
        return StepReport("MB")

    def _case_bm(self, j: int, px: float, py: float, ql) -> StepReport:
        found = self._scan_left(px, py)
        if found is None:
            raise InternalGeometryError("case BM must have one crossing")
        il, k2, p2 = found
        a = self.arcs[il]
        a.k1, a.x1, a.y1 = k2, p2[0], p2[1]
        if a.k0 > a.k1:
            a.k0 = a.k1
            self._resync_key(il)
        q1 = self._q_point(self.ul, ql[0])
        ck = self._center_key(px, py)
        new = Arc(k2, self.kl, p2[0], p2[1], q1[0], q1[1], px, py, j, ck)
        self._splice(il + 1, len(self.arcs), [new])
        return StepReport("BM")

    def _case_bb(self, j: int, px: float, py: float, ql, qr) -> StepReport:
        q1 = self._q_point(self.ul, ql[0])
        q3 = self._q_point(self.ur, qr[0])
        ck = self._center_key(px, py)
        new = Arc(self.kr, self.kl, q3[0], q3[1], q1[0], q1[1], px, py, j, ck)
        removed = len(self.arcs)
        self._splice(0, removed, [new])
        return StepReport("BB")

    def _case_mm(self, j: int, px: float, py: float, allow_insert: bool) -> StepReport:
        arcs = self.arcs
        n = len(arcs)
        dx = px - self.ax
        dy = py - self.ay
        if dx == 0.0 and dy == 0.0:
            # circle centered on the apex: the wavefront cannot cross it here
            return StepReport("MM")
        ck = self._center_key(px, py)
        # arcs carry centers in reverse angular order; find where ck fits
        lo, hi = 0, n
        while lo < hi:
            mid = (lo + hi) // 2
            if arcs[mid].ck > ck:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        cand = [c for c in (pos - 1, pos) if 0 <= c < n]
        all_inside = True
        crossings = []
        for c in cand:
            crs = self._arc_crossings(arcs[c], px, py)
            if crs != _COINC:
                crossings.extend(crs)
                if not self._contained(arcs[c], px, py):
                    all_inside = False
        if all_inside:
            # endpoints inside the circle: any boundary meeting is either a
            # tangential touch (no-op) or a genuine poke strictly between the
            # extreme crossings; probe the wavefront midway to tell them apart
            if len(crossings) < 2:
                return StepReport("MM")
            ks = sorted(k for k, _ in crossings)
            km = 0.5 * (ks[0] + ks[-1])
            a = km + self.rot
            ux, uy = math.cos(a), math.sin(a)
            t = self._front_dist_at(km, ux, uy)
            wx, wy = self.ax + t * ux, self.ay + t * uy
            if self.kern.contains(px, py, wx, wy, self.delta, 4.0 * EPS_REL):
                return StepReport("MM")
        up = self._scan_up(pos, px, py)
        down = self._scan_down(pos - 1, px, py)
        if up is None and down is None:
            raise InternalGeometryError("MM: circle pokes the wavefront but no crossing found")
        if not allow_insert:
            raise InternalGeometryError("apex-inside circle cannot add a wavefront arc")
        if up is not None and down is not None:
            (i1, k1, p1) = up
            (i2, k2, p2) = down
            a1 = arcs[i1]
            a1.k0, a1.x0, a1.y0 = k1, p1[0], p1[1]
            if a1.k1 < a1.k0:
                a1.k1 = a1.k0
            self._resync_key(i1)
            a2 = arcs[i2]
            a2.k1, a2.x1, a2.y1 = k2, p2[0], p2[1]
            if a2.k0 > a2.k1:
                a2.k0 = a2.k1
                self._resync_key(i2)
            new = Arc(k2, k1, p2[0], p2[1], p1[0], p1[1], px, py, j, ck)
            self._splice(i2 + 1, i1, [new])
            return StepReport("MM")
        # both crossings sit on a single arc adjacent to the straddle position
        (it, _, _) = up if up is not None else down
        crs = self._arc_crossings(arcs[it], px, py)
        if crs == _COINC or len(crs) != 2:
            raise InternalGeometryError("MM: expected two crossings on one arc")
        (k2, p2), (k1, p1) = crs
        a = arcs[it]
        left_piece = Arc(k1, a.k1, p1[0], p1[1], a.x1, a.y1, a.cx, a.cy, a.idx, a.ck)
        mid_piece = Arc(k2, k1, p2[0], p2[1], p1[0], p1[1], px, py, j, ck)
        a.k1, a.x1, a.y1 = k2, p2[0], p2[1]
        self._splice(it + 1, it + 1, [mid_piece, left_piece])
        return StepReport("MM")

    def _scan_up(self, start: int, px: float, py: float):
        """MM helper: walk left (up in key) from ``start`` to the left crossing.

        Pure search; the caller removes the passed-over (strictly below) arcs
        in one splice.  Returns (index, key, point) or None when this side
        holds no crossing.
        """
        arcs = self.arcs
        n = len(arcs)
        passed_below = False
        idx = start
        while idx < n:
            crs = self._arc_crossings(arcs[idx], px, py)
            if crs == _COINC:
                return None
            if crs:
                k, p = crs[-1]
                return (idx, k, p)
            if self._contained(arcs[idx], px, py):
                if passed_below:
                    raise InternalGeometryError("MM scan passed below arcs into a contained arc")
                return None
            passed_below = True
            idx += 1
        if passed_below:
            raise InternalGeometryError("MM scan ran off the left end")
        return None

    def _scan_down(self, start: int, px: float, py: float):
        arcs = self.arcs
        passed_below = False
        idx = start
        while idx >= 0:
            crs = self._arc_crossings(arcs[idx], px, py)
            if crs == _COINC:
                return None
            if crs:
                k, p = crs[0]
                return (idx, k, p)
            if self._contained(arcs[idx], px, py):
                if passed_below:
                    raise InternalGeometryError("MM scan passed below arcs into a contained arc")
                return None
            passed_below = True
            idx -= 1
        if passed_below:
            raise InternalGeometryError("MM scan ran off the right end")
        return None

    def _q_point(self, u, t: float):
        return (self.ax + t * u[0], self.ay + t * u[1])


def sweep_targets(pts: Sequence[Sequence[float]], i: int, delta: float, kern,
                  strict: bool = False, checker=None,
                  svg_sink=None) -> tuple[list[int], Sweep]:
    """All j > i with a valid shortcut <p_i, p_j>, plus the final sweep state."""
    sw = Sweep(pts, i, delta, kern, strict=strict, checker=checker, svg_sink=svg_sink)
    out = []
    for j in range(i + 1, len(pts)):
        if sw.locate_vertex(j) is VALID:
            out.append(j)
        report = sw.step(j)
        report.shortcut_candidate_checked = True
        if sw.aborted:
            break
    return out, sw
