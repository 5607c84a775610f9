"""Euclidean (L2) wedge/wavefront sweep: public API over the shared engine.

The wavefront here is a sequence of circular arcs stored in angular order;
updates cost amortized O(log n) lookups plus removals that are charged once
per arc over a whole sweep.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence

from ._engine import (Arc, Location, StepReport, Sweep, SweepAbortedError,
                      sweep_targets)
from .geometry import CircleKernel

__all__ = ["Arc", "Location", "StepReport", "Sweep", "SweepAbortedError",
           "init_sweep", "locate", "step", "shortcuts_from"]


def init_sweep(pts: Sequence[Sequence[float]], i: int, delta: float,
               strict: bool = False, checker=None,
               svg_sink: Optional[Callable[[int, int, str], None]] = None) -> Sweep:
    """Fresh sweep state for start vertex i: whole-plane wedge, empty wavefront."""
    if not (0 <= i < len(pts) - 1):
        raise IndexError(f"need 0 <= i < n-1, got i={i}")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return Sweep(pts, i, delta, CircleKernel, strict=strict, checker=checker,
                 svg_sink=svg_sink)


def locate(state: Sweep, p: Sequence[float]) -> Location:
    """Classify p against the current wedge and wavefront."""
    return state.locate(p)


def step(state: Sweep, pts: Sequence[Sequence[float]], j: int) -> StepReport:
    """Advance the sweep over vertex j (narrow wedge, update wavefront)."""
    if pts is not state.pts:
        raise ValueError("step must use the polyline the sweep was initialized with")
    return state.step(j)


def shortcuts_from(pts: Sequence[Sequence[float]], i: int, delta: float,
                   strict: bool = False, checker=None, svg_sink=None,
                   return_state: bool = False):
    """Ascending list of k > i such that <p_i, p_k> is a valid shortcut (L2)."""
    targets, sw = sweep_targets(pts, i, delta, CircleKernel, strict=strict,
                                checker=checker, svg_sink=svg_sink)
    if return_state:
        return targets, sw
    return targets
