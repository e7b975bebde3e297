"""Distribution function, decreasing rearrangement and maximal average.

On a simple function everything here is exact step arithmetic: ``f*`` is a
non-increasing staircase and ``∫_0^t f*`` is piecewise linear in ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measure_core import INF, DomainError, SampledFunction, StructuralError, exponent, lebesgue_norm


@dataclass(frozen=True, eq=False)
class RearrangementProfile:
    """Right-continuous staircase: ``levels[j]`` on ``[breakpoints[j-1], breakpoints[j])``.

    ``breakpoints[-1]`` is the measure of the support; the profile is 0 beyond.
    ``widths`` are the segment lengths, kept separately so that norms do not
    pick up cancellation from differencing the cumulative sums.
    """

    levels: np.ndarray
    widths: np.ndarray

    def __post_init__(self):
        lv = np.array(self.levels, dtype=float)
        w = np.array(self.widths, dtype=float)
        if lv.shape != w.shape or lv.ndim != 1:
            raise StructuralError("levels and widths must be 1-D of equal length")
        if np.any(np.diff(lv) > 0) or np.any(lv <= 0) or np.any(w <= 0):
            raise StructuralError("profile needs strictly positive non-increasing levels and positive widths")
        for a in (lv, w):
            a.setflags(write=False)
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "widths", w)
        bp = np.cumsum(w)
        bp.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        # ∫_0^{t_j} f* at every breakpoint, with a leading 0
        cum = np.concatenate([[0.0], np.cumsum(lv * w)])
        cum.setflags(write=False)
        object.__setattr__(self, "_cumint", cum)

    @classmethod
    def from_breakpoints(cls, levels, breakpoints) -> "RearrangementProfile":
        bp = np.asarray(breakpoints, dtype=float)
        return cls(levels, np.diff(np.concatenate([[0.0], bp])))

    @property
    def support(self) -> float:
        return float(self.breakpoints[-1]) if self.levels.size else 0.0

    @property
    def edges(self) -> np.ndarray:
        return np.concatenate([[0.0], self.breakpoints])

    @property
    def total_integral(self) -> float:
        return float(self._cumint[-1])

    def __call__(self, t):
        """Evaluate ``f*(t)`` (right-continuous)."""
        t = np.asarray(t, dtype=float)
        if self.levels.size == 0:
            return np.zeros_like(t)
        j = np.searchsorted(self.breakpoints, t, side="right")
        padded = np.concatenate([self.levels, [0.0]])
        return padded[j]

    def integral_to(self, t):
        """``∫_0^t f*(s) ds`` computed from the step structure."""
        t = np.asarray(t, dtype=float)
        if self.levels.size == 0:
            return np.zeros_like(t)
        j = np.searchsorted(self.breakpoints, t, side="right")
        jj = np.minimum(j, self.levels.size - 1)
        start = np.concatenate([[0.0], self.breakpoints[:-1]])[jj]
        partial = self._cumint[jj] + self.levels[jj] * (t - start)
        return np.where(j >= self.levels.size, self._cumint[-1], partial)

    def distribution(self, alpha: float) -> float:
        if alpha < 0:
            raise DomainError("alpha must be >= 0")
        return float(self.widths[self.levels > alpha].sum())

    def norm(self, p) -> float:
        """``L_p`` norm of the staircase on ``[0, inf)``."""
        if self.levels.size == 0:
            return 0.0
        return lebesgue_norm(SampledFunction(self.levels, self.widths), p)

    def segments(self):
        """Yield ``(t_start, t_end, level, integral_at_start)`` per step."""
        start = 0.0
        for j, (lv, bp) in enumerate(zip(self.levels, self.breakpoints)):
            yield start, float(bp), float(lv), float(self._cumint[j])
            start = float(bp)


def distribution_function(f: SampledFunction, alpha: float) -> float:
    """``mu({|f| > alpha})``."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return float(f.measures[np.abs(f.values) > alpha].sum())


def decreasing_rearrangement(f: SampledFunction) -> RearrangementProfile:
    a = np.abs(f.values)
    m = f.measures
    # ties broken by measure so equal multisets give bitwise-equal profiles
    order = np.lexsort((m, -a))
    a, m = a[order], m[order]
    keep = a > 0
    a, m = a[keep], m[keep]
    if a.size == 0:
        return RearrangementProfile(np.empty(0), np.empty(0))
    starts = np.flatnonzero(np.concatenate([[True], a[1:] != a[:-1]]))
    levels = a[starts]
    widths = np.add.reduceat(m, starts)
    return RearrangementProfile(levels, widths)


def maximal_average(prof: RearrangementProfile, t):
    """``f**(t) = (1/t) ∫_0^t f*``; vectorised over ``t``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise DomainError("maximal average needs t > 0")
    out = prof.integral_to(t_arr) / t_arr
    return float(out) if out.ndim == 0 else out


def profile_distribution_function(prof: RearrangementProfile, alpha: float) -> float:
    return prof.distribution(alpha)


def find_subadditivity_witness(pairs, ts):
    """First ``(f, g, t)`` with ``(f+g)*(t) > f*(t) + g*(t)``, else ``None``."""
    for f, g in pairs:
        fs, gs, hs = (decreasing_rearrangement(x) for x in (f, g, f + g))
        for t in ts:
            if hs(t) > fs(t) + gs(t):
                return f, g, float(t)
    return None


def profile_lp_norm(f: SampledFunction, p) -> float:
    """Convenience: ``||f*||_p``."""
    exponent(p)
    return decreasing_rearrangement(f).norm(p)


__all__ = [
    "RearrangementProfile", "distribution_function", "decreasing_rearrangement",
    "maximal_average", "profile_distribution_function", "find_subadditivity_witness",
    "profile_lp_norm", "INF",
]
