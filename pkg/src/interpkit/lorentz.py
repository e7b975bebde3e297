"""Lorentz ``L_{p,q}`` and weak ``L_{p,inf}`` norms built on the maximal average ``f**``.

On each step ``[t0, t1)`` of the rearrangement ``f**(t) = a + b/t`` with
``a`` the step level and ``b = ∫_0^{t0} f* - a t0 >= 0``; past the support
``f**(t) = ||f||_1 / t``.  Both norms are evaluated on that structure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from scipy import integrate as _spi

from .measure_core import INF, DomainError, SampledFunction, exponent, is_inf
from .rearrange import RearrangementProfile, decreasing_rearrangement


@dataclass(frozen=True)
class LorentzIndex:
    p: float
    q: float

    def __post_init__(self):
        p, q = exponent(self.p), exponent(self.q)
        if p is INF or p < 1:
            raise DomainError(f"Lorentz index needs 1 <= p < inf, got p={p}")
        if q is not INF and q < 1:
            raise DomainError(f"Lorentz index needs 1 <= q <= inf, got q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def weak(self) -> bool:
        return self.q is INF


def _ab_segments(prof: RearrangementProfile):
    """``(t0, t1, a, b)`` with ``f** = a + b/t`` on ``[t0, t1)``."""
    for t0, t1, level, cum in prof.segments():
        b = 0.0 if t0 == 0.0 else max(cum - level * t0, 0.0)
        yield t0, t1, level, b


def _power_integral(e: float, t0: float, t1: float) -> float:
    """``∫_{t0}^{t1} t^(e-1) dt`` without cancellation."""
    if t0 == 0.0:
        return t1 ** e / e
    lr = math.log(t1 / t0)
    if e == 0.0:
        return lr
    return t0 ** e * math.expm1(e * lr) / e


def _segment_integral(t0, t1, a, b, p, q) -> float:
    """``∫_{t0}^{t1} t^(q/p - 1) (a + b/t)^q dt``."""
    s = q / p
    if b == 0.0:
        return a ** q * _power_integral(s, t0, t1)
    if float(q).is_integer():
        n = int(q)
        return sum(math.comb(n, k) * a ** (n - k) * b ** k * _power_integral(s - k, t0, t1)
                   for k in range(n + 1))
    # non-integer q: adaptive quadrature in log t, smooth on the segment
    def g(u):
        t = math.exp(u)
        return t ** s * (a + b / t) ** q
    val, _ = _spi.quad(g, math.log(t0), math.log(t1), epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def lorentz_norm(f: SampledFunction, idx: LorentzIndex) -> float:
    """``((q/p) ∫_0^inf [t^(1/p) f**(t)]^q dt/t)^(1/q)`` for finite ``q``.

    Returns ``INF`` for ``p = 1`` and nonzero ``f`` (the tail ``||f||_1/t``
    makes the integral diverge).
    """
    if idx.weak:
        raise DomainError("q = inf is the weak space: call weak_norm(f, p) instead")
    prof = decreasing_rearrangement(f)
    if prof.levels.size == 0:
        return 0.0
    p, q = float(idx.p), float(idx.q)
    if p == 1.0:
        return INF
    # scale out the largest level so powers stay in range
    c = float(prof.levels[0])
    total = 0.0
    for t0, t1, a, b in _ab_segments(prof):
        total += _segment_integral(t0, t1, a / c, b / c, p, q)
    mass, T = prof.total_integral / c, prof.support
    total += mass ** q * T ** (q / p - q) / (q - q / p)
    return c * ((q / p) * total) ** (1.0 / q)


def weak_norm(f: SampledFunction, p) -> float:
    """``sup_{t>0} t^(1/p) f**(t)``, exact on the step structure."""
    p = exponent(p)
    if p is INF or p < 1:
        raise DomainError(f"weak norm needs 1 <= p < inf, got {p}")
    prof = decreasing_rearrangement(f)
    if prof.levels.size == 0:
        return 0.0
    r = 1.0 / float(p)
    best = 0.0
    for t0, t1, a, b in _ab_segments(prof):
        cands = [t1]
        if t0 > 0:
            cands.append(t0)
            # interior critical point b(1-r)/(a r), located without dividing
            if a > 0 and b > 0 and r < 1 and t0 * a * r < b * (1.0 - r) < t1 * a * r:
                cands.append(b * (1.0 - r) / (a * r))
        for t in cands:
            best = max(best, t ** r * (a + b / t))
    return best


class NestingRow(NamedTuple):
    q: float
    norm: float
    weak: float
    ratio_to_weak: float
    finite: bool


class NestingReport(NamedTuple):
    p: float
    rows: list
    transitions: list  # (q_finite, q_infinite) pairs where finiteness switches


def lorentz_any(f: SampledFunction, p, q) -> float:
    q = exponent(q)
    if q is INF:
        return weak_norm(f, p)
    return lorentz_norm(f, LorentzIndex(p, q))


def nesting_report(f: SampledFunction, p, qs: Sequence) -> NestingReport:
    qs = [exponent(q) for q in qs]
    if any(float(b) < float(a) for a, b in zip(qs, qs[1:])):
        raise DomainError("qs must be sorted ascending")
    w = weak_norm(f, p)
    rows = []
    for q in qs:
        v = lorentz_any(f, p, q)
        ratio = v / w if w > 0 else 0.0
        rows.append(NestingRow(q, v, w, ratio, not is_inf(v)))
    transitions = [(a.q, b.q) for a, b in zip(rows, rows[1:]) if a.finite != b.finite]
    return NestingReport(exponent(p), rows, transitions)


def indicator_lorentz_closed_form(measure: float, p, q) -> float:
    """``||1_E||_{p,q}`` for the f**-based norm: ``(p/(p-1))^(1/q) |E|^(1/p)``."""
    p, q = float(exponent(p)), exponent(q)
    if q is INF:
        return measure ** (1.0 / p)
    return (p / (p - 1.0)) ** (1.0 / float(q)) * measure ** (1.0 / p)


__all__ = ["LorentzIndex", "lorentz_norm", "weak_norm", "nesting_report", "NestingRow",
           "NestingReport", "lorentz_any", "indicator_lorentz_closed_form"]
