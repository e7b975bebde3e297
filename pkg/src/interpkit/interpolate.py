"""K-functional of the couple ``(L_1, L_inf)``, real interpolation norms and Riesz-Thorin checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy import integrate as _spi

from .lorentz import LorentzIndex, lorentz_norm, weak_norm
from .measure_core import (
    INF, DomainError, SampledFunction, exponent, from_reciprocal, lebesgue_norm, reciprocal,
)
from .operators import LinearOperator, norm_ratio, sample_stream
from .rearrange import decreasing_rearrangement


@dataclass(frozen=True)
class InterpIndex:
    theta: float
    q: float

    def __post_init__(self):
        q = exponent(self.q)
        if not 0 < float(self.theta) < 1:
            raise DomainError(f"theta must lie in (0, 1), got {self.theta}")
        if q is not INF and q < 1:
            raise DomainError(f"q must lie in [1, inf], got {q}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class EndpointBound:
    """A certified (analytic) or empirical (estimated) endpoint operator norm."""

    p_in: object
    q_out: object
    M: float
    provenance: str = "analytic"
    formula: str = ""

    def __post_init__(self):
        object.__setattr__(self, "p_in", exponent(self.p_in))
        object.__setattr__(self, "q_out", exponent(self.q_out))
        if not self.M > 0:
            raise DomainError("endpoint norm M must be > 0")
        if self.provenance not in ("analytic", "estimated"):
            raise DomainError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "analytic" and not self.formula:
            raise DomainError("analytic endpoint bounds carry a formula tag")


@dataclass(frozen=True)
class KCurve:
    t_values: np.ndarray
    K_values: np.ndarray

    def is_admissible(self, tol: float = 1e-10) -> bool:
        t, K = np.asarray(self.t_values), np.asarray(self.K_values)
        if np.any(np.diff(t) <= 0) or np.any(K < -tol):
            return False
        if np.any(np.diff(K) < -tol * max(1.0, K.max(initial=0))):
            return False
        if np.any(np.diff(K / t) > tol * max(1.0, (K / t).max(initial=0))):
            return False
        # concavity: chords lie below the curve
        for i in range(len(t) - 2):
            t0, t1, t2 = t[i], t[i + 1], t[i + 2]
            chord = K[i] + (K[i + 2] - K[i]) * (t1 - t0) / (t2 - t0)
            if K[i + 1] < chord - tol * max(1.0, abs(chord)):
                return False
        return True


def k_exact(f: SampledFunction, t: float) -> float:
    """``K(f, t) = ∫_0^t f*(s) ds``."""
    if t <= 0:
        raise DomainError("K-functional needs t > 0")
    return float(decreasing_rearrangement(f).integral_to(t))


def split_cost(f: SampledFunction, t: float, lam: float) -> float:
    """``||f - f1||_1 + t ||f1||_inf`` for the truncation ``f1 = sign(f) min(|f|, lam)``."""
    a = np.abs(f.values)
    lam_eff = min(lam, float(a.max()))
    return float(np.dot(np.maximum(a - lam, 0.0), f.measures)) + t * lam_eff


def k_optimized(f: SampledFunction, t: float, lambda_grid_size: int = 16) -> float:
    """Minimise the split cost over truncation heights: data values, 0, and a uniform grid."""
    if t <= 0:
        raise DomainError("K-functional needs t > 0")
    if lambda_grid_size < 2:
        raise DomainError("lambda grid size must be >= 2")
    a = np.abs(f.values)
    top = float(a.max())
    lams = np.unique(np.concatenate([a, [0.0], np.linspace(0.0, top, lambda_grid_size)]))
    excess = np.maximum(a[None, :] - lams[:, None], 0.0) @ f.measures
    return float(np.min(excess + t * lams))


def k_curve(f: SampledFunction, t_values) -> KCurve:
    t = np.asarray(t_values, dtype=float)
    prof = decreasing_rearrangement(f)
    return KCurve(t, prof.integral_to(t))


def lorentz_exponent(theta) -> float:
    """Index map of ``(L_1, L_inf)_{theta, q} ~ L_{p, q}``: ``1/p = 1 - theta``."""
    return from_reciprocal(1 - (Fraction(theta) if isinstance(theta, (int, Fraction)) else theta))


def _k_segments(prof):
    """``(t0, t1, a, b)`` with ``K(t) = a + b t`` on ``[t0, t1)``."""
    for t0, t1, level, cum in prof.segments():
        yield t0, t1, max(cum - level * t0, 0.0), level


def real_interp_norm(f: SampledFunction, idx: InterpIndex) -> float:
    """``(∫_0^inf (t^-theta K(f,t))^q dt/t)^(1/q)``; sup form for ``q = inf``."""
    prof = decreasing_rearrangement(f)
    if prof.levels.size == 0:
        return 0.0
    th = float(idx.theta)
    mass, T = prof.total_integral, prof.support
    segs = list(_k_segments(prof))
    if idx.q is INF:
        best = 0.0
        for t0, t1, a, b in segs:
            cands = [t1] + ([t0] if t0 > 0 else [])
            if a > 0 and b > 0 and t0 * b * (1 - th) < a * th < t1 * b * (1 - th):
                cands.append(a * th / (b * (1 - th)))
            best = max(best, max(t ** -th * (a + b * t) for t in cands))
        return best
    q = float(idx.q)
    c = float(prof.levels[0])
    total = 0.0
    for t0, t1, a, b in segs:
        a, b = a / c, b / c
        if a == 0.0:
            # first step: K = b t
            total += b ** q * t1 ** (q * (1 - th)) / (q * (1 - th))
            continue

        def g(u, a=a, b=b):
            t = math.exp(u)
            return (a + b * t) ** q * t ** (-th * q)
        val, _ = _spi.quad(g, math.log(t0), math.log(t1), epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    total += (mass / c) ** q * T ** (-th * q) / (th * q)
    return c * total ** (1.0 / q)


class EquivalenceRow(NamedTuple):
    label: str
    interp: float
    lorentz: float
    ratio: float


class EquivalenceReport(NamedTuple):
    theta: float
    q: float
    p: float
    rows: list
    min_ratio: float
    max_ratio: float


def lorentz_equivalence_report(f_family: Sequence[SampledFunction], theta, q) -> EquivalenceReport:
    if not f_family:
        raise DomainError("family must be nonempty")
    q = exponent(q)
    p = lorentz_exponent(theta)
    idx = InterpIndex(theta, q)
    rows = []
    for f in f_family:
        a = real_interp_norm(f, idx)
        b = weak_norm(f, p) if q is INF else lorentz_norm(f, LorentzIndex(p, q))
        rows.append(EquivalenceRow(f.label, a, b, a / b if b > 0 else math.nan))
    ratios = [r.ratio for r in rows if not math.isnan(r.ratio)]
    return EquivalenceReport(float(theta), q, p, rows, min(ratios), max(ratios))


def riesz_thorin_exponents(p0, q0, p1, q1, theta):
    """``1/p_theta = (1-theta)/p0 + theta/p1`` (and likewise ``q``), exact for rational input."""
    th = Fraction(theta) if not isinstance(theta, Fraction) else theta
    if not 0 <= th <= 1:
        raise DomainError("theta must lie in [0, 1]")
    out = []
    for a, b in ((p0, p1), (q0, q1)):
        ra, rb = reciprocal(a), reciprocal(b)
        ra = Fraction(ra) if not isinstance(ra, Fraction) else ra
        rb = Fraction(rb) if not isinstance(rb, Fraction) else rb
        for e in (a, b):
            e = exponent(e)
            if e is not INF and e < 1:
                raise DomainError(f"exponent {e} outside [1, inf]")
        out.append(from_reciprocal((1 - th) * ra + th * rb))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GeometricMeanReport:
    p_theta: object
    q_theta: object
    theta: float
    bound: float
    max_ratio: float
    witness: SampledFunction | None
    samples_used: int
    passed: bool
    violations: int = 0
    endpoints: tuple = field(default=())


class VerificationError(DomainError):
    """Upper-bound verification requested against a lower-bound endpoint."""


def verify_geometric_mean_bound(T: LinearOperator, e0: EndpointBound, e1: EndpointBound, theta,
                                n_samples: int = 1000, seed: int = 0,
                                rtol: float = 1e-9) -> GeometricMeanReport:
    for e in (e0, e1):
        if e.provenance != "analytic":
            raise VerificationError(
                "endpoint bound is an empirical lower bound; an upper bound at theta "
                "cannot be certified from it")
    p_t, q_t = riesz_thorin_exponents(e0.p_in, e0.q_out, e1.p_in, e1.q_out, theta)
    th = float(theta)
    bound = e0.M ** (1 - th) * e1.M ** th
    best, witness, used, bad = 0.0, None, 0, 0
    inputs = list(T.candidates(p_t))
    inputs += [T.random_input(sample_stream(seed, i)) for i in range(n_samples)]
    for f in inputs:
        if lebesgue_norm(f, p_t) == 0:
            continue
        r = norm_ratio(T, f, p_t, q_t)
        used += 1
        if r > bound * (1 + rtol):
            bad += 1
        if r > best:
            best, witness = r, f
    return GeometricMeanReport(p_t, q_t, th, bound, best, witness, used, bad == 0, bad, (e0, e1))


__all__ = [
    "InterpIndex", "EndpointBound", "KCurve", "k_exact", "k_optimized", "k_curve", "split_cost",
    "lorentz_exponent", "real_interp_norm", "lorentz_equivalence_report", "EquivalenceReport",
    "riesz_thorin_exponents", "verify_geometric_mean_bound", "GeometricMeanReport",
    "VerificationError",
]
