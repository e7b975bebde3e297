"""Linear operators with known endpoint behaviour and an empirical norm estimator."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .measure_core import (
    INF, DomainError, SampledFunction, StructuralError, exponent, lebesgue_norm,
    random_simple_function,
)

CANDIDATE_LIBRARY_VERSION = "1"


class LinearOperator:
    """An operator acting on simple functions over one fixed grid.

    Subclasses set ``measures`` (and ``edges`` if interval geometry matters),
    implement :meth:`apply`, and may add structured test inputs in
    :meth:`candidates`.
    """

    name = "operator"
    positive_only = False

    def __init__(self, measures, edges=None):
        self.measures = np.asarray(measures, dtype=float)
        self.edges = None if edges is None else np.asarray(edges, dtype=float)

    def apply(self, f: SampledFunction) -> SampledFunction:
        raise NotImplementedError

    def __call__(self, f: SampledFunction) -> SampledFunction:
        return self.apply(f)

    def template(self, values, label="") -> SampledFunction:
        values = np.asarray(values, dtype=float)
        return SampledFunction(values, self.measures, label, bool(np.any(values < 0)), self.edges)

    def random_input(self, rng: np.random.Generator) -> SampledFunction:
        return random_simple_function(rng, self.measures, signed=not self.positive_only,
                                      edges=self.edges)

    def candidates(self, p_in) -> Iterable[SampledFunction]:
        n = self.measures.size
        for j in sorted({0, n // 3, n // 2, n - 1}):
            v = np.zeros(n)
            v[j] = 1.0
            yield self.template(v, f"point-{j}")
        yield self.template(np.ones(n), "constant")
        half = np.zeros(n)
        half[: max(1, n // 2)] = 1.0
        yield self.template(half, "half-indicator")


class IdentityOperator(LinearOperator):
    name = "identity"

    def apply(self, f):
        return f


class HardyOperator(LinearOperator):
    """``(Hf)(x) = (1/x) ∫_0^x f`` on a grid of cells in ``(0, T]``.

    Evaluated at cell right endpoints from exact prefix sums.
    """

    name = "hardy"
    positive_only = True

    def __init__(self, edges):
        edges = np.asarray(edges, dtype=float)
        if edges[0] < 0:
            raise DomainError("Hardy operator needs a grid inside (0, inf)")
        super().__init__(np.diff(edges), edges)

    @classmethod
    def geometric(cls, lower: float, upper: float = 1.0, cells_per_decade: int = 100):
        decades = math.log10(upper / lower)
        n = max(1, int(math.ceil(decades * cells_per_decade)))
        return cls(np.geomspace(lower, upper, n + 1))

    def apply(self, f):
        return hardy_apply(f)

    def candidates(self, p_in):
        yield from super().candidates(p_in)
        p = exponent(p_in)
        if p is INF or p <= 1:
            return
        x = 0.5 * (self.edges[1:] + self.edges[:-1])
        for eps in (0.25, 0.1, 0.05, 0.02, 0.01, 0.005):
            yield self.template(x ** (-1.0 / float(p) + eps), f"power-eps-{eps}")


def hardy_apply(f: SampledFunction) -> SampledFunction:
    if f.edges is None:
        raise StructuralError("Hardy operator needs interval geometry (edges)")
    if f.edges[0] < 0:
        raise DomainError("grid contains x <= 0")
    if np.any(f.values < 0):
        raise DomainError("Hardy operator is applied to nonnegative f")
    right = f.edges[1:]
    hf = np.cumsum(f.values * f.measures) / right
    return SampledFunction(hf, f.measures, f"H[{f.label}]", False, f.edges)


class HardyRow(NamedTuple):
    p: float
    eps: float
    ratio: float
    bound: float
    cells_per_decade: int
    lower: float


def hardy_extremal_grid(p: float, eps: float, cells_per_decade: int, mass_gap: float = 1e-3):
    """Geometric grid on ``(delta, 1]`` with ``delta**(p*eps) = mass_gap`` (capped at 1e-200)."""
    decades = min(-math.log10(mass_gap) / (p * eps), 200.0)
    decades = math.ceil(decades)
    return np.logspace(-decades, 0.0, decades * cells_per_decade + 1)


def hardy_ratio_sweep(p, eps_list, cells_per_decade: int = 100, mass_gap: float = 1e-3):
    """``||H f_eps||_p / ||f_eps||_p`` for ``f_eps = x^(-1/p + eps)`` on ``(delta, 1]``."""
    p = exponent(p)
    if p is INF:
        raise DomainError("sweep needs finite p")
    if p <= 1:
        raise DomainError("unbounded endpoint: the Hardy operator is unbounded on L_1")
    pf = float(p)
    rows = []
    for eps in eps_list:
        if eps <= 0:
            raise DomainError("eps must be > 0")
        edges = hardy_extremal_grid(pf, eps, cells_per_decade, mass_gap)
        x = 0.5 * (edges[1:] + edges[:-1])
        f = SampledFunction(x ** (-1.0 / pf + eps), np.diff(edges), f"eps={eps}", edges=edges)
        ratio = lebesgue_norm(hardy_apply(f), p) / lebesgue_norm(f, p)
        rows.append(HardyRow(pf, float(eps), ratio, pf / (pf - 1.0), cells_per_decade, float(edges[0])))
    return rows


@dataclass(frozen=True, eq=False)
class DiscreteConvolution(LinearOperator):
    """Periodic Riemann-sum convolution ``(k*f)_i = h sum_j k_j f_{i-j}``."""

    kernel: SampledFunction
    name = "convolution"

    def __post_init__(self):
        m = self.kernel.measures
        if not np.allclose(m, m[0], rtol=1e-12, atol=0):
            raise StructuralError("convolution kernel must live on a uniform grid")
        n = m.size
        object.__setattr__(self, "measures", m)
        object.__setattr__(self, "edges", self.kernel.edges)
        idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        object.__setattr__(self, "_index", idx)

    @property
    def h(self) -> float:
        return float(self.measures[0])

    @property
    def mass(self) -> float:
        return float(np.abs(self.kernel.values).sum() * self.h)

    def apply(self, f):
        return convolve(self, f)


def convolve(op: DiscreteConvolution, f: SampledFunction) -> SampledFunction:
    if not op.kernel.same_grid(f):
        raise StructuralError("input and kernel grids differ")
    k = op.kernel.values
    # row i sums k_j f_{i-j} in the same j order for every i: shifts commute exactly
    prod = np.ascontiguousarray(f.values[op._index] * k[None, :])
    out = prod.sum(axis=1) * op.h
    return SampledFunction(out, f.measures, f"k*{f.label}", bool(np.any(out < 0)), f.edges)


@dataclass(frozen=True, eq=False)
class NormEstimate:
    lower_bound: float
    witness: SampledFunction
    samples_used: int
    seed: int
    library_version: str = CANDIDATE_LIBRARY_VERSION


def norm_ratio(T: LinearOperator, f: SampledFunction, p_in, q_out) -> float:
    den = lebesgue_norm(f, p_in)
    if den == 0:
        return 0.0
    return lebesgue_norm(T.apply(f), q_out) / den


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator per sample, so results do not depend on evaluation order."""
    return np.random.default_rng([int(seed), int(index)])


def estimate_operator_norm(T: LinearOperator, p_in, q_out, n_samples: int, seed: int = 0) -> NormEstimate:
    """Lower bound on ``||T||_{p_in -> q_out}`` from random and structured inputs."""
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    best, witness = -1.0, None
    inputs = list(T.candidates(p_in))
    inputs += [T.random_input(sample_stream(seed, i)) for i in range(n_samples)]
    for f in inputs:
        r = norm_ratio(T, f, p_in, q_out)
        if r > best:
            best, witness = r, f
    return NormEstimate(max(best, 0.0), witness, len(inputs), seed)


__all__ = [
    "LinearOperator", "IdentityOperator", "HardyOperator", "DiscreteConvolution", "NormEstimate",
    "hardy_apply", "hardy_ratio_sweep", "HardyRow", "convolve", "estimate_operator_norm",
    "norm_ratio", "sample_stream", "CANDIDATE_LIBRARY_VERSION", "hardy_extremal_grid",
]
