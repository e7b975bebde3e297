"""Simple functions on explicit finite measure grids.

A :class:`SampledFunction` is a finite list of cells, each carrying a value and
a positive measure.  Everything else in the package (rearrangements, Lorentz
norms, operators, evolved fields) is reduced to this carrier before a norm is
taken.

Exponents live on the extended half-line ``[1, inf]``.  The endpoint ``inf`` is
the singleton :data:`INF`, a ``float`` subclass, so it behaves arithmetically
like ``math.inf`` while staying recognisable with ``p is INF``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Callable, Sequence

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class StructuralError(ValueError):
    """Inputs are malformed or live on incompatible grids."""


class _Infinity(float):
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls, "inf")
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def exponent(p) -> float | Fraction | _Infinity:
    """Normalise an exponent: strings ``"inf"``/``"∞"`` and ``math.inf`` become INF.

    Integers become :class:`Fraction` so that exponent algebra stays exact.
    """
    if p is INF:
        return INF
    if isinstance(p, str):
        s = p.strip().lower()
        if s in ("inf", "infinity", "∞", "+inf"):
            return INF
        if "/" in s:
            return Fraction(s)
        p = float(s)
    if isinstance(p, bool) or not isinstance(p, Real):
        raise DomainError(f"exponent must be real, got {p!r}")
    if isinstance(p, float) and math.isinf(p) and p > 0:
        return INF
    if isinstance(p, float) and math.isnan(p):
        raise DomainError("exponent is NaN")
    if isinstance(p, int) or isinstance(p, np.integer):
        return Fraction(int(p))
    if isinstance(p, Fraction):
        return p
    return float(p)


def is_inf(p) -> bool:
    return p is INF or (isinstance(p, float) and math.isinf(p) and p > 0)


def reciprocal(p):
    """``1/p`` with ``1/INF = 0``; exact for rational ``p``."""
    p = exponent(p)
    if p is INF:
        return Fraction(0)
    if isinstance(p, Fraction):
        return 1 / p
    return 1.0 / p


def from_reciprocal(r):
    """Inverse of :func:`reciprocal`."""
    if r == 0:
        return INF
    if isinstance(r, Fraction):
        return 1 / r
    return 1.0 / r


def conjugate_exponent(p):
    """Hölder conjugate ``q`` with ``1/p + 1/q = 1``; ``1 <-> INF``."""
    p = exponent(p)
    if p is not INF and p < 1:
        raise DomainError(f"conjugate exponent needs p >= 1, got {p}")
    r = reciprocal(p)
    return from_reciprocal(1 - r)


def _ro(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Finite simple function: ``values[i]`` on a cell of measure ``measures[i]``.

    ``edges`` optionally records 1-D interval geometry (``len(values) + 1``
    increasing boundaries); operators such as the Hardy average need it.
    Unless ``signed`` is set, values must be nonnegative.
    """

    values: np.ndarray
    measures: np.ndarray
    label: str = ""
    signed: bool = False
    edges: np.ndarray | None = field(default=None)

    def __post_init__(self):
        v = _ro(self.values)
        m = _ro(self.measures)
        if v.ndim != 1 or m.ndim != 1:
            raise StructuralError("values and measures must be 1-D sequences")
        if v.size == 0 or v.size != m.size:
            raise StructuralError(
                f"values ({v.size}) and measures ({m.size}) need identical positive length"
            )
        if not np.all(np.isfinite(v)):
            raise StructuralError("values must be finite")
        if not np.all(m > 0) or not np.all(np.isfinite(m)):
            raise StructuralError("every cell measure must be finite and > 0")
        if not self.signed and np.any(v < 0):
            raise DomainError("negative values need signed=True")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "measures", m)
        if self.edges is not None:
            e = _ro(self.edges)
            if e.shape != (v.size + 1,) or not np.all(np.diff(e) > 0):
                raise StructuralError("edges must be increasing with len(values) + 1 entries")
            object.__setattr__(self, "edges", e)

    def __len__(self):
        return self.values.size

    @property
    def total_measure(self) -> float:
        return float(self.measures.sum())

    @property
    def midpoints(self) -> np.ndarray:
        if self.edges is None:
            raise StructuralError(f"{self.label or 'function'} carries no interval geometry")
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def with_values(self, values, label=None, signed=None) -> "SampledFunction":
        values = np.asarray(values, dtype=float)
        if signed is None:
            signed = self.signed or bool(np.any(values < 0))
        return SampledFunction(values, self.measures, label if label is not None else self.label,
                               signed, self.edges)

    def abs(self) -> "SampledFunction":
        return self.with_values(np.abs(self.values), signed=False)

    def same_grid(self, other: "SampledFunction") -> bool:
        return self.measures.shape == other.measures.shape and np.array_equal(
            self.measures, other.measures)

    def _check_grid(self, other):
        if not self.same_grid(other):
            raise StructuralError("functions live on different grids")

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        self._check_grid(other)
        return self.with_values(self.values + other.values, label="")

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        self._check_grid(other)
        return self.with_values(self.values - other.values, label="", signed=True)

    def __mul__(self, c: float) -> "SampledFunction":
        return self.with_values(c * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Quadrature:
    """Cell sampling rule: value at the midpoint, or the mean of ``level`` sub-midpoints."""

    scheme: str = "cell-sum"
    level: int = 1

    def __post_init__(self):
        if self.scheme not in ("cell-sum", "refined-midpoint"):
            raise StructuralError(f"unknown quadrature scheme {self.scheme!r}")
        if int(self.level) < 1:
            raise DomainError("refinement level must be >= 1")

    def cell_values(self, func: Callable[[np.ndarray], np.ndarray], edges: np.ndarray) -> np.ndarray:
        edges = np.asarray(edges, dtype=float)
        if self.scheme == "cell-sum" or self.level == 1:
            return np.asarray(func(0.5 * (edges[1:] + edges[:-1])), dtype=float)
        k = self.level
        frac = (np.arange(k) + 0.5) / k
        width = np.diff(edges)
        pts = edges[:-1, None] + width[:, None] * frac[None, :]
        return np.asarray(func(pts), dtype=float).mean(axis=1)


def integrate(f: SampledFunction) -> float:
    """Exact integral of a simple function, ``sum(values * measures)``."""
    if f.values.shape != f.measures.shape:
        raise StructuralError("length mismatch between values and measures")
    return float(np.dot(f.values, f.measures))


def lebesgue_norm(f: SampledFunction, p) -> float:
    """``(sum |v|^p m)^(1/p)``, or ``max |v|`` for ``p = INF``."""
    p = exponent(p)
    if p is INF:
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise DomainError(f"Lebesgue norm needs p >= 1 (quasi-norms unsupported), got {p}")
    a = np.abs(f.values)
    if p == 1:
        return float(np.dot(a, f.measures))
    pf = float(p)
    scale = a.max()
    if scale == 0:
        return 0.0
    # scaling keeps a**p away from overflow for large p
    return float(scale * np.dot((a / scale) ** pf, f.measures) ** (1.0 / pf))


def sample(func: Callable[[np.ndarray], np.ndarray], edges, label: str = "",
           quadrature: Quadrature | None = None, signed: bool = False) -> SampledFunction:
    """Sample ``func`` on the interval cells given by ``edges``."""
    edges = np.asarray(edges, dtype=float)
    quad = quadrature or Quadrature()
    values = quad.cell_values(func, edges)
    return SampledFunction(values, np.diff(edges), label, signed, edges)


def grid_edges(a: float, b: float, cells: int, spacing: str = "uniform") -> np.ndarray:
    if not b > a:
        raise DomainError(f"empty domain [{a}, {b}]")
    if int(cells) < 1:
        raise DomainError("cells must be >= 1")
    if spacing == "uniform":
        return np.linspace(a, b, int(cells) + 1)
    if spacing == "geometric":
        if a <= 0:
            raise DomainError("geometric spacing needs a > 0")
        return np.geomspace(a, b, int(cells) + 1)
    raise StructuralError(f"unknown spacing {spacing!r}")


def family(name: str, params: dict | None = None) -> Callable[[np.ndarray], np.ndarray]:
    """Builtin profile families, evaluated pointwise (radially for arrays of norms).

    indicator: ``height`` on ``[a, b]``.
    power: ``scale * |x - center|**exponent`` where ``|x - center| > cutoff``
    (and ``<= outer`` if given), else 0.
    gaussian: ``amplitude * exp(-(x-center)^2 / (2 sigma^2))``.
    bump: ``amplitude * exp(-1 / (1 - ((x-center)/radius)^2))`` inside the ball.
    """
    params = dict(params or {})
    c = float(params.get("center", 0.0))
    if name == "indicator":
        a, b = float(params.get("a", 0.0)), float(params.get("b", 1.0))
        hgt = float(params.get("height", 1.0))
        return lambda x: np.where((x >= a) & (x <= b), hgt, 0.0)
    if name == "power":
        e = float(params["exponent"])
        s = float(params.get("scale", 1.0))
        cut = float(params.get("cutoff", 0.0))
        outer = float(params.get("outer", math.inf))

        def power(x):
            r = np.abs(np.asarray(x, dtype=float) - c)
            ok = (r > cut) & (r <= outer)
            return np.where(ok, s * np.power(np.where(ok, r, 1.0), e), 0.0)
        return power
    if name == "gaussian":
        sig = float(params.get("sigma", 1.0))
        amp = float(params.get("amplitude", 1.0))
        return lambda x: amp * np.exp(-((np.asarray(x, dtype=float) - c) ** 2) / (2 * sig * sig))
    if name == "bump":
        rad = float(params.get("radius", 1.0))
        amp = float(params.get("amplitude", 1.0))

        def bump(x):
            y = (np.asarray(x, dtype=float) - c) / rad
            inside = np.abs(y) < 1
            arg = np.where(inside, 1.0 - y * y, 1.0)
            return np.where(inside, amp * np.exp(-1.0 / arg), 0.0)
        return bump
    raise StructuralError(f"unknown builtin family {name!r}")


def function_from_spec(spec: dict) -> SampledFunction:
    """Build a :class:`SampledFunction` from the JSON function-spec format."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise StructuralError("function spec must be an object with a 'kind' key")
    kind = spec["kind"]
    label = str(spec.get("label", ""))
    if kind == "explicit":
        try:
            values, measures = spec["values"], spec["measures"]
        except KeyError as exc:
            raise StructuralError(f"explicit function spec lacks {exc.args[0]!r}") from None
        values = np.asarray(values, dtype=float)
        return SampledFunction(values, measures, label, signed=bool(np.any(values < 0)))
    if kind == "builtin":
        b = spec.get("builtin")
        if not isinstance(b, dict) or "family" not in b:
            raise StructuralError("builtin function spec needs 'builtin': {'family': ...}")
        a, bb = b.get("domain", [0.0, 1.0])
        edges = grid_edges(float(a), float(bb), int(b.get("cells", 100)), b.get("spacing", "uniform"))
        q = b.get("quadrature")
        quad = Quadrature(q.get("scheme", "refined-midpoint"), int(q.get("level", 1))) if q else None
        func = family(b["family"], b.get("params"))
        vals = quad.cell_values(func, edges) if quad else func(0.5 * (edges[1:] + edges[:-1]))
        vals = np.asarray(vals, dtype=float)
        return SampledFunction(vals, np.diff(edges), label or b["family"],
                               signed=bool(np.any(vals < 0)), edges=edges)
    raise StructuralError(f"unknown function spec kind {kind!r}")


def random_simple_function(rng: np.random.Generator, measures: Sequence[float] | None = None,
                           cells: int | None = None, signed: bool = False,
                           edges=None) -> SampledFunction:
    """Random simple function exercising ties, zeros, sparsity and heavy tails."""
    if measures is None:
        n = int(cells) if cells else int(rng.integers(1, 40))
        measures = rng.uniform(0.05, 2.0, size=n)
    measures = np.asarray(measures, dtype=float)
    n = measures.size
    mode = int(rng.integers(0, 5))
    if mode == 0:
        v = rng.uniform(0.0, 3.0, n)
    elif mode == 1:  # ties and zeros
        v = rng.integers(0, 4, n).astype(float)
    elif mode == 2:  # sparse spikes
        v = np.where(rng.random(n) < 0.2, rng.exponential(5.0, n), 0.0)
    elif mode == 3:
        v = rng.lognormal(0.0, 1.5, n)
    else:
        v = np.sort(rng.uniform(0.0, 2.0, n))[::-1] if rng.random() < 0.5 else rng.pareto(1.5, n)
    if signed:
        v = v * rng.choice([-1.0, 1.0], n)
    return SampledFunction(v, measures, f"random-{mode}", signed, edges)
