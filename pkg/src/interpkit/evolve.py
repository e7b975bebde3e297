"""Heat semigroup and free Schrodinger group on periodic boxes ``[-L, L)^n``.

Both flows are Fourier multipliers on the grid modes ``xi = pi k / L``:
``exp(-|xi|^2 t)`` for heat and ``exp(-i |xi|^2 t)`` for Schrodinger.  Norms of
fields use the Riemann cell measure ``h^n`` so they agree with
:class:`~interpkit.measure_core.SampledFunction` norms.

Free-space estimates only transfer to the box inside a validity window: heat
mass must stay out of a guard band at the boundary, and for Schrodinger the
fastest significant mode must not travel more than ``L/2`` (group velocity
``2|xi|``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy import integrate as _spi
from scipy import stats as _sps
from scipy.optimize import minimize_scalar

from .interpolate import EndpointBound, riesz_thorin_exponents
from .lorentz import weak_norm
from .measure_core import (
    INF, DomainError, Quadrature, SampledFunction, StructuralError, exponent, family,
    lebesgue_norm,
)
from .operators import LinearOperator


@dataclass(frozen=True)
class GridSpec:
    n: int
    L: float
    N: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise DomainError("dimension must be 1 or 2")
        if not self.L > 0:
            raise DomainError("box half-length L must be > 0")
        N = int(self.N)
        if N < 16 or N & (N - 1):
            raise DomainError("points per axis must be a power of two >= 16")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def cell_measure(self) -> float:
        return self.h ** self.n

    @property
    def shape(self):
        return (self.N,) * self.n

    @property
    def axis(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    @property
    def xi_axis(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.h)

    def radius(self) -> np.ndarray:
        """``|x|`` on the grid."""
        if self.n == 1:
            return np.abs(self.axis)
        X, Y = np.meshgrid(self.axis, self.axis, indexing="ij")
        return np.hypot(X, Y)

    def xi_squared(self) -> np.ndarray:
        k = self.xi_axis
        if self.n == 1:
            return k * k
        return k[:, None] ** 2 + k[None, :] ** 2

    def xi_norm(self) -> np.ndarray:
        return np.sqrt(self.xi_squared())


@dataclass(frozen=True, eq=False)
class SpectralField:
    grid: GridSpec
    data: np.ndarray
    representation: str = "physical"

    def __post_init__(self):
        d = np.array(self.data, dtype=complex)
        if d.shape != self.grid.shape:
            raise StructuralError(f"field shape {d.shape} does not match grid {self.grid.shape}")
        if self.representation not in ("physical", "frequency"):
            raise StructuralError(f"unknown representation {self.representation!r}")
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    def to_frequency(self) -> "SpectralField":
        if self.representation == "frequency":
            return self
        return SpectralField(self.grid, np.fft.fftn(self.data), "frequency")

    def to_physical(self) -> "SpectralField":
        if self.representation == "physical":
            return self
        return SpectralField(self.grid, np.fft.ifftn(self.data), "physical")

    def modulus(self) -> SampledFunction:
        """``|u|`` as a simple function with cell measure ``h^n``."""
        u = self.to_physical().data
        a = np.abs(u).ravel()
        return SampledFunction(a, np.full(a.size, self.grid.cell_measure), "|u|")

    def real_part(self) -> SampledFunction:
        r = self.to_physical().data.real.ravel()
        return SampledFunction(r, np.full(r.size, self.grid.cell_measure), "Re u", signed=True)

    def norm(self, p) -> float:
        return lebesgue_norm(self.modulus(), p)

    def mass(self) -> complex:
        return complex(self.to_physical().data.sum() * self.grid.cell_measure)


def field_from_function(grid: GridSpec, func, label: str = "") -> SpectralField:
    """Evaluate a radial profile ``func(|x|)`` (or ``func(x)`` in 1-D) at grid points."""
    x = grid.axis if grid.n == 1 else grid.radius()
    return SpectralField(grid, np.asarray(func(x), dtype=complex))


def field_from_spec(grid: GridSpec, spec: dict) -> SpectralField:
    """Function-spec JSON evaluated at grid points (builtin) or reshaped (explicit)."""
    kind = spec.get("kind")
    if kind == "explicit":
        v = np.asarray(spec["values"], dtype=float)
        if v.size != grid.N ** grid.n:
            raise StructuralError(f"explicit data has {v.size} values, grid needs {grid.N ** grid.n}")
        return SpectralField(grid, v.reshape(grid.shape))
    if kind == "builtin":
        b = spec["builtin"]
        f = field_from_function(grid, family(b["family"], b.get("params")))
        if b.get("normalize") == "l1":
            f = normalize_l1(f)
        return f
    raise StructuralError(f"unknown function spec kind {kind!r}")


def normalize_l1(f: SpectralField) -> SpectralField:
    m = f.norm(1)
    if m == 0:
        raise DomainError("cannot normalise the zero field")
    return SpectralField(f.grid, f.data / m, f.representation)


def narrow_bump(grid: GridSpec, width: float = 0.1, kind: str = "gaussian") -> SpectralField:
    """L1-normalised narrow datum of the given width.

    ``kind="mollifier"`` is the compact ``exp(-1/(1-r^2))`` bump of diameter
    ``width``.  ``kind="gaussian"`` is a Gaussian with ``sigma = width/2`` cut
    to zero beyond ``8 sigma``: its Fourier tail is Gaussian, which keeps
    Schrodinger evolution inside a periodic box.
    """
    if kind == "mollifier":
        prof = family("bump", {"radius": width / 2})
    elif kind == "gaussian":
        s = width / 2
        g = family("gaussian", {"sigma": s})
        prof = lambda r: np.where(np.abs(r) <= 8 * s, g(r), 0.0)
    else:
        raise StructuralError(f"unknown bump kind {kind!r}")
    return normalize_l1(field_from_function(grid, prof))


def gaussian_field(grid: GridSpec, sigma: float) -> SpectralField:
    """Unit-mass centred Gaussian with per-axis variance ``sigma^2``."""
    r = grid.radius()
    return SpectralField(grid, (2 * np.pi * sigma ** 2) ** (-grid.n / 2) * np.exp(-r ** 2 / (2 * sigma ** 2)))


def heat_kernel_value(t: float, n: int, x) -> float:
    """``(4 pi t)^(-n/2) exp(-|x|^2 / (4t))``."""
    if t <= 0:
        raise DomainError("heat kernel needs t > 0")
    r2 = float(np.sum(np.asarray(x, dtype=float) ** 2))
    return (4 * math.pi * t) ** (-n / 2) * math.exp(-r2 / (4 * t))


def heat_kernel_constant(r, n: int) -> float:
    """``C_r`` in ``||K_t||_r = C_r t^(-(n/2)(1-1/r))``: ``(4 pi)^(-(n/2)(1-1/r)) r^(-n/(2r))``."""
    r = exponent(r)
    if r is INF:
        return (4 * math.pi) ** (-n / 2)
    rf = float(r)
    if rf < 1:
        raise DomainError("kernel norm needs r >= 1")
    return (4 * math.pi) ** (-(n / 2) * (1 - 1 / rf)) * rf ** (-n / (2 * rf))


def heat_kernel_decay_exponent(r, n: int) -> float:
    r = exponent(r)
    inv = 0.0 if r is INF else 1.0 / float(r)
    return -(n / 2) * (1 - inv)


def heat_kernel_norm(t: float, r, n: int) -> float:
    if t <= 0:
        raise DomainError("kernel norm needs t > 0")
    return heat_kernel_constant(r, n) * t ** heat_kernel_decay_exponent(r, n)


def heat_kernel_norm_quadrature(t: float, r, n: int) -> float:
    """Independent check of :func:`heat_kernel_norm` by 1-D (radial for n=2) quadrature."""
    r = exponent(r)
    if r is INF:
        return heat_kernel_value(t, n, np.zeros(n))
    rf = float(r)
    kr = lambda s: ((4 * math.pi * t) ** (-n / 2) * math.exp(-s * s / (4 * t))) ** rf
    if n == 1:
        val, _ = _spi.quad(kr, -math.inf, math.inf, epsabs=0, epsrel=1e-12)
    else:
        val, _ = _spi.quad(lambda s: 2 * math.pi * s * kr(s), 0, math.inf, epsabs=0, epsrel=1e-12)
    return val ** (1 / rf)


def _require_physical(f: SpectralField):
    if f.representation != "physical":
        raise StructuralError("propagators take fields in physical representation")


def heat_propagate(f: SpectralField, t: float) -> SpectralField:
    if t < 0:
        raise DomainError("heat flow runs forward only (t >= 0)")
    _require_physical(f)
    if t == 0:
        return f
    mult = np.exp(-f.grid.xi_squared() * t)
    return SpectralField(f.grid, np.fft.ifftn(np.fft.fftn(f.data) * mult))


def schrodinger_propagate(f: SpectralField, t: float) -> SpectralField:
    _require_physical(f)
    if t == 0:
        return f
    mult = np.exp(-1j * f.grid.xi_squared() * t)
    return SpectralField(f.grid, np.fft.ifftn(np.fft.fftn(f.data) * mult))


def gaussian_heat_solution(grid: GridSpec, sigma: float, t: float) -> np.ndarray:
    """Unit-mass Gaussian of variance ``sigma^2`` evolved by heat: variance ``sigma^2 + 2t``."""
    return gaussian_field(grid, math.sqrt(sigma ** 2 + 2 * t)).data.real


def gaussian_schrodinger_solution(grid: GridSpec, sigma: float, t: float) -> np.ndarray:
    """Unit-mass Gaussian under ``e^{it Delta}``: complex variance ``sigma^2 + 2 i t``."""
    s2 = sigma ** 2 + 2j * t
    r = grid.radius()
    return (2 * np.pi * s2) ** (-grid.n / 2) * np.exp(-r ** 2 / (2 * s2))


def spectral_radius(f: SpectralField, tol: float = 1e-10) -> float:
    """Smallest ``R`` with ``sum_{|xi|>R} |f_hat| <= tol * sum |f_hat|``."""
    fh = np.abs(f.to_frequency().data).ravel()
    total = fh.sum()
    if total == 0:
        return 0.0
    xr = f.grid.xi_norm().ravel()
    order = np.argsort(xr, kind="stable")
    tail = total - np.cumsum(fh[order])
    i = int(np.argmax(tail <= tol * total))
    return float(xr[order][i])


def schrodinger_window(f: SpectralField, tol: float = 1e-10) -> float:
    """Largest ``|t|`` with ``R * 2|t| < L/2``."""
    R = spectral_radius(f, tol)
    return math.inf if R == 0 else f.grid.L / (4 * R)


def guard_band_fraction(u: SpectralField, band: float = 0.1) -> float:
    """Share of ``||u||_1`` in the outer ``band * L`` of the box along any axis."""
    a = np.abs(u.to_physical().data)
    total = a.sum()
    if total == 0:
        return 0.0
    edge = np.abs(u.grid.axis) > (1 - band) * u.grid.L
    mask = edge if u.grid.n == 1 else (edge[:, None] | edge[None, :])
    return float(a[mask].sum() / total)


def heat_in_window(u: SpectralField, tol: float = 1e-8, band: float = 0.1) -> bool:
    return guard_band_fraction(u, band) < tol


class DecayCheck(NamedTuple):
    lhs: float
    rhs: float
    passed: bool
    in_window: bool


class DispersiveCheck(NamedTuple):
    lhs: float
    rhs: float
    constant_used: float
    passed: bool
    in_window: bool


def sup_norm_decay_check(f: SpectralField, t: float, rtol: float = 1e-6) -> DecayCheck:
    """``||e^{it Delta} f||_inf <= (4 pi |t|)^(-n/2) ||f||_1``."""
    if t == 0:
        raise DomainError("decay bound needs t != 0")
    n = f.grid.n
    lhs = schrodinger_propagate(f, t).norm(INF)
    rhs = (4 * math.pi * abs(t)) ** (-n / 2) * f.norm(1)
    ok = abs(t) <= schrodinger_window(f)
    return DecayCheck(lhs, rhs, lhs <= rhs * (1 + rtol), ok)


def schrodinger_endpoints(t: float, n: int):
    """``L_2 -> L_2`` with norm 1 and ``L_1 -> L_inf`` with ``(4 pi |t|)^(-n/2)``."""
    return (EndpointBound(2, 2, 1.0, "analytic", "unitary"),
            EndpointBound(1, INF, (4 * math.pi * abs(t)) ** (-n / 2), "analytic", "(4pi|t|)^(-n/2)"))


def dispersive_constant(t: float, n: int, p):
    """Geometric-mean norm for ``L_{p'} -> L_p`` from the Schrodinger endpoints.

    Returns ``(M_theta, theta, p_in)``; ``theta = 1 - 2/p`` and ``p_in = p'``.
    """
    p = exponent(p)
    if p is not INF and p < 2:
        raise DomainError("dispersive estimate needs p >= 2")
    theta = 1 - 2 * Fraction(0 if p is INF else 1 / p)
    e0, e1 = schrodinger_endpoints(t, n)
    p_in, _ = riesz_thorin_exponents(e0.p_in, e0.q_out, e1.p_in, e1.q_out, theta)
    th = float(theta)
    return e0.M ** (1 - th) * e1.M ** th, th, p_in


def dispersive_estimate_check(f: SpectralField, t: float, p, rtol: float = 1e-6) -> DispersiveCheck:
    """``||e^{it Delta} f||_p <= C |t|^(-n(1/2-1/p)) ||f||_{p'}`` with ``C = (4 pi)^(-n(1/2-1/p))``."""
    p = exponent(p)
    if t == 0:
        raise DomainError("dispersive estimate needs t != 0")
    n = f.grid.n
    M, _, p_in = dispersive_constant(t, n, p)
    inv = 0.0 if p is INF else 1.0 / float(p)
    C = (4 * math.pi) ** (-n * (0.5 - inv))
    lhs = schrodinger_propagate(f, t).norm(p)
    rhs = M * f.norm(p_in)
    ok = abs(t) <= schrodinger_window(f)
    return DispersiveCheck(lhs, rhs, C, lhs <= rhs * (1 + rtol), ok)


@dataclass(frozen=True)
class DecayFit:
    exponent: float
    intercept: float
    r_squared: float
    t_range: tuple


def fit_decay_exponent(norm_samples: Sequence) -> DecayFit:
    """Least-squares line through ``(ln t, ln value)``."""
    s = np.asarray(norm_samples, dtype=float)
    if s.ndim != 2 or s.shape[1] != 2:
        raise StructuralError("samples must be (t, value) pairs")
    if s.shape[0] < 5:
        raise DomainError(f"decay fit needs >= 5 samples, got {s.shape[0]}")
    t, v = s[:, 0], s[:, 1]
    if np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise DomainError("times must be positive and increasing")
    if np.any(v <= 0):
        raise DomainError("norm samples must be > 0 for a log-log fit")
    res = _sps.linregress(np.log(t), np.log(v))
    return DecayFit(float(res.slope), float(res.intercept), float(min(1.0, res.rvalue ** 2)),
                    (float(t[0]), float(t[-1])))


def mixed_spacetime_norm(u_snapshots: Sequence, q_time, r_space) -> float:
    """Trapezoidal ``(∫ ||u(t)||_r^q dt)^(1/q)``; ``sup_t ||u(t)||_r`` for ``q = inf``."""
    if not u_snapshots:
        raise StructuralError("no snapshots")
    g0 = u_snapshots[0][1].grid
    ts, vals = [], []
    for t, u in u_snapshots:
        if u.grid != g0:
            raise StructuralError("snapshots live on different grids")
        ts.append(float(t))
        vals.append(u.norm(r_space))
    ts, vals = np.asarray(ts), np.asarray(vals)
    if np.any(np.diff(ts) <= 0):
        raise StructuralError("snapshot times must increase")
    q = exponent(q_time)
    if q is INF:
        return float(vals.max())
    if ts.size < 2:
        raise StructuralError("finite time exponent needs at least two snapshots")
    qf = float(q)
    return float(np.trapezoid(vals ** qf, ts) ** (1 / qf))


class WeakSmoothingRow(NamedTuple):
    label: str
    input_weak: float
    input_strong: float
    output_weak: float
    ratio: float


def weak_space_smoothing_check(f: SpectralField, t: float, q, p, label: str = "") -> WeakSmoothingRow:
    """Weak norms of heat-evolved data: ``||T_t f||_{p,inf} / ||f||_{q,inf}``."""
    q, p = exponent(q), exponent(p)
    if float(p) < float(q):
        raise DomainError("weak smoothing needs p >= q")
    u = heat_propagate(f, t)
    fin = f.modulus()
    wi = weak_norm(fin, q)
    si = lebesgue_norm(fin, q)
    wo = weak_norm(u.modulus(), p)
    return WeakSmoothingRow(label, wi, si, wo, wo / wi if wi > 0 else 0.0)


def truncated_power(grid: GridSpec, q, eps: float, outer: float = 1.0, level: int = 8) -> SpectralField:
    """``|x|^(-1/q)`` on ``eps < |x| <= outer`` as cell averages (1-D)."""
    if grid.n != 1:
        raise DomainError("truncated power data is built in 1-D")
    h = grid.h
    edges = np.concatenate([grid.axis - h / 2, [grid.axis[-1] + h / 2]])
    func = family("power", {"exponent": -1.0 / float(exponent(q)), "cutoff": eps, "outer": outer})
    vals = Quadrature("refined-midpoint", level).cell_values(func, edges)
    return SpectralField(grid, vals)


def truncated_power_norms(q, eps: float, outer: float = 1.0) -> tuple[float, float]:
    """Exact ``(weak q-norm, strong q-norm)`` of ``|x|^(-1/q) 1{eps<|x|<=outer}`` on the line."""
    qf = float(exponent(q))
    strong = (2 * math.log(outer / eps)) ** (1 / qf)
    S = 2 * (outer - eps)
    beta = 1 - 1 / qf
    mass = 2 * (outer ** beta - eps ** beta) / beta

    def cum(s):  # ∫_0^s f*, f*(s) = (eps + s/2)^(-1/q)
        s = min(s, S)
        return 2 * ((eps + s / 2) ** beta - eps ** beta) / beta

    def neg(s):
        return -(s ** (1 / qf)) * cum(s) / s
    # t^(1/q) f** rises on the support and decays as mass t^(1/q - 1) after it
    res = minimize_scalar(neg, bounds=(1e-12, S), method="bounded", options={"xatol": 1e-12})
    weak = max(-res.fun, S ** (1 / qf) * mass / S)
    return weak, strong


class HeatOperator(LinearOperator):
    """Spectral heat propagator at fixed ``t`` acting on real grid functions."""

    name = "heat"

    def __init__(self, grid: GridSpec, t: float):
        if t <= 0:
            raise DomainError("heat operator needs t > 0")
        self.grid, self.t = grid, float(t)
        m = np.full(grid.N ** grid.n, grid.cell_measure)
        edges = (np.concatenate([grid.axis - grid.h / 2, [grid.axis[-1] + grid.h / 2]])
                 if grid.n == 1 else None)
        super().__init__(m, edges)
        self._mult = np.exp(-grid.xi_squared() * self.t)

    def apply(self, f: SampledFunction) -> SampledFunction:
        v = np.asarray(f.values, dtype=float).reshape(self.grid.shape)
        out = np.fft.ifftn(np.fft.fftn(v) * self._mult).real.ravel()
        return SampledFunction(out, self.measures, f"T_t[{f.label}]", True, self.edges)

    def candidates(self, p_in):
        yield from super().candidates(p_in)
        for w in (0.05, 0.2, 1.0):
            g = gaussian_field(self.grid, max(w, self.grid.h)).data.real.ravel()
            yield self.template(g, f"gaussian-{w}")

    def endpoints(self):
        """``L_1 -> L_1`` (mass), ``L_inf -> L_inf`` (contraction), ``L_1 -> L_inf`` (kernel peak)."""
        n = self.grid.n
        return {
            "l1": EndpointBound(1, 1, 1.0, "analytic", "unit kernel mass"),
            "linf": EndpointBound(INF, INF, 1.0, "analytic", "unit kernel mass"),
            "l1-linf": EndpointBound(1, INF, (4 * math.pi * self.t) ** (-n / 2), "analytic",
                                     "(4pi t)^(-n/2)"),
        }


__all__ = [
    "GridSpec", "SpectralField", "DecayFit", "DecayCheck", "DispersiveCheck", "HeatOperator",
    "heat_kernel_value", "heat_kernel_norm", "heat_kernel_constant", "heat_kernel_norm_quadrature",
    "heat_kernel_decay_exponent", "heat_propagate", "schrodinger_propagate",
    "sup_norm_decay_check", "dispersive_estimate_check", "dispersive_constant",
    "fit_decay_exponent", "mixed_spacetime_norm", "weak_space_smoothing_check",
    "truncated_power", "truncated_power_norms", "narrow_bump", "gaussian_field",
    "gaussian_heat_solution", "gaussian_schrodinger_solution", "spectral_radius",
    "schrodinger_window", "guard_band_fraction", "heat_in_window", "field_from_spec",
    "field_from_function", "normalize_l1", "schrodinger_endpoints",
]
