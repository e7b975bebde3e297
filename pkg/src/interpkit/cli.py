"""Command-line entry point: ``interpkit <subcommand> [options]``.

Exit status: 0 success, 1 a checked inequality failed, 2 usage or structural error.
Every CSV starts with ``#`` comment lines holding the tool version and the full
run configuration; every JSON output carries the same under ``"interpkit"``.
Relative output paths resolve against ``$INTERPKIT_OUTDIR`` (default: cwd).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .evolve import (
    GridSpec, HeatOperator, dispersive_constant, field_from_spec, fit_decay_exponent,
    heat_in_window, heat_kernel_norm, heat_propagate, narrow_bump, schrodinger_propagate,
    schrodinger_window,
)
from .interpolate import EndpointBound, k_exact, k_optimized, verify_geometric_mean_bound
from .lorentz import lorentz_any
from .measure_core import (
    INF, DomainError, SampledFunction, StructuralError, exponent, function_from_spec, grid_edges,
    is_inf,
)
from .operators import (
    DiscreteConvolution, HardyOperator, IdentityOperator, estimate_operator_norm,
    hardy_ratio_sweep,
)
from .rearrange import decreasing_rearrangement, maximal_average

DEFAULT_SEED = 20240601
OUTDIR_ENV = "INTERPKIT_OUTDIR"
SUBCOMMANDS = ("rearrange", "lorentz", "hardy", "opnorm", "kfunc", "interp-verify", "heat",
               "schrodinger", "fit", "figures")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    tol: float | None = None
    grid: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def echo(self) -> dict:
        return asdict(self)


# -- parsing helpers --------------------------------------------------------

def _ext(s):
    """Extended real from the command line, exact where possible."""
    s = str(s).strip()
    if s.lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        return exponent(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {s!r}")


def _floats(s):
    try:
        return [float(x) for x in str(s).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {s!r}")


def _exts(s):
    return [_ext(x) for x in str(s).split(",") if x.strip()]


def _num(x):
    """JSON/CSV-safe rendering: floats as repr, infinities as 'inf'."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, float) and math.isnan(obj):
        return "nan"
    return _num(obj)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"input file not found: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e.msg} (line {e.lineno})")


def _load_function(path) -> SampledFunction:
    spec = _read_json(path)
    if not isinstance(spec, dict):
        raise UsageError(f"{path}: function spec must be a JSON object")
    try:
        return function_from_spec(spec)
    except KeyError as e:
        raise UsageError(f"{path}: function spec is missing field {e}")


def resolve_output(path):
    if path is None or os.path.isabs(path):
        return path
    return os.path.join(os.environ.get(OUTDIR_ENV, "."), path)


# -- atomic output ------------------------------------------------------------

def atomic_write(path, data):
    data = data.encode() if isinstance(data, str) else data
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(config: RunConfig):
    return {"tool": "interpkit", "version": __version__, "config": _jsonable(config.echo())}


def write_csv(path, config: RunConfig, columns, rows):
    buf = io.StringIO()
    buf.write(f"# interpkit {__version__}\n")
    buf.write("# config: " + json.dumps(_header(config)["config"], sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) and not is_inf(v) else _num(v)
                    for v in r])
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def write_json(path, config: RunConfig, payload):
    doc = {"interpkit": _header(config), **_jsonable(payload)}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def read_csv(path, required):
    """Rows of an interpkit CSV as dicts; checks the column set."""
    try:
        with open(path) as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
    except FileNotFoundError:
        raise UsageError(f"input file not found: {path}")
    reader = csv.DictReader(lines)
    cols = reader.fieldnames or []
    missing = [c for c in required if c not in cols]
    if missing:
        raise UsageError(f"{path}: schema mismatch, missing columns {missing} (have {cols})")
    return list(reader)


# -- subcommands ---------------------------------------------------------------

def _tol(config, default):
    return default if config.tol is None else float(config.tol)


def cmd_rearrange(config: RunConfig) -> int:
    f = _load_function(config.inputs["data"])
    prof = decreasing_rearrangement(f)
    ts = config.options.get("t")
    if ts is None:
        top = prof.support if prof.levels.size else 1.0
        ts = list(np.linspace(0.0, 1.5 * top, 31)[1:])
    if any(t <= 0 for t in ts):
        raise UsageError("--t values must be > 0 (f** is undefined at t = 0)")
    ts = np.asarray(ts, dtype=float)
    fs, fss = prof(ts), maximal_average(prof, ts)
    write_csv(config.outputs.get("out"), config, ["t", "f_star", "f_star_star"],
              zip(ts, np.atleast_1d(fs), np.atleast_1d(fss)))
    if config.outputs.get("svg"):
        from .figures import rearrangement_figure
        atomic_write(config.outputs["svg"], rearrangement_figure(f))
    return EXIT_OK


def cmd_lorentz(config: RunConfig) -> int:
    f = _load_function(config.inputs["data"])
    rows = []
    for p, q in config.options["index"]:
        v = lorentz_any(f, p, q)
        rows.append((p, q, v, int(not is_inf(v))))
    write_csv(config.outputs.get("out"), config, ["p", "q", "norm", "finite_flag"], rows)
    return EXIT_OK


def cmd_hardy(config: RunConfig) -> int:
    tol = _tol(config, 1e-6)
    rows, ok = [], True
    for p in config.options["p"]:
        for r in hardy_ratio_sweep(p, config.options["eps"], config.grid["cells_per_decade"]):
            ok &= r.ratio <= r.bound * (1 + tol)
            rows.append((r.p, r.eps, r.ratio, r.bound))
    write_csv(config.outputs.get("out"), config, ["p", "eps", "ratio", "bound"], rows)
    return EXIT_OK if ok else EXIT_FAIL


def _build_operator(config: RunConfig):
    op = config.options["op"]
    g = config.grid
    if op == "identity":
        e = grid_edges(0.0, 1.0, g["cells"])
        return IdentityOperator(np.diff(e), e)
    if op == "convolution":
        e = grid_edges(-g["L"], g["L"], g["cells"])
        x = 0.5 * (e[1:] + e[:-1])
        w = config.options["kernel_width"]
        return DiscreteConvolution(SampledFunction(np.exp(-x ** 2 / (2 * w * w)), np.diff(e), "gaussian-kernel",
                                                   edges=e))
    if op == "hardy":
        return HardyOperator.geometric(config.options["hardy_lower"], 1.0, g["cells_per_decade"])
    if op == "heat":
        return HeatOperator(GridSpec(g["n"], g["L"], g["N"]), config.options["time"])
    raise UsageError(f"unknown operator {op!r}; choose identity, convolution, hardy or heat")


def _witness_json(f: SampledFunction):
    return {"label": f.label, "values": f.values, "measures": f.measures}


def cmd_opnorm(config: RunConfig) -> int:
    T = _build_operator(config)
    est = estimate_operator_norm(T, config.options["p_in"], config.options["q_out"],
                                 config.options["samples"], config.seed)
    write_json(config.outputs.get("out"), config, {
        "operator": T.name, "p_in": config.options["p_in"], "q_out": config.options["q_out"],
        "lower_bound": est.lower_bound, "samples_used": est.samples_used, "seed": est.seed,
        "library_version": est.library_version, "witness": _witness_json(est.witness)})
    return EXIT_OK


def cmd_kfunc(config: RunConfig) -> int:
    tol = _tol(config, 1e-10)
    f = _load_function(config.inputs["data"])
    ts = config.options.get("t")
    if ts is None:
        s = decreasing_rearrangement(f).support or 1.0
        ts = list(np.geomspace(1e-3 * s, 2 * s, 25))
    if any(t <= 0 for t in ts):
        raise UsageError("--t values must be > 0")
    rows, ok = [], True
    grid = config.options["lambda_grid"]
    for t in ts:
        a, b = k_exact(f, t), k_optimized(f, t, grid)
        ok &= abs(a - b) <= tol * max(1.0, abs(a))
        rows.append((float(t), a, b))
    write_csv(config.outputs.get("out"), config, ["t", "K_exact", "K_optimized"], rows)
    return EXIT_OK if ok else EXIT_FAIL


def _endpoints(config: RunConfig, T):
    op = config.options["op"]
    o = config.options
    if op == "identity":
        return (EndpointBound(o["p0"], o["p0"], 1.0, "analytic", "identity"),
                EndpointBound(o["p1"], o["p1"], 1.0, "analytic", "identity"))
    if op == "convolution":
        return (EndpointBound(1, 1, T.mass, "analytic", "kernel mass"),
                EndpointBound(INF, INF, T.mass, "analytic", "kernel mass"))
    if op == "hardy":
        p0, p1 = o["p0"], o["p1"]
        for p in (p0, p1):
            if is_inf(p) or p <= 1:
                raise UsageError("Hardy endpoints need 1 < p < inf (unbounded endpoint at p = 1)")
        c = lambda p: float(p) / (float(p) - 1.0)
        return (EndpointBound(p0, p0, c(p0), "analytic", "p/(p-1)"),
                EndpointBound(p1, p1, c(p1), "analytic", "p/(p-1)"))
    ep = T.endpoints()
    pair = o["heat_pair"]
    if pair == "l1-linf":
        return ep["l1"], ep["linf"]
    if pair == "l1-dispersive":
        return ep["l1"], ep["l1-linf"]
    raise UsageError(f"unknown heat endpoint pair {pair!r}")


def cmd_interp_verify(config: RunConfig) -> int:
    o = config.options
    if o["op"] in ("identity", "hardy"):
        o["p0"] = o["p0"] if o["p0"] is not None else o["p"]
        o["p1"] = o["p1"] if o["p1"] is not None else o["p0"]
        if o["p0"] is None:
            raise UsageError(f"--op {o['op']} needs --p (or --p0/--p1)")
    T = _build_operator(config)
    e0, e1 = _endpoints(config, T)
    rep = verify_geometric_mean_bound(T, e0, e1, o["theta"], o["samples"], config.seed,
                                      _tol(config, 1e-9))
    write_json(config.outputs.get("out"), config, {
        "p_theta": rep.p_theta, "q_theta": rep.q_theta, "theta": rep.theta, "bound": rep.bound,
        "max_ratio": rep.max_ratio, "samples_used": rep.samples_used, "violations": rep.violations,
        "endpoints": [{"p_in": e.p_in, "q_out": e.q_out, "M": e.M, "formula": e.formula} for e in (e0, e1)],
        "witness": _witness_json(rep.witness) if rep.witness is not None else None,
        "pass": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


def _datum(config: RunConfig, grid: GridSpec, kind: str):
    path = config.inputs.get("data")
    if path is None:
        return narrow_bump(grid, 0.1, kind)
    spec = _read_json(path)
    try:
        return field_from_spec(grid, spec)
    except KeyError as e:
        raise UsageError(f"{path}: function spec is missing field {e}")


def _evolution_rows(config: RunConfig, flow: str):
    g = config.grid
    grid = GridSpec(g["n"], g["L"], g["N"])
    tol = _tol(config, 1e-6)
    f = _datum(config, grid, "mollifier" if flow == "heat" else "gaussian")
    norms = config.options["norms"]
    rows, failed = [], False
    f1 = f.norm(1)
    tmax = schrodinger_window(f) if flow == "schrodinger" else None
    for t in config.options["times"]:
        if flow == "heat":
            if t <= 0:
                raise UsageError("heat times must be > 0")
            u = heat_propagate(f, t)
            window = heat_in_window(u)
        else:
            if t == 0:
                raise UsageError("Schrodinger decay checks need t != 0")
            u = schrodinger_propagate(f, t)
            window = abs(t) <= tmax
        for p in norms:
            val = u.norm(p)
            if flow == "heat":
                # Young with a unit exponent: ||K_t * f||_p <= ||K_t||_p ||f||_1
                bound = heat_kernel_norm(t, p, grid.n) * f1
            elif not is_inf(p) and p < 2:
                bound = math.nan
            else:
                M, _, p_in = dispersive_constant(t, grid.n, p)
                bound = M * f.norm(p_in)
            if math.isnan(bound):
                status = "n/a"
            elif not window:
                status = "out_of_window"
            elif val <= bound * (1 + tol):
                status = "pass"
            else:
                status, failed = "fail", True
            rows.append((float(t), p, val, bound, status))
    return grid, rows, failed


def cmd_evolve(config: RunConfig) -> int:
    flow = config.subcommand
    grid, rows, failed = _evolution_rows(config, flow)
    write_csv(config.outputs.get("out"), config, ["t", "p", "norm", "predicted_bound", "pass"], rows)
    if config.outputs.get("svg"):
        from .figures import evolution_figure
        sup = [(t, v) for t, p, v, _, _ in rows if is_inf(p)]
        ts = sorted({r[0] for r in rows})
        pair = (ts[0], ts[-1]) if len(ts) > 1 else (ts[0],)
        atomic_write(config.outputs["svg"], evolution_figure(
            pair, decay_tables={flow: sup} if len(sup) > 1 else None))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_fit(config: RunConfig) -> int:
    rows = read_csv(config.inputs["csv"], ["t", "p", "norm"])
    want = config.options["p"]
    pts = [(float(r["t"]), float(r["norm"])) for r in rows if _ext(r["p"]) == want]
    if not pts:
        raise UsageError(f"no rows with p = {_num(want)} in {config.inputs['csv']}")
    pts.sort()
    if len(pts) < 5:
        raise UsageError(f"decay fit needs >= 5 time samples, found {len(pts)}; rerun with more --times")
    fit = fit_decay_exponent(pts)
    write_json(config.outputs.get("out"), config, {
        "p": want, "exponent": fit.exponent, "intercept": fit.intercept, "r_squared": fit.r_squared,
        "t_range": list(fit.t_range), "samples": len(pts)})
    return EXIT_OK


def cmd_figures(config: RunConfig) -> int:
    from . import figures
    style, o = config.options["style"], config.options
    out = config.outputs.get("out")
    if out is None:
        raise UsageError("figures needs --out")
    if style == "figure1":
        if config.inputs.get("data"):
            f = _load_function(config.inputs["data"])
        else:
            f = SampledFunction([3.0, 1.0], [1.0, 2.0], "f")
        data = figures.rearrangement_figure(f)
    elif style == "figure2":
        pts = o["endpoints"]
        data = figures.convexity_figure(pts[0], pts[1], o["theta"])
    elif style == "figure3":
        tables = {}
        for path in config.inputs.get("csv") or []:
            rows = read_csv(path, ["t", "p", "norm", "predicted_bound", "pass"])
            sup = sorted((float(r["t"]), float(r["norm"])) for r in rows if _ext(r["p"]) is INF)
            if not sup:
                raise UsageError(f"{path}: no p = inf rows to draw")
            tables[os.path.basename(path)] = sup
        data = figures.evolution_figure(tuple(o["times"][:2]), decay_tables=tables or None)
    else:
        raise UsageError(f"unknown figure style {style!r}")
    atomic_write(out, data)
    return EXIT_OK


DISPATCH = {
    "rearrange": cmd_rearrange, "lorentz": cmd_lorentz, "hardy": cmd_hardy, "opnorm": cmd_opnorm,
    "kfunc": cmd_kfunc, "interp-verify": cmd_interp_verify, "heat": cmd_evolve,
    "schrodinger": cmd_evolve, "fit": cmd_fit, "figures": cmd_figures,
}


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the exit status."""
    if config.subcommand not in DISPATCH:
        raise UsageError(f"unknown subcommand {config.subcommand!r}; choose from {', '.join(SUBCOMMANDS)}")
    return DISPATCH[config.subcommand](config)


# -- argparse --------------------------------------------------------------------

def _index_list(s):
    out = []
    for item in str(s).split(","):
        if ":" not in item:
            raise UsageError(f"--index entries look like p:q, got {item!r}")
        p, q = item.split(":", 1)
        out.append((_ext(p), _ext(q)))
    return out


def _endpoint_pair(s):
    try:
        pts = [tuple(float(v) for v in pt.split(",")) for pt in str(s).split(";")]
    except ValueError:
        raise UsageError(f"--endpoints looks like 'x0,y0;x1,y1', got {s!r}")
    if len(pts) != 2 or any(len(p) != 2 for p in pts):
        raise UsageError(f"--endpoints looks like 'x0,y0;x1,y1', got {s!r}")
    return pts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance for PASS checks")
    common.add_argument("--out", default=None, help="output path (stdout if omitted)")

    # shared flags live on each subcommand (argparse lets sub-defaults clobber top-level values)
    ap = argparse.ArgumentParser(prog="interpkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"interpkit {__version__}")
    sub = ap.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    sub.required = True

    s = sub.add_parser("rearrange", parents=[common], help="f* and f** on a t-grid")
    s.add_argument("--data", required=True)
    s.add_argument("--t", default=None, help="comma-separated t values (> 0)")
    s.add_argument("--svg", default=None)

    s = sub.add_parser("lorentz", parents=[common], help="Lorentz and weak norms")
    s.add_argument("--data", required=True)
    s.add_argument("--index", default="2:1,2:2,2:inf", help="p:q pairs, e.g. 2:2,3:1,2:inf")

    s = sub.add_parser("hardy", parents=[common], help="Hardy ratio sweep for x^(-1/p+eps)")
    s.add_argument("--p", default="2")
    s.add_argument("--eps", default="0.25,0.1,0.05,0.02,0.01")
    s.add_argument("--cells-per-decade", type=int, default=100)

    for name, hlp in (("opnorm", "empirical operator-norm lower bound"),
                      ("interp-verify", "geometric-mean bound check")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--op", default="convolution", choices=["identity", "convolution", "hardy", "heat"])
        s.add_argument("--samples", type=int, default=1000)
        s.add_argument("--cells", type=int, default=64, help="cells for identity/convolution grids")
        s.add_argument("--L", type=float, default=None, help="half-length of the grid")
        s.add_argument("--N", type=int, default=256, help="points per axis (heat)")
        s.add_argument("--n", type=int, default=1, help="dimension (heat)")
        s.add_argument("--time", type=float, default=1.0, help="heat time")
        s.add_argument("--kernel-width", type=float, default=0.1)
        s.add_argument("--cells-per-decade", type=int, default=10, help="Hardy grid density")
        s.add_argument("--hardy-lower", type=float, default=1e-150, help="Hardy grid left edge")
        if name == "opnorm":
            s.add_argument("--p-in", default="2")
            s.add_argument("--q-out", default="2")
        else:
            s.add_argument("--theta", default="1/2")
            s.add_argument("--p", default=None, help="exponent for both endpoints (identity, hardy)")
            s.add_argument("--p0", default=None)
            s.add_argument("--p1", default=None)
            s.add_argument("--heat-pair", default="l1-linf", choices=["l1-linf", "l1-dispersive"])

    s = sub.add_parser("kfunc", parents=[common], help="K-functional, exact vs optimised")
    s.add_argument("--data", required=True)
    s.add_argument("--t", default=None)
    s.add_argument("--lambda-grid", type=int, default=16)

    for name, L, N, times in (("heat", 32.0, 4096, "0.25,0.5,1,2,4"),
                              ("schrodinger", 2048.0, 2 ** 18, "0.125,0.25,0.5,1,2")):
        s = sub.add_parser(name, parents=[common], help=f"{name} evolution norms vs predicted bounds")
        s.add_argument("--n", type=int, default=1)
        s.add_argument("--L", type=float, default=L)
        s.add_argument("--N", type=int, default=N)
        s.add_argument("--data", default=None, help="function-spec JSON (builtin evaluated on the grid)")
        s.add_argument("--times", default=times)
        s.add_argument("--norms", default="2,inf")
        s.add_argument("--svg", default=None)

    s = sub.add_parser("fit", parents=[common], help="log-log decay fit of a heat/schrodinger CSV")
    s.add_argument("--csv", required=True)
    s.add_argument("--p", default="inf", help="which norm rows to fit")

    s = sub.add_parser("figures", parents=[common], help="static SVG figures")
    s.add_argument("--style", required=True, choices=["figure1", "figure2", "figure3"])
    s.add_argument("--data", default=None, help="function spec (figure1)")
    s.add_argument("--endpoints", default="0.2,0.8;0.9,0.3", help="figure2 endpoint coordinates")
    s.add_argument("--theta", type=float, default=0.45)
    s.add_argument("--times", default="0.5,2")
    s.add_argument("--csv", action="append", default=None, help="heat/schrodinger CSV for the decay inset")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    c = RunConfig(ns.subcommand, seed=ns.seed, tol=ns.tol)
    c.outputs["out"] = resolve_output(ns.out)
    cmd = ns.subcommand
    if cmd in ("rearrange", "kfunc", "lorentz"):
        c.inputs["data"] = ns.data
    if cmd in ("rearrange", "kfunc"):
        c.options["t"] = None if ns.t is None else _floats(ns.t)
    if cmd == "rearrange":
        c.outputs["svg"] = resolve_output(ns.svg)
    elif cmd == "kfunc":
        c.options["lambda_grid"] = ns.lambda_grid
    elif cmd == "lorentz":
        c.options["index"] = _index_list(ns.index)
    elif cmd == "hardy":
        c.options.update(p=_exts(ns.p), eps=_floats(ns.eps))
        c.grid["cells_per_decade"] = ns.cells_per_decade
    elif cmd in ("opnorm", "interp-verify"):
        L = ns.L if ns.L is not None else (8.0 if ns.op == "heat" else 1.0)
        c.grid.update(cells=ns.cells, L=L, N=ns.N, n=ns.n, cells_per_decade=ns.cells_per_decade)
        c.options.update(op=ns.op, samples=ns.samples, time=ns.time, kernel_width=ns.kernel_width,
                         hardy_lower=ns.hardy_lower)
        if cmd == "opnorm":
            c.options.update(p_in=_ext(ns.p_in), q_out=_ext(ns.q_out))
        else:
            th = Fraction(ns.theta)
            c.options.update(theta=th, heat_pair=ns.heat_pair,
                             p=None if ns.p is None else _ext(ns.p),
                             p0=None if ns.p0 is None else _ext(ns.p0),
                             p1=None if ns.p1 is None else _ext(ns.p1))
    elif cmd in ("heat", "schrodinger"):
        c.inputs["data"] = ns.data
        c.grid.update(n=ns.n, L=ns.L, N=ns.N)
        c.options.update(times=_floats(ns.times), norms=_exts(ns.norms))
        c.outputs["svg"] = resolve_output(ns.svg)
    elif cmd == "fit":
        c.inputs["csv"] = ns.csv
        c.options["p"] = _ext(ns.p)
    elif cmd == "figures":
        c.inputs.update(data=ns.data, csv=ns.csv)
        c.options.update(style=ns.style, endpoints=_endpoint_pair(ns.endpoints), theta=ns.theta,
                         times=_floats(ns.times))
    return c


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return run(config_from_args(ns))
    except (UsageError, DomainError, StructuralError, ValueError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"interpkit {ns.subcommand}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
