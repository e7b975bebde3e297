"""Static SVG figures: rearrangement staircase, convexity square, heat vs Schrodinger profiles."""
from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .evolve import GridSpec, heat_propagate, narrow_bump, schrodinger_propagate  # noqa: E402
from .measure_core import SampledFunction  # noqa: E402
from .rearrange import decreasing_rearrangement, maximal_average  # noqa: E402

# fixed ids and no timestamp, so identical inputs give identical bytes
_RC = {"svg.hashsalt": "interpkit", "svg.fonttype": "path", "path.simplify": False}


def _svg_bytes(fig) -> bytes:
    buf = io.BytesIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def _steps(edges, values):
    x = np.repeat(edges, 2)[1:-1]
    y = np.repeat(values, 2)
    return x, y


def rearrangement_figure(f: SampledFunction) -> bytes:
    """Two panels: ``|f|`` on its cells, and ``f*`` with ``f**`` on ``[0, support]``."""
    with plt.rc_context(_RC):
        fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8, 3.2), sharey=True)
        edges = f.edges if f.edges is not None else np.concatenate([[0.0], np.cumsum(f.measures)])
        ax0.plot(*_steps(edges, np.abs(f.values)), color="tab:blue")
        ax0.set_title("|f|")
        ax0.set_xlabel("x")
        prof = decreasing_rearrangement(f)
        if prof.levels.size:
            ax1.plot(*_steps(prof.edges, prof.levels), color="tab:red", label="f*")
            t = np.linspace(prof.support * 1e-3, prof.support * 1.25, 400)
            ax1.plot(t, maximal_average(prof, t), color="tab:gray", ls="--", label="f**")
            ax1.legend(frameon=False)
        ax1.set_title("decreasing rearrangement")
        ax1.set_xlabel("t")
        fig.tight_layout()
        return _svg_bytes(fig)


def convexity_figure(p0, p1, theta: float) -> bytes:
    """Unit square in ``(1/p, 1/q)`` with two endpoints and the interpolated point."""
    (x0, y0), (x1, y1) = p0, p1
    xt, yt = (1 - theta) * x0 + theta * x1, (1 - theta) * y0 + theta * y1
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4, 4))
        ax.plot([0, 1, 1, 0, 0], [0, 0, 1, 1, 0], color="black", lw=0.8)
        ax.plot([x0, x1], [y0, y1], color="tab:blue")
        ax.scatter([x0, x1], [y0, y1], color="tab:blue", zorder=3)
        ax.scatter([xt], [yt], color="tab:red", zorder=4)
        ax.annotate("(1/p0, 1/q0)", (x0, y0), textcoords="offset points", xytext=(6, 4))
        ax.annotate("(1/p1, 1/q1)", (x1, y1), textcoords="offset points", xytext=(6, 4))
        ax.annotate(f"theta={theta:g}", (xt, yt), textcoords="offset points", xytext=(6, -12))
        ax.set_xlim(-0.05, 1.05)
        ax.set_ylim(-0.05, 1.05)
        ax.set_xlabel("1/p")
        ax.set_ylabel("1/q")
        ax.set_aspect("equal")
        fig.tight_layout()
        return _svg_bytes(fig)


def evolution_figure(times=(0.5, 2.0), L: float = 64.0, N: int = 8192, width: float = 0.1,
                     decay_tables=None) -> bytes:
    """Heat and Schrodinger ``|u|`` at two times, with the ``(4 pi t)^(-1/2)`` envelope.

    ``decay_tables`` maps a label to ``[(t, norm), ...]`` rows (sup norms) drawn as a
    log-log inset.
    """
    grid = GridSpec(1, L, N)
    f = narrow_bump(grid, width)
    x = grid.axis
    keep = np.abs(x) <= min(L, 12.0)
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.4), sharey=True)
        for ax, name, prop in ((axes[0], "heat", heat_propagate), (axes[1], "Schrodinger", schrodinger_propagate)):
            for t in times:
                u = np.abs(prop(f, t).data)
                ax.plot(x[keep], u[keep], lw=0.9, label=f"t={t:g}")
                ax.axhline((4 * math.pi * t) ** -0.5, color="gray", ls=":", lw=0.8)
            ax.set_title(name)
            ax.set_xlabel("x")
            ax.set_yscale("log")
            ax.set_ylim(1e-3, None)
            ax.legend(frameon=False, fontsize=8)
        axes[0].set_ylabel("|u(x,t)|  (dotted: (4 pi t)^-1/2)")
        if decay_tables:
            inset = axes[1].inset_axes([0.62, 0.55, 0.35, 0.4])
            for label, rows in sorted(decay_tables.items()):
                rows = np.asarray(rows, dtype=float)
                inset.loglog(rows[:, 0], rows[:, 1], marker="o", ms=2, lw=0.8, label=label)
            tt = np.geomspace(min(r[0] for rs in decay_tables.values() for r in rs),
                              max(r[0] for rs in decay_tables.values() for r in rs), 50)
            inset.loglog(tt, (4 * math.pi * tt) ** -0.5, color="gray", ls=":")
            inset.tick_params(labelsize=6)
            inset.legend(frameon=False, fontsize=6)
        fig.tight_layout()
        return _svg_bytes(fig)


__all__ = ["rearrangement_figure", "convexity_figure", "evolution_figure"]
