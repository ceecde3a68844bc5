"""Figures: 2D Newton polytopes with a dilation, and sweep slack plots.

Output is deterministic for a fixed input: SVG ids are salted with a constant
and the date metadata is dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polytope import INF, LatticePolytope, Rational, format_rational  # noqa: E402

POLY_KWARGS = dict(facecolor="#9ecae1", edgecolor="#08519c", linewidth=1.2, alpha=0.6)
DILATION_KWARGS = dict(facecolor="#fdae6b", edgecolor="#a63603", linewidth=1.2, alpha=0.7, hatch="//")
LATTICE_KWARGS = dict(s=9, color="0.55", zorder=1)
WITNESS_KWARGS = dict(s=60, color="#cb181d", marker="*", zorder=5)


@dataclass
class PolytopePanel:
    title: str
    polytope: LatticePolytope
    dilation: Rational
    witness: Optional[tuple] = None


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_2d(points: Sequence[tuple]) -> list[tuple]:
    """Convex hull (counter-clockwise, no collinear points) by monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _style():
    return plt.rc_context({"svg.hashsalt": "valuebounds", "font.size": 9,
                           "svg.fonttype": "path", "axes.titlesize": 10})


def _draw_panel(ax, panel: PolytopePanel):
    P = panel.polytope
    if P.n != 2:
        raise ValueError(f"only 2-dimensional polytopes can be drawn, got dimension {P.n}")
    verts = hull_2d(list(P.generators) + [(0, 0)])
    top = max(max(g) for g in P.generators) + 1
    ax.scatter([x for x in range(top + 1) for _ in range(top + 1)],
               [y for _ in range(top + 1) for y in range(top + 1)], **LATTICE_KWARGS)
    ax.add_patch(plt.Polygon([tuple(map(float, v)) for v in verts], closed=True,
                             label=r"$\Delta$", **POLY_KWARGS))
    if panel.dilation != INF:
        k = Fraction(panel.dilation)
        scaled = [(float(k * x), float(k * y)) for x, y in verts]
        ax.add_patch(plt.Polygon(scaled, closed=True,
                                 label=f"{format_rational(k)} " + r"$\Delta$", **DILATION_KWARGS))
    if panel.witness is not None:
        ax.scatter([panel.witness[0]], [panel.witness[1]], label="witness", **WITNESS_KWARGS)
    ax.set_xlim(-0.3, top + 0.3)
    ax.set_ylim(-0.3, top + 0.3)
    ax.set_aspect("equal")
    ax.set_xticks(range(top + 1))
    ax.set_yticks(range(top + 1))
    ax.set_xlabel(r"$x_1$ exponent")
    ax.set_ylabel(r"$x_2$ exponent")
    ax.set_title(panel.title)
    ax.legend(loc="upper right", fontsize=7, frameon=False)


def plot_polytopes(panels: Sequence[PolytopePanel], path) -> Path:
    """Draw panels side by side and save (format from the file suffix)."""
    path = Path(path)
    for panel in panels:
        if panel.polytope.n != 2:
            raise ValueError(f"only 2-dimensional polytopes can be drawn, got dimension {panel.polytope.n}")
    with _style():
        fig, axes = plt.subplots(1, len(panels), figsize=(3.6 * len(panels), 3.6), squeeze=False)
        for ax, panel in zip(axes[0], panels):
            _draw_panel(ax, panel)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
        plt.close(fig)
    return path


def plot_sweep(reports, path) -> Path:
    """q^n - |V_f| against the polytope and degree subtrahends, one series per q.

    Points of the polytope series sit on or above the diagonal exactly when
    the polytope bound holds.
    """
    path = Path(path)
    rows = [r for r in reports if r.vf_size is not None and r.vf_size < r.q ** r.n]
    with _style():
        fig, ax = plt.subplots(figsize=(4.8, 4.0))
        top = 1.0
        for q in sorted({r.q for r in rows}):
            sub = [r for r in rows if r.q == q]
            gap = [r.q ** r.n - r.vf_size for r in sub]
            poly = [float(r.q ** r.n - r.bound_polytope_exact) for r in sub]
            mww = [float(r.q ** r.n - r.bound_mww_exact) for r in sub]
            ax.scatter(poly, gap, s=14, label=f"q={q} polytope", zorder=3)
            ax.scatter(mww, gap, s=10, marker="x", alpha=0.6, label=f"q={q} degree", zorder=2)
            top = max([top] + gap + poly + mww)
        ax.plot([0, top], [0, top], color="0.3", linewidth=0.8, linestyle="--")
        ax.set_xlabel("subtracted quantity in the bound")
        ax.set_ylabel(r"$q^n - |V_f|$")
        ax.legend(fontsize=6, frameon=False, ncol=2)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
        plt.close(fig)
    return path
