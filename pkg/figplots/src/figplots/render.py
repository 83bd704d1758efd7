"""Rendering a parsed grid to an image file.

Defaults: colormap ``viridis``, style ``heatmap`` (a flat pcolormesh);
``surface`` switches to a 3d projection.  Empty cells render as gaps in
both styles.  The Agg backend and a fixed figure geometry keep the output
deterministic for identical inputs.
"""

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import GridError, parse_grid

DEFAULT_CMAP = "viridis"
DEFAULT_STYLE = "heatmap"
STYLES = ("heatmap", "surface")


@dataclass(frozen=True)
class PlotSpec:
    """What to plot and where to put it.

    The value column must exist in the CSV header; ``render_surface``
    checks that before touching the figure.
    """

    csv_path: str
    value_column: str
    out_path: str
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    cmap: str = DEFAULT_CMAP
    style: str = field(default=DEFAULT_STYLE)


def render_surface(spec: PlotSpec) -> str:
    """Render the column named by ``spec`` and write the image file.

    Raises GridError for a malformed CSV or a missing column.  Returns the
    output path.  The data pass through untouched: values are read off the
    grid and handed to the plot, never rewritten.
    """
    if spec.style not in STYLES:
        raise GridError(f"unknown style {spec.style!r}; choose from {STYLES}")
    grid = parse_grid(spec.csv_path)
    xs, ys, z = grid.surface(spec.value_column)
    zmat = np.array(z, dtype=float)
    masked = np.ma.masked_invalid(zmat)

    fig = plt.figure(figsize=(7.2, 5.4), dpi=150)
    try:
        if spec.style == "surface":
            ax = fig.add_subplot(111, projection="3d")
            xg, yg = np.meshgrid(np.asarray(xs), np.asarray(ys))
            zs = np.where(np.isfinite(zmat), zmat, np.nan)
            ax.plot_surface(
                xg, yg, zs, cmap=spec.cmap, linewidth=0, antialiased=False
            )
            ax.set_zlabel(spec.value_column)
        else:
            ax = fig.add_subplot(111)
            xe = _edges(xs)
            ye = _edges(ys)
            mesh = ax.pcolormesh(xe, ye, masked, cmap=spec.cmap, shading="flat")
            fig.colorbar(mesh, ax=ax, label=spec.value_column)
        ax.set_xlabel(spec.x_label or grid.x_name)
        ax.set_ylabel(spec.y_label or grid.y_name)
        if spec.title:
            ax.set_title(spec.title)
        fig.savefig(spec.out_path, format="png")
    finally:
        plt.close(fig)
    return spec.out_path


def _edges(centers):
    """Cell edges bracketing sorted center coordinates."""
    c = list(centers)
    if len(c) == 1:
        h = abs(c[0]) * 0.05 if c[0] else 0.5
        return np.array([c[0] - h, c[0] + h])
    edges = [c[0] - (c[1] - c[0]) / 2.0]
    for a, b in zip(c, c[1:]):
        edges.append((a + b) / 2.0)
    edges.append(c[-1] + (c[-1] - c[-2]) / 2.0)
    return np.array(edges)
