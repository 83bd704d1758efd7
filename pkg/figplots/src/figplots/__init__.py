"""Render gap-grid CSV files as heatmap or surface images.

The input format is the grid CSV emitted by the coherekit CLI: a header
row, two leading coordinate columns, and one or more value columns, with
empty cells marking points outside the domain.  This package only reads
those files; it computes nothing and never alters the data, and a checksum
mode proves it.
"""

from .grid import Grid, GridError, checksum_roundtrip, parse_grid, value_checksum
from .render import PlotSpec, render_surface

__version__ = "0.1.0"
