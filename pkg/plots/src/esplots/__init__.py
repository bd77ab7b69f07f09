"""Plotting companion for the eigensurface CLI's file outputs.

Everything here works from files alone (scan/track CSVs, component maps,
DOT exports); no eigenvalue is ever recomputed on this side.
"""

from .csvdata import PointTable, read_component_map, read_point_table
from .dotparse import DotGraph, parse_dot, read_dot
from .graphplot import plot_graph
from .jobs import PlotInputError, PlotJob, PlotResult
from .scanplot import plot_scan

__all__ = [
    "DotGraph",
    "PlotInputError",
    "PlotJob",
    "PlotResult",
    "PointTable",
    "parse_dot",
    "plot_graph",
    "plot_scan",
    "read_component_map",
    "read_dot",
    "read_point_table",
]
