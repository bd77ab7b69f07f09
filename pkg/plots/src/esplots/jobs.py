"""Job descriptions shared by the plotting scripts.

Everything here is read-only over the eigensurface CLI's file formats; no
eigenvalue is ever computed on this side of the fence.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

VIEWS = ("complex-plane", "surface-3d", "graph")
Z_MODES = ("re", "abs")


class PlotInputError(ValueError):
    """Unusable input file or option; scripts exit 2 on this."""


@dataclass(frozen=True)
class PlotJob:
    """One rendering request.

    table: scan or bundle CSV path (point views).
    components: components JSON path, used to color scan points.
    dot: pairing-graph DOT path (graph view).
    """

    out: str
    view: str
    table: str | None = None
    components: str | None = None
    dot: str | None = None
    z_mode: str = "re"

    def __post_init__(self):
        if self.view not in VIEWS:
            raise PlotInputError(f"unknown view {self.view!r}; expected one of {VIEWS}")
        if self.z_mode not in Z_MODES:
            raise PlotInputError(
                f"unknown z mode {self.z_mode!r}; expected one of {Z_MODES}"
            )
        if not self.out:
            raise PlotInputError("output path must be nonempty")
        if self.view == "graph":
            needed = {"dot": self.dot}
        else:
            needed = {"table": self.table}
        for name, path in needed.items():
            if path is None:
                raise PlotInputError(f"view {self.view!r} needs an input {name} file")
        for name, path in (
            ("table", self.table),
            ("components", self.components),
            ("dot", self.dot),
        ):
            if path is not None and not os.path.isfile(path):
                raise PlotInputError(f"{name} file does not exist: {path}")


@dataclass(frozen=True)
class PlotResult:
    """What a script drew, for smoke-diffing against the inputs.

    value_strings holds the verbatim CSV cell pairs (re, im) behind every
    plotted point; labels holds the verbatim DOT label strings.
    """

    out: str
    points: int
    value_strings: tuple = field(default_factory=tuple)
    labels: tuple = field(default_factory=tuple)
