"""Point-cloud and surface views of scan/bundle CSV files.

The complex-plane view scatters re against im for any point table. The
surface view needs barycentric columns and plots (alpha_1, alpha_2, z) with
z either Re(lambda) or |lambda|. Values are plotted exactly as parsed from
the file; nothing is recomputed.
"""

from __future__ import annotations

import argparse
import math
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .csvdata import read_component_map, read_point_table
from .jobs import PlotInputError, PlotJob, PlotResult

_CYCLE = plt.get_cmap("tab10").colors


def _color_groups(table, components_path):
    """One integer group per row: component id, class, or slot."""
    if components_path is not None:
        if not table.is_scan:
            raise PlotInputError(
                "component coloring needs a scan table with alpha_ columns"
            )
        mapping = read_component_map(components_path)
        groups = []
        for row, sample in zip(table.rows, table.sample_index):
            key = (sample, int(row["slot"]))
            if key not in mapping:
                raise PlotInputError(
                    f"components file has no entry for sample {sample} "
                    f"slot {row['slot']}"
                )
            groups.append(mapping[key])
        return groups, "component"
    if "class" in table.columns:
        order = {"core": 0, "exceptional": 1}
        return [order.get(row["class"], 2) for row in table.rows], "class"
    return [int(row["slot"]) for row in table.rows], "slot"


def plot_scan(job: PlotJob) -> PlotResult:
    table = read_point_table(job.table)
    groups, group_kind = _color_groups(table, job.components)
    res = [float(row["re"]) for row in table.rows]
    ims = [float(row["im"]) for row in table.rows]
    colors = [_CYCLE[g % len(_CYCLE)] for g in groups]

    fig = plt.figure(figsize=(7, 6))
    if job.view == "complex-plane":
        ax = fig.add_subplot(111)
        ax.scatter(res, ims, c=colors, s=12)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_aspect("equal", adjustable="datalim")
    else:
        missing = [c for c in ("alpha_1", "alpha_2") if c not in table.columns]
        if missing:
            raise PlotInputError(
                f"{job.table}: surface view missing columns: {', '.join(missing)}"
            )
        a1 = [float(row["alpha_1"]) for row in table.rows]
        a2 = [float(row["alpha_2"]) for row in table.rows]
        if job.z_mode == "re":
            zs = res
            z_label = "Re"
        else:
            zs = [math.hypot(r, i) for r, i in zip(res, ims)]
            z_label = "|value|"
        ax = fig.add_subplot(111, projection="3d")
        ax.scatter(a1, a2, zs, c=colors, s=10)
        ax.set_xlabel("alpha_1")
        ax.set_ylabel("alpha_2")
        ax.set_zlabel(z_label)
    ax.set_title(f"{len(table.rows)} eigenpoints, colored by {group_kind}")
    fig.savefig(job.out)
    plt.close(fig)

    return PlotResult(
        out=job.out,
        points=len(table.rows),
        value_strings=tuple((row["re"], row["im"]) for row in table.rows),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="es-plot-scan",
        description="Scatter a scan.csv or bundle.csv as a point cloud.",
    )
    parser.add_argument("--in", dest="table", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument(
        "--view", choices=("complex-plane", "surface-3d"), default="complex-plane"
    )
    parser.add_argument("--components", default=None)
    parser.add_argument("--z", dest="z_mode", choices=("re", "abs"), default="re")
    args = parser.parse_args(argv)
    try:
        job = PlotJob(
            out=args.out,
            view=args.view,
            table=args.table,
            components=args.components,
            z_mode=args.z_mode,
        )
        result = plot_scan(job)
    except PlotInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    sys.stdout.write(f"{result.out}: {result.points} points\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
