"""Render pairing graphs from exported DOT files."""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .dotparse import read_dot
from .jobs import PlotInputError, PlotJob, PlotResult

_CYCLE = plt.get_cmap("tab10").colors


def plot_graph(job: PlotJob) -> PlotResult:
    if job.view != "graph":
        raise PlotInputError(f"plot_graph cannot render view {job.view!r}")
    dot = read_dot(job.dot)

    graph = nx.Graph()
    # insertion order fixed by sorting so the layout is reproducible
    for node in dot.nodes:
        graph.add_node(node)
    solid = []
    dashed = []
    for a, b, is_dashed in dot.edges:
        graph.add_edge(a, b)
        (dashed if is_dashed else solid).append((a, b))

    pos = nx.spring_layout(graph, seed=0)

    cluster_of = {}
    for cid, nodes in dot.clusters.items():
        for node in nodes:
            cluster_of[node] = cid
    colors = [_CYCLE[cluster_of[n] % len(_CYCLE)] for n in graph.nodes]

    fig, ax = plt.subplots(figsize=(8.0, 6.0))
    if graph.number_of_nodes():
        nx.draw_networkx_nodes(graph, pos, ax=ax, node_color=colors, node_size=600)
        nx.draw_networkx_edges(graph, pos, ax=ax, edgelist=solid, style="solid")
        nx.draw_networkx_edges(graph, pos, ax=ax, edgelist=dashed, style="dashed")
        nx.draw_networkx_labels(
            graph,
            pos,
            ax=ax,
            labels={n: dot.labels[n] for n in graph.nodes},
            font_size=7,
        )
    ax.set_title(f"{graph.number_of_nodes()} vertices, {len(dot.clusters)} components")
    ax.set_axis_off()
    fig.savefig(job.out)
    plt.close(fig)

    return PlotResult(
        out=job.out,
        points=graph.number_of_nodes(),
        labels=tuple(dot.labels[n] for n in dot.nodes),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="es-plot-graph",
        description="Draw a pairing graph exported by the eigensurface CLI.",
    )
    parser.add_argument("--in", dest="dot", required=True, help="DOT file to render")
    parser.add_argument("--out", required=True, help="image file to write (png/svg)")
    args = parser.parse_args(argv)

    job_kwargs = {"out": args.out, "view": "graph", "dot": args.dot}
    try:
        result = plot_graph(PlotJob(**job_kwargs))
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{result.out}: {result.points} vertices")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
