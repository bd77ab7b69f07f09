"""Parser for the pairing-graph DOT files the eigensurface CLI writes.

This is not a general Graphviz reader; it accepts exactly the emitted
dialect: one graph block, component subgraphs named cluster_<id>, nodes
with a quoted label, and undirected edges optionally marked dashed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .jobs import PlotInputError

_HEADER = re.compile(r"^graph\s+(\w+)\s*\{\s*(\})?\s*$")
_CLUSTER = re.compile(r"^subgraph\s+cluster_(\d+)\s*\{$")
_NODE = re.compile(r"^(\w+)\s*\[label=\"([^\"]*)\"\];$")
_EDGE = re.compile(r"^(\w+)\s*--\s*(\w+)(\s*\[style=dashed\])?;$")


@dataclass(frozen=True)
class DotGraph:
    name: str
    clusters: dict  # cluster id -> tuple of node names
    labels: dict  # node name -> label string
    edges: tuple  # (a, b, dashed)

    @property
    def nodes(self) -> tuple:
        return tuple(sorted(self.labels))


def parse_dot(text: str) -> DotGraph:
    lines = text.splitlines()
    name = None
    clusters = {}
    labels = {}
    edges = []
    current_cluster = None
    graph_open = False
    graph_closed = False

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if graph_closed:
            raise PlotInputError(f"line {lineno}: content after closing brace")
        if name is None:
            m = _HEADER.match(line)
            if not m:
                raise PlotInputError(f"line {lineno}: expected a graph header")
            name = m.group(1)
            graph_open = True
            if m.group(2):
                graph_closed = True
            continue
        m = _CLUSTER.match(line)
        if m:
            if current_cluster is not None:
                raise PlotInputError(f"line {lineno}: nested subgraph")
            current_cluster = int(m.group(1))
            clusters.setdefault(current_cluster, [])
            continue
        if line == "}":
            if current_cluster is not None:
                current_cluster = None
            elif graph_open:
                graph_closed = True
            continue
        m = _NODE.match(line)
        if m:
            node, label = m.group(1), m.group(2)
            if current_cluster is None:
                raise PlotInputError(f"line {lineno}: node outside a subgraph")
            if node in labels:
                raise PlotInputError(f"line {lineno}: duplicate node {node}")
            labels[node] = label
            clusters[current_cluster].append(node)
            continue
        m = _EDGE.match(line)
        if m:
            a, b = m.group(1), m.group(2)
            for endpoint in (a, b):
                if endpoint not in labels:
                    raise PlotInputError(
                        f"line {lineno}: edge endpoint {endpoint} is not declared"
                    )
            edges.append((a, b, bool(m.group(3))))
            continue
        raise PlotInputError(f"line {lineno}: unrecognized statement {line!r}")

    if name is None:
        raise PlotInputError("empty DOT file")
    if not graph_closed or current_cluster is not None:
        raise PlotInputError("unbalanced braces")
    return DotGraph(
        name=name,
        clusters={cid: tuple(nodes) for cid, nodes in clusters.items()},
        labels=labels,
        edges=tuple(edges),
    )


def read_dot(path: str) -> DotGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_dot(fh.read())
    except OSError as exc:
        raise PlotInputError(f"cannot read {path}: {exc}") from exc
