"""Pairing graphs over eigenpoints of a finite set of sample matrices.

Vertices are value-clusters of one sample's spectrum (a collided multiple
eigenvalue is a single vertex carrying its multiplicity). Edges record which
segment induced the pairing and whether the paired slots went through a
collision, so downstream figures can tell the two kinds apart.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, TrackingError
from .linalg import (
    ComplexMatrix,
    MatrixHull,
    as_matrix,
    cluster_indices,
    convex_combine,
    eigenvalues,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .track import DEFAULT_TRACKER, TrackerConfig, match_eigs, segment_pairing
from .util import parallel_map

__all__ = [
    "GraphVertex",
    "GraphEdge",
    "PairingGraph",
    "build_pairing_graph",
    "principal_graph",
    "ord_stat",
    "diameter",
    "export_dot",
    "adjacency",
]

_GENERATOR_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class GraphVertex:
    sample: int
    slot: int
    value: complex
    multiplicity: int
    label: str = ""


@dataclass(frozen=True)
class GraphEdge:
    """Undirected edge; a < b as vertex indices.

    segment names the inducing sample pair; collided marks pairings that
    passed through an eigenvalue collision (including same-sample edges
    between slots that met inside a segment).
    """

    a: int
    b: int
    segment: tuple
    collided: bool = False


@dataclass(frozen=True, eq=False)
class PairingGraph:
    vertices: tuple
    edges: tuple
    component_ids: tuple

    @property
    def component_count(self) -> int:
        return len(set(self.component_ids)) if self.component_ids else 0

    def vertices_of_sample(self, sample: int) -> list:
        return [i for i, v in enumerate(self.vertices) if v.sample == sample]

    def neighbors(self) -> list:
        adj = [set() for _ in self.vertices]
        for e in self.edges:
            adj[e.a].add(e.b)
            adj[e.b].add(e.a)
        return [sorted(s) for s in adj]


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _sample_vertices(rows, tol, labels=None):
    """Cluster each row into vertices; returns (vertices, slot->vertex maps)."""
    vertices = []
    slot_to_vertex = []
    for si, row in enumerate(rows):
        threshold = tol.cluster_tol * max(1.0, float(np.max(np.abs(row))))
        mapping = {}
        for cluster in cluster_indices(row, threshold):
            vid = len(vertices)
            vertices.append(
                GraphVertex(
                    sample=si,
                    slot=cluster[0],
                    value=complex(row[cluster[0]]),
                    multiplicity=len(cluster),
                    label=labels[si] if labels else "",
                )
            )
            for slot in cluster:
                mapping[slot] = vid
        slot_to_vertex.append(mapping)
    return vertices, slot_to_vertex


def build_pairing_graph(
    samples,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    labels=None,
    threads: int = 1,
) -> PairingGraph:
    """Graph of slot pairings along every segment between the samples."""
    mats = [as_matrix(m) for m in samples]
    if not mats:
        raise ArgumentError("need at least one sample matrix")
    n = mats[0].n
    if any(m.n != n for m in mats):
        raise ArgumentError("all samples must have the same size")
    if labels is not None and len(labels) != len(mats):
        raise ArgumentError("labels must match samples one to one")

    rows = [eigenvalues(m) for m in mats]
    vertices, slot_to_vertex = _sample_vertices(rows, tol, labels)

    pairs = [(i, j) for i in range(len(mats)) for j in range(i + 1, len(mats))]

    def run_segment(pair):
        i, j = pair
        try:
            return pair, segment_pairing(mats[i], mats[j], cfg, tol)
        except TrackingError as exc:
            raise TrackingError(
                f"tracking failed on segment between samples {i} and {j}: {exc}",
                interval=exc.interval,
            ) from exc

    results = parallel_map(run_segment, pairs, threads)

    edges = set()

    def add_edge(va, vb, segment, collided):
        if va == vb:
            return
        a, b = (va, vb) if va < vb else (vb, va)
        edges.add(GraphEdge(a=a, b=b, segment=segment, collided=collided))

    for (i, j), sp in results:
        align_i = match_eigs(sp.start_values, rows[i]).mapping
        align_j = match_eigs(sp.end_values, rows[j]).mapping
        crossed = set()
        for ev in sp.collisions:
            crossed.update(ev.columns)
        for s, t in enumerate(sp.mapping):
            add_edge(
                slot_to_vertex[i][align_i[s]],
                slot_to_vertex[j][align_j[t]],
                (i, j),
                s in crossed,
            )
        for ev in sp.collisions:
            cols = list(ev.columns)
            for a, b in zip(cols, cols[1:]):
                add_edge(
                    slot_to_vertex[i][align_i[a]],
                    slot_to_vertex[i][align_i[b]],
                    (i, j),
                    True,
                )
                add_edge(
                    slot_to_vertex[j][align_j[sp.mapping[a]]],
                    slot_to_vertex[j][align_j[sp.mapping[b]]],
                    (i, j),
                    True,
                )

    uf = _UnionFind(len(vertices))
    for e in edges:
        uf.union(e.a, e.b)
    roots = sorted({uf.find(v) for v in range(len(vertices))})
    root_id = {r: i for i, r in enumerate(roots)}
    component_ids = tuple(root_id[uf.find(v)] for v in range(len(vertices)))

    ordered = tuple(
        sorted(edges, key=lambda e: (e.a, e.b, e.segment, e.collided))
    )
    return PairingGraph(
        vertices=tuple(vertices), edges=ordered, component_ids=component_ids
    )


def principal_graph(
    hull: MatrixHull,
    scan_result,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    threads: int = 1,
) -> PairingGraph:
    """Pairing graph over hull generators plus exceptional representatives."""
    from .surface import exceptional_clusters

    mats = list(hull.generators)
    labels = list(hull.labels)
    for ci, cluster in enumerate(exceptional_clusters(scan_result)):
        rep = convex_combine(hull, cluster.representative_alpha)
        if any(
            float(np.max(np.abs(rep.entries - g.entries))) <= _GENERATOR_MATCH_TOL
            for g in mats
        ):
            continue
        mats.append(rep)
        labels.append(f"u{ci}")
    return build_pairing_graph(mats, cfg, tol, labels=labels, threads=threads)


def ord_stat(
    scan_result,
    components,
    point,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> int:
    """Distinct same-matrix eigenvalue values sharing the point's component,
    excluding the point's own value.

    point is a (sample_index, slot) pair into the scan.
    """
    sample_index, slot = int(point[0]), int(point[1])
    home = None
    for comp in components:
        if (sample_index, slot) in comp.members:
            home = comp
            break
    if home is None:
        raise ArgumentError(f"point {(sample_index, slot)} is in no component")
    row = scan_result.samples[sample_index].eigenvalues
    slots_here = [s for (si, s) in home.members if si == sample_index]
    values = row[slots_here]
    threshold = tol.cluster_tol * max(1.0, float(np.max(np.abs(row))))
    distinct = len(cluster_indices(values, threshold))
    return distinct - 1


def diameter(g: PairingGraph) -> dict:
    """Longest shortest-path per component id; isolated vertices give 0."""
    adj = g.neighbors()
    out = {}
    for cid in sorted(set(g.component_ids)):
        members = [v for v in range(len(g.vertices)) if g.component_ids[v] == cid]
        best = 0
        for src in members:
            dist = {src: 0}
            dq = deque([src])
            while dq:
                cur = dq.popleft()
                for nb in adj[cur]:
                    if nb not in dist:
                        dist[nb] = dist[cur] + 1
                        dq.append(nb)
            best = max(best, max(dist.values()))
        out[cid] = best
    return out


def _fmt_value(value: complex) -> str:
    return "%+.4g%+.4gi" % (value.real, value.imag)


def _node_name(v: GraphVertex) -> str:
    return f"m{v.sample}_s{v.slot}"


def export_dot(g: PairingGraph) -> str:
    """Graphviz text, byte-stable: sorted nodes grouped by component, sorted
    unique edges, collision edges dashed."""
    if not g.vertices:
        return "graph ES { }\n"
    lines = ["graph ES {"]
    by_component = {}
    for vi, v in enumerate(g.vertices):
        by_component.setdefault(g.component_ids[vi], []).append(vi)
    for cid in sorted(by_component):
        lines.append(f"  subgraph cluster_{cid} {{")
        for vi in sorted(
            by_component[cid], key=lambda i: (g.vertices[i].sample, g.vertices[i].slot)
        ):
            v = g.vertices[vi]
            extra = f", mult={v.multiplicity}" if v.multiplicity > 1 else ""
            name = f" ({v.label})" if v.label else ""
            lines.append(
                f'    {_node_name(v)} [label="{_fmt_value(v.value)}{name}{extra}"];'
            )
        lines.append("  }")
    seen = set()
    edge_lines = []
    for e in g.edges:
        va, vb = g.vertices[e.a], g.vertices[e.b]
        na, nb = _node_name(va), _node_name(vb)
        if (na, nb) > (nb, na):
            na, nb = nb, na
        key = (na, nb, e.collided)
        if key in seen:
            continue
        seen.add(key)
        style = " [style=dashed]" if e.collided else ""
        edge_lines.append(f"  {na} -- {nb}{style};")
    lines.extend(sorted(edge_lines))
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency(g: PairingGraph) -> dict:
    """Plain node/edge lists for downstream plotting."""
    nodes = [
        {
            "id": _node_name(v),
            "sample": v.sample,
            "slot": v.slot,
            "re": v.value.real,
            "im": v.value.imag,
            "multiplicity": v.multiplicity,
            "label": v.label,
            "component": g.component_ids[i],
        }
        for i, v in enumerate(g.vertices)
    ]
    edges = sorted(
        {(e.a, e.b, e.collided) for e in g.edges},
        key=lambda t: (t[0], t[1], t[2]),
    )
    return {
        "nodes": nodes,
        "edges": [[a, b] for a, b, _ in edges],
        "collided": [bool(c) for _, _, c in edges],
    }
