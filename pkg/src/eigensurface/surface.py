"""Barycentric scans of a hull's coefficient-tagged spectrum.

Samples the simplex lattice {m/N : sum m = N}, classifies each sample as core
or exceptional by its multiplicity list, joins eigenvalue slots into
k-components via tracked pairings between adjacent samples, and provides
separation and local-transitivity diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, StructuralViolationError
from .linalg import (
    BarycentricPoint,
    MatrixHull,
    MultiplicityList,
    cluster_indices,
    discriminant_from_roots,
    discriminant_zero_threshold,
    eigenvalues_many,
    lex_compare,
    mingap,
    multiplicity_list_of_values,
    simple_spectrum_list,
    CharPoly,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .track import (
    DEFAULT_TRACKER,
    MatrixPath,
    TrackerConfig,
    match_eigs,
    monodromy,
    segment_pairing,
)
from .util import parallel_map

__all__ = [
    "EigenPoint",
    "SurfaceSample",
    "SurfaceSamples",
    "KComponent",
    "ExceptionalCluster",
    "ProbeResult",
    "barycentric_grid",
    "grid_size",
    "scan",
    "scan_rows",
    "k_components",
    "component_separation",
    "exceptional_clusters",
    "local_transitivity_probe",
]

SCAN_SAMPLE_CAP = 2_000_000

CLASS_CORE = "core"
CLASS_EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class EigenPoint:
    """One point (alpha, lambda) of the surface, tagged with its slot."""

    alpha: BarycentricPoint
    value: complex
    slot: int


@dataclass(frozen=True, eq=False)
class SurfaceSample:
    index: int
    counts: tuple
    alpha: BarycentricPoint
    eigenvalues: np.ndarray
    disc: complex
    disc_is_zero: bool
    mult_list: MultiplicityList
    cls: str
    inconsistent: bool


@dataclass(frozen=True, eq=False)
class SurfaceSamples:
    """A full lattice scan of one hull."""

    hull: MatrixHull
    resolution: int
    samples: tuple
    minimal_list: MultiplicityList
    regular: bool
    index_of: dict

    @property
    def k(self) -> int:
        return self.hull.k

    @property
    def n(self) -> int:
        return self.hull.n

    def eigen_point(self, sample_index: int, slot: int) -> EigenPoint:
        s = self.samples[sample_index]
        return EigenPoint(s.alpha, complex(s.eigenvalues[slot]), slot)

    def exceptional_fraction(self) -> float:
        bad = sum(1 for s in self.samples if s.cls == CLASS_EXCEPTIONAL)
        return bad / len(self.samples)


def grid_size(k: int, N: int) -> int:
    return math.comb(N + k - 1, k - 1)


def barycentric_grid(k: int, N: int) -> list:
    """Lattice count vectors (m_1..m_k), sum N, first coordinate descending."""
    if k < 1 or N < 1:
        raise ArgumentError("need k >= 1 and N >= 1")
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for m in range(remaining, -1, -1):
            rec(prefix + (m,), remaining - m, slots - 1)

    rec((), N, k)
    return out


def _stacked_matrices(hull: MatrixHull, alphas: np.ndarray) -> np.ndarray:
    """All convex combinations at once, accumulated in generator order."""
    gens = [g.entries for g in hull.generators]
    acc = alphas[:, 0, None, None] * gens[0]
    for i in range(1, hull.k):
        acc = acc + alphas[:, i, None, None] * gens[i]
    return acc


def scan_rows(hull: MatrixHull, N: int, tol: ToleranceConfig = DEFAULT_TOLERANCES):
    """Generator of per-sample scan rows, for streaming large lattices.

    Yields (index, counts, alpha_weights, eigen_row, disc, disc_is_zero,
    mult_list). Classification against the scan-wide minimal list is the
    caller's job (it needs a full pass).
    """
    if N < 1:
        raise ArgumentError("resolution must be >= 1")
    n = hull.n
    counts_list = barycentric_grid(hull.k, N)
    chunk = 4096
    idx = 0
    for lo in range(0, len(counts_list), chunk):
        part = counts_list[lo : lo + chunk]
        alphas = np.asarray(part, dtype=float) / N
        rows = eigenvalues_many(_stacked_matrices(hull, alphas))
        for counts, w, row in zip(part, alphas, rows):
            if n >= 2:
                disc = discriminant_from_roots(row)
                p = CharPoly(np.asarray(np.atleast_1d(np.poly(row)), dtype=complex))
                thr = discriminant_zero_threshold(p, tol.disc_zero_tol)
                disc_zero = abs(disc) <= thr
            else:
                disc = 1.0 + 0.0j
                disc_zero = False
            mult = multiplicity_list_of_values(row, tol.cluster_tol)
            yield idx, counts, w, row, disc, disc_zero, mult
            idx += 1


def scan(
    hull: MatrixHull,
    N: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    threads: int = 1,
) -> SurfaceSamples:
    """Classify every lattice sample of the hull at resolution N.

    A sample is exceptional iff its multiplicity list is lexicographically
    greater than the scan-wide minimum. On regular hulls the discriminant
    zero test must agree with that classification; samples where the two
    tests disagree carry inconsistent=True.
    """
    if not isinstance(hull, MatrixHull):
        raise ArgumentError("scan expects a MatrixHull")
    total = grid_size(hull.k, N)
    if total > SCAN_SAMPLE_CAP:
        raise ArgumentError(
            f"lattice has {total} samples (> cap {SCAN_SAMPLE_CAP}); "
            "use scan_rows to stream"
        )
    raw = list(scan_rows(hull, N, tol))

    minimal = raw[0][6]
    for entry in raw[1:]:
        if lex_compare(entry[6], minimal) < 0:
            minimal = entry[6]
    regular = minimal.counts == simple_spectrum_list(hull.n).counts

    def build(entry):
        idx, counts, w, row, disc, disc_zero, mult = entry
        exceptional = lex_compare(mult, minimal) > 0
        inconsistent = regular and hull.n >= 2 and (exceptional != disc_zero)
        return SurfaceSample(
            index=idx,
            counts=tuple(int(c) for c in counts),
            alpha=BarycentricPoint(w),
            eigenvalues=row,
            disc=complex(disc),
            disc_is_zero=bool(disc_zero),
            mult_list=mult,
            cls=CLASS_EXCEPTIONAL if exceptional else CLASS_CORE,
            inconsistent=inconsistent,
        )

    samples = tuple(parallel_map(build, raw, threads))
    index_of = {s.counts: s.index for s in samples}
    return SurfaceSamples(
        hull=hull,
        resolution=N,
        samples=samples,
        minimal_list=minimal,
        regular=regular,
        index_of=index_of,
    )


@dataclass(frozen=True)
class KComponent:
    """A path-component of the sampled surface.

    members are (sample_index, slot) pairs; k is the constant per-sample
    eigenvalue count (with algebraic multiplicity).
    """

    id: int
    k: int
    members: tuple


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


def _grid_neighbors(samples, index_of):
    """Unordered unit-transfer adjacent sample pairs, each listed once."""
    pairs = []
    for s in samples:
        counts = s.counts
        k = len(counts)
        for i in range(k):
            if counts[i] == 0:
                continue
            for j in range(k):
                if i == j:
                    continue
                moved = list(counts)
                moved[i] -= 1
                moved[j] += 1
                t = index_of.get(tuple(moved))
                if t is not None and t > s.index:
                    pairs.append((s.index, t))
    return pairs


def k_components(
    scan_result: SurfaceSamples,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    threads: int = 1,
) -> list:
    """Partition (sample, slot) eigenpoints into path-components.

    Edges come from tracked pairings along segments between unit-transfer
    adjacent lattice samples; coincident eigenvalues at any one sample are
    the same surface point and are unioned; slots that collide inside an
    edge segment are joined too. Verifies that each component contributes a
    constant eigenvalue count at every sample and that the counts sum to n.
    """
    samples = scan_result.samples
    n = scan_result.n
    uf = _UnionFind(len(samples) * n)

    def node(s, slot):
        return s * n + slot

    for s in samples:
        threshold = tol.cluster_tol * max(1.0, float(np.max(np.abs(s.eigenvalues))))
        for cluster in cluster_indices(s.eigenvalues, threshold):
            for slot in cluster[1:]:
                uf.union(node(s.index, cluster[0]), node(s.index, slot))

    pairs = _grid_neighbors(samples, scan_result.index_of)

    def edge_pairing(pair):
        s, t = pair
        sp = segment_pairing(
            _matrix_at(scan_result, s), _matrix_at(scan_result, t), cfg, tol
        )
        return pair, sp

    results = parallel_map(edge_pairing, pairs, threads)
    for (s, t), sp in results:
        align_s = match_eigs(sp.start_values, samples[s].eigenvalues).mapping
        align_t = match_eigs(sp.end_values, samples[t].eigenvalues).mapping
        for i, j in enumerate(sp.mapping):
            uf.union(node(s, align_s[i]), node(t, align_t[j]))
        for ev in sp.collisions:
            cols = list(ev.columns)
            for a, b in zip(cols, cols[1:]):
                uf.union(node(s, align_s[a]), node(s, align_s[b]))

    groups = {}
    for s in samples:
        for slot in range(n):
            groups.setdefault(uf.find(node(s.index, slot)), []).append((s.index, slot))

    components = []
    for cid, root in enumerate(sorted(groups)):
        members = sorted(groups[root])
        per_sample = {}
        for si, _slot in members:
            per_sample[si] = per_sample.get(si, 0) + 1
        sizes = set(per_sample.values())
        if len(per_sample) != len(samples) or len(sizes) != 1:
            raise StructuralViolationError(
                f"component {cid} contributes non-constant eigenvalue counts "
                f"across samples (counts seen: {sorted(sizes)}, "
                f"samples covered: {len(per_sample)}/{len(samples)})"
            )
        components.append(KComponent(id=cid, k=sizes.pop(), members=tuple(members)))

    if sum(c.k for c in components) != n:
        raise StructuralViolationError(
            f"component sizes sum to {sum(c.k for c in components)}, expected {n}"
        )
    return components


def _matrix_at(scan_result: SurfaceSamples, sample_index: int):
    from .linalg import convex_combine

    return convex_combine(scan_result.hull, scan_result.samples[sample_index].alpha)


def component_separation(components, scan_result: SurfaceSamples) -> dict:
    """Minimum eigenvalue distance between each pair of components.

    Keys are (id_a, id_b) with id_a < id_b; empty when fewer than two
    components exist.
    """
    if len(components) < 2:
        return {}
    label = {}
    for comp in components:
        for member in comp.members:
            label[member] = comp.id
    out = {}
    for s in scan_result.samples:
        values = s.eigenvalues
        ids = [label[(s.index, slot)] for slot in range(values.size)]
        for a in range(values.size):
            for b in range(a + 1, values.size):
                if ids[a] == ids[b]:
                    continue
                key = (min(ids[a], ids[b]), max(ids[a], ids[b]))
                d = float(abs(values[a] - values[b]))
                if key not in out or d < out[key]:
                    out[key] = d
    return out


@dataclass(frozen=True)
class ExceptionalCluster:
    """Grid-connected set of exceptional samples with its representative."""

    sample_indices: tuple
    representative_index: int
    representative_alpha: BarycentricPoint


def exceptional_clusters(scan_result: SurfaceSamples) -> list:
    """Connected clusters of exceptional samples.

    Connectivity is Chebyshev distance <= 1 on lattice count vectors, which
    covers unit transfers and the diagonal steps that codimension-2 zero
    sets take through the lattice. The representative is the member nearest
    the cluster centroid, ties broken by lexicographically smallest counts.
    """
    exc = [s for s in scan_result.samples if s.cls == CLASS_EXCEPTIONAL]
    if not exc:
        return []
    uf = _UnionFind(len(exc))
    for i in range(len(exc)):
        for j in range(i + 1, len(exc)):
            diff = max(
                abs(a - b) for a, b in zip(exc[i].counts, exc[j].counts)
            )
            if diff <= 1:
                uf.union(i, j)
    groups = {}
    for i in range(len(exc)):
        groups.setdefault(uf.find(i), []).append(i)

    clusters = []
    for root in sorted(groups):
        members = groups[root]
        weights = np.stack([exc[i].alpha.weights for i in members])
        centroid = weights.mean(axis=0)
        best = min(
            members,
            key=lambda i: (
                float(np.linalg.norm(exc[i].alpha.weights - centroid)),
                exc[i].counts,
            ),
        )
        clusters.append(
            ExceptionalCluster(
                sample_indices=tuple(exc[i].index for i in members),
                representative_index=exc[best].index,
                representative_alpha=exc[best].alpha,
            )
        )
    return clusters


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of a local monodromy probe around an exceptional point."""

    applicable: bool
    locally_nontransitive: bool | None
    reason: str
    permutation: tuple | None = None
    colliding_slots: tuple | None = None
    loop_min_disc: float | None = None


def _simplex_tangent_basis(k: int) -> np.ndarray:
    """Orthonormal basis of {w : sum w = 0} from Gram-Schmidt on e1 - ei."""
    vecs = []
    for i in range(1, k):
        v = np.zeros(k)
        v[0], v[i] = 1.0, -1.0
        for u in vecs:
            v = v - np.dot(v, u) * u
        v = v / np.linalg.norm(v)
        vecs.append(v)
    return np.stack(vecs)


def _resolve_representative(scan_result, representative):
    if isinstance(representative, ExceptionalCluster):
        return scan_result.samples[representative.representative_index]
    if isinstance(representative, BarycentricPoint):
        counts = tuple(
            int(round(w * scan_result.resolution)) for w in representative.weights
        )
        idx = scan_result.index_of.get(counts)
        if idx is None:
            raise ArgumentError(f"no lattice sample at weights {representative.weights}")
        return scan_result.samples[idx]
    if isinstance(representative, (int, np.integer)):
        return scan_result.samples[int(representative)]
    raise ArgumentError(
        "representative must be an ExceptionalCluster, BarycentricPoint, "
        "or sample index"
    )


def local_transitivity_probe(
    scan_result: SurfaceSamples,
    representative,
    radius: float,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    waypoints: int = 64,
) -> ProbeResult:
    """Monodromy of a small core loop encircling an exceptional point.

    Builds closed polygonal loops of `waypoints` vertices in planes spanned
    by pairs of simplex tangent directions, keeps candidates that stay
    inside the simplex with all waypoints' discriminants above the zero
    threshold, and tracks the best one. True iff every group of slots that
    collide at the representative sits in a single cycle of the loop's
    permutation. Not applicable for k < 3 (no two real degrees of freedom).
    """
    hull = scan_result.hull
    if hull.k < 3:
        return ProbeResult(False, None, "needs k >= 3 for a loop in the simplex")
    if not (radius > 0.0):
        raise ArgumentError("radius must be positive")
    rep = _resolve_representative(scan_result, representative)
    if rep.cls != CLASS_EXCEPTIONAL:
        raise ArgumentError("representative sample is not exceptional")
    rep_threshold = tol.cluster_tol * max(
        1.0, float(np.max(np.abs(rep.eigenvalues)))
    )
    collided = [
        c for c in cluster_indices(rep.eigenvalues, rep_threshold) if len(c) >= 2
    ]
    if not collided:
        raise ArgumentError("representative has no collided eigenvalues")

    basis = _simplex_tangent_basis(hull.k)
    thetas = np.linspace(0.0, 2.0 * math.pi, waypoints + 1)
    center = rep.alpha.weights

    from .linalg import convex_combine  # local import to avoid cycle noise

    best = None
    any_inside = False
    for bi in range(len(basis)):
        for bj in range(bi + 1, len(basis)):
            pts = (
                center[None, :]
                + radius * np.cos(thetas)[:, None] * basis[bi][None, :]
                + radius * np.sin(thetas)[:, None] * basis[bj][None, :]
            )
            if np.any(pts < 1e-9):
                continue
            any_inside = True
            score = math.inf
            ok = True
            for w in pts[:-1]:
                row = eigenvalues_many(
                    convex_combine(hull, BarycentricPoint(w)).entries[None, :, :]
                )[0]
                disc = discriminant_from_roots(row)
                p = CharPoly(np.asarray(np.atleast_1d(np.poly(row)), dtype=complex))
                thr = discriminant_zero_threshold(p, tol.disc_zero_tol)
                if abs(disc) <= thr:
                    ok = False
                    break
                score = min(score, abs(disc) / thr)
            if ok and (best is None or score > best[0]):
                best = (score, pts)
    if not any_inside:
        raise ArgumentError(
            f"radius {radius} pushes every candidate loop out of the simplex"
        )
    if best is None:
        return ProbeResult(
            False, None, "every candidate loop at this radius crosses the "
            "exceptional set"
        )

    score, pts = best
    loop = MatrixPath.hull_polygonal(
        hull, [BarycentricPoint(w) for w in pts], closed=True
    )
    mono = monodromy(loop, cfg, tol)

    base_row = eigenvalues_many(loop.at(0.0)[None, :, :])[0]
    cycles = _permutation_cycles(mono.mapping)
    cycle_of = {}
    for cyc_id, cyc in enumerate(cycles):
        for slot in cyc:
            cycle_of[slot] = cyc_id

    all_joined = True
    probed = []
    for cluster_slots in collided:
        mu = rep.eigenvalues[cluster_slots[0]]
        nearest = np.argsort(np.abs(base_row - mu))[: len(cluster_slots)]
        probed.extend(int(i) for i in nearest)
        if len({cycle_of[int(i)] for i in nearest}) != 1:
            all_joined = False
    return ProbeResult(
        applicable=True,
        locally_nontransitive=all_joined,
        reason="probe loop tracked",
        permutation=mono.mapping,
        colliding_slots=tuple(sorted(set(probed))),
        loop_min_disc=float(score),
    )


def _permutation_cycles(mapping):
    seen = [False] * len(mapping)
    cycles = []
    for start in range(len(mapping)):
        if seen[start]:
            continue
        cyc = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = mapping[cur]
        cycles.append(tuple(cyc))
    return cycles
