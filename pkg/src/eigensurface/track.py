"""Continuous eigenvalue-path tracking along matrix paths.

A path [0,1] -> M_n is sampled adaptively; eigenvalue rows at consecutive
samples are matched by optimal assignment so each output column follows one
continuous eigenpath. Near-coincident eigenvalues are recorded as collision
events and tracking continues with stable-index matching through them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ArgumentError, TrackingError
from .linalg import (
    BarycentricPoint,
    ComplexMatrix,
    MatrixHull,
    as_matrix,
    cluster_indices,
    convex_combine,
    eigenvalues,
    eigenvalues_many,
    mingap,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig

__all__ = [
    "TrackerConfig",
    "DEFAULT_TRACKER",
    "MatrixPath",
    "MatchResult",
    "CollisionEvent",
    "TrackedBundle",
    "PairingPermutation",
    "SegmentPairing",
    "DeformationCollision",
    "DeformationReport",
    "ScalingCheckResult",
    "match_eigs",
    "track",
    "monodromy",
    "segment_pairing",
    "deformation_check",
    "scaling_pairing_invariance_check",
    "compose_permutations",
    "invert_permutation",
]

_ENDPOINT_TOL = 1e-12
_AMBIGUITY_RATIO = 0.9


@dataclass(frozen=True)
class TrackerConfig:
    """Adaptive tracking parameters.

    initial_steps: uniform base steps per path segment.
    min_step: smallest parameter step bisection may produce.
    gap_safety: accepted per-column movement as a fraction of the smallest
        eigenvalue gap at the step start.
    collision_tol: eigenvalues closer than collision_tol * max(1, rho) are
        treated as collided.
    max_refinements: bisection depth budget per base step.
    """

    initial_steps: int = 64
    min_step: float = 1e-10
    gap_safety: float = 0.5
    collision_tol: float = 1e-8
    max_refinements: int = 40

    def __post_init__(self):
        if self.initial_steps < 1:
            raise ArgumentError("initial_steps must be >= 1")
        if not (self.min_step > 0.0):
            raise ArgumentError("min_step must be positive")
        if not (0.0 < self.gap_safety < 1.0):
            raise ArgumentError("gap_safety must lie in (0, 1)")
        if not (self.collision_tol > 0.0):
            raise ArgumentError("collision_tol must be positive")
        if self.max_refinements < 0:
            raise ArgumentError("max_refinements must be >= 0")


DEFAULT_TRACKER = TrackerConfig()


class MatrixPath:
    """Continuous matrix path over [0,1].

    Built via the factory classmethods segment, polygonal, hull_polygonal and
    sampled. `breaks` holds the parameter values of polygonal kinks (always
    including 0 and 1); the tracker lays its base grid segment by segment.
    """

    def __init__(self, evaluate, breaks, closed, kind, n, waypoint_matrices=None):
        self._evaluate = evaluate
        self.breaks = tuple(float(b) for b in breaks)
        self.closed = bool(closed)
        self.kind = kind
        self.n = int(n)
        self.waypoint_matrices = waypoint_matrices
        if len(self.breaks) < 2 or self.breaks[0] != 0.0 or self.breaks[-1] != 1.0:
            raise ArgumentError("breaks must run from 0.0 to 1.0")
        if any(b1 <= b0 for b0, b1 in zip(self.breaks, self.breaks[1:])):
            raise ArgumentError("breaks must be strictly increasing")
        if self.closed:
            gap = float(np.max(np.abs(self.at(0.0) - self.at(1.0))))
            if gap > _ENDPOINT_TOL:
                raise ArgumentError(
                    f"closed path endpoints differ by {gap:.3e} (> {_ENDPOINT_TOL})"
                )

    def at(self, x: float) -> np.ndarray:
        if x < 0.0 or x > 1.0:
            raise ArgumentError(f"path parameter {x!r} outside [0,1]")
        return self._evaluate(x)

    @classmethod
    def segment(cls, a, b) -> "MatrixPath":
        return cls.polygonal([a, b], closed=False)

    @classmethod
    def polygonal(cls, waypoints, closed=False) -> "MatrixPath":
        mats = [as_matrix(w) for w in waypoints]
        if len(mats) < 2:
            raise ArgumentError("polygonal path needs at least two waypoints")
        n = mats[0].n
        if any(m.n != n for m in mats):
            raise ArgumentError("all waypoints must have the same size")
        if closed:
            gap = float(np.max(np.abs(mats[0].entries - mats[-1].entries)))
            if gap > _ENDPOINT_TOL:
                raise ArgumentError(
                    f"closed path: first and last waypoint differ by {gap:.3e}"
                )
        arrays = [m.entries for m in mats]
        breaks = np.linspace(0.0, 1.0, len(arrays))

        def evaluate(x, _arrays=arrays, _breaks=breaks):
            seg = min(
                max(int(np.searchsorted(_breaks, x, side="right")) - 1, 0),
                len(_arrays) - 2,
            )
            t = (x - _breaks[seg]) / (_breaks[seg + 1] - _breaks[seg])
            return (1.0 - t) * _arrays[seg] + t * _arrays[seg + 1]

        return cls(evaluate, breaks, closed, "polygonal", n, tuple(mats))

    @classmethod
    def hull_polygonal(cls, hull: MatrixHull, alphas, closed=False) -> "MatrixPath":
        points = [
            a if isinstance(a, BarycentricPoint) else BarycentricPoint(np.asarray(a, dtype=float))
            for a in alphas
        ]
        if len(points) < 2:
            raise ArgumentError("hull path needs at least two barycentric waypoints")
        if any(p.k != hull.k for p in points):
            raise ArgumentError("barycentric waypoints must match the hull's k")
        mats = [convex_combine(hull, p) for p in points]
        path = cls.polygonal(mats, closed=closed)
        path.kind = "hull_polygonal"
        path.hull = hull
        path.alpha_waypoints = tuple(points)
        return path

    @classmethod
    def sampled(cls, fn, n=None, closed=False) -> "MatrixPath":
        def evaluate(x, _fn=fn):
            return as_matrix(_fn(x)).entries

        if n is None:
            n = evaluate(0.0).shape[0]
        return cls(evaluate, (0.0, 1.0), closed, "sampled", n)

    def alpha_at(self, x: float):
        """Barycentric weights at x for hull paths; None for other kinds."""
        points = getattr(self, "alpha_waypoints", None)
        if points is None:
            return None
        breaks = np.asarray(self.breaks)
        seg = min(
            max(int(np.searchsorted(breaks, x, side="right")) - 1, 0),
            len(points) - 2,
        )
        t = (x - breaks[seg]) / (breaks[seg + 1] - breaks[seg])
        w = (1.0 - t) * points[seg].weights + t * points[seg + 1].weights
        return BarycentricPoint(w)

    def reversed(self) -> "MatrixPath":
        breaks = tuple(1.0 - b for b in reversed(self.breaks))
        return MatrixPath(
            lambda x: self._evaluate(1.0 - x),
            breaks,
            self.closed,
            self.kind,
            self.n,
            None if self.waypoint_matrices is None else tuple(reversed(self.waypoint_matrices)),
        )

    def scaled(self, c) -> "MatrixPath":
        return MatrixPath(
            lambda x: self._evaluate(x) * c,
            self.breaks,
            self.closed,
            self.kind,
            self.n,
            None
            if self.waypoint_matrices is None
            else tuple(w.scaled(c) for w in self.waypoint_matrices),
        )


@dataclass(frozen=True)
class MatchResult:
    """Assignment of previous-row slots onto next-row slots."""

    mapping: tuple
    ambiguous: bool
    cost: float
    second_cost: float | None


def _assignment_cost(cost: np.ndarray, mapping) -> float:
    return float(cost[np.arange(len(mapping)), list(mapping)].sum())


def match_eigs(prev, nxt, gap_safety: float = DEFAULT_TRACKER.gap_safety) -> MatchResult:
    """Optimal bipartite match of two eigenvalue rows.

    Minimizes the sum of Euclidean distances; cost ties prefer lower index
    pairs. The ambiguity flag is set when the best total cost is within 10%
    of the second-best assignment, or when a matched distance exceeds
    gap_safety times the smallest gap of the previous row.
    """
    p = np.asarray(prev, dtype=complex)
    q = np.asarray(nxt, dtype=complex)
    if p.ndim != 1 or q.ndim != 1 or p.size != q.size or p.size == 0:
        raise ArgumentError(
            f"eigenvalue rows must be 1-d of equal nonzero length, got {p.shape} vs {q.shape}"
        )
    n = p.size
    if n == 1:
        return MatchResult((0,), False, float(abs(p[0] - q[0])), None)

    cost = np.abs(p[:, None] - q[None, :])
    if n == 2:
        keep = cost[0, 0] + cost[1, 1]
        swap = cost[0, 1] + cost[1, 0]
        if keep <= swap:
            mapping, best, second = (0, 1), float(keep), float(swap)
        else:
            mapping, best, second = (1, 0), float(swap), float(keep)
    else:
        scale = float(cost.max())
        delta = (scale if scale > 0.0 else 1.0) * 1e-13 / (n * n)
        bias = delta * (np.arange(n)[:, None] * n + np.arange(n)[None, :])
        _, cols = linear_sum_assignment(cost + bias)
        mapping = tuple(int(c) for c in cols)
        best = _assignment_cost(cost, mapping)
        second = math.inf
        for i in range(n):
            restricted = cost.copy()
            restricted[i, mapping[i]] = np.inf
            rr, cc = linear_sum_assignment(restricted)
            second = min(second, float(restricted[rr, cc].sum()))
        second = float(second)

    movement = cost[np.arange(n), list(mapping)]
    gap = mingap(p)
    move_flag = math.isfinite(gap) and bool(np.any(movement > gap_safety * gap))
    cost_flag = best >= _AMBIGUITY_RATIO * second
    return MatchResult(tuple(mapping), move_flag or cost_flag, best, second)


@dataclass(frozen=True)
class CollisionEvent:
    """Near-coincidence of tracked columns at one path parameter."""

    x_location: float
    columns: tuple
    min_gap_attained: float


@dataclass(frozen=True, eq=False)
class TrackedBundle:
    """Matched eigenvalue rows along a path: column j is one eigenpath."""

    parameters: np.ndarray
    values: np.ndarray
    collisions: tuple

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def start_row(self) -> np.ndarray:
        return self.values[0]

    @property
    def end_row(self) -> np.ndarray:
        return self.values[-1]


class _CollisionLog:
    """Merges per-sample collision clusters into spanning events."""

    def __init__(self):
        self.open = []  # dicts: columns(set), min_gap, x_at_min
        self.closed = []

    def observe(self, x, clusters_with_gaps):
        touched = []
        for cols, gap in clusters_with_gaps:
            cols = set(cols)
            hits = [ev for ev in self.open if ev["columns"] & cols]
            if hits:
                target = hits[0]
                for extra in hits[1:]:
                    target["columns"] |= extra["columns"]
                    if extra["min_gap"] < target["min_gap"]:
                        target["min_gap"] = extra["min_gap"]
                        target["x_at_min"] = extra["x_at_min"]
                    self.open.remove(extra)
            else:
                target = {"columns": set(), "min_gap": math.inf, "x_at_min": x}
                self.open.append(target)
            target["columns"] |= cols
            if gap < target["min_gap"]:
                target["min_gap"] = gap
                target["x_at_min"] = x
            touched.append(target)
        touched_ids = {id(t) for t in touched}
        for ev in [ev for ev in self.open if id(ev) not in touched_ids]:
            self.open.remove(ev)
            self.closed.append(ev)

    def finish(self):
        self.closed.extend(self.open)
        self.open = []
        events = [
            CollisionEvent(
                x_location=ev["x_at_min"],
                columns=tuple(sorted(ev["columns"])),
                min_gap_attained=float(ev["min_gap"]),
            )
            for ev in self.closed
        ]
        return tuple(sorted(events, key=lambda e: (e.x_location, e.columns)))


def _collision_clusters(row, collision_tol):
    """Size >= 2 single-linkage clusters below the collision threshold."""
    threshold = collision_tol * max(1.0, float(np.max(np.abs(row))))
    found = []
    for cluster in cluster_indices(row, threshold):
        if len(cluster) >= 2:
            idx = np.asarray(cluster)
            sub = row[idx]
            i, j = np.triu_indices(len(cluster), k=1)
            gap = float(np.min(np.abs(sub[i] - sub[j])))
            found.append((cluster, gap))
    return found, threshold


def track(path: MatrixPath, cfg: TrackerConfig = DEFAULT_TRACKER) -> TrackedBundle:
    """Track all eigenvalue paths of a matrix path.

    Each segment starts from initial_steps uniform steps; a step whose
    matching is ambiguous is bisected until unambiguous or the step falls
    below min_step. Rows are reordered so column j continues path j. Samples
    whose smallest gap falls below collision_tol * max(1, rho) are logged as
    CollisionEvents; matching continues stable-index through them.
    """
    if not isinstance(path, MatrixPath):
        raise ArgumentError("track expects a MatrixPath")
    cache = {}

    def eig_at(x):
        row = cache.get(x)
        if row is None:
            row = eigenvalues(path.at(x))
            cache[x] = row
        return row

    xs = [0.0]
    rows = [eig_at(0.0)]
    log = _CollisionLog()

    clusters0, _ = _collision_clusters(rows[0], cfg.collision_tol)
    log.observe(0.0, clusters0)

    def advance(x1, depth):
        x0 = xs[-1]
        prev = rows[-1]
        nxt = eig_at(x1)
        result = match_eigs(prev, nxt, cfg.gap_safety)

        prev_clusters, _thr = _collision_clusters(prev, cfg.collision_tol)
        if prev_clusters:
            # Starting at a collision: assignment ties among collided slots
            # are structural, so rely on stable-index matching; still bound
            # movement against the gap between distinct value clusters.
            collided = set()
            for cols, _g in prev_clusters:
                collided.update(cols)
            reps = [prev[i] for i in range(prev.size) if i not in collided]
            reps += [prev[cols[0]] for cols, _g in prev_clusters]
            ambiguous = False
            if len(reps) >= 2:
                inter_gap = mingap(np.asarray(reps, dtype=complex))
                movement = np.abs(prev - nxt[list(result.mapping)])
                ambiguous = bool(np.any(movement > cfg.gap_safety * inter_gap))
        else:
            ambiguous = result.ambiguous

        if ambiguous and (x1 - x0) >= cfg.min_step:
            if depth >= cfg.max_refinements:
                raise TrackingError(
                    f"could not resolve matching on [{x0!r}, {x1!r}] within "
                    f"{cfg.max_refinements} refinements",
                    interval=(x0, x1),
                )
            mid = 0.5 * (x0 + x1)
            if x0 < mid < x1:
                advance(mid, depth + 1)
                advance(x1, depth + 1)
                return

        new_row = nxt[list(result.mapping)]
        xs.append(x1)
        rows.append(new_row)
        clusters, _ = _collision_clusters(new_row, cfg.collision_tol)
        log.observe(x1, clusters)

    for b0, b1 in zip(path.breaks, path.breaks[1:]):
        base = np.linspace(b0, b1, cfg.initial_steps + 1)
        stack = np.stack([path.at(x) for x in base])
        batch = eigenvalues_many(stack)
        for x, row in zip(base, batch):
            cache.setdefault(float(x), row)
        for x in base[1:]:
            advance(float(x), 0)

    return TrackedBundle(
        parameters=np.asarray(xs, dtype=float),
        values=np.asarray(rows, dtype=complex),
        collisions=log.finish(),
    )


def invert_permutation(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def compose_permutations(first, second):
    """Apply `first`, then `second`."""
    return tuple(second[f] for f in first)


@dataclass(frozen=True)
class PairingPermutation:
    """Slot permutation induced by a closed loop, with value diagnostics.

    mapping[i] = start-enumeration slot whose value the path from slot i
    lands on. weakly_transitive mirrors value_preserving; transitive
    additionally requires the permutation to fix every equal-value cluster.
    """

    mapping: tuple
    value_preserving: bool
    transitive: bool
    max_value_drift: float
    collisions: tuple = ()

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ArgumentError(f"mapping {self.mapping!r} is not a permutation")

    @property
    def weakly_transitive(self) -> bool:
        return self.value_preserving

    @property
    def is_identity(self) -> bool:
        return all(m == i for i, m in enumerate(self.mapping))


def _monodromy_from_bundle(bundle: TrackedBundle, tol: ToleranceConfig) -> PairingPermutation:
    row0 = bundle.start_row
    rowm = bundle.end_row
    mapping = match_eigs(rowm, row0).mapping
    vtol = tol.cluster_tol * max(1.0, float(np.max(np.abs(row0))))
    drift = float(np.max(np.abs(row0[list(mapping)] - row0)))
    value_preserving = drift <= vtol
    cluster_of = {}
    for cid, cluster in enumerate(cluster_indices(row0, vtol)):
        for slot in cluster:
            cluster_of[slot] = cid
    fixes_clusters = all(cluster_of[m] == cluster_of[i] for i, m in enumerate(mapping))
    return PairingPermutation(
        mapping=mapping,
        value_preserving=value_preserving,
        transitive=value_preserving and fixes_clusters,
        max_value_drift=drift,
        collisions=bundle.collisions,
    )


def monodromy(
    path: MatrixPath,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> PairingPermutation:
    """Slot permutation realized by tracking once around a closed path."""
    if not isinstance(path, MatrixPath):
        raise ArgumentError("monodromy expects a MatrixPath")
    if not path.closed:
        raise ArgumentError("monodromy needs a closed path")
    return _monodromy_from_bundle(track(path, cfg), tol)


@dataclass(frozen=True)
class SegmentPairing:
    """Endpoint slot correspondence of a tracked segment.

    mapping[i] = slot of eigenvalues(B) reached by the path starting at slot
    i of eigenvalues(A); both enumerations are the solver's.
    """

    mapping: tuple
    collisions: tuple
    start_values: np.ndarray
    end_values: np.ndarray


def segment_pairing(
    a,
    b,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> SegmentPairing:
    """Pairing of eigenvalue slots of A onto slots of B along (1-x)A + xB."""
    path = MatrixPath.segment(a, b)
    return _segment_pairing_of_path(path, cfg)


def _segment_pairing_of_path(path: MatrixPath, cfg: TrackerConfig) -> SegmentPairing:
    bundle = track(path, cfg)
    end_canonical = eigenvalues(path.at(1.0))
    mapping = match_eigs(bundle.end_row, end_canonical).mapping
    return SegmentPairing(
        mapping=mapping,
        collisions=bundle.collisions,
        start_values=bundle.start_row,
        end_values=end_canonical,
    )


@dataclass(frozen=True)
class DeformationCollision:
    """Collision event observed on the loop at deformation level y."""

    y: float
    event: CollisionEvent
    evidence_only: bool = False


@dataclass(frozen=True, eq=False)
class DeformationReport:
    """Monodromy across a loop deformation.

    pairings holds one PairingPermutation per y-row. preserved means all
    rows realize the same permutation after transporting slots along the
    x=0 edge of the grid. When not preserved, change_interval brackets the
    first y where the permutation changes; collisions lists events found on
    loops in and around that interval. Events flagged evidence_only report
    the attained minimum gap on the innermost bracketing loops when no
    sub-threshold collision was observable at representable y values.
    """

    ys: tuple
    pairings: tuple
    preserved: bool
    change_interval: tuple | None
    collisions: tuple


def _transport_pairing(grid, y0, y1, cfg):
    """Slot pairing from A(0, y0) to A(0, y1) along the x=0 edge."""
    path = MatrixPath.sampled(lambda t: grid(0.0, y0 + t * (y1 - y0)))
    return _segment_pairing_of_path(path, cfg).mapping


def _conjugate(mapping, transport):
    """Rewrite a slot permutation at level y0 in level-y1 enumeration."""
    inv = invert_permutation(transport)
    return tuple(transport[mapping[inv[j]]] for j in range(len(mapping)))


def deformation_check(
    grid,
    rows: int,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    max_bisection: int = 48,
) -> DeformationReport:
    """Compare loop monodromy across a family of loops grid(x, y).

    grid maps (x, y) in [0,1]^2 to a matrix; every x-slice must be a closed
    loop. Monodromy is computed at `rows` uniformly spaced y-levels and
    compared after transporting slots along the x=0 edge. On a change, the
    y-interval is bisected to bracket it and collision events from the
    examined loops are collected.
    """
    if rows < 2:
        raise ArgumentError("deformation_check needs rows >= 2")
    ys = np.linspace(0.0, 1.0, rows)

    def loop_at(y):
        return MatrixPath.sampled(lambda x: grid(x, y), closed=True)

    monos = [monodromy(loop_at(y), cfg, tol) for y in ys]
    collisions = []
    for y, mono in zip(ys, monos):
        for ev in mono.collisions:
            collisions.append(DeformationCollision(float(y), ev))

    preserved = True
    change = None
    for i in range(rows - 1):
        transport = _transport_pairing(grid, float(ys[i]), float(ys[i + 1]), cfg)
        expected = _conjugate(monos[i].mapping, transport)
        if expected != monos[i + 1].mapping:
            preserved = False
            change = (float(ys[i]), float(ys[i + 1]))
            break

    if change is not None:
        lo, hi = change
        mono_lo = monos[i]
        last_lo_bundle_gap = None
        for _ in range(max_bisection):
            mid = 0.5 * (lo + hi)
            if not (lo < mid < hi):
                break
            mono_mid = monodromy(loop_at(mid), cfg, tol)
            for ev in mono_mid.collisions:
                collisions.append(DeformationCollision(mid, ev))
            transport = _transport_pairing(grid, lo, mid, cfg)
            if _conjugate(mono_lo.mapping, transport) != mono_mid.mapping:
                hi = mid
            else:
                lo, mono_lo = mid, mono_mid
        change = (lo, hi)
        if not any(lo <= c.y <= hi for c in collisions):
            # No thresholded event was reachable; report the tightest
            # observed near-collision on the bracketing loops as evidence.
            for y_edge in (lo, hi):
                bundle = track(loop_at(y_edge), cfg)
                gaps = [
                    (mingap(row), float(x))
                    for x, row in zip(bundle.parameters, bundle.values)
                ]
                g, x_at = min(gaps)
                row = bundle.values[list(bundle.parameters).index(x_at)]
                dist = np.abs(row[:, None] - row[None, :])
                np.fill_diagonal(dist, np.inf)
                i0, j0 = divmod(int(np.argmin(dist)), len(row))
                collisions.append(
                    DeformationCollision(
                        y_edge,
                        CollisionEvent(x_at, tuple(sorted((i0, j0))), float(g)),
                        evidence_only=True,
                    )
                )

    return DeformationReport(
        ys=tuple(float(y) for y in ys),
        pairings=tuple(monos),
        preserved=preserved,
        change_interval=change,
        collisions=tuple(collisions),
    )


@dataclass(frozen=True)
class ScalingCheckResult:
    ok: bool
    permutations_match: bool
    max_value_error: float
    shared_samples: int


def scaling_pairing_invariance_check(
    path: MatrixPath,
    c: float,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    value_tol: float = 1e-8,
) -> ScalingCheckResult:
    """Check that x -> c*A(x) realizes the same slot pairings, values scaled.

    c must be a positive real. Slot enumerations of the scaled path are
    aligned to the original through value matching before comparison.
    """
    if not (np.isreal(c) and float(c) > 0.0):
        raise ArgumentError(f"scaling factor must be positive real, got {c!r}")
    c = float(c)
    base = track(path, cfg)
    scaled = track(path.scaled(c), cfg)

    tau = match_eigs(c * base.start_row, scaled.start_row).mapping

    if path.closed:
        pi_base = match_eigs(base.end_row, base.start_row).mapping
        pi_scaled = match_eigs(scaled.end_row, scaled.start_row).mapping
        perms_match = all(
            tau[pi_base[i]] == pi_scaled[tau[i]] for i in range(len(tau))
        )
    else:
        end_base = eigenvalues(path.at(1.0))
        end_scaled = eigenvalues(path.scaled(c).at(1.0))
        m_base = match_eigs(base.end_row, end_base).mapping
        m_scaled = match_eigs(scaled.end_row, end_scaled).mapping
        tau_end = match_eigs(c * end_base, end_scaled).mapping
        perms_match = all(
            m_scaled[tau[i]] == tau_end[m_base[i]] for i in range(len(tau))
        )

    base_params = {float(x): idx for idx, x in enumerate(base.parameters)}
    scaled_params = {float(x): idx for idx, x in enumerate(scaled.parameters)}
    shared = sorted(set(base_params) & set(scaled_params))
    tau_list = list(tau)
    max_err = 0.0
    for x in shared:
        rb = base.values[base_params[x]]
        rs = scaled.values[scaled_params[x]]
        err = float(np.max(np.abs(rs[tau_list] - c * rb)))
        max_err = max(max_err, err)

    scale = max(1.0, c * float(np.max(np.abs(base.start_row))))
    ok = perms_match and max_err <= value_tol * scale
    return ScalingCheckResult(ok, perms_match, max_err, len(shared))
