"""Dense complex matrix core.

Square matrices, convex hulls of matrices, characteristic polynomials,
discriminants, and multiplicity lists with their lexicographic order. All
heavier numerics sit on numpy's LAPACK bindings; everything downstream
(tracking, scanning, graphs) builds on the functions here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericError
from .tolerances import DEFAULT_TOLERANCES

__all__ = [
    "ComplexMatrix",
    "MatrixHull",
    "BarycentricPoint",
    "CharPoly",
    "MultiplicityList",
    "as_matrix",
    "convex_combine",
    "eigenvalues",
    "eigenvalues_many",
    "spectral_radius",
    "char_poly",
    "discriminant",
    "discriminant_from_roots",
    "discriminant_resultant",
    "discriminant_zero_threshold",
    "multiplicity_list",
    "multiplicity_list_of_values",
    "simple_spectrum_list",
    "lex_compare",
    "vanishing_order",
    "cluster_indices",
    "mingap",
]

_WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Square complex matrix with finite entries."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ArgumentError(
                f"matrix must be square and nonempty, got shape {a.shape}"
            )
        if not np.all(np.isfinite(a)):
            raise ArgumentError("matrix entries must be finite")
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))

    def scaled(self, c) -> "ComplexMatrix":
        return ComplexMatrix(self.entries * c)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return float(np.max(np.abs(self.entries - self.entries.conj().T))) <= tol


def as_matrix(value) -> ComplexMatrix:
    """Coerce a ComplexMatrix, ndarray, or nested sequence to ComplexMatrix."""
    if isinstance(value, ComplexMatrix):
        return value
    return ComplexMatrix(np.asarray(value, dtype=complex))


@dataclass(frozen=True, eq=False)
class MatrixHull:
    """Convex hull Co(A_1 .. A_k) of k same-sized generator matrices."""

    generators: tuple
    labels: tuple | None = None

    def __post_init__(self):
        gens = tuple(as_matrix(g) for g in self.generators)
        if len(gens) == 0:
            raise ArgumentError("hull needs at least one generator matrix")
        n = gens[0].n
        for i, g in enumerate(gens):
            if g.n != n:
                raise ArgumentError(
                    f"generator {i} has size {g.n}, expected {n}"
                )
        if self.labels is None:
            labels = tuple(f"A{i + 1}" for i in range(len(gens)))
        else:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(gens):
                raise ArgumentError(
                    f"got {len(labels)} labels for {len(gens)} generators"
                )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "generators", gens)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def n(self) -> int:
        return self.generators[0].n

    def scaled(self, c) -> "MatrixHull":
        return MatrixHull(tuple(g.scaled(c) for g in self.generators), self.labels)


@dataclass(frozen=True, eq=False)
class BarycentricPoint:
    """Convex weights (alpha_1 .. alpha_k): each in [0,1], summing to 1."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ArgumentError("weights must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(w)):
            raise ArgumentError("weights must be finite")
        if np.any(w < -_WEIGHT_SUM_TOL) or np.any(w > 1.0 + _WEIGHT_SUM_TOL):
            raise ArgumentError(f"weights must lie in [0,1], got {w.tolist()}")
        total = float(w.sum())
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ArgumentError(f"weights must sum to 1, got {total!r}")
        object.__setattr__(self, "weights", w)

    @property
    def k(self) -> int:
        return self.weights.size


def convex_combine(hull: MatrixHull, alpha) -> ComplexMatrix:
    """Sum alpha_i * A_i, accumulated in fixed generator order."""
    if not isinstance(alpha, BarycentricPoint):
        alpha = BarycentricPoint(np.asarray(alpha, dtype=float))
    if alpha.k != hull.k:
        raise ArgumentError(
            f"barycentric point has {alpha.k} weights, hull has {hull.k} generators"
        )
    acc = alpha.weights[0] * hull.generators[0].entries
    for w, gen in zip(alpha.weights[1:], hull.generators[1:]):
        acc = acc + w * gen.entries
    return ComplexMatrix(acc)


def eigenvalues(matrix) -> np.ndarray:
    """All eigenvalues with algebraic multiplicity, in solver order.

    The returned order is deterministic for a given matrix but otherwise
    unspecified; treat the result as a multiset.
    """
    m = as_matrix(matrix)
    try:
        return np.linalg.eigvals(m.entries)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solver failed: {exc}", matrix=m) from exc


def eigenvalues_many(stack: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stacked (s, n, n) array, one row per matrix."""
    try:
        return np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solver failed on a batch: {exc}") from exc


def spectral_radius(values_or_matrix) -> float:
    """Max |lambda| of a matrix, or of an already-computed eigenvalue row."""
    if isinstance(values_or_matrix, ComplexMatrix):
        values = eigenvalues(values_or_matrix)
    else:
        arr = np.asarray(values_or_matrix, dtype=complex)
        values = eigenvalues(arr) if arr.ndim == 2 else arr
    return float(np.max(np.abs(values))) if values.size else 0.0


@dataclass(frozen=True, eq=False)
class CharPoly:
    """Monic polynomial, coefficients in degree-descending order."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ArgumentError("coefficients must be a nonempty 1-d sequence")
        if c[0] != 1:
            raise ArgumentError(f"leading coefficient must be exactly 1, got {c[0]!r}")
        if not np.all(np.isfinite(c)):
            raise ArgumentError("coefficients must be finite")
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def eval(self, lam: complex) -> complex:
        return complex(np.polyval(self.coefficients, lam))


def char_poly(matrix) -> CharPoly:
    """Characteristic polynomial det(lambda I - A), expanded from eigenvalues."""
    vals = eigenvalues(matrix)
    coeffs = np.atleast_1d(np.poly(vals))
    # np.poly keeps the leading 1 exact; force the dtype only.
    return CharPoly(np.asarray(coeffs, dtype=complex))


def discriminant_from_roots(roots) -> complex:
    """Product of squared root differences over unordered pairs; 1 if < 2 roots."""
    r = np.asarray(roots, dtype=complex)
    if r.size < 2:
        return 1.0 + 0.0j
    i, j = np.triu_indices(r.size, k=1)
    return complex(np.prod((r[i] - r[j]) ** 2))


def discriminant(p: CharPoly) -> complex:
    """Discriminant of a monic polynomial, computed from its roots.

    Degree 1 returns 1 by the empty-product convention; degree 0 is an error.
    """
    if not isinstance(p, CharPoly):
        raise ArgumentError("discriminant expects a CharPoly")
    if p.degree < 1:
        raise ArgumentError("discriminant needs degree >= 1")
    if p.degree == 1:
        return 1.0 + 0.0j
    return discriminant_from_roots(np.roots(p.coefficients))


def discriminant_resultant(p: CharPoly) -> complex:
    """Discriminant via the Sylvester resultant Res(p, p').

    disc(p) = (-1)^(n(n-1)/2) * Res(p, p') for monic p of degree n. Kept as an
    independent route for cross-checks; the root-product route is the default.
    """
    if not isinstance(p, CharPoly):
        raise ArgumentError("discriminant_resultant expects a CharPoly")
    n = p.degree
    if n < 1:
        raise ArgumentError("discriminant needs degree >= 1")
    if n == 1:
        return 1.0 + 0.0j
    a = p.coefficients
    b = np.polyder(a)
    m = n - 1
    syl = np.zeros((n + m, n + m), dtype=complex)
    for row in range(m):
        syl[row, row : row + n + 1] = a
    for row in range(n):
        syl[m + row, row : row + m + 1] = b
    res = complex(np.linalg.det(syl))
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    return sign * res


def discriminant_zero_threshold(p: CharPoly, disc_zero_tol: float) -> float:
    """Relative zero threshold: tol * (1 + max coefficient magnitude)^(2n-2)."""
    n = p.degree
    if n < 1:
        raise ArgumentError("needs degree >= 1")
    max_coef = float(np.max(np.abs(p.coefficients)))
    return disc_zero_tol * (1.0 + max_coef) ** (2 * n - 2)


def cluster_indices(values, threshold: float) -> list:
    """Single-linkage clusters of complex values at the given threshold.

    Returns index lists, each sorted, ordered by smallest member. Threshold is
    absolute here; callers apply their relative scaling.
    """
    v = np.asarray(values, dtype=complex)
    n = v.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if abs(v[i] - v[j]) <= threshold:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def mingap(values) -> float:
    """Smallest pairwise distance; inf when fewer than two values."""
    v = np.asarray(values, dtype=complex)
    if v.size < 2:
        return math.inf
    i, j = np.triu_indices(v.size, k=1)
    return float(np.min(np.abs(v[i] - v[j])))


@dataclass(frozen=True)
class MultiplicityList:
    """Counts (a_n, ..., a_1): a_i distinct eigenvalues of multiplicity i."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) == 0 or any(c < 0 for c in counts):
            raise ArgumentError("counts must be nonempty and nonnegative")
        n = len(counts)
        total = sum((n - idx) * c for idx, c in enumerate(counts))
        if total != n:
            raise ArgumentError(
                f"multiplicities sum to {total}, expected {n} for length-{n} list"
            )
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return len(self.counts)

    def dashed(self) -> str:
        return "-".join(str(c) for c in self.counts)


def simple_spectrum_list(n: int) -> MultiplicityList:
    """The list (0, ..., 0, n): n distinct simple eigenvalues."""
    return MultiplicityList((0,) * (n - 1) + (n,))


def multiplicity_list_of_values(values, cluster_tol: float) -> MultiplicityList:
    """Multiplicity list of an eigenvalue row.

    Clusters with single linkage at cluster_tol * max(1, max|value|) and
    counts cluster sizes.
    """
    v = np.asarray(values, dtype=complex)
    n = v.size
    if n == 0:
        raise ArgumentError("need at least one eigenvalue")
    threshold = cluster_tol * max(1.0, float(np.max(np.abs(v))))
    sizes = [len(c) for c in cluster_indices(v, threshold)]
    counts = [0] * n
    for s in sizes:
        counts[n - s] += 1
    return MultiplicityList(tuple(counts))


def multiplicity_list(matrix, cluster_tol: float = DEFAULT_TOLERANCES.cluster_tol):
    return multiplicity_list_of_values(eigenvalues(matrix), cluster_tol)


def lex_compare(x: MultiplicityList, y: MultiplicityList) -> int:
    """Compare from a_n downward: -1, 0, or 1. Total order for equal lengths."""
    if not isinstance(x, MultiplicityList) or not isinstance(y, MultiplicityList):
        raise ArgumentError("lex_compare expects two MultiplicityList values")
    if x.n != y.n:
        raise ArgumentError(f"length mismatch: {x.n} vs {y.n}")
    if x.counts < y.counts:
        return -1
    if x.counts > y.counts:
        return 1
    return 0


def vanishing_order(p: CharPoly, lam: complex, tol: float) -> int:
    """Largest m such that p, p', ..., p^(m-1) all vanish at lam.

    Each derivative's residual is compared against tol times an
    absolute-coefficient scale: sum of |c| * max(1, |lam|)^deg evaluated by
    Horner, so the test is insensitive to coefficient magnitudes.
    """
    if not isinstance(p, CharPoly):
        raise ArgumentError("vanishing_order expects a CharPoly")
    if not (tol > 0.0):
        raise ArgumentError("tol must be positive")
    coeffs = p.coefficients
    base = max(1.0, abs(lam))
    order = 0
    for _ in range(p.degree + 1):
        scale = float(np.polyval(np.abs(coeffs), base))
        if scale == 0.0 or abs(np.polyval(coeffs, lam)) > tol * scale:
            break
        order += 1
        if coeffs.size == 1:
            break
        coeffs = np.polyder(coeffs)
    return order
