"""Example matrix families with closed-form spectral oracles.

Also home to the seeded generator used by every randomized entry point. The
generator is pinned bit-for-bit so golden values survive platform changes:

* state advances by the splitmix64 step: add 0x9E3779B97F4A7C15 mod 2^64,
  then xor-shift/multiply with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB
  (shifts 30/27/31);
* uniform() maps a 64-bit word z to ((z >> 11) + 1) * 2^-53, in (0, 1];
* symmetric() is 2*uniform() - 1;
* normal_pair() is the Box-Muller transform of two consecutive uniforms;
* matrices fill row-major, complex entries real part first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, StructuralViolationError
from .linalg import (
    ComplexMatrix,
    MatrixHull,
    as_matrix,
    eigenvalues,
)
from .tolerances import DEFAULT_TOLERANCES, ToleranceConfig
from .track import (
    DEFAULT_TRACKER,
    MatrixPath,
    TrackerConfig,
    match_eigs,
    monodromy,
)

__all__ = [
    "SplitMix64",
    "random_family",
    "random_probability_vector",
    "random_complex_vector",
    "toeplitz_tridiag",
    "toeplitz_spectrum",
    "toeplitz_segment_spectra",
    "brauer_perturb",
    "pagerank_hull",
    "pagerank_spectrum",
    "circulant",
    "circulant_spectrum",
    "circulant_hull_spectrum",
    "perron_check",
    "hermitian_weak_transitivity_check",
    "FamilySpec",
    "verify_family",
    "FAMILY_KINDS",
    "RANDOM_KINDS",
]

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

RANDOM_KINDS = ("hermitian", "positive", "row_stochastic", "ginibre")
FAMILY_KINDS = (
    "hermitian",
    "nonneg_primitive",
    "brauer",
    "pagerank",
    "toeplitz_tridiag",
    "circulant",
)


class SplitMix64:
    """Deterministic 64-bit generator; see the module docstring for the
    exact bit-level contract."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return ((self.u64() >> 11) + 1) * 2.0**-53

    def symmetric(self) -> float:
        return 2.0 * self.uniform() - 1.0

    def normal_pair(self):
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        return r * math.cos(theta), r * math.sin(theta)


def random_family(kind: str, n: int, seed: int) -> ComplexMatrix:
    """Seeded test matrix of one of the documented kinds."""
    if n < 1:
        raise ArgumentError("dimension must be >= 1")
    rng = SplitMix64(seed)
    if kind == "hermitian":
        m = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                re = rng.symmetric()
                im = rng.symmetric()
                m[i, j] = complex(re, im)
        return ComplexMatrix((m + m.conj().T) / 2.0)
    if kind == "positive":
        m = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                m[i, j] = rng.uniform()
        return ComplexMatrix(m)
    if kind == "row_stochastic":
        m = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                m[i, j] = rng.uniform()
        return ComplexMatrix(m / m.sum(axis=1, keepdims=True))
    if kind == "ginibre":
        m = np.empty((n, n), dtype=complex)
        inv = 1.0 / math.sqrt(2.0)
        for i in range(n):
            for j in range(n):
                re, im = rng.normal_pair()
                m[i, j] = complex(re * inv, im * inv)
        return ComplexMatrix(m)
    raise ArgumentError(f"unknown random kind {kind!r}; expected {RANDOM_KINDS}")


def random_probability_vector(rng: SplitMix64, n: int) -> np.ndarray:
    v = np.array([rng.uniform() for _ in range(n)])
    return v / v.sum()


def random_complex_vector(rng: SplitMix64, n: int) -> np.ndarray:
    return np.array(
        [complex(rng.symmetric(), rng.symmetric()) for _ in range(n)]
    )


def toeplitz_tridiag(n: int, a, b, c) -> ComplexMatrix:
    """a on the diagonal, b above, c below."""
    if n < 1:
        raise ArgumentError("dimension must be >= 1")
    m = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(m, a)
    for i in range(n - 1):
        m[i, i + 1] = b
        m[i + 1, i] = c
    return ComplexMatrix(m)


def _cos_grid(n: int) -> np.ndarray:
    return np.cos(np.pi * np.arange(1, n + 1) / (n + 1))


def toeplitz_spectrum(n: int, a, b, c) -> np.ndarray:
    """a + 2*sqrt(bc)*cos(pi k/(n+1)), principal square root."""
    s = np.sqrt(complex(b) * complex(c))
    return complex(a) + 2.0 * s * _cos_grid(n)


def toeplitz_segment_spectra(n: int, start, end, xs) -> np.ndarray:
    """Closed-form spectra along the segment between coefficient triples.

    start/end are (a, b, c). The square root of b(x)c(x) starts on the
    principal branch and is continued by nearest choice along xs, which must
    be sorted ascending; rows are ordered k = 1..n.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size and np.any(np.diff(xs) < 0):
        raise ArgumentError("xs must be sorted ascending")
    a0, b0, c0 = (complex(v) for v in start)
    a1, b1, c1 = (complex(v) for v in end)
    cosk = _cos_grid(n)
    rows = np.empty((xs.size, n), dtype=complex)
    prev = None
    for i, x in enumerate(xs):
        a = (1.0 - x) * a0 + x * a1
        b = (1.0 - x) * b0 + x * b1
        c = (1.0 - x) * c0 + x * c1
        s = np.sqrt(b * c)
        if prev is not None and abs(-s - prev) < abs(s - prev):
            s = -s
        prev = s
        rows[i] = a + 2.0 * s * cosk
    return rows


def brauer_perturb(a, x, v, residual_tol: float = 1e-8):
    """Rank-one update A + x v* and its predicted spectrum.

    x must be an eigenvector of A; its eigenvalue moves to lambda_1 + v*x,
    the rest stay put.
    """
    mat = as_matrix(a)
    x = np.asarray(x, dtype=complex).reshape(-1)
    v = np.asarray(v, dtype=complex).reshape(-1)
    if x.size != mat.n or v.size != mat.n:
        raise ArgumentError("x and v must have length n")
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise ArgumentError("x must be nonzero")
    lam1 = complex(x.conj() @ (mat.entries @ x)) / complex(x.conj() @ x)
    residual = float(np.linalg.norm(mat.entries @ x - lam1 * x)) / nx
    if residual > residual_tol * max(1.0, mat.frobenius()):
        raise ArgumentError(
            f"x is not an eigenvector: relative residual {residual:.3e}"
        )
    perturbed = ComplexMatrix(mat.entries + np.outer(x, v.conj()))
    base = eigenvalues(mat)
    hit = int(np.argmin(np.abs(base - lam1)))
    predicted = base.copy()
    predicted[hit] = lam1 + complex(v.conj() @ x)
    return perturbed, predicted


_STOCHASTIC_TOL = 1e-12


def _check_stochastic(s: ComplexMatrix):
    row_sums = s.entries.sum(axis=1)
    worst = float(np.max(np.abs(row_sums - 1.0)))
    if worst > _STOCHASTIC_TOL:
        raise ArgumentError(
            f"matrix is not row-stochastic: worst row-sum deviation {worst:.3e}"
        )
    if float(np.max(np.abs(s.entries.imag))) > _STOCHASTIC_TOL:
        raise ArgumentError("row-stochastic matrix must be real")
    if float(np.min(s.entries.real)) < -_STOCHASTIC_TOL:
        raise ArgumentError("row-stochastic matrix must be entrywise nonnegative")


def _check_probability_vector(v: np.ndarray):
    if float(np.max(np.abs(v.imag))) > _STOCHASTIC_TOL:
        raise ArgumentError("probability vector must be real")
    if float(np.min(v.real)) < -_STOCHASTIC_TOL:
        raise ArgumentError("probability vector entries must be >= 0")
    total = float(np.abs(v.sum() - 1.0))
    if total > _STOCHASTIC_TOL:
        raise ArgumentError(
            f"probability vector must sum to 1 (off by {total:.3e})"
        )


def pagerank_hull(s, v) -> MatrixHull:
    """Co(S, e v^T) for row-stochastic S and probability vector v."""
    mat = as_matrix(s)
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != mat.n:
        raise ArgumentError("v must have length n")
    _check_stochastic(mat)
    _check_probability_vector(v)
    teleport = ComplexMatrix(np.outer(np.ones(mat.n), v))
    return MatrixHull((mat, teleport), labels=("S", "evT"))


def pagerank_spectrum(s, alpha: float) -> np.ndarray:
    """Spectrum of alpha*S + (1-alpha)*e v^T: one 1, the rest scaled by alpha.

    The moved eigenvalue is S's eigenvalue nearest 1 (its Perron root).
    """
    mat = as_matrix(s)
    _check_stochastic(mat)
    if not 0.0 <= alpha <= 1.0:
        raise ArgumentError("alpha must lie in [0, 1]")
    base = eigenvalues(mat)
    hit = int(np.argmin(np.abs(base - 1.0)))
    out = alpha * base
    out[hit] = 1.0
    return out


def circulant(first_row) -> ComplexMatrix:
    row = np.asarray(first_row, dtype=complex).reshape(-1)
    if row.size < 1:
        raise ArgumentError("first row must be nonempty")
    n = row.size
    m = np.empty((n, n), dtype=complex)
    for i in range(n):
        m[i] = np.roll(row, i)
    return ComplexMatrix(m)


def circulant_spectrum(first_row) -> np.ndarray:
    """c_j = sum_m row[m] * omega^(j m), omega = exp(2 pi i / n)."""
    row = np.asarray(first_row, dtype=complex).reshape(-1)
    n = row.size
    j = np.arange(n)
    omega_powers = np.exp(2j * np.pi * np.outer(j, j) / n)
    return omega_powers @ row


def circulant_hull_spectrum(first_rows, alpha) -> np.ndarray:
    """Shared eigenvectors make the hull spectrum the slotwise combination."""
    alpha = np.asarray(alpha, dtype=float).reshape(-1)
    rows = [np.asarray(r, dtype=complex).reshape(-1) for r in first_rows]
    if len(rows) != alpha.size:
        raise ArgumentError("one weight per circulant row")
    acc = alpha[0] * circulant_spectrum(rows[0])
    for w, r in zip(alpha[1:], rows[1:]):
        acc = acc + w * circulant_spectrum(r)
    return acc


def perron_check(
    hull: MatrixHull,
    N: int,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    threads: int = 1,
) -> bool:
    """Every sample's dominant eigenvalue is a simple positive real, and all
    of them land in a single 1-component."""
    from .surface import k_components, scan

    for g in hull.generators:
        if float(np.max(np.abs(g.entries.imag))) > 0.0:
            raise ArgumentError("generators must be real matrices")
        if float(np.min(g.entries.real)) <= 0.0:
            raise ArgumentError("generators must be entrywise positive")

    result = scan(hull, N, tol)
    comps = k_components(result, cfg, tol, threads)
    home = {}
    for comp in comps:
        for member in comp.members:
            home[member] = comp

    perron_comp = None
    for s in result.samples:
        row = s.eigenvalues
        moduli = np.abs(row)
        top = int(np.argmax(moduli))
        lam = row[top]
        threshold = tol.cluster_tol * max(1.0, float(moduli[top]))
        rest = np.delete(row, top)
        if rest.size and float(np.min(np.abs(rest - lam))) <= threshold:
            raise StructuralViolationError(
                f"dominant eigenvalue not simple at sample {s.index} "
                f"(alpha {tuple(s.alpha.weights)})"
            )
        if not (lam.real > 0.0 and abs(lam.imag) <= threshold):
            return False
        if rest.size and float(np.max(np.abs(rest))) >= float(moduli[top]):
            return False
        comp = home[(s.index, top)]
        if perron_comp is None:
            perron_comp = comp
        elif comp is not perron_comp:
            return False
    return perron_comp is not None and perron_comp.k == 1


def hermitian_weak_transitivity_check(
    waypoints,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> bool:
    """Monodromy of the closed polygonal loop must preserve values."""
    mats = [as_matrix(w) for w in waypoints]
    if len(mats) < 1:
        raise ArgumentError("need at least one waypoint")
    for i, m in enumerate(mats):
        if not m.is_hermitian(1e-12):
            raise ArgumentError(f"waypoint {i} is not Hermitian within 1e-12")
    closed = list(mats)
    if (
        len(closed) == 1
        or float(np.max(np.abs(closed[0].entries - closed[-1].entries))) > 0.0
    ):
        closed.append(closed[0])
    loop = MatrixPath.polygonal(closed, closed=True)
    return monodromy(loop, cfg, tol).value_preserving


@dataclass(frozen=True)
class FamilySpec:
    """Declarative description of one verification run."""

    kind: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ArgumentError(
                f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}"
            )
        if self.n < 1:
            raise ArgumentError("family dimension must be >= 1")


def _multiset_error(computed: np.ndarray, predicted: np.ndarray) -> float:
    mapping = match_eigs(predicted, computed).mapping
    return float(np.max(np.abs(computed[list(mapping)] - predicted)))


def verify_family(
    spec: FamilySpec,
    cfg: TrackerConfig = DEFAULT_TRACKER,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    pass_tol: float = 1e-8,
) -> dict:
    """Run one family's oracle comparison; see each branch for its check.

    hermitian: monodromy of a seeded 4-waypoint loop preserves values
      (max_error is the worst slot drift).
    nonneg_primitive: perron_check on a hull of seeded positive matrices
      (max_error is the dominant eigenvalue's distance from the real axis).
    brauer / pagerank / toeplitz_tridiag / circulant: computed spectra
      against the closed-form prediction (max_error is the multiset gap).
    """
    kind, n, seed, params = spec.kind, spec.n, spec.seed, spec.params

    if kind == "toeplitz_tridiag":
        a = complex(params.get("a", 0))
        b = complex(params.get("b", 1))
        c = complex(params.get("c", 1))
        computed = eigenvalues(toeplitz_tridiag(n, a, b, c))
        err = _multiset_error(computed, toeplitz_spectrum(n, a, b, c))
        ok = err <= pass_tol

    elif kind == "brauer":
        rng = SplitMix64(seed)
        a = random_family("ginibre", n, rng.u64())
        base = eigenvalues(a)
        lead = int(np.argmax(np.abs(base)))
        try:
            w, vecs = np.linalg.eig(a.entries)
        except np.linalg.LinAlgError as exc:
            from .errors import NumericError

            raise NumericError(f"eigendecomposition failed: {exc}", matrix=a) from exc
        col = int(np.argmin(np.abs(w - base[lead])))
        x = vecs[:, col]
        v = random_complex_vector(rng, n)
        perturbed, predicted = brauer_perturb(a, x, v)
        err = _multiset_error(eigenvalues(perturbed), predicted)
        ok = err <= pass_tol

    elif kind == "pagerank":
        if "S" in params:
            s = as_matrix(np.asarray(params["S"], dtype=complex))
        else:
            s = random_family("row_stochastic", n, seed)
        rng = SplitMix64(seed ^ 0x5CA1AB1E)
        if "v" in params:
            v = np.asarray(params["v"], dtype=complex).reshape(-1)
        else:
            v = random_probability_vector(rng, n)
        alpha = float(params.get("alpha", 0.85))
        hull = pagerank_hull(s, v)
        from .linalg import BarycentricPoint, convex_combine

        mix = convex_combine(hull, BarycentricPoint(np.array([alpha, 1 - alpha])))
        err = _multiset_error(eigenvalues(mix), pagerank_spectrum(s, alpha))
        ok = err <= pass_tol

    elif kind == "circulant":
        if "first_row" in params:
            row = np.asarray(params["first_row"], dtype=complex).reshape(-1)
            if row.size != n:
                raise ArgumentError("first_row length must equal n")
        else:
            rng = SplitMix64(seed)
            row = random_complex_vector(rng, n)
        err = _multiset_error(
            eigenvalues(circulant(row)), circulant_spectrum(row)
        )
        ok = err <= pass_tol

    elif kind == "hermitian":
        rng = SplitMix64(seed)
        pts = [random_family("hermitian", n, rng.u64()) for _ in range(4)]
        loop = MatrixPath.polygonal(pts + [pts[0]], closed=True)
        mono = monodromy(loop, cfg, tol)
        err = mono.max_value_drift
        ok = mono.value_preserving

    elif kind == "nonneg_primitive":
        rng = SplitMix64(seed)
        count = int(params.get("generators", 2))
        N = int(params.get("resolution", 6))
        gens = [random_family("positive", n, rng.u64()) for _ in range(count)]
        hull = MatrixHull(tuple(gens))
        ok = perron_check(hull, N, cfg, tol)
        err = 0.0
        from .surface import scan

        for s in scan(hull, N, tol).samples:
            row = s.eigenvalues
            err = max(err, abs(row[int(np.argmax(np.abs(row)))].imag))

    else:  # pragma: no cover - guarded by FamilySpec
        raise ArgumentError(f"unknown family kind {kind!r}")

    return {
        "family": kind,
        "n": n,
        "seed": seed,
        "max_error": float(err),
        "pass": bool(ok),
    }
