"""Shared tolerance configuration.

All tolerances are relative and flow through explicitly; there is no global
mutable state. The scale factors they multiply are documented on the
operations that consume them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric thresholds used across the library.

    tol_eig: residual bound for eigenvalue solves, relative to
        max(1, ||A||_F)^n.
    cluster_tol: single-linkage threshold for treating eigenvalues as
        coincident, relative to max(1, rho(A)).
    disc_zero_tol: discriminant zero test threshold, relative to
        (1 + max coefficient magnitude)^(2n-2).
    """

    tol_eig: float = 1e-9
    cluster_tol: float = 1e-7
    disc_zero_tol: float = 1e-8

    def __post_init__(self):
        for name in ("tol_eig", "cluster_tol", "disc_zero_tol"):
            value = getattr(self, name)
            if not (value > 0.0):
                raise ArgumentError(f"{name} must be positive, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()
