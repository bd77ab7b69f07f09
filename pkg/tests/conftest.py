import numpy as np
import pytest

from eigensurface.linalg import ComplexMatrix, MatrixHull

from support import offdiag


@pytest.fixture(scope="session")
def quadrant_hull() -> MatrixHull:
    """Hull of [[0,1],[c,0]] over c in {1, i, -1, -i}.

    The combined matrix is [[0,1],[c(alpha),0]] with
    c(alpha) = a1 + i a2 - a3 - i a4, eigenvalues +-sqrt(c); its double
    eigenvalue sits exactly on the affine line a1 = a3, a2 = a4.
    """
    return MatrixHull(
        (offdiag(1), offdiag(1j), offdiag(-1), offdiag(-1j)),
        labels=("c1", "ci", "cm1", "cmi"),
    )


@pytest.fixture(scope="session")
def diag_pair_hull() -> MatrixHull:
    """Co(diag(1,2), diag(2,3)): two parallel real eigenvalue tracks, gap 1."""
    return MatrixHull(
        (
            ComplexMatrix(np.diag([1.0, 2.0]).astype(complex)),
            ComplexMatrix(np.diag([2.0, 3.0]).astype(complex)),
        )
    )


@pytest.fixture(scope="session")
def crossing_pair_hull() -> MatrixHull:
    """Co(diag(1,-1), [[0,1],[-1,0]]): disc = 4(1-2*a2), zero at the midpoint."""
    return MatrixHull(
        (
            ComplexMatrix(np.diag([1.0, -1.0]).astype(complex)),
            ComplexMatrix(np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)),
        )
    )
