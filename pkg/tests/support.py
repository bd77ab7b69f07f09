import numpy as np

from eigensurface.linalg import ComplexMatrix


def offdiag(c) -> ComplexMatrix:
    """[[0, 1], [c, 0]], eigenvalues +-sqrt(c)."""
    return ComplexMatrix(np.array([[0, 1], [c, 0]], dtype=complex))
