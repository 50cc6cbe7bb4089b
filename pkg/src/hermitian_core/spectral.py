"""
Spectral decomposition of Hermitian matrices
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from ..config import TOL_HERMITIAN, TOL_DEGENERACY
from ..errors import NonHermitianError, DimensionMismatchError
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SpectralDecomposition:
    """
    Eigenvalues (descending) and orthonormal eigenvectors (columns) of a
    Hermitian matrix, plus the grouping of numerically degenerate eigenvalues.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_clusters: Tuple[Tuple[int, ...], ...]

    @property
    def dim(self):
        return len(self.eigenvalues)

    def reconstruct(self):
        """Return V diag(p) V^dagger."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def to_eigenbasis(self, op):
        """Express an operator in the eigenbasis: V^dagger op V."""
        v = self.eigenvectors
        return v.conj().T @ op @ v


def hermiticity_defect(h):
    """Largest entry of |h - h^dagger|."""
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def degeneracy_clusters(eigenvalues, tol=TOL_DEGENERACY):
    """
    Group indices of a descending eigenvalue list whose neighbours differ by
    less than tol times the spectral radius.

    Args:
        eigenvalues: Descending real eigenvalues
        tol: Relative tolerance

    Returns:
        Tuple of index tuples
    """
    p = np.asarray(eigenvalues, dtype=float)
    if p.size == 0:
        return ()

    radius = float(np.max(np.abs(p)))
    threshold = tol * radius if radius > 0 else 0.0

    clusters = [[0]]
    for k in range(1, p.size):
        if p[k - 1] - p[k] <= threshold:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    return tuple(tuple(c) for c in clusters)


def _fix_phases(vectors):
    # Largest-magnitude component of every column made real positive
    idx = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[idx, np.arange(vectors.shape[1])]
    return vectors * (np.abs(pivots) / pivots)


def spectral_decompose(h, floor_relative: Optional[float] = None, tol_deg=TOL_DEGENERACY):
    """
    Diagonalize a Hermitian matrix.

    Args:
        h: Square Hermitian matrix
        floor_relative: If given, eigenvalues with |p| below floor_relative
            times the spectral radius are set to exactly zero
        tol_deg: Relative tolerance for degeneracy clustering

    Returns:
        SpectralDecomposition with descending eigenvalues

    Raises:
        DimensionMismatchError: If h is not square
        NonHermitianError: If h deviates from Hermitian by more than TOL_HERMITIAN
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {h.shape}")

    defect = hermiticity_defect(h)
    if defect > TOL_HERMITIAN:
        raise NonHermitianError(f"Matrix is not Hermitian (max asymmetry {defect:.3e})")

    h = 0.5 * (h + h.conj().T)
    values, vectors = scipy.linalg.eigh(h)

    # eigh returns ascending order
    values = values[::-1].copy()
    vectors = _fix_phases(vectors[:, ::-1])

    if floor_relative is not None and values.size:
        radius = float(np.max(np.abs(values)))
        values[np.abs(values) < floor_relative * radius] = 0.0

    return SpectralDecomposition(
        eigenvalues=values,
        eigenvectors=vectors,
        degeneracy_clusters=degeneracy_clusters(values, tol_deg),
    )
