"""
Hermitian observables with an optional declared spectrum
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..config import TOL_RECONSTRUCTION
from ..errors import DimensionMismatchError, DomainError
from ..hermitian_core.operators import embed_operator, side_index
from ..hermitian_core.spectral import spectral_decompose


@dataclass(frozen=True)
class Observable:
    """
    Hermitian matrix, optionally tagged with the spectrum it was built to have.
    Construct with from_matrix() or from_spectrum() so the tag is checked.
    """
    matrix: np.ndarray
    declared_spectrum: Optional[np.ndarray] = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)
        if self.declared_spectrum is not None:
            s = np.sort(np.asarray(self.declared_spectrum, dtype=float))[::-1].copy()
            s.setflags(write=False)
            object.__setattr__(self, 'declared_spectrum', s)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix, declared_spectrum: Optional[Sequence[float]] = None) -> 'Observable':
        """
        Validate Hermiticity and, when given, that the eigenvalues match
        declared_spectrum as a multiset.

        Raises:
            NonHermitianError, DimensionMismatchError, DomainError
        """
        decomposition = spectral_decompose(matrix)
        m = np.asarray(matrix, dtype=complex)
        m = 0.5 * (m + m.conj().T)

        if declared_spectrum is not None:
            declared = np.sort(np.asarray(declared_spectrum, dtype=float))[::-1]
            if declared.size != decomposition.dim:
                raise DimensionMismatchError(
                    f"Declared spectrum has {declared.size} values for a {decomposition.dim}x{decomposition.dim} matrix"
                )
            scale = max(1.0, float(np.max(np.abs(declared))) if declared.size else 1.0)
            gap = float(np.max(np.abs(decomposition.eigenvalues - declared))) if declared.size else 0.0
            if gap > TOL_RECONSTRUCTION * scale:
                raise DomainError(f"Eigenvalues differ from the declared spectrum by {gap:.3e}")

        return cls(matrix=m, declared_spectrum=declared_spectrum)

    @classmethod
    def from_spectrum(cls, values: Sequence[float], basis) -> 'Observable':
        """
        Observable sum_k values[k] |b_k><b_k| for the columns b_k of a unitary basis.
        """
        values = np.asarray(values, dtype=float)
        basis = np.asarray(basis, dtype=complex)
        if basis.shape != (values.size, values.size):
            raise DimensionMismatchError(f"Basis shape {basis.shape} does not match {values.size} eigenvalues")
        m = (basis * values) @ basis.conj().T
        return cls(matrix=0.5 * (m + m.conj().T), declared_spectrum=values)

    def embedded(self, side, dims: Sequence[int]):
        """Full-space matrix with identities on the other subsystems."""
        return embed_operator(self.matrix, side_index(side), dims)


def as_matrix(obs):
    """Matrix of an Observable, or the argument itself as a complex array."""
    return np.asarray(getattr(obs, 'matrix', obs), dtype=complex)
