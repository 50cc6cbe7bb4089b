"""
Correlation matrices of local Pauli (or generalized Gell-Mann) observables
"""
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError
from ..f_catalog.functions import FOpSpec
from ..hermitian_core.operators import PAULIS, embed_operator, hermitian_basis
from ..hermitian_core.states import DensityMatrix
from .functionals import spectral_frame


@dataclass(frozen=True)
class CorrelationMatrix:
    """
    M^f_ij = Upsilon^f(rho, sigma_i (x) I, I (x) sigma_j) for a state whose
    first two factors are qubits.
    """
    entries: np.ndarray
    f_spec: FOpSpec

    def singular_values(self):
        return np.linalg.svd(self.entries, compute_uv=False)

    @property
    def s_max(self) -> float:
        return float(self.singular_values()[0])

    def to_list(self):
        return [[float(v) for v in row] for row in self.entries]


def _local_frames(rho, f, ops_a, ops_b):
    frame = spectral_frame(rho, f)
    rotated_a = [frame.rotate(embed_operator(op, 0, rho.dims)) for op in ops_a]
    rotated_b = [frame.rotate(embed_operator(op, 1, rho.dims)) for op in ops_b]
    out = np.empty((len(ops_a), len(ops_b)))
    for i, a in enumerate(rotated_a):
        for j, b in enumerate(rotated_b):
            out[i, j] = frame.upsilon(a, b)
    return out


def correlation_matrix(rho: DensityMatrix, f: FOpSpec) -> CorrelationMatrix:
    """
    Build the 3x3 matrix M^f for a state with dims [2, 2] (or [2, 2, d_C, ...],
    the Paulis then act on the first two factors).

    Raises:
        DimensionMismatchError: If the first two subsystems are not qubits
    """
    if len(rho.dims) < 2 or rho.dims[0] != 2 or rho.dims[1] != 2:
        raise DimensionMismatchError(f"Correlation matrix needs two leading qubits, got dims {list(rho.dims)}")
    entries = _local_frames(rho, f, PAULIS, PAULIS)
    return CorrelationMatrix(entries=entries, f_spec=f)


def generalized_correlation_matrix(rho: DensityMatrix, f: FOpSpec):
    """
    T_{mu nu} = Upsilon^f(rho, E_mu (x) I, I (x) F_nu) over orthonormal traceless
    Hermitian bases of the first two subsystems.

    For qubits the basis is sigma_i / sqrt(2), so T = M^f / 2.

    Returns:
        Real array of shape (d_A^2 - 1, d_B^2 - 1)
    """
    if len(rho.dims) < 2:
        raise DimensionMismatchError(f"Need at least two subsystems, got dims {list(rho.dims)}")
    return _local_frames(rho, f, hermitian_basis(rho.dims[0]), hermitian_basis(rho.dims[1]))
