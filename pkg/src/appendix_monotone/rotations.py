"""
SU(2) -> SO(3): the rotation induced on Pauli vectors by a qubit unitary
"""
from dataclasses import dataclass

import numpy as np

from ..config import TOL_UNITARY
from ..errors import NotUnitaryError
from ..hermitian_core.operators import PAULIS


@dataclass(frozen=True)
class RotationMatrix:
    """Real 3x3 matrix R with U^dag sigma_i U = sum_j R_ij sigma_j."""
    entries: np.ndarray

    def orthogonality_defect(self) -> float:
        r = self.entries
        return float(np.max(np.abs(r @ r.T - np.eye(3))))

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.entries))


def so3_from_su2(u) -> RotationMatrix:
    """
    R_ij = Tr[sigma_j U^dag sigma_i U] / 2.

    The global phase of U cancels, so any U(2) element is accepted.

    Raises:
        NotUnitaryError: If U is not a 2x2 unitary within TOL_UNITARY
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NotUnitaryError(f"Expected a 2x2 unitary, got shape {u.shape}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
    if defect > TOL_UNITARY:
        raise NotUnitaryError(f"Matrix is not unitary (defect {defect:.3e})")

    r = np.empty((3, 3))
    for i, sigma_i in enumerate(PAULIS):
        rotated = u.conj().T @ sigma_i @ u
        for j, sigma_j in enumerate(PAULIS):
            r[i, j] = 0.5 * float(np.real(np.trace(sigma_j @ rotated)))
    return RotationMatrix(entries=r)
