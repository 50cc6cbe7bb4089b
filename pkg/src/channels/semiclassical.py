"""
Semi-classical qubit channels: every output is diagonal in one fixed basis.
"""
from typing import List, Optional

import numpy as np

from ..config import TOL_TRACE
from ..errors import DomainError
from ..hermitian_core.sampling import RngLike, as_generator, haar_unitary
from .base import LocalChannel, check_unitary


class SemiClassicalChannel(LocalChannel):
    """
    Measure in the basis {e_k}, then re-prepare e_l with probability T[l, k].

    Kraus operators sqrt(T[l, k]) |e_l><e_k|. With T = I this is complete
    dephasing in the basis.
    """

    def __init__(self, basis, transition: Optional[np.ndarray] = None):
        self.basis = check_unitary(basis, 'basis')
        if self.basis.shape != (2, 2):
            raise DomainError(f"Qubit channel needs a 2x2 basis, got {self.basis.shape}")

        t = np.eye(2) if transition is None else np.asarray(transition, dtype=float)
        if t.shape != (2, 2) or np.any(t < 0.0):
            raise DomainError("Transition matrix must be a nonnegative 2x2 matrix")
        if np.max(np.abs(t.sum(axis=0) - 1.0)) > TOL_TRACE:
            raise DomainError("Transition matrix columns must sum to 1")
        self.transition = t

    def kraus_operators(self) -> List[np.ndarray]:
        ops = []
        for l in range(2):
            for k in range(2):
                if self.transition[l, k] > 0.0:
                    ket = self.basis[:, l]
                    bra = self.basis[:, k].conj()
                    ops.append(np.sqrt(self.transition[l, k]) * np.outer(ket, bra))
        return ops

    @property
    def mixing_parameter(self) -> float:
        # Probability that e_0 stays e_0
        return float(self.transition[0, 0])

    def parameters(self) -> dict:
        return {
            'kind': 'semiclassical',
            'basis': [[[float(z.real), float(z.imag)] for z in row] for row in self.basis],
            'transition': self.transition.tolist(),
        }


def full_dephasing(basis=None) -> SemiClassicalChannel:
    """Complete dephasing in `basis` (computational basis by default)."""
    return SemiClassicalChannel(np.eye(2, dtype=complex) if basis is None else basis)


def random_semiclassical_qubit(rng: RngLike = None) -> SemiClassicalChannel:
    """
    Haar-random basis and a random column-stochastic transition matrix
    (columns drawn from the flat Dirichlet distribution).
    """
    gen = as_generator(rng)
    basis = haar_unitary(2, gen)
    transition = gen.dirichlet(np.ones(2), size=2).T
    return SemiClassicalChannel(basis, transition)
