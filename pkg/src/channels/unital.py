"""
Mixed-unitary (unital) qubit channels
"""
from typing import List, Sequence

import numpy as np

from ..config import TOL_TRACE
from ..errors import DomainError
from ..hermitian_core.operators import IDENTITY_2
from ..hermitian_core.sampling import RngLike, as_generator, haar_unitary
from .base import LocalChannel, check_unitary


def _matrix_params(u):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(u)]


class RandomUnitaryChannel(LocalChannel):
    """
    rho -> sum_k q_k U_k rho U_k^dag with probabilities q_k and unitaries U_k.
    """

    def __init__(self, weights: Sequence[float], unitaries: Sequence):
        weights = np.asarray(weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0 or weights.size != len(unitaries):
            raise DomainError("Need one weight per unitary")
        if np.any(weights < 0.0) or abs(float(weights.sum()) - 1.0) > TOL_TRACE:
            raise DomainError(f"Weights must be a probability vector, got {weights.tolist()}")

        self.weights = weights
        self.unitaries = tuple(check_unitary(u, f"U_{k}") for k, u in enumerate(unitaries))
        for u in self.unitaries:
            if u.shape != (2, 2):
                raise DomainError(f"Qubit channel needs 2x2 unitaries, got {u.shape}")

    def terms(self):
        """Pairs (q_k, U_k)."""
        return tuple(zip(self.weights.tolist(), self.unitaries))

    def kraus_operators(self) -> List[np.ndarray]:
        return [np.sqrt(q) * u for q, u in self.terms() if q > 0.0]

    @property
    def mixing_parameter(self) -> float:
        return float(self.weights[0])

    def parameters(self) -> dict:
        return {
            'kind': 'random_unitary',
            'weights': [float(q) for q in self.weights],
            'unitaries': [_matrix_params(u) for u in self.unitaries],
        }


class UnitalQubitChannel(RandomUnitaryChannel):
    """
    rho -> p U rho U^dag + (1 - p) V rho V^dag.
    """

    def __init__(self, p: float, u, v):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"Mixing probability must lie in [0, 1], got {p}")
        super().__init__([p, 1.0 - p], [u, v])
        self.p = float(p)

    @property
    def U(self):
        return self.unitaries[0]

    @property
    def V(self):
        return self.unitaries[1]

    def parameters(self) -> dict:
        return {
            'kind': 'unital',
            'p': self.p,
            'U': _matrix_params(self.U),
            'V': _matrix_params(self.V),
        }


def identity_channel() -> UnitalQubitChannel:
    return UnitalQubitChannel(1.0, IDENTITY_2, IDENTITY_2)


def random_unital_qubit(rng: RngLike = None) -> UnitalQubitChannel:
    """
    Two-unitary mixture with Haar U, V and p uniform on [0, 1].

    Draw order from the generator: U, V, then p.
    """
    gen = as_generator(rng)
    u = haar_unitary(2, gen)
    v = haar_unitary(2, gen)
    p = float(gen.uniform(0.0, 1.0))
    return UnitalQubitChannel(p, u, v)
