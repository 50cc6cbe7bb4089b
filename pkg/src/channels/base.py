"""
Base class for local qubit channels and their action on composite states.
"""
from abc import ABC, abstractmethod
from typing import List

import numpy as np

from ..config import TOL_UNITARY
from ..errors import DimensionMismatchError, NotUnitaryError
from ..hermitian_core.operators import embed_operator, side_index
from ..hermitian_core.states import DensityMatrix, validate_density


class LocalChannel(ABC):
    """
    A completely positive trace-preserving map on one qubit, given by Kraus operators.

    Every channel (mixed-unitary or semi-classical) implements this interface
    so apply_local and the scan treat them alike.
    """

    dim = 2

    @abstractmethod
    def kraus_operators(self) -> List[np.ndarray]:
        """
        Kraus operators K_k with sum_k K_k^dag K_k = I.

        Returns:
            List of 2x2 complex matrices
        """
        pass

    @property
    @abstractmethod
    def mixing_parameter(self) -> float:
        """Scalar recorded alongside scan samples."""
        pass

    @abstractmethod
    def parameters(self) -> dict:
        """JSON-ready description of the channel."""
        pass

    def apply(self, m):
        """Action on a single-qubit matrix."""
        m = np.asarray(m, dtype=complex)
        return sum(k @ m @ k.conj().T for k in self.kraus_operators())


def check_unitary(u, label='U'):
    """
    Raises:
        NotUnitaryError: If ||U^dag U - I||_max exceeds TOL_UNITARY
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitaryError(f"{label} must be square, got shape {u.shape}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if defect > TOL_UNITARY:
        raise NotUnitaryError(f"{label} is not unitary (defect {defect:.3e})")
    return u


def apply_local(channel: LocalChannel, rho: DensityMatrix, side='A') -> DensityMatrix:
    """
    Apply a qubit channel to one subsystem of a composite state:
    sum_k (K_k (x) I) rho (K_k (x) I)^dag.

    Args:
        channel: LocalChannel
        rho: DensityMatrix whose chosen subsystem is a qubit
        side: 'A', 'B', ... or subsystem index

    Returns:
        Output DensityMatrix with the same dims

    Raises:
        DimensionMismatchError
    """
    index = side_index(side)
    if not 0 <= index < len(rho.dims) or rho.dims[index] != channel.dim:
        raise DimensionMismatchError(
            f"Channel acts on a qubit but subsystem {side!r} of dims {list(rho.dims)} is not one"
        )

    out = np.zeros_like(rho.matrix)
    for k in channel.kraus_operators():
        big = embed_operator(k, index, rho.dims)
        out += big @ rho.matrix @ big.conj().T

    return validate_density(out, rho.dims)
