"""
Closed forms of Q^f: two-qubit singular values and the pure-state Schmidt formula
"""
from typing import Callable, Optional, Sequence

import numpy as np

from ..correlations.matrix import correlation_matrix
from ..correlations.observable import Observable
from ..errors import DimensionMismatchError, DomainError
from ..f_catalog.functions import FOpSpec
from ..hermitian_core.operators import PAULIS, SIGMA_Y
from ..hermitian_core.states import DensityMatrix, schmidt_decompose
from ..utils.logging_config import get_logger
from .result import QfResult, CLOSED_FORM, PURE_SCHMIDT

logger = get_logger(__name__)


def bloch_observable(n) -> Observable:
    """n . sigma for a unit vector n; spectrum {1, -1}."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    m = sum(n[i] * PAULIS[i] for i in range(3))
    return Observable(matrix=m, declared_spectrum=(1.0, -1.0))


def qf_two_qubit(rho: DensityMatrix, f: FOpSpec) -> QfResult:
    """
    Q^f of a two-qubit state as the largest singular value of M^f.

    The optimal observables are n_A . sigma and n_B . sigma built from the
    leading singular vectors, oriented so that Upsilon^f at them is +s_max.

    Raises:
        DimensionMismatchError: If dims are not [2, 2]
    """
    if tuple(rho.dims) != (2, 2):
        raise DimensionMismatchError(f"Two-qubit closed form needs dims [2, 2], got {list(rho.dims)}")

    m = correlation_matrix(rho, f).entries
    u, s, vt = np.linalg.svd(m)
    n_a = u[:, 0]
    n_b = vt[0]

    if float(n_a @ m @ n_b) < 0.0:
        n_b = -n_b

    logger.debug(f"Two-qubit Q^f = {s[0]:.12f} for f={f.label}")

    return QfResult(
        value=float(s[0]),
        method=CLOSED_FORM,
        f_spec=f,
        optimal_a=bloch_observable(n_a),
        optimal_b=bloch_observable(n_b),
    )


def pure_qf(psi, dims: Sequence[int]) -> float:
    """
    Q^f of a pure qubit-qudit state: 2 lambda_1 lambda_2 from the Schmidt
    coefficients, the same for every f.

    Raises:
        DimensionMismatchError: If d_A != 2
        NotNormalizedError
    """
    if len(dims) != 2 or int(dims[0]) != 2:
        raise DimensionMismatchError(f"Pure-state formula needs dims [2, d_B], got {list(dims)}")
    schmidt = schmidt_decompose(psi, dims)
    lam = schmidt.coefficients
    return 2.0 * float(lam[0]) * float(lam[1]) if lam.size > 1 else 0.0


def concurrence_pure(psi) -> float:
    """Two-qubit concurrence |<psi| sigma_y (x) sigma_y |psi*>|."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 4:
        raise DimensionMismatchError(f"Concurrence needs a two-qubit vector, got length {psi.size}")
    flipped = np.kron(SIGMA_Y, SIGMA_Y) @ psi.conj()
    return float(abs(np.vdot(psi, flipped)))


def schur_ostrowski_residual(l1: float, l2: float, energy: Optional[Callable] = None, h: float = 1e-6) -> float:
    """
    (l1 - l2)(dE/dl1 - dE/dl2) by central differences; nonpositive values
    everywhere indicate Schur concavity of E.

    Args:
        l1, l2: Schmidt coefficients
        energy: E(l1, l2), default 2 l1 l2
        h: Difference step
    """
    if energy is None:
        energy = lambda a, b: 2.0 * a * b
    d1 = (energy(l1 + h, l2) - energy(l1 - h, l2)) / (2.0 * h)
    d2 = (energy(l1, l2 + h) - energy(l1, l2 - h)) / (2.0 * h)
    return (l1 - l2) * (d1 - d2)


def qf_pure_state(rho: DensityMatrix, f: FOpSpec) -> QfResult:
    """
    Q^f of a rank-one qubit-qudit state from its Schmidt form.

    With psi = l1 |a1 b1> + l2 |a2 b2>, both optimal observables are sigma_x
    in the leading two Schmidt vectors of their side (zero on the rest of B),
    and Upsilon^f at them equals 2 l1 l2 for every f.

    Raises:
        DimensionMismatchError: If dims are not [2, d_B]
        DomainError: If rho is not pure
    """
    dims = tuple(rho.dims)
    if len(dims) != 2 or dims[0] != 2:
        raise DimensionMismatchError(f"Pure-state formula needs dims [2, d_B], got {list(dims)}")
    if rho.rank() != 1:
        raise DomainError(f"Pure-state formula needs a rank-one state, got rank {rho.rank()}")

    psi = rho.spectrum().eigenvectors[:, 0]
    schmidt = schmidt_decompose(psi / np.linalg.norm(psi), dims)
    value = pure_qf(psi / np.linalg.norm(psi), dims)

    def flip(basis):
        u, v = basis[:, 0], basis[:, 1]
        return np.outer(u, v.conj()) + np.outer(v, u.conj())

    o_a = Observable(matrix=flip(schmidt.left_basis), declared_spectrum=(1.0, -1.0))
    o_b = Observable(matrix=flip(schmidt.right_basis), declared_spectrum=(1.0, -1.0) + (0.0,) * (dims[1] - 2))

    logger.debug(f"Pure-state Q^f = {value:.12f} for dims {list(dims)}")

    return QfResult(value=value, method=PURE_SCHMIDT, f_spec=f, optimal_a=o_a, optimal_b=o_b)
