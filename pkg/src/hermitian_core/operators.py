"""
Fixed operators: Pauli matrices, tensor embeddings and Hermitian bases
"""
from functools import reduce
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatchError

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# sigma_1, sigma_2, sigma_3
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _op in (IDENTITY_2,) + PAULIS:
    _op.setflags(write=False)


def pauli(i):
    """
    Return the Pauli matrix sigma_i for i in {0, 1, 2, 3} (0 is the identity).
    """
    if i == 0:
        return IDENTITY_2
    if i not in (1, 2, 3):
        raise DimensionMismatchError(f"Pauli index must be 0..3, got {i}")
    return PAULIS[i - 1]


def kron_all(factors):
    """Kronecker product of a sequence of matrices (left to right)."""
    return reduce(np.kron, factors)


def side_index(side):
    """
    Map a subsystem label ('A', 'B', 'C', ...) or an integer to an index.
    """
    if isinstance(side, (int, np.integer)):
        return int(side)
    label = str(side).strip().upper()
    if len(label) != 1 or not label.isalpha():
        raise DimensionMismatchError(f"Unknown subsystem label: {side!r}")
    return ord(label) - ord('A')


def embed_operator(op, index: int, dims: Sequence[int]):
    """
    Embed an operator acting on subsystem `index` into the full space,
    with identities on every other factor.
    """
    op = np.asarray(op, dtype=complex)
    dims = tuple(int(d) for d in dims)

    if not 0 <= index < len(dims):
        raise DimensionMismatchError(f"Subsystem index {index} out of range for dims {list(dims)}")
    if op.shape != (dims[index], dims[index]):
        raise DimensionMismatchError(
            f"Operator of shape {op.shape} does not act on subsystem {index} of dimension {dims[index]}"
        )

    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[index] = op
    return kron_all(factors)


def hermitian_basis(d: int):
    """
    Orthonormal basis of traceless Hermitian d x d matrices under the
    Hilbert-Schmidt inner product (generalized Gell-Mann matrices / sqrt(2)).

    For d = 2 this is (sigma_x, sigma_y, sigma_z) / sqrt(2).

    Returns:
        Array of shape (d*d - 1, d, d)
    """
    if d < 2:
        return np.zeros((0, d, d), dtype=complex)

    basis = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            basis.append(sym / np.sqrt(2.0))

            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            basis.append(anti / np.sqrt(2.0))

    for l in range(1, d):
        diag = np.zeros(d, dtype=complex)
        diag[:l] = 1.0
        diag[l] = -l
        basis.append(np.diag(diag) / np.sqrt(l * (l + 1)))

    return np.array(basis)
