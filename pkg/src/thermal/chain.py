"""
Small spin chains: transverse-field Ising Hamiltonian built densely with Kronecker products
"""
from dataclasses import dataclass

import numpy as np

from ..config import MAX_CHAIN_SITES
from ..errors import DimensionMismatchError, DomainError
from ..hermitian_core.operators import SIGMA_X, SIGMA_Z, embed_operator


@dataclass(frozen=True)
class SpinChainSpec:
    """
    Open transverse-field Ising chain H = -J sum_i sz_i sz_{i+1} - h sum_i sx_i.
    """
    n_sites: int
    j: float = 1.0
    h: float = 1.0
    model: str = 'tfi'

    def __post_init__(self):
        if self.model != 'tfi':
            raise DomainError(f"Unknown chain model {self.model!r} (only 'tfi' is supported)")
        if not 1 <= self.n_sites <= MAX_CHAIN_SITES:
            raise DimensionMismatchError(f"Chain length must be 1..{MAX_CHAIN_SITES}, got {self.n_sites}")

    @property
    def dims(self):
        return (2,) * self.n_sites


def site_operator(op, site: int, n_sites: int):
    """Single-site operator on site `site` of an n-site chain."""
    if not 0 <= site < n_sites:
        raise DimensionMismatchError(f"Site {site} out of range for a {n_sites}-site chain")
    return embed_operator(op, site, (2,) * n_sites)


def tfi_hamiltonian(spec: SpinChainSpec):
    """
    Dense 2^N x 2^N transverse-field Ising Hamiltonian on an open chain.
    """
    n = spec.n_sites
    sz = [site_operator(SIGMA_Z, i, n) for i in range(n)]
    sx = [site_operator(SIGMA_X, i, n) for i in range(n)]

    h_zz = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i in range(n - 1):
        h_zz += sz[i] @ sz[i + 1]
    h_x = sum(sx)

    return -spec.j * h_zz - spec.h * h_x
