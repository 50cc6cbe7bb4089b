"""
Gibbs states exp(-H/T)/Z from the spectral decomposition of H
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from ..errors import DomainError
from ..hermitian_core.spectral import SpectralDecomposition, degeneracy_clusters, spectral_decompose
from ..hermitian_core.states import DensityMatrix, validate_density
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GibbsModel:
    """
    Thermal state of H at temperature T.

    energies are ascending, so populations (and rho's attached spectrum) are
    descending; log_populations are exact, -(E - E_0)/T - log sum exp(...).
    """
    hamiltonian: np.ndarray
    temperature: float
    energies: np.ndarray
    eigenvectors: np.ndarray
    log_populations: np.ndarray
    log_z: float
    rho: DensityMatrix

    @property
    def populations(self):
        return np.exp(self.log_populations)

    @property
    def partition_function(self) -> float:
        return float(np.exp(self.log_z))


def gibbs(h, temperature: float, dims: Optional[Sequence[int]] = None) -> GibbsModel:
    """
    Build the Gibbs state of H at temperature T with shifted exponentials.

    Args:
        h: Hermitian Hamiltonian
        temperature: T > 0, natural units
        dims: Subsystem dimensions of the state (default [dim H])

    Returns:
        GibbsModel

    Raises:
        DomainError: If T <= 0 or not finite
        NonHermitianError
    """
    if not np.isfinite(temperature) or temperature <= 0.0:
        raise DomainError(f"Temperature must be positive and finite, got {temperature}")

    decomposition = spectral_decompose(h)
    energies = decomposition.eigenvalues[::-1].copy()
    vectors = decomposition.eigenvectors[:, ::-1].copy()

    exponents = -(energies - energies[0]) / temperature
    log_norm = float(logsumexp(exponents))
    log_populations = exponents - log_norm
    populations = np.exp(log_populations)

    spectrum = SpectralDecomposition(
        eigenvalues=populations,
        eigenvectors=vectors,
        degeneracy_clusters=degeneracy_clusters(populations),
    )
    rho = validate_density(spectrum.reconstruct(), dims if dims is not None else [len(energies)], spectrum=spectrum)

    log_z = log_norm - float(energies[0]) / temperature
    logger.debug(f"Gibbs state at T={temperature:g}: ground population {populations[0]:.6f}")

    return GibbsModel(
        hamiltonian=np.asarray(h, dtype=complex),
        temperature=float(temperature),
        energies=energies,
        eigenvectors=vectors,
        log_populations=log_populations,
        log_z=log_z,
        rho=rho,
    )
