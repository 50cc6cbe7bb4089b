"""
Random classical-quantum (CQ) and quantum-classical (QC) states
"""
from typing import Optional, Sequence

import numpy as np

from ..errors import DimensionMismatchError, DomainError
from ..hermitian_core.sampling import RngLike, as_generator, haar_unitary, random_density_hs
from ..hermitian_core.states import DensityMatrix, validate_density


def _classical_quantum(gen, d_classical, d_quantum, probabilities, tau_states, classical_first):
    if d_classical < 2 or d_quantum < 2:
        raise DimensionMismatchError(f"Both dimensions must be >= 2, got ({d_classical}, {d_quantum})")

    basis = haar_unitary(d_classical, gen)
    if probabilities is None:
        probabilities = gen.dirichlet(np.ones(d_classical))
    probabilities = np.asarray(probabilities, dtype=float)
    if probabilities.shape != (d_classical,) or np.any(probabilities < 0.0):
        raise DomainError(f"Need {d_classical} nonnegative probabilities")
    probabilities = probabilities / probabilities.sum()

    if tau_states is None:
        tau_states = [random_density_hs(d_quantum, gen) for _ in range(d_classical)]
    if len(tau_states) != d_classical:
        raise DomainError(f"Need {d_classical} conditional states, got {len(tau_states)}")

    d = d_classical * d_quantum
    m = np.zeros((d, d), dtype=complex)
    for i in range(d_classical):
        proj = np.outer(basis[:, i], basis[:, i].conj())
        tau = np.asarray(getattr(tau_states[i], 'matrix', tau_states[i]), dtype=complex)
        m += probabilities[i] * (np.kron(proj, tau) if classical_first else np.kron(tau, proj))

    dims = [d_classical, d_quantum] if classical_first else [d_quantum, d_classical]
    return validate_density(m, dims)


def make_cq_state(rng: RngLike, d_A: int, d_B: int, probabilities: Optional[Sequence[float]] = None,
                  tau_states: Optional[Sequence] = None) -> DensityMatrix:
    """
    sum_i p_i |i><i| (x) tau_i with a Haar-random basis {|i>} on A, Dirichlet
    probabilities and Hilbert-Schmidt random tau_i on B unless given.
    """
    return _classical_quantum(as_generator(rng), d_A, d_B, probabilities, tau_states, classical_first=True)


def make_qc_state(rng: RngLike, d_A: int, d_B: int, probabilities: Optional[Sequence[float]] = None,
                  tau_states: Optional[Sequence] = None) -> DensityMatrix:
    """sum_i p_i tau_i (x) |i><i| with the classical register on B."""
    return _classical_quantum(as_generator(rng), d_B, d_A, probabilities, tau_states, classical_first=False)
