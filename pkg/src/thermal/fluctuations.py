"""
Quantum variance and the fluctuation-dissipation routes to it.

Three independent evaluations of the quantum part of a thermal covariance:
    spectral     Upsilon^{f_qvar}(rho, A, B) from the skew-information weights
    thermo       Cov(A, B) - T d<A>/dh_B, the susceptibility by central differences
    kubo-mori    Cov(A, B) - sum_ij L(p_i, p_j) <i|A0|j><j|B0|i>, L the logarithmic mean
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from ..config import (
    FD_DELTA_SCALE,
    QUADRATURE_NODES,
    KUBO_MORI_FLOOR,
    KUBO_MORI_WARN,
    MAX_WORKERS,
)
from ..correlations.functionals import covariance, spectral_frame, f_correlation, masi, pair_sum
from ..correlations.observable import as_matrix
from ..errors import DimensionMismatchError, DomainError, RankDeficientError, UsageError
from ..f_catalog.functions import QVAR, wyd
from ..f_catalog.weights import build_weight_table
from ..hermitian_core.operators import PAULIS
from ..hermitian_core.states import DensityMatrix
from ..utils.logging_config import get_logger
from ..utils.parallel import ordered_map
from .chain import SpinChainSpec, site_operator, tfi_hamiltonian
from .gibbs import GibbsModel, gibbs

logger = get_logger(__name__)


def quantum_variance(rho: DensityMatrix, o, method: str = 'closed_form', nodes: int = QUADRATURE_NODES) -> float:
    """
    Quantum variance I^{f_qvar}(rho, O).

    Args:
        rho: DensityMatrix
        o: Observable or matrix
        method: 'closed_form' (skew information of f_qvar) or 'quadrature'
            (Gauss-Legendre average over alpha of the WYD skew informations)
        nodes: Quadrature nodes on (0, 1)

    Raises:
        DimensionMismatchError, UsageError
    """
    if method == 'closed_form':
        return masi(rho, o, QVAR)
    if method != 'quadrature':
        raise UsageError(f"Unknown quantum variance method {method!r}")

    frame = spectral_frame(rho, QVAR)
    intensity = np.abs(frame.rotate(o)) ** 2

    x, w = roots_legendre(nodes)
    alphas = 0.5 * (x + 1.0)
    total = 0.0
    for alpha, weight in zip(alphas, 0.5 * w):
        table = build_weight_table(wyd(float(alpha)), frame.eigenvalues)
        total += weight * float(np.sum(table.g * intensity))
    return total


def log_mean(log_x, log_y):
    """
    Logarithmic mean (x - y) / (log x - log y) from log x and log y, with the
    diagonal limit x. Vectorized.
    """
    log_x = np.asarray(log_x, dtype=float)
    log_y = np.asarray(log_y, dtype=float)
    lo = np.minimum(log_x, log_y)
    d = np.abs(log_x - log_y)

    out = np.empty(np.broadcast(lo, d).shape)
    lo, d = np.broadcast_arrays(lo, d)

    small = d < 1e-8
    out[small] = np.exp(lo[small]) * (1.0 + 0.5 * d[small])

    mid = ~small & (d <= 1.0)
    out[mid] = np.exp(lo[mid]) * np.expm1(d[mid]) / d[mid]

    # Well separated: direct difference has no cancellation
    far = d > 1.0
    out[far] = (np.exp(lo[far] + d[far]) - np.exp(lo[far])) / d[far]
    return out


def _log_spectrum(state, strict):
    if isinstance(state, GibbsModel):
        return state.rho, state.log_populations, state.eigenvectors

    decomposition = state.spectrum()
    p = decomposition.eigenvalues
    smallest = float(p[-1])
    if smallest < KUBO_MORI_WARN:
        if strict:
            raise RankDeficientError(f"Smallest eigenvalue {smallest:.3e} is below {KUBO_MORI_WARN:g}")
        logger.warning(f"Kubo-Mori covariance on a near-singular state (smallest eigenvalue {smallest:.3e}); "
                       f"flooring at {KUBO_MORI_FLOOR:g}")
    return state, np.log(np.maximum(p, KUBO_MORI_FLOOR)), decomposition.eigenvectors


def kubo_mori_cov(state: Union[DensityMatrix, GibbsModel], a, b, strict: bool = False) -> float:
    """
    Kubo-Mori covariance sum_ij L(p_i, p_j) <i|A0|j><j|B0|i>, with L the
    logarithmic mean; equal to int_0^1 Tr[rho^s A0 rho^(1-s) B0] ds.

    Gibbs models use their exact log-populations. For a general state,
    eigenvalues are floored at KUBO_MORI_FLOOR (with a warning) or, with
    strict=True, a RankDeficientError is raised.

    Raises:
        DimensionMismatchError, RankDeficientError
    """
    rho, log_p, v = _log_spectrum(state, strict)
    d = rho.dim
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != (d, d) or b.shape != (d, d):
        raise DimensionMismatchError(f"Operators must be {d}x{d}")

    a_rot = v.conj().T @ a @ v
    b_rot = v.conj().T @ b @ v
    p = np.exp(log_p)
    a_rot = a_rot - float(np.real(np.dot(p, np.diag(a_rot)))) * np.eye(d)
    b_rot = b_rot - float(np.real(np.dot(p, np.diag(b_rot)))) * np.eye(d)

    weights = log_mean(log_p[:, None], log_p[None, :])
    return float(np.real(pair_sum(weights, a_rot, b_rot)))


def default_delta(o_b) -> float:
    """FD_DELTA_SCALE * max(1, ||O_B||) with the spectral norm."""
    return FD_DELTA_SCALE * max(1.0, float(np.linalg.norm(as_matrix(o_b), 2)))


def susceptibility_fd(h, temperature: float, o_a, o_b, delta: Optional[float] = None) -> float:
    """
    Static susceptibility d<O_A>/dh_B at h_B = 0 for H(h_B) = H - h_B O_B,
    by central differences.

    Raises:
        DomainError: If delta <= 0 or T <= 0
    """
    if delta is None:
        delta = default_delta(o_b)
    if delta <= 0.0:
        raise DomainError(f"Finite-difference step must be positive, got {delta}")

    h = np.asarray(h, dtype=complex)
    o_a = as_matrix(o_a)
    o_b = as_matrix(o_b)
    if o_a.shape != h.shape or o_b.shape != h.shape:
        raise DimensionMismatchError("Observables must match the Hamiltonian dimension")

    plus = gibbs(h - delta * o_b, temperature).rho.expectation(o_a)
    minus = gibbs(h + delta * o_b, temperature).rho.expectation(o_a)
    return (plus - minus) / (2.0 * delta)


def thermo_f_correlation(h, temperature: float, o_a, o_b, delta: Optional[float] = None) -> float:
    """Cov(O_A, O_B) - T chi_AB at thermal equilibrium."""
    model = gibbs(h, temperature)
    return covariance(model.rho, o_a, o_b) - temperature * susceptibility_fd(h, temperature, o_a, o_b, delta)


@dataclass
class ThermalComparison:
    """All routes for one (H, T, O_A, O_B)."""
    cov: float
    t_chi: float
    kubo_mori: float
    quantum_cov_thermo: float
    quantum_cov_spectral: float
    delta: float

    @property
    def route_gap(self) -> float:
        return abs(self.quantum_cov_thermo - self.quantum_cov_spectral)

    @property
    def kubo_mori_gap(self) -> float:
        return abs(self.t_chi - self.kubo_mori)

    def get_summary(self):
        return {
            'cov': self.cov,
            't_chi': self.t_chi,
            'kubo_mori': self.kubo_mori,
            'quantum_cov_thermo': self.quantum_cov_thermo,
            'quantum_cov_spectral': self.quantum_cov_spectral,
            'delta': self.delta,
        }


def compare_routes(h, temperature: float, o_a, o_b, delta: Optional[float] = None,
                   model: Optional[GibbsModel] = None) -> ThermalComparison:
    """Evaluate covariance, T chi, Kubo-Mori and both quantum-covariance routes."""
    model = model if model is not None else gibbs(h, temperature)
    delta = delta if delta is not None else default_delta(o_b)

    cov = covariance(model.rho, o_a, o_b)
    t_chi = temperature * susceptibility_fd(h, temperature, o_a, o_b, delta)
    return ThermalComparison(
        cov=cov,
        t_chi=t_chi,
        kubo_mori=kubo_mori_cov(model, o_a, o_b),
        quantum_cov_thermo=cov - t_chi,
        quantum_cov_spectral=f_correlation(model.rho, o_a, o_b, QVAR),
        delta=delta,
    )


# (site_a, pauli index 1..3, site_b, pauli index 1..3)
SitePair = Tuple[int, int, int, int]


@dataclass
class RouteAgreement:
    """Route comparison over several observable pairs of one chain."""
    chain: SpinChainSpec
    temperature: float
    pairs: List[SitePair] = field(default_factory=list)
    comparisons: List[ThermalComparison] = field(default_factory=list)

    def add_comparison(self, pair, comparison):
        self.pairs.append(pair)
        self.comparisons.append(comparison)

    @property
    def max_route_gap(self) -> float:
        return max((c.route_gap for c in self.comparisons), default=0.0)

    @property
    def max_kubo_mori_gap(self) -> float:
        return max((c.kubo_mori_gap for c in self.comparisons), default=0.0)

    def get_summary(self):
        return {
            'n_sites': self.chain.n_sites,
            'j': self.chain.j,
            'h': self.chain.h,
            'temperature': self.temperature,
            'pairs': [list(p) for p in self.pairs],
            'max_route_gap': self.max_route_gap,
            'max_kubo_mori_gap': self.max_kubo_mori_gap,
        }


def route_agreement(chain: SpinChainSpec, temperature: float, pairs: Sequence[SitePair],
                    max_workers: int = MAX_WORKERS) -> RouteAgreement:
    """
    Run compare_routes for local Pauli pairs sigma_a on site_a, sigma_b on site_b.
    """
    h = tfi_hamiltonian(chain)
    model = gibbs(h, temperature)

    def run(pair):
        site_a, pa, site_b, pb = pair
        o_a = site_operator(PAULIS[pa - 1], site_a, chain.n_sites)
        o_b = site_operator(PAULIS[pb - 1], site_b, chain.n_sites)
        return compare_routes(h, temperature, o_a, o_b, model=model)

    result = RouteAgreement(chain=chain, temperature=temperature)
    for pair, comparison in zip(pairs, ordered_map(run, list(pairs), max_workers=max_workers, label='pair')):
        result.add_comparison(tuple(pair), comparison)

    logger.info(f"Route agreement N={chain.n_sites}, T={temperature:g}: "
                f"max route gap {result.max_route_gap:.3e}, max Kubo-Mori gap {result.max_kubo_mori_gap:.3e}")
    return result
