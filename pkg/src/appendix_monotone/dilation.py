"""
Dilations of local mixed-unitary qubit channels and the contraction of the
correlation matrix they imply.

For rho -> sum_k q_k U_k rho U_k^dag on A, the dilated state
    tau = U_AD (rho (x) |alpha><alpha|_D) U_AD^dag,
    U_AD = sum_k U_k (x) |k><k|_D,   |alpha> = sum_k sqrt(q_k) |k>
satisfies Tr_D tau = channel output and M^f(tau) = S M^f(rho) with
S = sum_k q_k R_k, a convex combination of rotations, so s_max cannot grow.
"""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..config import DEFAULT_SEED, MAX_WORKERS
from ..correlations.matrix import CorrelationMatrix, correlation_matrix
from ..errors import DimensionMismatchError
from ..f_catalog.functions import FOpSpec
from ..hermitian_core.operators import kron_all, side_index
from ..hermitian_core.sampling import RngStream, random_density_hs
from ..hermitian_core.states import DensityMatrix, partial_trace, validate_density
from ..channels.base import apply_local
from ..channels.unital import RandomUnitaryChannel, random_unital_qubit
from ..qfcorr.closed_form import qf_two_qubit
from ..utils.logging_config import get_logger
from ..utils.parallel import ordered_map
from .rotations import so3_from_su2

logger = get_logger(__name__)


@dataclass(frozen=True)
class DilationResult:
    """
    tau lives on A (x) B (x) D (the environment C is trivial); S = sum_k q_k R_k.
    """
    tau: DensityMatrix
    S: np.ndarray
    side: int

    @property
    def s_norm(self) -> float:
        """Largest eigenvalue of S S^T."""
        return float(np.max(np.linalg.eigvalsh(self.S @ self.S.T)))


def _check_two_qubit(rho):
    if tuple(rho.dims) != (2, 2):
        raise DimensionMismatchError(f"Expected a two-qubit state, got dims {list(rho.dims)}")


def dilate_unital(rho: DensityMatrix, channel: RandomUnitaryChannel, side='A') -> DilationResult:
    """
    Build the dilated state for a mixed-unitary channel acting on one qubit.

    Args:
        rho: Two-qubit DensityMatrix
        channel: RandomUnitaryChannel (UnitalQubitChannel included), K >= 1 terms
        side: 'A' or 'B'

    Returns:
        DilationResult with tau of dims [2, 2, K]

    Raises:
        DimensionMismatchError
    """
    _check_two_qubit(rho)
    index = side_index(side)
    if index not in (0, 1):
        raise DimensionMismatchError(f"Channel side must be A or B, got {side!r}")

    terms = channel.terms()
    k_count = len(terms)
    identity = np.eye(2, dtype=complex)

    u_big = np.zeros((4 * k_count, 4 * k_count), dtype=complex)
    s = np.zeros((3, 3))
    for k, (q, u) in enumerate(terms):
        projector = np.zeros((k_count, k_count), dtype=complex)
        projector[k, k] = 1.0
        factors = [u, identity] if index == 0 else [identity, u]
        u_big += kron_all(factors + [projector])
        s += q * so3_from_su2(u).entries

    alpha = np.sqrt(np.array([q for q, _ in terms], dtype=float)).astype(complex)
    environment = np.outer(alpha, alpha.conj())
    tau = u_big @ np.kron(rho.matrix, environment) @ u_big.conj().T

    return DilationResult(tau=validate_density(tau, [2, 2, k_count]), S=s, side=index)


def dilation_eigenvalue_residual(rho: DensityMatrix, result: DilationResult) -> float:
    """
    Largest mismatch between the spectrum of tau and that of rho padded with zeros.
    """
    tau_p = result.tau.spectrum().eigenvalues
    rho_p = rho.spectrum().eigenvalues
    padded = np.zeros_like(tau_p)
    padded[:rho_p.size] = rho_p
    return float(np.max(np.abs(tau_p - padded)))


@dataclass
class ContractionReport:
    """Residuals of one dilation check; violations are positive when the claim fails."""
    identity_residual: float
    contraction_violation: float
    s_excess: float
    trace_residual: float
    eigenvalue_residual: float
    m_in: CorrelationMatrix = field(repr=False, default=None)
    m_out: CorrelationMatrix = field(repr=False, default=None)

    def passed(self, tol: float = 1e-9) -> bool:
        return (
            self.identity_residual < tol
            and self.contraction_violation <= tol
            and self.s_excess <= 1e-10
            and self.trace_residual < tol
        )


def contraction_check(rho: DensityMatrix, channel: RandomUnitaryChannel, f: FOpSpec, side='A') -> ContractionReport:
    """
    Compare M^f of the dilated state with S M^f(rho) (side A) or M^f(rho) S^T
    (side B), and s_max before and after.
    """
    result = dilate_unital(rho, channel, side)
    m_in = correlation_matrix(rho, f)
    m_out = correlation_matrix(result.tau, f)

    predicted = result.S @ m_in.entries if result.side == 0 else m_in.entries @ result.S.T
    reduced = partial_trace(result.tau, [0, 1])
    direct = apply_local(channel, rho, side)

    return ContractionReport(
        identity_residual=float(np.max(np.abs(m_out.entries - predicted))),
        contraction_violation=m_out.s_max - m_in.s_max,
        s_excess=result.s_norm - 1.0,
        trace_residual=float(np.max(np.abs(reduced.matrix - direct.matrix))),
        eigenvalue_residual=dilation_eigenvalue_residual(rho, result),
        m_in=m_in,
        m_out=m_out,
    )


def extension_gap(rho_abc: DensityMatrix, f: FOpSpec) -> float:
    """
    Q^f evaluated on the A and B qubits of a tripartite state minus Q^f of its
    AB marginal. Neither sign is guaranteed.

    Raises:
        DimensionMismatchError: Unless dims are [2, 2, d_C]
    """
    if len(rho_abc.dims) != 3 or rho_abc.dims[0] != 2 or rho_abc.dims[1] != 2:
        raise DimensionMismatchError(f"Expected dims [2, 2, d_C], got {list(rho_abc.dims)}")
    extended = correlation_matrix(rho_abc, f).s_max
    marginal = qf_two_qubit(partial_trace(rho_abc, [0, 1]), f).value
    return extended - marginal


@dataclass
class AppendixSummary:
    """Worst residuals over random (state, channel) trials."""
    f_label: str
    side: str
    master_seed: int
    trials: int = 0
    failures: int = 0
    max_identity_residual: float = 0.0
    max_contraction_violation: float = float('-inf')
    max_eigenvalue_residual: float = 0.0
    max_s_excess: float = float('-inf')
    failed_trials: List[int] = field(default_factory=list)

    def add_report(self, index: int, report: ContractionReport, tol: float):
        self.trials += 1
        self.max_identity_residual = max(self.max_identity_residual, report.identity_residual)
        self.max_contraction_violation = max(self.max_contraction_violation, report.contraction_violation)
        self.max_eigenvalue_residual = max(self.max_eigenvalue_residual, report.eigenvalue_residual)
        self.max_s_excess = max(self.max_s_excess, report.s_excess)
        if not report.passed(tol):
            self.failures += 1
            self.failed_trials.append(index)

    def get_summary(self):
        return {
            'f': self.f_label,
            'side': self.side,
            'seed': self.master_seed,
            'trials': self.trials,
            'failures': self.failures,
            'max_identity_residual': self.max_identity_residual,
            'max_contraction_violation': self.max_contraction_violation if self.trials else 0.0,
            'max_eigenvalue_residual': self.max_eigenvalue_residual,
            'max_s_excess': self.max_s_excess if self.trials else 0.0,
        }


def appendix_trials(n_trials: int, f: FOpSpec, master_seed: int = DEFAULT_SEED, side: str = 'A',
                    tol: float = 1e-9, max_workers: int = MAX_WORKERS) -> AppendixSummary:
    """
    Run contraction_check on n_trials Hilbert-Schmidt random states with random
    two-unitary channels. Trial k draws state then channel from RngStream(master_seed, k).
    """
    def run(index):
        gen = RngStream(master_seed, index).generator()
        rho = random_density_hs(4, gen, dims=[2, 2])
        channel = random_unital_qubit(gen)
        return contraction_check(rho, channel, f, side)

    summary = AppendixSummary(f_label=f.label, side=str(side).upper(), master_seed=master_seed)
    reports = ordered_map(run, range(n_trials), max_workers=max_workers, label='trial')
    for index, report in enumerate(reports):
        summary.add_report(index, report, tol)

    if summary.failures:
        logger.warning(f"{summary.failures} of {summary.trials} dilation checks failed (trials {summary.failed_trials[:10]})")
    else:
        logger.info(f"All {summary.trials} dilation checks passed (f={f.label})")
    return summary
