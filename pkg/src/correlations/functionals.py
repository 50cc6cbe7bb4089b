"""
Covariances, metric-adjusted skew informations and metric-adjusted f-correlations.

Everything is evaluated in the eigenbasis of rho: observables are rotated once
(A' = V^dag A V) and each functional becomes a weighted sum over eigenvalue pairs.
"""
import numpy as np

from ..errors import DimensionMismatchError
from ..f_catalog.functions import FOpSpec
from ..f_catalog.weights import WeightTable, build_weight_table
from ..hermitian_core.states import DensityMatrix
from ..utils.logging_config import get_logger
from .observable import as_matrix

logger = get_logger(__name__)


class SpectralFrame:
    """
    Eigenbasis of a state together with the weight table of one f.

    Reuse a frame when evaluating many observables against the same (rho, f).
    """

    def __init__(self, rho: DensityMatrix, f: FOpSpec):
        self.rho = rho
        self.f = f
        decomposition = rho.spectrum()
        self.decomposition = decomposition
        self.eigenvalues = decomposition.eigenvalues
        self.eigenvectors = decomposition.eigenvectors
        self.table: WeightTable = build_weight_table(f, decomposition.eigenvalues)

    def rotate(self, op):
        """A' = V^dag A V."""
        return self.decomposition.to_eigenbasis(_checked(op, self.rho.dim))

    def centered(self, rotated):
        """Subtract <A> I from an already-rotated operator."""
        mean = float(np.real(np.dot(self.eigenvalues, np.diag(rotated))))
        return rotated - mean * np.eye(rotated.shape[0])

    def upsilon(self, a_rot, b_rot):
        """sum_ij g_ij A'_ij B'_ji, real part."""
        return float(np.real(pair_sum(self.table.g, a_rot, b_rot)))

    def skew_information(self, o_rot):
        return float(np.sum(self.table.g * np.abs(o_rot) ** 2))

    def petz_covariance(self, a_rot, b_rot):
        return float(np.real(pair_sum(self.table.m, self.centered(a_rot), self.centered(b_rot))))

    def tilde_covariance(self, a_rot, b_rot):
        return float(np.real(pair_sum(self.table.m_tilde, self.centered(a_rot), self.centered(b_rot))))


def spectral_frame(rho: DensityMatrix, f: FOpSpec) -> SpectralFrame:
    """
    Frame for (rho, f), built on the first call and reused for every later
    call with the same state object and function.
    """
    return rho.cached((SpectralFrame, f), lambda: SpectralFrame(rho, f))


def pair_sum(weights, a_rot, b_rot):
    """
    sum_ij w_ij A_ij B_ji, returned complex.

    For symmetric real w and Hermitian A, B the imaginary part cancels in
    conjugate pairs.
    """
    return complex(np.sum(weights * a_rot * b_rot.T))


def _checked(op, dim):
    m = as_matrix(op)
    if m.shape != (dim, dim):
        raise DimensionMismatchError(f"Operator of shape {m.shape} does not act on a {dim}-dimensional state")
    return m


def covariance(rho: DensityMatrix, a, b) -> float:
    """
    Symmetrized (Robertson-Schrodinger) covariance 1/2 Tr[rho(AB + BA)] - Tr[rho A] Tr[rho B].
    """
    a = _checked(a, rho.dim)
    b = _checked(b, rho.dim)
    ab = rho.expectation(a @ b + b @ a)
    return 0.5 * ab - rho.expectation(a) * rho.expectation(b)


def variance(rho: DensityMatrix, o) -> float:
    return covariance(rho, o, o)


def masi(rho: DensityMatrix, o, f: FOpSpec) -> float:
    """
    Metric-adjusted skew information I^f(rho, O) = sum_ij g^f(p_i, p_j) |<i|O|j>|^2.

    Args:
        rho: DensityMatrix
        o: Observable or matrix on the full space
        f: FOpSpec

    Returns:
        Nonnegative float

    Raises:
        DimensionMismatchError
    """
    frame = spectral_frame(rho, f)
    return frame.skew_information(frame.rotate(o))


def f_covariance(rho: DensityMatrix, a, b, f: FOpSpec) -> float:
    """
    Petz f-covariance sum_ij m_f(p_i, p_j) <i|A0|j><j|B0|i> with A0 = A - <A> I.
    """
    frame = spectral_frame(rho, f)
    return frame.petz_covariance(frame.rotate(a), frame.rotate(b))


def tilde_covariance(rho: DensityMatrix, a, b, f: FOpSpec) -> float:
    """Petz covariance for the transformed function f~."""
    frame = spectral_frame(rho, f)
    return frame.tilde_covariance(frame.rotate(a), frame.rotate(b))


def f_correlation(rho: DensityMatrix, a, b, f: FOpSpec) -> float:
    """
    Metric-adjusted f-correlation Upsilon^f(rho, A, B) = sum_ij g^f(p_i, p_j) <i|A|j><j|B|i>.

    The diagonal carries zero weight, so adding multiples of the identity to
    A or B leaves the value unchanged.

    Raises:
        DimensionMismatchError
    """
    frame = spectral_frame(rho, f)
    a_rot = frame.rotate(a)
    b_rot = frame.rotate(b)
    total = pair_sum(frame.table.g, a_rot, b_rot)
    if abs(total.imag) > 1e-10:
        logger.debug(f"f-correlation has imaginary residue {total.imag:.3e}")
    return float(total.real)


def f_correlation_two_route(rho: DensityMatrix, a, b, f: FOpSpec) -> float:
    """Upsilon^f evaluated as Cov(A, B) - Cov^{f~}(A, B)."""
    return covariance(rho, a, b) - tilde_covariance(rho, a, b, f)


def nonadditivity_gap(rho: DensityMatrix, a, b, f: FOpSpec) -> float:
    """
    (I^f(rho, A + B) - I^f(rho, A) - I^f(rho, B)) / 2.

    Equals f_correlation for Hermitian A, B.
    """
    frame = spectral_frame(rho, f)
    a_rot = frame.rotate(a)
    b_rot = frame.rotate(b)
    joint = frame.skew_information(a_rot + b_rot)
    return 0.5 * (joint - frame.skew_information(a_rot) - frame.skew_information(b_rot))
