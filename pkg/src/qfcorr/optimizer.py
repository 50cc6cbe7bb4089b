"""
General quantifier Q^f by alternating maximization over the two local observables.

Upsilon^f is bilinear in (O_A, O_B). With one side fixed the objective is
Tr[O_free K] for a Hermitian kernel K, maximized over the unitary orbit of the
fixed spectrum by pairing descending spectrum values with descending
eigenvalues of K.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from ..config import OPT_RESTARTS, OPT_MAX_ITERS, OPT_TOL, DEFAULT_SEED, MAX_WORKERS
from ..correlations.functionals import spectral_frame
from ..correlations.matrix import generalized_correlation_matrix
from ..correlations.observable import Observable, as_matrix
from ..errors import DimensionMismatchError, UsageError
from ..f_catalog.functions import FOpSpec
from ..hermitian_core.operators import embed_operator, hermitian_basis, side_index
from ..hermitian_core.sampling import RngStream, haar_unitary
from ..hermitian_core.states import DensityMatrix
from ..utils.logging_config import get_logger
from ..utils.parallel import ordered_map
from .closed_form import qf_pure_state, qf_two_qubit
from .result import QfResult, ALTERNATING
from .spectrum import equispaced_spectrum

logger = get_logger(__name__)


def _check_bipartite(rho):
    if len(rho.dims) != 2:
        raise DimensionMismatchError(f"Quantifier needs exactly two subsystems, got dims {list(rho.dims)}")
    return rho.dims


def _reduce(w, dims, keep):
    # Partial trace of a bipartite operator onto subsystem `keep`
    d_a, d_b = dims
    t = w.reshape(d_a, d_b, d_a, d_b)
    if keep == 0:
        return np.einsum('ajbj->ab', t)
    return np.einsum('iaib->ab', t)


class _KernelBuilder:
    """K_free = Tr_fixed[V (G o V^dag O_fixed V) V^dag] for one (rho, f)."""

    def __init__(self, rho: DensityMatrix, f: FOpSpec):
        self.dims = _check_bipartite(rho)
        self.frame = spectral_frame(rho, f)

    def __call__(self, fixed_local, fixed_index):
        full = embed_operator(fixed_local, fixed_index, self.dims)
        x = self.frame.table.g * self.frame.rotate(full)
        v = self.frame.eigenvectors
        w = v @ x @ v.conj().T
        k = _reduce(w, self.dims, 1 - fixed_index)
        return 0.5 * (k + k.conj().T)


def linear_kernel(rho: DensityMatrix, fixed_obs, fixed_side, f: FOpSpec) -> Observable:
    """
    Kernel K on the free side with Upsilon^f(rho, O_free, O_fixed) = Tr[O_free K]
    for every O_free.

    Args:
        rho: Bipartite DensityMatrix
        fixed_obs: Observable (or matrix) acting on the fixed side
        fixed_side: 'A' or 'B'
        f: FOpSpec

    Returns:
        Observable on the other subsystem

    Raises:
        DimensionMismatchError
    """
    builder = _KernelBuilder(rho, f)
    index = side_index(fixed_side)
    if index not in (0, 1):
        raise DimensionMismatchError(f"Fixed side must be A or B, got {fixed_side!r}")
    return Observable(matrix=builder(as_matrix(fixed_obs), index))


def _align(kernel, values_desc):
    # argmax of Tr[O K] over O with spectrum values_desc
    eigvals, eigvecs = scipy.linalg.eigh(kernel)
    eigvals = eigvals[::-1]
    eigvecs = eigvecs[:, ::-1]
    o = (eigvecs * values_desc) @ eigvecs.conj().T
    return 0.5 * (o + o.conj().T), float(np.dot(values_desc, eigvals))


@dataclass
class _RestartOutcome:
    value: float
    o_a: np.ndarray
    o_b: np.ndarray
    history: Tuple[float, ...]
    converged: bool
    iterations: int


def _alternate(builder, o_b, values_a, values_b, max_iters, tol) -> _RestartOutcome:
    history = []
    previous = -np.inf
    converged = False
    o_a = None
    value = -np.inf
    iterations = 0

    for iterations in range(1, max_iters + 1):
        o_a, value_a = _align(builder(o_b, 1), values_a)
        o_b, value = _align(builder(o_a, 0), values_b)
        history.extend((value_a, value))

        if value - previous < tol:
            converged = True
            break
        previous = value

    return _RestartOutcome(value, o_a, o_b, tuple(history), converged, iterations)


def spectral_seed(rho: DensityMatrix, f: FOpSpec, values_b):
    """
    Starting O_B from the leading right singular vector of the generalized
    correlation matrix, moved onto the fixed-spectrum orbit.
    """
    d_b = rho.dims[1]
    t = generalized_correlation_matrix(rho, f)
    _, _, vt = np.linalg.svd(t)
    direction = np.tensordot(vt[0], hermitian_basis(d_b), axes=1)
    seed, _ = _align(0.5 * (direction + direction.conj().T), values_b)
    return seed


def qf_optimize(rho: DensityMatrix, f: FOpSpec, restarts: int = OPT_RESTARTS, max_iters: int = OPT_MAX_ITERS,
                tol: float = OPT_TOL, seed: int = DEFAULT_SEED, max_workers: int = MAX_WORKERS,
                spectral_start: bool = True) -> QfResult:
    """
    Q^f by multi-start alternating maximization.

    Restart 0 starts from the spectral seed (unless spectral_start is False);
    the others from Haar-random observables drawn from RngStream(seed, k).
    Restarts run concurrently and the best one is returned.

    Args:
        rho: Bipartite DensityMatrix
        f: FOpSpec
        restarts: Number of starting points (>= 1)
        max_iters: Full A/B sweeps per restart
        tol: Stop once a sweep improves the objective by less than this
        seed: Master seed for the random restarts
        max_workers: Worker threads
        spectral_start: Use the spectral seed for restart 0

    Returns:
        QfResult; converged is False (with a warning) if the best restart hit max_iters

    Raises:
        DimensionMismatchError
    """
    d_a, d_b = _check_bipartite(rho)
    if restarts < 1:
        raise UsageError(f"Need at least one restart, got {restarts}")

    spectrum = equispaced_spectrum(d_a, d_b)
    values_a = spectrum.descending('A')
    values_b = spectrum.descending('B')
    builder = _KernelBuilder(rho, f)

    def run(index):
        if index == 0 and spectral_start:
            start = spectral_seed(rho, f, values_b)
        else:
            u = haar_unitary(d_b, RngStream(seed, index))
            start = (u * values_b) @ u.conj().T
        return _alternate(builder, start, values_a, values_b, max_iters, tol)

    outcomes = ordered_map(run, range(restarts), max_workers=max_workers, label='restart')
    best_index = int(np.argmax([o.value for o in outcomes]))
    best = outcomes[best_index]

    if not best.converged:
        logger.warning(f"Best restart ({best_index}) stopped after {best.iterations} sweeps without converging")
    logger.debug(f"Q^f = {best.value:.12f} from restart {best_index} of {restarts} (f={f.label})")

    return QfResult(
        value=best.value,
        method=ALTERNATING,
        f_spec=f,
        optimal_a=Observable(matrix=best.o_a, declared_spectrum=values_a),
        optimal_b=Observable(matrix=best.o_b, declared_spectrum=values_b),
        restarts_used=restarts,
        converged=best.converged,
        iterations=best.iterations,
        restart_values=tuple(o.value for o in outcomes),
        history=best.history,
    )


def quantify(rho: DensityMatrix, f: FOpSpec, method: str = 'auto', restarts: int = OPT_RESTARTS,
             max_iters: int = OPT_MAX_ITERS, tol: float = OPT_TOL, seed: int = DEFAULT_SEED,
             max_workers: Optional[int] = None) -> QfResult:
    """
    Dispatch between the closed forms and the optimizer.

    method: 'auto' (two-qubit closed form for dims [2, 2], Schmidt formula for
    pure [2, d_B] states, optimizer otherwise), 'closed' or 'opt'.
    """
    method = method.lower()
    if method not in ('auto', 'closed', 'opt'):
        raise UsageError(f"Unknown method {method!r} (expected auto, closed or opt)")

    if method == 'closed' or (method == 'auto' and tuple(rho.dims) == (2, 2)):
        return qf_two_qubit(rho, f)
    if method == 'auto' and len(rho.dims) == 2 and rho.dims[0] == 2 and rho.rank() == 1:
        return qf_pure_state(rho, f)

    return qf_optimize(
        rho, f, restarts=restarts, max_iters=max_iters, tol=tol, seed=seed,
        max_workers=max_workers if max_workers is not None else MAX_WORKERS,
    )
