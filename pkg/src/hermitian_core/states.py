"""
Density matrices, partial traces, Schmidt decomposition and local embeddings
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Optional, Sequence, Tuple

import numpy as np

from ..config import (
    TOL_HERMITIAN,
    TOL_PSD,
    TOL_TRACE,
    TOL_DEGENERACY,
    MAX_TOTAL_DIMENSION,
)
from ..errors import (
    DimensionMismatchError,
    DomainError,
    NonHermitianError,
    NonPositiveError,
    NotNormalizedError,
    TraceMismatchError,
)
from ..utils.logging_config import get_logger
from .operators import embed_operator, side_index
from .spectral import SpectralDecomposition, spectral_decompose, hermiticity_defect

logger = get_logger(__name__)


@dataclass(frozen=True)
class DensityMatrix:
    """
    Validated trace-one positive semidefinite matrix tagged with subsystem
    dimensions. Build through validate_density() rather than directly.
    """
    dims: Tuple[int, ...]
    matrix: np.ndarray
    _spectrum: Optional[SpectralDecomposition] = field(default=None, compare=False, repr=False)
    _derived: Dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'dims', tuple(int(d) for d in self.dims))

    @property
    def dim(self):
        return int(np.prod(self.dims))

    def spectrum(self) -> SpectralDecomposition:
        """
        Cached eigen-decomposition. Eigenvalues below TOL_DEGENERACY times the
        largest one are treated as exact zeros.
        """
        if self._spectrum is None:
            object.__setattr__(
                self, '_spectrum', spectral_decompose(self.matrix, floor_relative=TOL_DEGENERACY)
            )
        return self._spectrum

    def cached(self, key: Hashable, factory: Callable):
        """Build a derived quantity of this state once and keep it under key."""
        if key not in self._derived:
            self._derived[key] = factory()
        return self._derived[key]

    def expectation(self, op):
        """Tr(rho op), real part."""
        return float(np.real(np.einsum('ij,ji->', self.matrix, np.asarray(op))))

    def purity(self):
        return float(np.real(np.einsum('ij,ji->', self.matrix, self.matrix)))

    def rank(self):
        return int(np.count_nonzero(self.spectrum().eigenvalues > 0))


@dataclass(frozen=True)
class SchmidtForm:
    """
    Schmidt coefficients (descending) with left/right orthonormal bases as
    columns: psi = sum_i coefficients[i] left[:, i] (x) right[:, i].
    """
    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    def reconstruct(self):
        k = len(self.coefficients)
        return sum(
            self.coefficients[i] * np.kron(self.left_basis[:, i], self.right_basis[:, i])
            for i in range(k)
        )


def _check_dims(dims):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionMismatchError(f"Invalid subsystem dimensions: {list(dims)}")
    return dims


def validate_density(m, dims: Sequence[int], spectrum: Optional[SpectralDecomposition] = None) -> DensityMatrix:
    """
    Validate a matrix as a density matrix and tag it with subsystem dimensions.

    Small asymmetries are symmetrized; eigenvalues in (-TOL_PSD, 0) are
    clipped to zero and the trace renormalized.

    Args:
        m: Square complex matrix
        dims: Subsystem dimensions whose product is the matrix size
        spectrum: Optional exact spectral decomposition to attach (used for
            states built from a known spectrum, e.g. Gibbs states)

    Returns:
        DensityMatrix

    Raises:
        DimensionMismatchError, NonHermitianError, TraceMismatchError, NonPositiveError
    """
    dims = _check_dims(dims)
    m = np.asarray(m, dtype=complex)

    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"Density matrix must be square, got shape {m.shape}")
    if m.shape[0] != int(np.prod(dims)):
        raise DimensionMismatchError(f"Matrix size {m.shape[0]} does not match dims {list(dims)}")
    if not np.all(np.isfinite(m)):
        raise DomainError("Density matrix has non-finite entries")

    if spectrum is None:
        # Raises NonHermitianError beyond tolerance
        decomposition = spectral_decompose(m, floor_relative=TOL_DEGENERACY)
    else:
        defect = hermiticity_defect(m)
        if defect > TOL_HERMITIAN:
            raise NonHermitianError(f"Matrix is not Hermitian (max asymmetry {defect:.3e})")
        decomposition = spectrum

    m = 0.5 * (m + m.conj().T)
    trace = float(np.real(np.trace(m)))
    if abs(trace - 1.0) > TOL_TRACE:
        raise TraceMismatchError(f"Trace is {trace:.12f}, expected 1")

    smallest = float(decomposition.eigenvalues[-1])
    if smallest < -TOL_PSD:
        raise NonPositiveError(f"Smallest eigenvalue {smallest:.3e} is below -{TOL_PSD:g}")

    if smallest < 0.0:
        logger.debug(f"Clipping negative eigenvalue {smallest:.3e} to zero")
        p = np.clip(decomposition.eigenvalues, 0.0, None)
        p = p / p.sum()
        v = decomposition.eigenvectors
        m = (v * p) @ v.conj().T
        m = 0.5 * (m + m.conj().T)
        decomposition = None

    if dims and int(np.prod(dims)) > MAX_TOTAL_DIMENSION:
        logger.debug(f"Total dimension {int(np.prod(dims))} exceeds the tested range ({MAX_TOTAL_DIMENSION})")

    return DensityMatrix(dims=dims, matrix=m, _spectrum=decomposition)


def pure_density(psi, dims: Sequence[int]) -> DensityMatrix:
    """
    Build |psi><psi| as a DensityMatrix.

    Raises:
        NotNormalizedError: If ||psi|| differs from 1 by more than TOL_TRACE
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > TOL_TRACE:
        raise NotNormalizedError(f"State vector norm is {norm:.12f}, expected 1")
    return validate_density(np.outer(psi, psi.conj()), dims)


def bell_state(name='phi+'):
    """
    Two-qubit Bell vector: 'phi+', 'phi-', 'psi+' or 'psi-'.
    """
    s = 1.0 / np.sqrt(2.0)
    vectors = {
        'phi+': [s, 0, 0, s],
        'phi-': [s, 0, 0, -s],
        'psi+': [0, s, s, 0],
        'psi-': [0, s, -s, 0],
    }
    if name not in vectors:
        raise DomainError(f"Unknown Bell state: {name}")
    return np.array(vectors[name], dtype=complex)


def werner_state(q: float) -> DensityMatrix:
    """
    q |Phi+><Phi+| + (1 - q) I/4 for q in [0, 1].
    """
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"Werner parameter must lie in [0, 1], got {q}")
    phi = bell_state('phi+')
    m = q * np.outer(phi, phi.conj()) + (1.0 - q) * np.eye(4) / 4.0
    return validate_density(m, (2, 2))


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    dims = _check_dims(dims)
    d = int(np.prod(dims))
    return validate_density(np.eye(d, dtype=complex) / d, dims)


def tensor_states(*states: DensityMatrix) -> DensityMatrix:
    """Product state rho_1 (x) rho_2 (x) ... with concatenated dims."""
    matrix = states[0].matrix
    dims = list(states[0].dims)
    for s in states[1:]:
        matrix = np.kron(matrix, s.matrix)
        dims.extend(s.dims)
    return validate_density(matrix, dims)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """
    Trace out every subsystem not listed in `keep`.

    Args:
        rho: DensityMatrix
        keep: Iterable of subsystem indices (or labels 'A', 'B', ...) to keep

    Returns:
        Reduced DensityMatrix on the kept subsystems, in ascending index order

    Raises:
        DimensionMismatchError: If keep is empty or contains invalid indices
    """
    keep = sorted({side_index(k) for k in keep})
    n = len(rho.dims)

    if not keep:
        raise DimensionMismatchError("Partial trace needs at least one subsystem to keep")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatchError(f"Subsystems {keep} out of range for dims {list(rho.dims)}")

    tensor = rho.matrix.reshape(rho.dims + rho.dims)
    current = n

    # Trace from the highest index down so lower axes keep their positions
    for index in reversed(range(n)):
        if index in keep:
            continue
        tensor = np.trace(tensor, axis1=index, axis2=index + current)
        current -= 1

    kept_dims = tuple(rho.dims[k] for k in keep)
    d = int(np.prod(kept_dims))
    return validate_density(tensor.reshape(d, d), kept_dims)


def schmidt_decompose(psi, dims: Sequence[int]) -> SchmidtForm:
    """
    Schmidt decomposition of a bipartite pure state via the SVD of its
    reshaped amplitude matrix.

    Args:
        psi: State vector of length d_A * d_B
        dims: [d_A, d_B]

    Returns:
        SchmidtForm with min(d_A, d_B) descending coefficients

    Raises:
        DimensionMismatchError, NotNormalizedError
    """
    dims = _check_dims(dims)
    if len(dims) != 2:
        raise DimensionMismatchError(f"Schmidt decomposition needs two subsystems, got {list(dims)}")

    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != dims[0] * dims[1]:
        raise DimensionMismatchError(f"Vector of length {psi.size} does not match dims {list(dims)}")

    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > TOL_TRACE:
        raise NotNormalizedError(f"State vector norm is {norm:.12f}, expected 1")

    u, s, vh = np.linalg.svd(psi.reshape(dims), full_matrices=False)
    return SchmidtForm(coefficients=s, left_basis=u, right_basis=vh.T)


def embed_local(obs, side, dims: Sequence[int]):
    """
    Embed a local observable as O_A (x) I_B or I_A (x) O_B (identities on
    every other factor for more than two subsystems).

    Args:
        obs: Observable or matrix acting on the chosen subsystem
        side: 'A', 'B', ... or subsystem index
        dims: Subsystem dimensions

    Returns:
        Full-space matrix

    Raises:
        DimensionMismatchError: If the operator size does not match the subsystem
    """
    matrix = getattr(obs, 'matrix', obs)
    return embed_operator(matrix, side_index(side), _check_dims(dims))
