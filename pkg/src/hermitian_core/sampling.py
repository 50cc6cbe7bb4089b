"""
Reproducible random sampling: seeded streams, Haar unitaries and random states
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..errors import DimensionMismatchError, DomainError
from .states import DensityMatrix, validate_density


@dataclass(frozen=True)
class RngStream:
    """
    Deterministic random stream identified by (master_seed, stream_index).

    Streams with different indices are statistically independent, so a scan
    can hand sample k the stream (seed, k) and run samples in any order.
    """
    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh numpy Generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(entropy=int(self.master_seed), spawn_key=(int(self.stream_index),))
        return np.random.default_rng(seq)


RngLike = Union[RngStream, np.random.Generator, int, None]


def as_generator(rng: RngLike) -> np.random.Generator:
    """
    Accept an RngStream, a Generator, an integer seed or None.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    return np.random.default_rng(rng)


def _ginibre(rng: np.random.Generator, rows: int, cols: int):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def haar_unitary(d: int, rng: RngLike = None):
    """
    Draw a d x d unitary from the Haar measure.

    QR of a complex Ginibre matrix, with the phases of diag(R) moved into Q
    so the distribution is exactly Haar.

    Args:
        d: Dimension (>= 1)
        rng: RngStream, Generator or seed

    Returns:
        Complex unitary matrix
    """
    if d < 1:
        raise DimensionMismatchError(f"Unitary dimension must be >= 1, got {d}")
    gen = as_generator(rng)
    q, r = np.linalg.qr(_ginibre(gen, d, d) / np.sqrt(2.0))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_pure_state(d: int, rng: RngLike = None):
    """Haar-random unit vector of length d."""
    if d < 1:
        raise DimensionMismatchError(f"State dimension must be >= 1, got {d}")
    gen = as_generator(rng)
    psi = _ginibre(gen, d, 1).reshape(-1)
    return psi / np.linalg.norm(psi)


def random_density_hs(d: int, rng: RngLike = None, dims: Optional[Sequence[int]] = None,
                      rank: Optional[int] = None) -> DensityMatrix:
    """
    Random density matrix rho = G G^dag / Tr(G G^dag) with G a d x k complex
    Ginibre matrix. k = d (the default) gives the Hilbert-Schmidt measure;
    smaller k gives the induced measure of rank k.

    Args:
        d: Total dimension
        rng: RngStream, Generator or seed
        dims: Subsystem dimensions (defaults to [d])
        rank: Number of Ginibre columns k (defaults to d)

    Returns:
        DensityMatrix of rank min(d, k) almost surely
    """
    if d < 1:
        raise DimensionMismatchError(f"State dimension must be >= 1, got {d}")
    k = d if rank is None else int(rank)
    if k < 1:
        raise DimensionMismatchError(f"Induced measure rank must be >= 1, got {k}")
    gen = as_generator(rng)
    g = _ginibre(gen, d, k)
    m = g @ g.conj().T
    m = m / np.real(np.trace(m))
    return validate_density(m, dims if dims is not None else [d])


def parse_measure(text: str) -> Optional[int]:
    """
    Parse a random-state measure: 'hs' (Hilbert-Schmidt) or 'induced:<k>'.

    Returns:
        None for 'hs', otherwise the rank k

    Raises:
        DomainError: On anything else
    """
    label = str(text).strip().lower()
    if label == 'hs':
        return None
    kind, _, value = label.partition(':')
    if kind == 'induced':
        try:
            rank = int(value)
        except ValueError:
            rank = 0
        if rank >= 1:
            return rank
    raise DomainError(f"Unknown state measure {text!r} (expected hs or induced:<k> with k >= 1)")


def measure_label(rank: Optional[int]) -> str:
    return 'hs' if rank is None else f'induced:{rank}'
