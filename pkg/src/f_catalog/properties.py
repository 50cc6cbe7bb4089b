"""
Sampled sanity checks of the defining properties of an operator monotone function:
self-inversive symmetry, normalization and matrix monotonicity on 2x2 pairs.

These are numerical checks, not proofs.
"""
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
import scipy.linalg

from ..config import SYMMETRY_GRID, MONOTONICITY_PAIRS
from ..utils.logging_config import get_logger
from .functions import FOpSpec, f_eval

logger = get_logger(__name__)


@dataclass
class FPropertyReport:
    """Largest observed violation of each property."""
    label: str
    symmetry: float = 0.0
    normalization: float = 0.0
    monotonicity: float = 0.0
    pairs_checked: int = 0
    grid_points: int = 0

    def passed(self, tol_symmetry=1e-10, tol_normalization=1e-12, tol_monotonicity=1e-9):
        return (
            self.symmetry < tol_symmetry
            and self.normalization < tol_normalization
            and self.monotonicity < tol_monotonicity
        )

    def get_summary(self):
        return {
            'f': self.label,
            'symmetry': self.symmetry,
            'normalization': self.normalization,
            'monotonicity': self.monotonicity,
            'pairs_checked': self.pairs_checked,
            'grid_points': self.grid_points,
        }


def _as_callable(f):
    if isinstance(f, FOpSpec):
        return (lambda t: f_eval(f, t)), f.label
    return (lambda t: np.asarray(f(np.asarray(t, dtype=float)), dtype=float)), getattr(f, '__name__', 'custom')


def _apply(func, a):
    # f(A) for Hermitian PSD A through its eigen-decomposition
    values, vectors = scipy.linalg.eigh(a)
    values = np.clip(values, 0.0, None)
    return (vectors * func(values)) @ vectors.conj().T


def _random_psd(rng, d=2):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g @ g.conj().T


def check_fop_properties(f: Union[FOpSpec, Callable], grid=None, n_pairs: int = MONOTONICITY_PAIRS,
                         rng: Optional[np.random.Generator] = None) -> FPropertyReport:
    """
    Check symmetry t f(1/t) = f(t) and f(1) = 1 on a log-grid, and f(A) <= f(B)
    on random ordered 2x2 pairs 0 <= A <= B.

    Args:
        f: FOpSpec, or any vectorized callable (used for negative controls)
        grid: t values for the symmetry check (default: SYMMETRY_GRID log-grid)
        n_pairs: Number of random ordered pairs
        rng: numpy Generator (default: seeded from 0)

    Returns:
        FPropertyReport. Symmetry violations are relative to max(1, f(t)).
    """
    func, label = _as_callable(f)
    if grid is None:
        lo, hi, n = SYMMETRY_GRID
        grid = np.logspace(np.log10(lo), np.log10(hi), n)
    grid = np.asarray(grid, dtype=float)
    rng = rng if rng is not None else np.random.default_rng(0)

    report = FPropertyReport(label=label, grid_points=int(grid.size))

    values = func(grid)
    mirrored = grid * func(1.0 / grid)
    report.symmetry = float(np.max(np.abs(mirrored - values) / np.maximum(1.0, np.abs(values))))
    report.normalization = float(abs(func(np.array([1.0]))[0] - 1.0))

    worst = 0.0
    for _ in range(n_pairs):
        a = _random_psd(rng)
        b = a + _random_psd(rng)
        diff = _apply(func, b) - _apply(func, a)
        smallest = float(scipy.linalg.eigvalsh(0.5 * (diff + diff.conj().T))[0])
        scale = max(1.0, float(np.max(np.abs(diff))))
        worst = max(worst, -smallest / scale)
    report.monotonicity = worst
    report.pairs_checked = n_pairs

    if not report.passed():
        logger.warning(f"Property check failed for f={label}: {report.get_summary()}")
    else:
        logger.debug(f"Property check passed for f={label}")

    return report
