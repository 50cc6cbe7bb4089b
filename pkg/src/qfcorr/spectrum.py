"""
Fixed spectra for the local observables of the quantifier
"""
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError


@dataclass(frozen=True)
class EquispacedSpectrum:
    """
    d = min(d_A, d_B) values from -d/2 to d/2 with spacing d/(d-1) on both
    sides; the larger side is padded with zeros.
    """
    d_A: int
    d_B: int
    values_A: tuple
    values_B: tuple

    def descending(self, side):
        values = self.values_A if side in ('A', 0) else self.values_B
        return np.sort(np.asarray(values, dtype=float))[::-1]


def equispaced_spectrum(d_A: int, d_B: int) -> EquispacedSpectrum:
    """
    Raises:
        DimensionMismatchError: If either dimension is below 2
    """
    if d_A < 2 or d_B < 2:
        raise DimensionMismatchError(f"Both local dimensions must be >= 2, got ({d_A}, {d_B})")

    d = min(d_A, d_B)
    core = [float(v) for v in np.linspace(-d / 2.0, d / 2.0, d)]
    values_A = tuple(core + [0.0] * (d_A - d))
    values_B = tuple(core + [0.0] * (d_B - d))
    return EquispacedSpectrum(d_A=d_A, d_B=d_B, values_A=values_A, values_B=values_B)
