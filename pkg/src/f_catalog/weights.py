"""
Scalar matrix means m_f, Morozova-Cencov functions and skew-information weights,
plus the per-state weight tables used by every spectral sum.
"""
from dataclasses import dataclass

import numpy as np

from ..config import TOL_DEGENERACY
from .functions import FOpSpec, f_eval, f_zero


def _pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    x, y = np.broadcast_arrays(np.atleast_1d(x), np.atleast_1d(y))
    return x, y, scalar


def _out(values, scalar):
    return float(values[0]) if scalar else values


def _mean(spec, x, y):
    # m_f(x, y) = y f(x / y), evaluated as hi * f(lo / hi) so the argument stays in [0, 1]
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    out = np.zeros_like(hi)
    pos = hi > 0.0
    out[pos] = hi[pos] * f_eval(spec, lo[pos] / hi[pos])
    return out


def mean_mf(spec: FOpSpec, x, y):
    """
    Scalar Kubo-Ando mean m_f(x, y) = y f(x / y) for x, y >= 0.

    m_f(x, x) = x, m_f(x, 0) = x f(0), m_f(0, 0) = 0.
    """
    x, y, scalar = _pair(x, y)
    return _out(_mean(spec, x, y), scalar)


def mc_function(spec: FOpSpec, x, y):
    """Morozova-Cencov function c^f(x, y) = 1 / m_f(x, y); infinite at (0, 0)."""
    x, y, scalar = _pair(x, y)
    m = _mean(spec, x, y)
    with np.errstate(divide='ignore'):
        out = np.where(m > 0.0, 1.0 / np.where(m > 0.0, m, 1.0), np.inf)
    return _out(out, scalar)


def _weight(spec, x, y):
    m = _mean(spec, x, y)
    out = np.zeros_like(m)
    off = x != y
    out[off] = 0.5 * f_zero(spec) * (x[off] - y[off]) ** 2 / m[off]
    return out


def weight_gf(spec: FOpSpec, x, y):
    """
    Skew-information weight g^f(x, y) = (f(0) / 2) (x - y)^2 / m_f(x, y).

    g^f(x, x) = 0 exactly and g^f(x, 0) = x / 2 for every regular f.
    """
    x, y, scalar = _pair(x, y)
    return _out(_weight(spec, x, y), scalar)


@dataclass(frozen=True)
class WeightTable:
    """
    Pairwise weights over the eigenvalues of a state.

    g:       g^f(p_i, p_j), symmetric with zero diagonal
    m:       m_f(p_i, p_j), the Petz f-covariance kernel
    m_tilde: m_{f~}(p_i, p_j) = (p_i + p_j) / 2 - g^f(p_i, p_j)
    """
    eigenvalues: np.ndarray
    g: np.ndarray
    m: np.ndarray
    m_tilde: np.ndarray
    spec: FOpSpec


def build_weight_table(spec: FOpSpec, eigenvalues) -> WeightTable:
    """
    Precompute the weight tables for a list of eigenvalues.

    Pairs closer than TOL_DEGENERACY times the spectral radius are treated
    as degenerate: g = 0 and m = m_tilde = p_i.
    """
    p = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    x, y = np.meshgrid(p, p, indexing='ij')

    g = _weight(spec, x, y)
    m = _mean(spec, x, y)
    m_tilde = 0.5 * (x + y) - g

    radius = float(np.max(p)) if p.size else 0.0
    degenerate = np.abs(x - y) <= TOL_DEGENERACY * radius
    g[degenerate] = 0.0
    m[degenerate] = x[degenerate]
    m_tilde[degenerate] = x[degenerate]

    # Exact symmetry regardless of evaluation order
    g = 0.5 * (g + g.T)
    m = 0.5 * (m + m.T)
    m_tilde = 0.5 * (m_tilde + m_tilde.T)

    return WeightTable(eigenvalues=p, g=g, m=m, m_tilde=m_tilde, spec=spec)
