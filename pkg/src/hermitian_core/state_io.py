"""
JSON reading and writing of states and observables.

State file:      {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
Observable file: {"matrix": [[[re, im], ...], ...], "spectrum": [...]}  (spectrum optional)
"""
import json
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatchError, DomainError
from ..utils.logging_config import get_logger
from .states import DensityMatrix, validate_density

logger = get_logger(__name__)


def matrix_to_json(m):
    """Complex matrix as nested [[re, im], ...] rows."""
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows):
    """
    Inverse of matrix_to_json. Plain real numbers are accepted as entries too.
    """
    try:
        data = np.array(
            [[complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in row] for row in rows],
            dtype=complex,
        )
    except (TypeError, ValueError, IndexError) as e:
        raise DomainError(f"Malformed matrix entries: {e}")

    if data.ndim != 2:
        raise DimensionMismatchError("Matrix rows have inconsistent lengths")
    return data


def _read_json(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No such file: {path}")
    with open(path, 'r') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise DomainError(f"Invalid JSON in {path}: {e}")


def _write_json(payload, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)
        f.write('\n')
    return path


def load_state(path) -> DensityMatrix:
    """
    Load and validate a density matrix from a state file.

    Raises:
        FileNotFoundError: If the file does not exist
        QFError subclasses: If the content is not a valid density matrix
    """
    payload = _read_json(path)
    if 'matrix' not in payload:
        raise DomainError(f"State file {path} has no 'matrix' field")

    matrix = matrix_from_json(payload['matrix'])
    dims = payload.get('dims', [matrix.shape[0]])
    rho = validate_density(matrix, dims)
    logger.debug(f"Loaded state {path} with dims {list(rho.dims)}")
    return rho


def save_state(rho: DensityMatrix, path):
    payload = {'dims': list(rho.dims), 'matrix': matrix_to_json(rho.matrix)}
    return _write_json(payload, path)


def load_observable(path):
    """
    Load an Observable. A "spectrum" entry, when present, is checked against
    the matrix eigenvalues.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    from ..correlations.observable import Observable

    payload = _read_json(path)
    if 'matrix' not in payload:
        raise DomainError(f"Observable file {path} has no 'matrix' field")

    matrix = matrix_from_json(payload['matrix'])
    return Observable.from_matrix(matrix, declared_spectrum=payload.get('spectrum'))


def save_observable(obs, path):
    payload = {'matrix': matrix_to_json(obs.matrix)}
    if obs.declared_spectrum is not None:
        payload['spectrum'] = [float(v) for v in obs.declared_spectrum]
    return _write_json(payload, path)
