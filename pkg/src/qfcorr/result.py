"""
Result container for the quantum f-correlation quantifier
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..correlations.observable import Observable
from ..f_catalog.functions import FOpSpec

CLOSED_FORM = 'closed_form'
ALTERNATING = 'alternating'
PURE_SCHMIDT = 'pure_schmidt'


@dataclass
class QfResult:
    """
    Value of Q^f and the local observables attaining it.
    """
    value: float
    method: str
    f_spec: FOpSpec
    optimal_a: Optional[Observable] = None
    optimal_b: Optional[Observable] = None
    restarts_used: int = 0
    converged: bool = True
    iterations: int = 0
    restart_values: Tuple[float, ...] = ()
    history: Tuple[float, ...] = field(default=(), repr=False)

    def get_summary(self):
        """JSON-ready summary (observables as [[re, im], ...] matrices)."""
        from ..hermitian_core.state_io import matrix_to_json

        summary = {
            'value': float(self.value),
            'method': self.method,
            'f': self.f_spec.label,
            'restarts_used': self.restarts_used,
            'converged': self.converged,
            'iterations': self.iterations,
        }
        if self.optimal_a is not None:
            summary['optimal_a'] = matrix_to_json(self.optimal_a.matrix)
        if self.optimal_b is not None:
            summary['optimal_b'] = matrix_to_json(self.optimal_b.matrix)
        return summary
