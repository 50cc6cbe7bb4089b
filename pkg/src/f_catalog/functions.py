"""
Regular, symmetric, normalized operator monotone functions f and the f-tilde transform.

Supported families:
    bu       f(t) = (1 + t) / 2                       (largest; ordinary covariance)
    wy       f(t) = (1 + sqrt(t))^2 / 4               (Wigner-Yanase)
    wyd:a    f(t) = a(1-a)(t-1)^2 / ((t^a - 1)(t^(1-a) - 1)),  0 < a < 1
    qvar     f(t) = (1-t)^2 / (12((t+1)/2 - (t-1)/log t))   (quantum variance)
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import WYD_SERIES_RADIUS, QVAR_SERIES_RADIUS
from ..errors import DomainError

KINDS = ('bu', 'wy', 'wyd', 'qvar')


@dataclass(frozen=True)
class FOpSpec:
    """
    Descriptor of one registered operator monotone function.
    """
    kind: str
    alpha: Optional[float] = None

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise DomainError(f"Unknown operator monotone family: {self.kind}")
        object.__setattr__(self, 'kind', kind)

        if kind == 'wyd':
            if self.alpha is None or not 0.0 < float(self.alpha) < 1.0:
                raise DomainError(f"WYD parameter must lie in (0, 1), got {self.alpha}")
            object.__setattr__(self, 'alpha', float(self.alpha))
        elif kind == 'wy':
            object.__setattr__(self, 'alpha', 0.5)
        else:
            object.__setattr__(self, 'alpha', None)

    @property
    def f_zero(self) -> float:
        return f_zero(self)

    @property
    def label(self) -> str:
        if self.kind == 'wyd':
            return f"wyd:{self.alpha:g}"
        return self.kind

    def __str__(self):
        return self.label


BU = FOpSpec('bu')
WY = FOpSpec('wy')
QVAR = FOpSpec('qvar')


def wyd(alpha: float) -> FOpSpec:
    return FOpSpec('wyd', alpha)


# One member of every family; test suites iterate over these
REFERENCE_SPECS = (BU, WY, wyd(0.25), QVAR)


def parse_f_spec(text: str) -> FOpSpec:
    """
    Parse the command-line grammar `bu | wy | wyd:<alpha> | qvar`.

    Raises:
        DomainError: On unknown names, a missing or malformed alpha, or alpha outside (0, 1)
    """
    raw = (text or '').strip().lower()
    if raw.startswith('wyd'):
        _, sep, value = raw.partition(':')
        if not sep or not value:
            raise DomainError("WYD needs a parameter, e.g. wyd:0.25")
        try:
            alpha = float(value)
        except ValueError:
            raise DomainError(f"Invalid WYD parameter: {value!r}")
        return wyd(alpha)

    if raw in ('bu', 'wy', 'qvar'):
        return FOpSpec(raw)

    raise DomainError(f"Unknown f specification {text!r} (expected bu, wy, wyd:<alpha> or qvar)")


def f_zero(spec: FOpSpec) -> float:
    """Limit of f(t) as t -> 0+."""
    if spec.kind == 'bu':
        return 0.5
    if spec.kind == 'wy':
        return 0.25
    if spec.kind == 'wyd':
        return spec.alpha * (1.0 - spec.alpha)
    return 1.0 / 6.0


def _wyd(t, alpha):
    beta = 1.0 - alpha
    out = np.empty_like(t)

    zero = t == 0.0
    out[zero] = alpha * beta

    pos = ~zero
    u = 0.5 * np.log(t[pos])
    near = np.abs(t[pos] - 1.0) < WYD_SERIES_RADIUS

    # sinh form: (t^a - 1)(t^b - 1) = 4 e^u sinh(a u) sinh(b u), (t - 1)^2 = 4 e^{2u} sinh(u)^2
    values = np.empty_like(u)
    uf = u[~near]
    values[~near] = alpha * beta * np.exp(uf) * np.sinh(uf) ** 2 / (np.sinh(alpha * uf) * np.sinh(beta * uf))

    # Taylor branch about t = 1 to fourth order in u
    d2 = (alpha ** 2 + beta ** 2) / 6.0
    d4 = (alpha ** 4 + beta ** 4) / 120.0 + (alpha * beta) ** 2 / 36.0
    h2 = 1.0 / 3.0 - d2
    h4 = 2.0 / 45.0 - d4 - d2 * h2
    un = u[near]
    values[near] = np.exp(un) * (1.0 + h2 * un ** 2 + h4 * un ** 4)

    out[pos] = values
    return out


def _qvar(t):
    out = np.empty_like(t)

    zero = t == 0.0
    out[zero] = 1.0 / 6.0

    e = t - 1.0
    near = ~zero & (np.abs(e) < QVAR_SERIES_RADIUS)
    far = ~zero & ~near

    tf = t[far]
    log_mean = (tf - 1.0) / np.log(tf)
    out[far] = (1.0 - tf) ** 2 / (12.0 * (0.5 * (tf + 1.0) - log_mean))

    # 12((t+1)/2 - (t-1)/log t) / e^2 expanded in e = t - 1
    en = e[near]
    series = 1.0 + en * (-1.0 / 2.0 + en * (19.0 / 60.0 + en * (-9.0 / 40.0 + en * (863.0 / 5040.0 - en * 275.0 / 2016.0))))
    out[near] = 1.0 / series
    return out


def f_eval(spec: FOpSpec, t):
    """
    Evaluate f at t >= 0.

    Args:
        spec: FOpSpec
        t: Scalar or array of nonnegative reals

    Returns:
        float for scalar input, ndarray otherwise

    Raises:
        DomainError: If any t < 0 or is not finite
    """
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)

    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError("f is only defined for finite t >= 0")

    if spec.kind == 'bu':
        out = 0.5 * (1.0 + arr)
    elif spec.kind == 'wy':
        out = 0.25 * (1.0 + np.sqrt(arr)) ** 2
    elif spec.kind == 'wyd':
        out = _wyd(arr, spec.alpha)
    else:
        out = _qvar(arr)

    return float(out[0]) if scalar else out


def f_tilde_eval(spec: FOpSpec, t):
    """
    f~(t) = ((t + 1) - (t - 1)^2 f(0) / f(t)) / 2.

    f~(0) = 0 for every regular f, so t = 0 is accepted as a limit.

    Raises:
        DomainError: If any t < 0
    """
    arr = np.asarray(t, dtype=float)
    values = f_eval(spec, arr)
    out = 0.5 * ((arr + 1.0) - (arr - 1.0) ** 2 * f_zero(spec) / values)
    return float(out) if np.ndim(out) == 0 else out
