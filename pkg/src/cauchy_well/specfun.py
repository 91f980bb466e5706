"""Sine and cosine integrals in binary64.

Power series for ``x <= crossover``; beyond it the auxiliary functions are
obtained from a modified-Lentz continued fraction for ``E1(ix)``, which keeps
the absolute error near machine epsilon for every argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError

__all__ = [
    "EULER_GAMMA",
    "SpecialFunctionAccuracy",
    "DEFAULT_ACCURACY",
    "si",
    "ci",
    "si_ci_pair",
    "si_array",
    "ci_array",
    "sici_array",
    "cin_array",
]

EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class SpecialFunctionAccuracy:
    """Accuracy contract for :func:`si` and :func:`ci`.

    ``abs_tol`` is the absolute error the implementation is tested against;
    ``series_asymptotic_crossover`` is where evaluation switches from the
    power series to the continued fraction.
    """

    abs_tol: float = 1e-14
    series_asymptotic_crossover: float = 4.0

    def __post_init__(self):
        if not 1e-15 <= self.abs_tol <= 1e-8:
            raise ValueError(f"abs_tol must lie in [1e-15, 1e-8], got {self.abs_tol}")
        if not self.series_asymptotic_crossover > 0:
            raise ValueError("crossover must be positive")


DEFAULT_ACCURACY = SpecialFunctionAccuracy()


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x}")
    return x


def si_ci_pair(x: float, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY) -> tuple[float, float]:
    """Return ``(Si(x), Ci(x))`` for ``x > 0`` from one shared evaluation."""
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError(f"Ci is defined for x > 0 only, got {x}")
    return kernels.sici_scalar(x, accuracy.series_asymptotic_crossover)


def si(x: float, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY) -> float:
    """Sine integral ``Si(x) = int_0^x sin(t)/t dt``; exactly odd in ``x``."""
    x = _check_finite(x)
    if x == 0.0:
        return 0.0
    value = kernels.sici_scalar(abs(x), accuracy.series_asymptotic_crossover)[0]
    return value if x > 0 else -value


def ci(x: float, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY) -> float:
    """Cosine integral ``Ci(x) = C + ln x + int_0^x (cos t - 1)/t dt`` for ``x > 0``."""
    return si_ci_pair(x, accuracy)[1]


def sici_array(x, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY):
    """Vectorised ``(Si, Ci)`` for an array of strictly positive finite values."""
    x = np.asarray(x, dtype=np.float64)
    if x.size and not (np.all(np.isfinite(x)) and np.all(x > 0.0)):
        raise DomainError("sici_array needs finite arguments > 0")
    return kernels.sici_array(x, accuracy.series_asymptotic_crossover)


def si_array(x, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY):
    """Vectorised odd ``Si`` accepting any finite real values."""
    x = np.asarray(x, dtype=np.float64)
    if x.size and not np.all(np.isfinite(x)):
        raise DomainError("si_array needs finite arguments")
    ax = np.abs(x)
    out = np.zeros_like(ax)
    nz = ax > 0.0
    if nz.any():
        out[nz] = kernels.sici_array(ax[nz], accuracy.series_asymptotic_crossover)[0]
    return np.copysign(out, x) if out.ndim else float(math.copysign(out, x))


def ci_array(x, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY):
    return sici_array(x, accuracy)[1]


def cin_array(x, accuracy: SpecialFunctionAccuracy = DEFAULT_ACCURACY):
    """Entire cosine integral ``Cin(x) = int_0^x (1 - cos t)/t dt`` for ``x >= 0``.

    ``Cin(x) = C + ln x - Ci(x)``; at ``x = 0`` it is exactly 0.
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    nz = x > 0.0
    if np.any(nz):
        xs = x[nz]
        out[nz] = EULER_GAMMA + np.log(xs) - sici_array(xs, accuracy)[1]
    return out
