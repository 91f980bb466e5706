"""The Cauchy operator |Delta|^(1/2) restricted to (-1, 1) with zero exterior data.

For ``psi`` vanishing at the endpoints the operator acts as

    A psi(x) = -(1/pi) p.v. int_{-1}^{1} psi'(t) / (t - x) dt,

which for the trigonometric basis reduces to closed forms in Si and Ci.
:func:`apply_oracle` evaluates the same principal value numerically as an
independent check of those closed forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_QUAD, QuadratureSpec, adaptive, integrate_interval

__all__ = [
    "Parity",
    "BasisIndex",
    "SmoothProfile",
    "HypersingularLimitSpec",
    "Candidate",
    "apply_even_basis",
    "apply_odd_basis",
    "apply_basis",
    "apply_oracle",
    "trig_disproof_residual",
]


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown parity {value!r}; expected 'even' or 'odd'") from None


@dataclass(frozen=True)
class BasisIndex:
    """One basis function: ``cos((2k+1) pi x / 2)`` (even) or ``sin(k pi x)`` (odd)."""

    parity: Parity
    k: int

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        if int(self.k) != self.k:
            raise ValueError("mode index must be an integer")
        object.__setattr__(self, "k", int(self.k))
        if self.parity is Parity.EVEN and self.k < 0:
            raise ValueError("even modes need k >= 0")
        if self.parity is Parity.ODD and self.k < 1:
            raise ValueError("odd modes need k >= 1")

    @property
    def frequency(self) -> float:
        if self.parity is Parity.EVEN:
            return (2 * self.k + 1) * math.pi / 2
        return self.k * math.pi

    def __call__(self, x):
        w = self.frequency
        x = np.asarray(x, dtype=float)
        return np.cos(w * x) if self.parity is Parity.EVEN else np.sin(w * x)

    def derivative(self, x):
        w = self.frequency
        x = np.asarray(x, dtype=float)
        return -w * np.sin(w * x) if self.parity is Parity.EVEN else w * np.cos(w * x)

    def profile(self) -> "SmoothProfile":
        return SmoothProfile(self.__call__, self.derivative, label=f"{self.parity.value}[{self.k}]")


@dataclass(frozen=True)
class SmoothProfile:
    """A function on (-1, 1), zero outside, with its derivative.

    Both callables must accept numpy arrays. Callers are responsible for
    ``value(+-1) = 0``.
    """

    value: Callable
    derivative: Callable
    label: str = ""


@dataclass(frozen=True)
class HypersingularLimitSpec:
    """Cutoffs for the symmetric epsilon-limit of the principal value.

    ``epsilons`` are fractions of the distance from ``x`` to the nearer
    endpoint, so the excised window always stays inside the interval.
    ``extrapolation_order`` counts the odd powers ``eps, eps^3, ...`` removed
    by the polynomial fit.
    """

    epsilons: tuple = (1e-2, 5e-3, 2.5e-3, 1.25e-3)
    extrapolation_order: int = 3
    inner_quad_tol: float = 1e-13
    max_residual: float = 1e-6

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        if len(eps) < 3:
            raise ValueError("need at least 3 cutoffs")
        if any(not 0.0 < e < 0.5 for e in eps):
            raise ValueError("cutoffs must lie in (0, 0.5)")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("cutoffs must be strictly decreasing")
        if not 1 <= self.extrapolation_order < len(eps):
            raise ValueError("extrapolation_order must be in [1, len(epsilons) - 1]")


class Candidate(str, enum.Enum):
    COS_HALF = "cos-half"
    SIN_PI = "sin-pi"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("_", "-")
        aliases = {"coshalf": "cos-half", "sinpi": "sin-pi"}
        return cls(aliases.get(key, key))

    @property
    def basis(self) -> BasisIndex:
        return BasisIndex(Parity.EVEN, 0) if self is Candidate.COS_HALF else BasisIndex(Parity.ODD, 1)


def _open_interval(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(np.abs(x) >= 1.0):
        raise DomainError("operator images are defined on the open interval (-1, 1) only")
    return x


def _even_image(k, x, omx, opx):
    # group Si/Ci arguments exactly as in the textbook closed form
    a = (2 * k + 1) * math.pi / 2
    si_m, ci_m = specfun.sici_array(a * omx)
    si_p, ci_p = specfun.sici_array(a * opx)
    return (2 * k + 1) / 2 * (np.sin(a * x) * (ci_m - ci_p) + np.cos(a * x) * (si_m + si_p))


def _odd_image(k, x, omx, opx):
    a = k * math.pi
    si_m, ci_m = specfun.sici_array(a * omx)
    si_p, ci_p = specfun.sici_array(a * opx)
    return k * (np.sin(a * x) * (si_m + si_p) - np.cos(a * x) * (ci_m - ci_p))


def _image(index: BasisIndex, x, omx, opx):
    if index.parity is Parity.EVEN:
        return _even_image(index.k, x, omx, opx)
    return _odd_image(index.k, x, omx, opx)


def _scalar_or_array(result, x):
    return float(result) if np.ndim(x) == 0 else result


def apply_even_basis(k: int, x):
    """``A cos((2k+1) pi x / 2)`` at ``x`` in (-1, 1); logarithmically divergent at the ends."""
    index = BasisIndex(Parity.EVEN, k)
    xa = _open_interval(x)
    return _scalar_or_array(_image(index, xa, 1.0 - xa, 1.0 + xa), x)


def apply_odd_basis(k: int, x):
    """``A sin(k pi x)`` at ``x`` in (-1, 1), ``k >= 1``."""
    if k == 0:
        raise DomainError("odd modes start at k = 1")
    index = BasisIndex(Parity.ODD, k)
    xa = _open_interval(x)
    return _scalar_or_array(_image(index, xa, 1.0 - xa, 1.0 + xa), x)


def apply_basis(index: BasisIndex, x):
    if index.parity is Parity.EVEN:
        return apply_even_basis(index.k, x)
    return apply_odd_basis(index.k, x)


def _odd_power_fit(eps, values, order):
    # I(eps) = c0 + c1 eps + c3 eps^3 + ... ; the paired integrand is even in s
    eps = np.asarray(eps)
    scale = eps.max()
    cols = [np.ones_like(eps)] + [(eps / scale) ** (2 * j + 1) for j in range(order)]
    mat = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(mat, np.asarray(values), rcond=None)
    return coef[0]


def _principal_value_cutoffs(g, x, spec: HypersingularLimitSpec):
    """Return ``(cutoffs, I(cutoff))`` for ``p.v. int g(t)/(t-x) dt`` with windows excised."""
    d = 1.0 - abs(x)
    tol = spec.inner_quad_tol

    def paired(s):
        return (g(x + s) - g(x - s)) / s

    if x > 0.0:
        tail, _ = adaptive(lambda u: -g(x - np.exp(u)), math.log(d), math.log1p(x), rel_tol=tol, abs_tol=tol)
    elif x < 0.0:
        tail, _ = adaptive(lambda u: g(x + np.exp(u)), math.log(d), math.log1p(-x), rel_tol=tol, abs_tol=tol)
    else:
        tail = 0.0

    cuts = [e * d for e in spec.epsilons]
    running, _ = adaptive(paired, cuts[0], d, rel_tol=tol, abs_tol=tol)
    running += tail
    values = [running]
    for hi, lo in zip(cuts, cuts[1:]):
        piece, _ = adaptive(paired, lo, hi, rel_tol=tol, abs_tol=tol)
        running += piece
        values.append(running)
    return np.array(cuts), np.array(values)


def apply_oracle(psi: SmoothProfile, x: float, spec: HypersingularLimitSpec = HypersingularLimitSpec()) -> float:
    """Evaluate ``A psi(x)`` through the epsilon-limit of the principal value.

    The integrand is paired symmetrically about ``t = x`` so the pole cancels
    in each pair; the remaining dependence on the cutoff is removed by
    extrapolating to zero. Raises :class:`ConvergenceError` when two
    extrapolation orders disagree by more than ``spec.max_residual``.
    """
    x = float(_open_interval(x))
    cuts, values = _principal_value_cutoffs(psi.derivative, x, spec)
    order = spec.extrapolation_order
    best = _odd_power_fit(cuts, values, order)
    lower = _odd_power_fit(cuts[-order:], values[-order:], order - 1)
    residual = abs(best - lower) / math.pi
    result = -best / math.pi
    if residual > spec.max_residual:
        raise ConvergenceError(
            f"epsilon extrapolation at x={x} did not settle (residual {residual:.2e})",
            estimate=result,
            error=residual,
        )
    return result


def trig_disproof_residual(which, grid: Sequence[float], quad: QuadratureSpec = DEFAULT_QUAD):
    """Best-fit eigenvalue and pointwise residual for a trigonometric trial function.

    ``which`` is ``cos-half`` (``cos(pi x/2)``) or ``sin-pi`` (``sin(pi x)``).
    The best fit is the Rayleigh quotient ``<A phi, phi>``; residuals are
    ``|A phi(x) - E phi(x)|`` on ``grid``. An eigenfunction would give zeros.
    """
    cand = Candidate.parse(which)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be nonempty")
    _open_interval(grid)
    index = cand.basis
    energy, _ = integrate_interval(lambda x, omx, opx: _image(index, x, omx, opx) * index(x), quad)
    residuals = np.abs(apply_basis(index, grid) - energy * index(grid))
    return energy, residuals
