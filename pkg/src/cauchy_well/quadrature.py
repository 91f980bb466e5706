"""Gauss-Legendre machinery for integrands with logarithmic endpoint singularities.

Two building blocks:

* :func:`adaptive` - globally adaptive composite Gauss-Legendre on a finite
  interval, refining every panel whose local error exceeds its share of the
  tolerance. Integrands are evaluated on whole node arrays at once.
* :func:`graded` - geometric (dyadic) mesh toward one endpoint, integrating
  ``ln u``-type singularities without ever evaluating at ``u = 0``.

:func:`integrate_interval` combines them the way the Galerkin elements need:
two graded boundary layers of width ``endpoint_margin`` and an adaptive bulk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 400
    endpoint_margin: float = 1.0 / 16.0
    graded_levels: int = 40
    order: int = 20

    def __post_init__(self):
        if not 1e-13 <= self.rel_tol <= 1e-6:
            raise ValueError(f"rel_tol must lie in [1e-13, 1e-6], got {self.rel_tol}")
        if not 0.0 < self.endpoint_margin < 0.5:
            raise ValueError(f"endpoint_margin must lie in (0, 0.5), got {self.endpoint_margin}")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be >= 10")
        if self.abs_tol <= 0 or self.graded_levels < 1 or self.order < 2:
            raise ValueError("abs_tol, graded_levels and order must be positive")

    def to_dict(self):
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "max_subdivisions": self.max_subdivisions,
            "endpoint_margin": self.endpoint_margin,
            "graded_levels": self.graded_levels,
            "order": self.order,
        }


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=None)
def gauss_legendre(order: int):
    """Nodes and weights on [-1, 1] (read-only arrays)."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _panel_sums(f, lo, hi, order):
    x, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return half * (vals @ w)


def adaptive(f, a, b, rel_tol=1e-10, abs_tol=1e-13, max_subdivisions=400, order=20):
    """Integrate ``f`` over ``[a, b]``; returns ``(value, error_estimate)``.

    Each panel is compared against the sum over its two halves; panels whose
    discrepancy exceeds their length-proportional share of the tolerance are
    bisected. The relative tolerance is taken against the sum of absolute
    panel integrals, so heavy cancellation does not make it unreachable. Raises :class:`QuadratureError` when ``max_subdivisions``
    bisections do not suffice.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0, 0.0
    return _refine(f, np.array([min(a, b)]), np.array([max(a, b)]), rel_tol, abs_tol, max_subdivisions, order,
                   f"[{a}, {b}]", sign=1.0 if b > a else -1.0)


def _refine(f, lo, hi, rel_tol, abs_tol, max_subdivisions, order, where, sign=1.0):
    # rel_tol is measured against sum |panel integral|, a panel-resolution
    # estimate of int |f|; relative to |int f| it is unattainable when an
    # oscillatory integrand cancels to a tiny total
    length = float(np.sum(hi - lo))
    whole = _panel_sums(f, lo, hi, order)
    done_val = 0.0
    done_mag = 0.0
    done_err = 0.0
    used = 0
    while True:
        mid = 0.5 * (lo + hi)
        left = _panel_sums(f, lo, mid, order)
        right = _panel_sums(f, mid, hi, order)
        fine = left + right
        err = np.abs(fine - whole)
        total = done_val + fine.sum()
        mag = done_mag + np.abs(left).sum() + np.abs(right).sum()
        tol = max(abs_tol, rel_tol * mag)
        share = tol * (hi - lo) / length
        ok = err <= share
        done_val += fine[ok].sum()
        done_mag += np.abs(left[ok]).sum() + np.abs(right[ok]).sum()
        done_err += err[ok].sum()
        if ok.all():
            return sign * float(done_val), float(done_err)
        bad = ~ok
        used += int(bad.sum())
        if used > max_subdivisions:
            raise QuadratureError(
                f"adaptive quadrature on {where} exceeded {max_subdivisions} subdivisions",
                estimate=sign * float(total),
                error=float(done_err + err[bad].sum()),
            )
        lo = np.concatenate([lo[bad], mid[bad]])
        hi = np.concatenate([mid[bad], hi[bad]])
        whole = np.concatenate([left[bad], right[bad]])


def graded(f_u, width, levels=40, order=20, rel_tol=1e-10, abs_tol=1e-13, max_subdivisions=400):
    """Integrate ``f_u`` over ``(0, width]`` on a dyadic mesh graded toward 0.

    Cells are ``[width 2^-(j+1), width 2^-j]`` for ``j < levels``; each is
    refined adaptively, which handles oscillatory integrands in the wide
    outer cells. The innermost cell ``[0, width 2^-levels]`` holds the
    singularity and gets a fixed rule, its error estimated against a rule of
    order ``order + 8``; :class:`QuadratureError` if that estimate misses the
    tolerance. Returns ``(value, error_estimate)``.
    """
    edges = width * 2.0 ** -np.arange(levels + 1)
    inner_lo = np.array([0.0])
    inner_hi = np.array([edges[-1]])
    coarse = float(_panel_sums(f_u, inner_lo, inner_hi, order)[0])
    inner = float(_panel_sums(f_u, inner_lo, inner_hi, order + 8)[0])
    outer, err = _refine(f_u, edges[1:].copy(), edges[:-1].copy(), rel_tol, abs_tol, max_subdivisions, order,
                         f"(0, {width}] graded layer")
    inner_err = abs(inner - coarse)
    if inner_err > max(abs_tol, rel_tol * (abs(outer) + abs(inner))):
        raise QuadratureError(
            f"innermost cell of the (0, {width}] graded layer missed tolerance ({inner_err:.3e}); raise levels",
            estimate=outer + inner,
            error=err + inner_err,
        )
    return outer + inner, err + inner_err


def integrate_interval(f, quad: QuadratureSpec = DEFAULT_QUAD):
    """Integrate over ``(-1, 1)`` allowing log singularities at both ends.

    ``f(x, 1 - x, 1 + x)`` receives the endpoint distances separately so they
    keep full relative precision inside the boundary layers. Returns
    ``(value, error_estimate)``.
    """
    m = quad.endpoint_margin
    layer = dict(levels=quad.graded_levels, order=quad.order, rel_tol=quad.rel_tol, abs_tol=quad.abs_tol,
                 max_subdivisions=quad.max_subdivisions)
    right, e_right = graded(lambda u: f(1.0 - u, u, 2.0 - u), m, **layer)
    left, e_left = graded(lambda u: f(-1.0 + u, 2.0 - u, u), m, **layer)
    bulk, e_bulk = adaptive(
        lambda x: f(x, 1.0 - x, 1.0 + x),
        -1.0 + m,
        1.0 - m,
        rel_tol=quad.rel_tol,
        abs_tol=quad.abs_tol,
        max_subdivisions=quad.max_subdivisions,
        order=quad.order,
    )
    return left + bulk + right, e_left + e_bulk + e_right
