"""Galerkin matrices of the Cauchy operator in the cosine (even) and sine (odd) bases.

The element for modes ``k``, ``i`` of one parity is

    M[k, i] = int_{-1}^{1} (A phi_k)(x) phi_i(x) dx .

Two routes are provided:

* quadrature of the closed-form image ``A phi_k`` against ``phi_i`` (the
  reference; boundary layers on a graded mesh because the image diverges
  like ``ln(1 -+ x)``);
* a closed form. Integrating by parts twice turns the element into
  ``-(1/pi) int int phi_i'(x) phi_k'(t) ln|x - t| dx dt``, and for exponentials
  that double integral reduces to Si and Ci at multiples of pi. This route is
  O(1) per element and is what makes blocks of a few thousand rows cheap.

Storage is zero-based for both parities: row ``j`` holds even mode ``j`` or
odd mode ``j + 1`` (see :func:`mode_of`).
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import ConvergenceError, QuadratureError
from .operator import BasisIndex, HypersingularLimitSpec, Parity, _image, apply_oracle
from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate_interval

__all__ = [
    "GalerkinBlock",
    "mode_of",
    "analytic_diagonal",
    "element",
    "element_with_error",
    "element_closed_form",
    "element_by_oracle",
    "closed_form_matrix",
    "assemble",
    "write_block_csv",
    "read_block_csv",
    "ORACLE_QUAD",
]

ORACLE_QUAD = QuadratureSpec(rel_tol=1e-9, abs_tol=1e-11, graded_levels=30, order=12)
METHODS = ("closed-form", "quadrature")
CLOSED_FORM_PANEL = 256


def mode_of(parity, j: int) -> int:
    """Mode index stored in zero-based row ``j``."""
    return j if Parity.parse(parity) is Parity.EVEN else j + 1


def _frequencies(parity, modes):
    modes = np.asarray(modes, dtype=float)
    if Parity.parse(parity) is Parity.EVEN:
        return (2.0 * modes + 1.0) * math.pi / 2.0
    return modes * math.pi


def analytic_diagonal(parity, k):
    """Diagonal element for mode(s) ``k``.

    Even: ``-2/pi + (2k+1) Si((2k+1) pi)``; odd: ``2k Si(2k pi)``.
    """
    parity = Parity.parse(parity)
    k = np.asarray(k, dtype=float)
    if parity is Parity.EVEN:
        m = 2.0 * k + 1.0
        out = -2.0 / math.pi + m * specfun.si_array(m * math.pi)
    else:
        out = 2.0 * k * specfun.si_array(2.0 * k * math.pi)
    return float(out) if out.ndim == 0 else out


def element_with_error(parity, k: int, i: int, quad: QuadratureSpec = DEFAULT_QUAD, use_analytic_diagonal=True):
    """Element by quadrature; returns ``(value, error_estimate)``.

    On the diagonal the closed-form value is returned (error 0) unless
    ``use_analytic_diagonal`` is false.
    """
    row = BasisIndex(parity, k)
    col = BasisIndex(parity, i)
    if k == i and use_analytic_diagonal:
        return analytic_diagonal(row.parity, k), 0.0
    try:
        return integrate_interval(lambda x, omx, opx: _image(row, x, omx, opx) * col(x), quad)
    except QuadratureError as exc:
        raise QuadratureError(
            f"element ({row.parity.value}, k={k}, i={i}): {exc}", estimate=exc.estimate, error=exc.error
        ) from exc


def element(parity, k: int, i: int, quad: QuadratureSpec = DEFAULT_QUAD, use_analytic_diagonal=True) -> float:
    """Galerkin element ``int (A phi_k) phi_i dx`` for mode indices ``k``, ``i``."""
    return element_with_error(parity, k, i, quad, use_analytic_diagonal)[0]


def element_by_oracle(
    parity, k: int, i: int, lim: HypersingularLimitSpec = HypersingularLimitSpec(), quad: QuadratureSpec = ORACLE_QUAD
) -> float:
    """Same element with ``A phi_k`` taken from the epsilon-limit oracle. Slow; small ``k``, ``i`` only."""
    row = BasisIndex(parity, k)
    col = BasisIndex(parity, i)
    profile = row.profile()

    def integrand(x, omx, opx):
        image = np.array([apply_oracle(profile, float(xj), lim) for xj in np.ravel(x)])
        return image * col(x)

    return integrate_interval(integrand, quad)[0]


def _cin_si_at(two_w):
    # Cin and Si at 2|w|; two_w > 0 always for this basis
    s, c = specfun.sici_array(two_w)
    return specfun.EULER_GAMMA + np.log(two_w) - c, s


class _LogMoments:
    """``int_0^2 ln(s) e^{i w s} ds`` and ``int_0^2 s ln(s) e^{i w s} ds`` for w = +-frequency."""

    def __init__(self, freqs):
        w = np.asarray(freqs, dtype=float)
        cin, si = _cin_si_at(2.0 * w)
        ln2 = math.log(2.0)
        e2 = np.exp(2j * w)
        # int_0^2 (e^{i w s} - 1)/s ds for w > 0 and its conjugate for -w
        tail_pos = -cin + 1j * si
        tail_neg = -cin - 1j * si
        self.lam = {}
        self.lam1 = {}
        for sign, tail, ww, ee in ((1, tail_pos, w, e2), (-1, tail_neg, -w, np.conj(e2))):
            lam = ln2 * (ee - 1.0) / (1j * ww) - tail / (1j * ww)
            f2 = ee * (2.0 / (1j * ww) + 1.0 / ww**2) - 1.0 / ww**2
            lam1 = ln2 * f2 + (ee - 1.0) / ww**2 - tail / ww**2
            self.lam[sign] = lam
            self.lam1[sign] = lam1


def _double_log_integral(alpha, beta, mom_a, mom_b, sa, sb):
    """``int int e^{i sa alpha x} e^{i sb beta t} ln|x - t| dx dt`` over the square.

    ``alpha``/``beta`` are positive frequency grids (broadcast), ``sa``/``sb``
    their signs, ``mom_a``/``mom_b`` the matching log moments.
    """
    a = sa * alpha
    b = sb * beta
    g = a + b
    lam_a = mom_a.lam[sa]
    lam_ma = mom_a.lam[-sa]
    lam_b = mom_b.lam[sb]
    lam_mb = mom_b.lam[-sb]
    zero = np.abs(g) < 1e-9 * (np.abs(a) + np.abs(b))
    with np.errstate(divide="ignore", invalid="ignore"):
        eg = np.exp(1j * g)
        out = (eg * (lam_mb + lam_ma) - np.conj(eg) * (lam_a + lam_b)) / (1j * g)
    if np.any(zero):
        lam1_a = np.broadcast_to(mom_a.lam1[sa], g.shape)
        lam1_ma = np.broadcast_to(mom_a.lam1[-sa], g.shape)
        la = np.broadcast_to(lam_a, g.shape)
        lma = np.broadcast_to(lam_ma, g.shape)
        out = np.where(zero, 2.0 * la - lam1_a + 2.0 * lma - lam1_ma, out)
    return out


def closed_form_matrix(parity, row_modes, col_modes):
    """Closed-form elements ``M[k, i]`` for all ``k`` in ``row_modes``, ``i`` in ``col_modes``."""
    parity = Parity.parse(parity)
    wk = _frequencies(parity, row_modes)[:, None]
    wi = _frequencies(parity, col_modes)[None, :]
    mk = _LogMoments(wk)
    mi = _LogMoments(wi)
    total = 0.0
    # phi' is -w sin(w x) (even) or w cos(w x) (odd); expand the product in exponentials
    for sa in (1, -1):
        for sb in (1, -1):
            term = _double_log_integral(wi, wk, mi, mk, sa, sb)
            coeff = -sa * sb if parity is Parity.EVEN else 1
            total = total + coeff * term
    total = total / 4.0
    return (-(wi * wk) / math.pi * total).real


def element_closed_form(parity, k: int, i: int) -> float:
    BasisIndex(parity, k)
    BasisIndex(parity, i)
    return float(closed_form_matrix(parity, [k], [i])[0, 0])


@dataclass
class GalerkinBlock:
    """Dense symmetric Galerkin matrix of one parity (zero-based storage)."""

    parity: Parity
    n: int
    entries: np.ndarray
    quad: QuadratureSpec = DEFAULT_QUAD
    analytic_diagonal: bool = True
    method: str = "closed-form"
    errors: np.ndarray | None = field(default=None, repr=False)

    @property
    def modes(self):
        return [mode_of(self.parity, j) for j in range(self.n)]

    def lower_triangle(self):
        return self.entries[np.tril_indices(self.n)]


def assemble(parity, n: int, quad: QuadratureSpec = DEFAULT_QUAD, method="closed-form", threads=1,
             use_analytic_diagonal=True) -> GalerkinBlock:
    """Assemble the ``n x n`` block of one parity.

    Only the lower triangle is computed and then mirrored, so symmetry is
    exact. ``method`` is ``"closed-form"`` (default) or ``"quadrature"``. Work
    is spread over ``threads`` worker threads (row panels for the closed
    form, single elements for quadrature).
    """
    parity = Parity.parse(parity)
    if int(n) != n or n < 1:
        raise ValueError(f"block size must be a positive integer, got {n}")
    n = int(n)
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    modes = np.array([mode_of(parity, j) for j in range(n)])
    errors = None
    if method == "closed-form":
        # row panels of the lower triangle; elementwise, so panelling does not change any value
        panels = [(r0, min(r0 + CLOSED_FORM_PANEL, n)) for r0 in range(0, n, CLOSED_FORM_PANEL)]

        def panel(bounds):
            r0, r1 = bounds
            return closed_form_matrix(parity, modes[r0:r1], modes[:r1])

        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(panel, panels))
        else:
            results = [panel(b) for b in panels]
        low = np.zeros((n, n))
        for (r0, r1), vals in zip(panels, results):
            low[r0:r1, :r1] = vals
        low = np.tril(low)
        entries = low + np.tril(low, -1).T
        if use_analytic_diagonal:
            entries[np.diag_indices(n)] = analytic_diagonal(parity, modes)
    else:
        pairs = [(r, c) for r in range(n) for c in range(r + 1)]

        def work(rc):
            r, c = rc
            return element_with_error(parity, int(modes[r]), int(modes[c]), quad, use_analytic_diagonal)

        if threads and threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(work, pairs))
        else:
            results = [work(rc) for rc in pairs]
        entries = np.zeros((n, n))
        errors = np.zeros((n, n))
        for (r, c), (val, err) in zip(pairs, results):
            entries[r, c] = entries[c, r] = val
            errors[r, c] = errors[c, r] = err
    return GalerkinBlock(parity, n, entries, quad, use_analytic_diagonal, method, errors)


def write_block_csv(block: GalerkinBlock, path):
    """Header ``parity,n,rel_tol`` then the lower triangle row-major, one value per line."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([block.parity.value, block.n, repr(block.quad.rel_tol)])
        for value in block.lower_triangle():
            writer.writerow([f"{value:.17g}"])


def read_block_csv(path) -> GalerkinBlock:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    parity, n, rel_tol = rows[0]
    n = int(n)
    values = np.array([float(r[0]) for r in rows[1:]])
    if values.size != n * (n + 1) // 2:
        raise ValueError(f"{path}: expected {n * (n + 1) // 2} values, found {values.size}")
    entries = np.zeros((n, n))
    entries[np.tril_indices(n)] = values
    entries = entries + np.tril(entries, -1).T
    quad = QuadratureSpec(rel_tol=float(rel_tol))
    return GalerkinBlock(Parity.parse(parity), n, entries, quad)
