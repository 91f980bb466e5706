"""Merged spectrum, eigenfunction sampling and comparison bookkeeping."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .eigensolver import EigenPair
from .errors import DomainError, SpectrumStructureError
from .galerkin import mode_of
from .operator import Parity

__all__ = [
    "Level",
    "AsymptoticRow",
    "SpectrumReport",
    "SampledFunction",
    "asymptotic_energy",
    "merge",
    "single_parity",
    "synthesize",
    "count_nodes",
    "ground_state_approximant",
    "GROUND_STATE_ALPHA",
    "GROUND_STATE_AMPLITUDE",
    "compare_references",
    "write_report_csv",
    "read_report_csv",
    "report_to_json",
    "write_sampled_csv",
]

GROUND_STATE_ALPHA = 1443.0 * math.pi / 4096.0
GROUND_STATE_AMPLITUDE = 0.921749
NODE_FLOOR = 1e-9
REPORT_COLUMNS = ["n", "energy", "parity", "block_size", "asymptotic", "rel_err_percent", "energy_6dp"]


def asymptotic_energy(n):
    """Large-``n`` law ``n pi / 2 - pi / 8``."""
    return n * math.pi / 2.0 - math.pi / 8.0


@dataclass(frozen=True)
class Level:
    n: int
    energy: float
    parity: Parity
    block_size: int
    parity_index: int = 0
    # low levels settle long before the block dimension; trust those with index <= size/4
    converged: bool = True


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    asymptotic: float
    abs_error: float
    relative_error: float


@dataclass
class SpectrumReport:
    levels: list
    asymptotic: list
    references: list = field(default_factory=list)
    quad: dict | None = None

    @property
    def energies(self):
        return [lv.energy for lv in self.levels]

    @property
    def block_sizes(self):
        return sorted({lv.block_size for lv in self.levels})

    def level(self, n: int) -> Level:
        for lv in self.levels:
            if lv.n == n:
                return lv
        raise KeyError(f"level {n} not in report")


@dataclass
class SampledFunction:
    grid: np.ndarray
    values: np.ndarray
    label: int
    normalization: float


def _entries(items, parity):
    out = []
    for item in items:
        if isinstance(item, EigenPair):
            out.append((item.value, item.block_size))
        else:
            value, size = item
            out.append((float(value), int(size)))
    values = [v for v, _ in out]
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValueError(f"{parity.value} eigenvalues must be sorted ascending")
    return out


def merge(even: Sequence, odd: Sequence, count: int) -> SpectrumReport:
    """Interleave even and odd eigenvalues into levels ``n = 1, 2, ...``.

    Items are :class:`EigenPair` or ``(value, block_size)`` tuples. Raises
    :class:`SpectrumStructureError` if the merged parities fail to alternate
    starting from even.
    """
    ev = _entries(even, Parity.EVEN)
    od = _entries(odd, Parity.ODD)
    if count > len(ev) + len(od):
        raise ValueError(f"asked for {count} levels but only {len(ev) + len(od)} eigenvalues supplied")
    tagged = [(v, Parity.EVEN, j, s) for j, (v, s) in enumerate(ev)]
    tagged += [(v, Parity.ODD, j, s) for j, (v, s) in enumerate(od)]
    tagged.sort(key=lambda t: t[0])
    levels = []
    rows = []
    for n, (value, parity, j, size) in enumerate(tagged[:count], start=1):
        expected = Parity.EVEN if n % 2 == 1 else Parity.ODD
        if parity is not expected:
            raise SpectrumStructureError(
                f"level {n} (E={value:.9g}) is {parity.value}; oscillation ordering requires {expected.value}"
            )
        levels.append(Level(n, value, parity, size, j, (j + 1) <= size / 4))
        asym = asymptotic_energy(n)
        rows.append(AsymptoticRow(n, asym, abs(value - asym), abs(value - asym) / value))
    for a, b in zip(levels, levels[1:]):
        if not b.energy > a.energy:
            raise SpectrumStructureError(f"levels {a.n} and {b.n} are not strictly increasing")
    return SpectrumReport(levels, rows)


def single_parity(pairs: Sequence, parity, count: int) -> SpectrumReport:
    """Report for one parity block alone.

    Labels assume the alternating order of the full spectrum: even level
    ``j`` is ``n = 2j + 1`` and odd level ``j`` is ``n = 2j + 2``.
    """
    parity = Parity.parse(parity)
    items = _entries(pairs, parity)
    if count > len(items):
        raise ValueError(f"asked for {count} levels but only {len(items)} eigenvalues supplied")
    offset = 1 if parity is Parity.EVEN else 2
    levels = []
    rows = []
    for j, (value, size) in enumerate(items[:count]):
        n = 2 * j + offset
        levels.append(Level(n, value, parity, size, j, (j + 1) <= size / 4))
        asym = asymptotic_energy(n)
        rows.append(AsymptoticRow(n, asym, abs(value - asym), abs(value - asym) / value))
    return SpectrumReport(levels, rows)


def _basis_matrix(parity, size, grid):
    modes = np.array([mode_of(parity, j) for j in range(size)])
    if parity is Parity.EVEN:
        freqs = (2 * modes + 1) * math.pi / 2
        return np.cos(np.outer(grid, freqs))
    return np.sin(np.outer(grid, modes * math.pi))


def synthesize(pair: EigenPair, grid, label: int = 0) -> SampledFunction:
    """Evaluate the trigonometric series of an eigenvector on ``grid``; exactly 0 at +-1."""
    if pair.vector is None or pair.parity is None:
        raise ValueError("synthesis needs an eigenpair with a vector and a parity")
    grid = np.asarray(grid, dtype=float)
    if np.any(np.abs(grid) > 1.0):
        raise DomainError("grid must lie within [-1, 1]")
    values = _basis_matrix(Parity.parse(pair.parity), len(pair.vector), grid) @ pair.vector
    values[np.abs(grid) == 1.0] = 0.0
    norm = math.sqrt(float(np.trapezoid(values**2, grid))) if grid.size > 1 else float("nan")
    return SampledFunction(grid, values, label, norm)


def count_nodes(f: SampledFunction) -> int:
    """Strict sign changes on the open interval, ignoring magnitudes below 1e-9."""
    interior = np.abs(f.grid) < 1.0
    v = f.values[interior]
    signs = np.sign(v[np.abs(v) >= NODE_FLOOR])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def ground_state_approximant(x):
    """Closed-form ground-state shape ``0.921749 sqrt((1 - x^2) cos(alpha x))``, alpha = 1443 pi/4096."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0):
        raise DomainError("approximant defined on [-1, 1]")
    radicand = (1.0 - xa**2) * np.cos(GROUND_STATE_ALPHA * xa)
    if np.any(radicand < 0.0):
        raise DomainError("negative radicand")
    out = GROUND_STATE_AMPLITUDE * np.sqrt(radicand)
    return float(out) if out.ndim == 0 else out


def compare_references(report: SpectrumReport, reference):
    """``[(n, |E - ref|, |E - ref| / |ref|)]`` for each ``(n, value, source_tag)``."""
    out = []
    for n, value, _tag in reference:
        try:
            energy = report.level(n).energy
        except KeyError:
            raise KeyError(f"reference level {n} is not in the report") from None
        diff = abs(energy - value)
        out.append((n, diff, diff / abs(value)))
    return out


def write_report_csv(report: SpectrumReport, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for lv, row in zip(report.levels, report.asymptotic):
            writer.writerow([
                lv.n,
                f"{lv.energy:.17g}",
                lv.parity.value,
                lv.block_size,
                f"{row.asymptotic:.17g}",
                f"{100.0 * row.relative_error:.17g}",
                f"{lv.energy:.6f}",
            ])


def read_report_csv(path) -> SpectrumReport:
    """Inverse of :func:`write_report_csv`; parity indices are recounted."""
    even = []
    odd = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            item = (float(rec["energy"]), int(rec["block_size"]))
            (even if rec["parity"] == "even" else odd).append(item)
    if not odd:
        return single_parity(even, Parity.EVEN, len(even))
    if not even:
        return single_parity(odd, Parity.ODD, len(odd))
    return merge(even, odd, len(even) + len(odd))


def report_to_json(report: SpectrumReport, version: str, extra=None) -> str:
    doc = {
        "tool": "cauchy_well",
        "version": version,
        "quadrature": report.quad,
        "levels": [{**asdict(lv), "parity": lv.parity.value} for lv in report.levels],
        "asymptotic": [asdict(r) for r in report.asymptotic],
        "references": report.references,
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True)


def write_sampled_csv(f: SampledFunction, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "value"])
        for x, v in zip(f.grid, f.values):
            writer.writerow([f"{x:.17g}", f"{v:.17g}"])
