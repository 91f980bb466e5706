"""Assemble, solve and merge in one call."""

from __future__ import annotations

from dataclasses import dataclass, field

from .eigensolver import EigenPair, EigenSolveOptions, eigh, eigvals_only
from .galerkin import GalerkinBlock, assemble
from .operator import Parity
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .spectrum import SpectrumReport, merge, single_parity

__all__ = ["SolveResult", "solve_spectrum", "parities_for"]


@dataclass
class SolveResult:
    report: SpectrumReport
    pairs: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)


def parities_for(parity) -> tuple:
    if str(parity).lower() == "both":
        return (Parity.EVEN, Parity.ODD)
    return (Parity.parse(parity),)


def solve_spectrum(size: int, levels: int, parity="both", quad: QuadratureSpec = DEFAULT_QUAD,
                   method="closed-form", threads=1, vectors=False) -> SolveResult:
    """Lowest ``levels`` energies from ``size x size`` blocks.

    ``parity`` is ``"both"`` (merged spectrum), ``"even"`` or ``"odd"``.
    Without ``vectors`` only the requested eigenvalues are computed, by
    bisection; with them every eigenpair of each block is returned.
    """
    which = parities_for(parity)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    cap = size * len(which)
    if levels > cap:
        raise ValueError(f"levels={levels} exceeds the {cap} eigenvalues available at size {size}")
    per_block = min(size, levels)
    pairs = {}
    blocks = {}
    for p in which:
        block: GalerkinBlock = assemble(p, size, quad, method=method, threads=threads)
        blocks[p] = block
        if vectors:
            pairs[p] = eigh(block, EigenSolveOptions(compute_vectors=True))
        else:
            values = eigvals_only(block, per_block)
            pairs[p] = [EigenPair(v, None, p, None, size) for v in values]
    if len(which) == 2:
        report = merge(pairs[Parity.EVEN][:per_block], pairs[Parity.ODD][:per_block], levels)
    else:
        report = single_parity(pairs[which[0]], which[0], levels)
    report.quad = quad.to_dict()
    return SolveResult(report, pairs, blocks)
