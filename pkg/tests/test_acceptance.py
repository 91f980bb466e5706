"""Acceptance criteria 1 to 9, each at its stated tolerance.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the pytest summary.
"""

import math
import time

import numpy as np
import pytest

from cauchy_well.eigensolver import EigenSolveOptions, eigh
from cauchy_well.galerkin import assemble, element
from cauchy_well.operator import BasisIndex, Candidate, apply_basis, apply_oracle, trig_disproof_residual
from cauchy_well.operator import Parity
from cauchy_well.references import LARGE_BLOCK_LEVELS, LOWEST_SIX, REFERENCE_GROUND_STATE, SIZE_EVOLUTION
from cauchy_well.specfun import sici_array
from cauchy_well.spectrum import count_nodes, ground_state_approximant, synthesize


def _secular_roots(a):
    n = a.shape[0]
    bound = np.abs(a).sum(axis=1).max() + 1.0
    xs = np.linspace(-bound, bound, 20001)
    det = np.array([np.linalg.det(a - x * np.eye(n)) for x in xs])
    roots = []
    for j in np.nonzero(det[:-1] * det[1:] < 0)[0]:
        lo, hi, flo = xs[j], xs[j + 1], det[j]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = np.linalg.det(a - mid * np.eye(n))
            if fm * flo > 0:
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return np.array(roots)


def test_criterion_1_matrix_element_goldens(criterion):
    goldens = {(0, 0): 1.21531728, (1, 0): 0.2773259, (2, 0): -0.2227035, (2, 1): 0.3088509}
    start = time.perf_counter()
    got = {ki: element("even", *ki) for ki in goldens}
    elapsed = time.perf_counter() - start
    worst = max(abs(got[ki] - v) for ki, v in goldens.items())
    ok = criterion(1, worst <= 1e-6 and elapsed < 1.0, f"max |diff| {worst:.2e} (tol 1e-6), {elapsed:.3f} s (< 1 s)")
    assert ok


def test_criterion_2_two_by_two_eigensystem(criterion):
    pairs = eigh(assemble("even", 2))
    values = [p.value for p in pairs]
    dv = max(abs(a - b) for a, b in zip(values, (1.191256, 4.411727)))
    published = np.array([-0.996257, 0.086437])
    v0 = pairs[0].vector
    dvec = min(np.abs(v0 - published).max(), np.abs(v0 + published).max())
    ok = criterion(2, dv <= 1e-5 and dvec <= 1e-5, f"values {dv:.1e}, vector {dvec:.1e} (tol 1e-5)")
    assert ok


def test_criterion_3_three_by_three(criterion):
    values = [p.value for p in eigh(assemble("even", 3))]
    d = max(abs(a - b) for a, b in zip(values, (1.1814891, 4.3854565, 7.569241)))
    assert criterion(3, d <= 1e-5, f"max |diff| {d:.1e} (tol 1e-5)")


def test_criterion_4_six_by_six_merged(criterion, solved):
    energies = solved(6, 6).report.energies
    d6 = max(abs(a - b) for a, b in zip(energies, LOWEST_SIX[6]))
    odd = [p.value for p in eigh(assemble("odd", 2))]
    d2 = max(abs(a - b) for a, b in zip(odd, (2.81019, 5.99476)))
    assert criterion(4, d6 <= 1e-5 and d2 <= 1e-4, f"merged 6x6 {d6:.1e} (tol 1e-5), odd 2x2 {d2:.1e} (tol 1e-4)")


def test_criterion_5_size_evolution(criterion, solved):
    worst = 0.0
    for size in (30, 50, 100, 200, 400):
        energies = solved(size, 6).report.energies
        worst = max(worst, max(abs(round(e, 6) - p) for e, p in zip(energies, SIZE_EVOLUTION[size])))
    e1 = solved(2000, 10).report.energies[0]
    d2000 = abs(e1 - SIZE_EVOLUTION[2000][0])
    ok = worst <= 2e-6 + 1e-12 and d2000 <= 1e-5
    assert criterion(5, ok, f"sizes 30-400 worst {worst * 1e6:.0f} last-digit units (tol 2), E1(2000) {d2000:.1e} (tol 1e-5)")


def _table_three_check(report):
    misses = []
    for n in range(1, 11):
        printed = LARGE_BLOCK_LEVELS[n][2]
        ours = 100.0 * report.asymptotic[n - 1].relative_error
        if abs(ours - printed) > 0.1 * printed:
            misses.append(f"n={n}: {ours:.3g}% vs {printed}%")
    return misses


def test_criterion_6_asymptotics_at_2000(criterion, solved):
    report = solved(2000, 10).report
    misses = _table_three_check(report)
    d1 = abs(report.energies[0] - REFERENCE_GROUND_STATE)
    detail = f"|E1 - 1.1577738| {d1:.1e} (tol 1e-4); rel-err column misses: {', '.join(misses) or 'none'}"
    assert criterion(6, not misses and d1 < 1e-4, detail)


@pytest.mark.slow
def test_criterion_6_supplement_at_5000(criterion, solved):
    # the printed relative-error column comes from a 5000-row block; same check at that size
    report = solved(5000, 10).report
    misses = _table_three_check(report)
    d3 = abs(report.energies[2] - 4.3168010)
    detail = f"size 5000 misses: {', '.join(misses) or 'none'}; |E3 - 4.3168010| {d3:.1e} (tol 1e-4)"
    assert criterion("6-supplement", not misses and d3 < 1e-4, detail)


def test_criterion_7_disproof(criterion):
    grid = np.linspace(-0.99, 0.99, 199)
    e_cos, r_cos = trig_disproof_residual(Candidate.COS_HALF, grid)
    e_sin, r_sin = trig_disproof_residual(Candidate.SIN_PI, grid)
    ok = (r_cos.max() >= 0.05 and r_sin.max() >= 0.05
          and abs(e_cos - 1.21531728) <= 1e-6 and abs(e_sin - 2.83630315) <= 1e-6)
    detail = (f"max residual cos {r_cos.max():.3f}, sin {r_sin.max():.3f} (>= 0.05); "
              f"E fit {e_cos:.8f}, {e_sin:.8f}")
    assert criterion(7, ok, detail)


def test_criterion_8_property_suite(criterion, solved, block):
    parts = {}
    # oracle vs closed form
    xs = np.linspace(-0.95, 0.95, 20)
    worst = 0.0
    for parity, ks in (("even", range(0, 6)), ("odd", range(1, 6))):
        for k in ks:
            index = BasisIndex(parity, k)
            prof = index.profile()
            worst = max(worst, max(abs(apply_oracle(prof, float(x)) - apply_basis(index, float(x))) for x in xs))
    parts["oracle"] = (worst <= 1e-8, f"oracle {worst:.1e}")
    # eigensolver vs secular determinant
    rng = np.random.default_rng(2024)
    worst = 0.0
    checked = 0
    while checked < 20:
        m = rng.uniform(-1, 1, (5, 5))
        a = (m + m.T) / 2
        ours = np.array([p.value for p in eigh(a, EigenSolveOptions(compute_vectors=False))])
        roots = _secular_roots(a)
        if roots.size != 5:
            continue
        worst = max(worst, np.abs(ours - roots).max())
        checked += 1
    parts["secular"] = (worst <= 1e-9, f"secular {worst:.1e}")
    # Rayleigh-Ritz monotonicity of six lowest, sizes 10 -> 30 -> 100
    seq = [solved(n, 6).report.energies for n in (10, 30, 100)]
    mono = all(b[i] <= a[i] + 1e-12 for a, b in zip(seq, seq[1:]) for i in range(6))
    parts["ritz"] = (mono, "ritz monotone" if mono else "ritz violated")
    # node law and orthonormality
    res = solved(30, 8, vectors=True)
    grid = np.linspace(-1, 1, 2001)
    nodes_ok = all(
        count_nodes(synthesize(res.pairs[Parity.EVEN if n % 2 else Parity.ODD][(n - 1) // 2], grid)) == n - 1
        for n in range(1, 9)
    )
    parts["nodes"] = (nodes_ok, "nodes n-1" if nodes_ok else "node law violated")
    ortho = 0.0
    for parity in (Parity.EVEN, Parity.ODD):
        v = np.stack([p.vector for p in res.pairs[parity]], axis=1)
        ortho = max(ortho, np.abs(v.T @ v - np.eye(v.shape[1])).max())
    parts["ortho"] = (ortho <= 1e-10, f"orthonormality {ortho:.1e}")
    # Si/Ci derivatives
    h = 1e-3
    worst = 0.0
    for x in np.random.default_rng(5).uniform(0.1, 50.0, 100):
        s, c = sici_array(x + h * np.array([-2.0, -1.0, 1.0, 2.0]))
        for vals, exact in ((s, math.sin(x) / x), (c, math.cos(x) / x)):
            fd = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
            worst = max(worst, abs(fd - exact) / max(abs(exact), 1e-3))
    parts["fd"] = (worst <= 1e-6, f"Si/Ci FD {worst:.1e}")
    ok = all(v[0] for v in parts.values())
    assert criterion(8, ok, "; ".join(v[1] for v in parts.values()))


def test_criterion_9_ground_state_approximant(criterion, solved):
    pair = solved(700, 1, "even", vectors=True).pairs[Parity.EVEN][0]
    grid = np.linspace(-1, 1, 2001)
    diff = np.abs(ground_state_approximant(grid) - synthesize(pair, grid).values)
    frac = float(np.mean(diff <= 0.005))
    worst = float(diff.max())
    where = float(grid[np.argmax(diff)])
    detail = f"max |diff| {worst:.4f} at x={where:+.3f} (tol 0.01); {100 * frac:.1f}% of grid within 0.005"
    assert criterion(9, worst <= 0.01, detail)
