"""Command-line front end: ``cauchy-well <subcommand> [options]``.

Exit codes: 0 success, 2 invalid configuration, 3 quadrature failure,
4 eigensolver failure. Diagnostics go to standard error; files are written to
``--out``. The pipeline is deterministic, so there is no seed option.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, references, specfun
from .errors import (
    ConvergenceError,
    DomainError,
    EigenSolverError,
    QuadratureError,
    SpectrumStructureError,
)
from .galerkin import METHODS, analytic_diagonal
from .operator import BasisIndex, Candidate, HypersingularLimitSpec, Parity, apply_basis, apply_oracle, trig_disproof_residual
from .pipeline import solve_spectrum
from .quadrature import QuadratureSpec
from .spectrum import (
    count_nodes,
    ground_state_approximant,
    report_to_json,
    synthesize,
    write_report_csv,
    write_sampled_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_QUADRATURE = 3
EXIT_EIGEN = 4

TABLE_DEFAULT_SIZES = {"I": [6, 12], "II": [30, 50, 100, 200, 400], "III": [2000]}
TABLE_III_LEVELS = list(range(1, 21)) + [30, 50, 100]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    block_size: int = 30
    parity: str = "both"
    levels: int = 6
    quad: QuadratureSpec = QuadratureSpec()
    output_dir: Path = Path(".")
    format: str = "csv"
    threads: int = 1
    method: str = "closed-form"

    def __post_init__(self):
        if self.block_size < 1:
            raise ConfigError(f"--size must be >= 1, got {self.block_size}")
        if self.levels < 1:
            raise ConfigError(f"--levels must be >= 1, got {self.levels}")
        cap = 2 * self.block_size if self.parity == "both" else self.block_size
        if self.levels > cap:
            raise ConfigError(f"--levels {self.levels} exceeds the {cap} levels available at --size {self.block_size}")
        if self.threads < 1:
            raise ConfigError("--threads must be >= 1 or 'auto'")


def _threads(text):
    if text == "auto":
        return os.cpu_count() or 1
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def _common(grid_default):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--size", type=int, default=30, help="basis functions per parity block (default 30)")
    p.add_argument("--parity", choices=["even", "odd", "both"], default="both")
    p.add_argument("--levels", type=int, default=6, help="number of levels to report (default 6)")
    p.add_argument("--quad-rel-tol", type=float, default=QuadratureSpec.rel_tol)
    p.add_argument("--endpoint-margin", type=float, default=QuadratureSpec.endpoint_margin)
    p.add_argument("--grid", type=int, default=grid_default, help="sample points")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--threads", type=_threads, default=1, help="worker threads or 'auto'")
    p.add_argument("--elements", choices=METHODS, default="closed-form",
                   help="matrix elements from the closed form or by quadrature")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cauchy-well", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("solve", parents=[_common(2001)], help="merged spectrum of the given block size")

    t = sub.add_parser("table", parents=[_common(2001)], help="reproduce a comparison table")
    t.add_argument("which", choices=["I", "II", "III"])
    t.add_argument("--sizes", type=int, nargs="+", default=None)

    e = sub.add_parser("eigfun", parents=[_common(2001)], help="sample one eigenfunction")
    e.add_argument("--level", type=int, default=1)

    d = sub.add_parser("disprove", parents=[_common(199)], help="residual of a trigonometric trial function")
    d.add_argument("which", choices=[c.value for c in Candidate])

    a = sub.add_parser("apply", parents=[_common(2001)], help="operator image of one basis function")
    a.add_argument("--k", type=int, default=None, help="mode index (default 0 even, 1 odd)")
    a.add_argument("--x", type=float, nargs="+", required=True)
    a.add_argument("--oracle", action="store_true", help="also evaluate the epsilon-limit oracle")

    s = sub.add_parser("specfun-eval", help="print Si(x) and Ci(x) (debugging)")
    s.add_argument("x", type=float, nargs="+")
    return parser


def _config(args) -> RunConfig:
    try:
        quad = QuadratureSpec(rel_tol=args.quad_rel_tol, endpoint_margin=args.endpoint_margin)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg = RunConfig(args.size, args.parity, args.levels, quad, args.out, args.format, args.threads, args.elements)
    _prepare_out(cfg.output_dir)
    return cfg


def _prepare_out(path: Path):
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {path}: {exc.strerror}") from None
    if not path.is_dir() or not os.access(path, os.W_OK | os.X_OK):
        raise ConfigError(f"output directory {path} is not writable")


def _write_rows(path: Path, fmt: str, header, rows, meta=None):
    if fmt == "json":
        doc = {"tool": "cauchy_well", "version": __version__, "rows": [dict(zip(header, r)) for r in rows]}
        if meta:
            doc.update(meta)
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])


def _f6(v):
    return f"{v:.6f}"


def cmd_solve(cfg: RunConfig) -> int:
    result = solve_spectrum(cfg.block_size, cfg.levels, cfg.parity, cfg.quad, cfg.method, cfg.threads)
    report = result.report
    if cfg.format == "json":
        target = cfg.output_dir / "spectrum.json"
        target.write_text(report_to_json(report, __version__) + "\n")
    else:
        target = cfg.output_dir / "spectrum.csv"
        write_report_csv(report, target)
    for lv, row in zip(report.levels, report.asymptotic):
        print(f"{lv.n:4d}  {lv.energy:.9f}  {lv.parity.value:4s}  rel.err {100 * row.relative_error:.4g}%")
    print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def _table_i(cfg, sizes):
    modes = [(Parity.EVEN if i % 2 == 0 else Parity.ODD, i // 2 + (i % 2)) for i in range(6)]
    rows = []
    diag = sorted(float(analytic_diagonal(p, k)) for p, k in modes)
    rows += [("diagonal", "computed", i, v, _f6(v)) for i, v in enumerate(diag, start=1)]
    rows += [("diagonal", "published", i, v, _f6(v)) for i, v in enumerate(references.DIAGONAL, start=1)]
    for size in sizes:
        energies = solve_spectrum(size, min(6, 2 * size), "both", cfg.quad, cfg.method, cfg.threads).report.energies
        rows += [(f"galerkin-{size}", "computed", i, v, _f6(v)) for i, v in enumerate(energies, start=1)]
        if size in references.LOWEST_SIX:
            pub = references.LOWEST_SIX[size]
            rows += [(f"galerkin-{size}", "published", i, v, _f6(v)) for i, v in enumerate(pub, start=1)]
    for tag, values in references.EXTERNAL_LEVELS.items():
        rows += [(tag, "published", i, v, _f6(v)) for i, v in enumerate(values, start=1)]
    return ["row", "source", "i", "value", "value_6dp"], rows


def _table_ii(cfg, sizes):
    rows = []
    for size in sizes:
        count = min(6, 2 * size)
        energies = solve_spectrum(size, count, "both", cfg.quad, cfg.method, cfg.threads).report.energies
        pub = references.SIZE_EVOLUTION.get(size)
        for n, v in enumerate(energies, start=1):
            ref = _f6(pub[n - 1]) if pub else ""
            diff = _f6(abs(round(v, 6) - pub[n - 1])) if pub else ""
            rows.append((size, n, v, _f6(v), ref, diff))
    return ["size", "n", "energy", "energy_6dp", "published_6dp", "abs_diff_6dp"], rows


def _table_iii(cfg, sizes):
    rows = []
    for size in sizes:
        wanted = [n for n in TABLE_III_LEVELS if n <= 2 * size]
        report = solve_spectrum(size, max(wanted), "both", cfg.quad, cfg.method, cfg.threads).report
        for n in wanted:
            lv = report.level(n)
            asym = report.asymptotic[n - 1]
            pub = references.LARGE_BLOCK_LEVELS.get(n)
            rows.append((
                size,
                n,
                lv.energy,
                asym.asymptotic,
                100.0 * asym.relative_error,
                repr(pub[2]) if pub else "",
                repr(pub[3]) if pub and pub[3] is not None else "",
                _f6(lv.energy),
                "yes" if lv.converged else "no",
            ))
    header = ["size", "n", "energy", "asymptotic", "rel_err_percent", "published_rel_err_percent",
              "external", "energy_6dp", "converged"]
    return header, rows


def cmd_table(cfg: RunConfig, which: str, sizes) -> int:
    sizes = sizes or TABLE_DEFAULT_SIZES[which]
    if any(s < 1 for s in sizes):
        raise ConfigError("--sizes must be positive")
    header, rows = {"I": _table_i, "II": _table_ii, "III": _table_iii}[which](cfg, sizes)
    target = cfg.output_dir / f"table_{which}.{cfg.format}"
    _write_rows(target, cfg.format, header, rows, {"table": which, "quadrature": cfg.quad.to_dict()})
    print(f"wrote {target} ({len(rows)} rows)", file=sys.stderr)
    return EXIT_OK


def cmd_eigfun(cfg: RunConfig, level: int, grid_points: int) -> int:
    if level < 1 or level > 2 * cfg.block_size:
        raise ConfigError(f"--level must lie in [1, {2 * cfg.block_size}]")
    if grid_points < 2:
        raise ConfigError("--grid must be >= 2")
    parity = Parity.EVEN if level % 2 == 1 else Parity.ODD
    result = solve_spectrum(cfg.block_size, 1, parity.value, cfg.quad, cfg.method, cfg.threads, vectors=True)
    pair = result.pairs[parity][(level - 1) // 2]
    grid = np.linspace(-1.0, 1.0, grid_points)
    sampled = synthesize(pair, grid, label=level)
    target = cfg.output_dir / f"eigfun_{level}.{cfg.format}"
    if cfg.format == "json":
        rows = list(zip(grid.tolist(), sampled.values.tolist()))
        _write_rows(target, "json", ["x", "value"], rows,
                    {"level": level, "energy": pair.value, "block_size": cfg.block_size})
    else:
        write_sampled_csv(sampled, target)
    line = f"level {level}: E={pair.value:.9f} nodes={count_nodes(sampled)} norm={sampled.normalization:.9f}"
    if level == 1:
        gap = float(np.max(np.abs(ground_state_approximant(grid) - sampled.values)))
        line += f" max|approximant-psi|={gap:.3g}"
    print(line)
    print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_disprove(cfg: RunConfig, which: str, grid_points: int) -> int:
    if grid_points < 101:
        raise ConfigError("--grid must be >= 101 for disprove")
    cand = Candidate.parse(which)
    grid = np.linspace(-0.99, 0.99, grid_points)
    energy, residuals = trig_disproof_residual(cand, grid, cfg.quad)
    target = cfg.output_dir / f"disprove_{cand.value}.{cfg.format}"
    if cfg.format == "json":
        _write_rows(target, "json", ["x", "residual"], list(zip(grid.tolist(), residuals.tolist())),
                    {"candidate": cand.value, "best_fit_E": energy})
    else:
        with open(target, "w", newline="") as fh:
            fh.write(f"# candidate={cand.value} best_fit_E={energy:.17g}\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "residual"])
            for x, r in zip(grid, residuals):
                writer.writerow([f"{x:.17g}", f"{r:.17g}"])
    j = int(np.argmax(residuals))
    print(f"{cand.value}: best_fit_E={energy:.9f} max_residual={residuals[j]:.6g} at x={grid[j]:+.4f}")
    print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_apply(args) -> int:
    if args.parity == "both":
        raise ConfigError("apply needs --parity even or --parity odd")
    parity = Parity.parse(args.parity)
    k = args.k if args.k is not None else (0 if parity is Parity.EVEN else 1)
    index = BasisIndex(parity, k)
    xs = np.array(args.x, dtype=float)
    values = np.atleast_1d(apply_basis(index, xs))
    header = ["x", "image"] + (["oracle"] if args.oracle else [])
    print(",".join(header))
    for x, v in zip(xs, values):
        cols = [f"{x:.17g}", f"{v:.17g}"]
        if args.oracle:
            cols.append(f"{apply_oracle(index.profile(), float(x), HypersingularLimitSpec()):.17g}")
        print(",".join(cols))
    return EXIT_OK


def cmd_specfun_eval(xs) -> int:
    print("x,Si,Ci")
    for x in xs:
        s, c = specfun.si_ci_pair(x)
        print(f"{x:.17g},{s:.17g},{c:.17g}")
    return EXIT_OK


def _dispatch(args) -> int:
    if args.command == "specfun-eval":
        return cmd_specfun_eval(args.x)
    if args.command == "apply":
        return cmd_apply(args)
    cfg = _config(args)
    if args.command == "solve":
        return cmd_solve(cfg)
    if args.command == "table":
        return cmd_table(cfg, args.which, args.sizes)
    if args.command == "eigfun":
        return cmd_eigfun(cfg, args.level, args.grid)
    if args.command == "disprove":
        return cmd_disprove(cfg, args.which, args.grid)
    raise ConfigError(f"unknown command {args.command}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except EigenSolverError as exc:
        print(f"error: eigensolver failure: {exc}", file=sys.stderr)
        return EXIT_EIGEN
    except SpectrumStructureError as exc:
        print(f"error: spectrum structure: {exc}", file=sys.stderr)
        return EXIT_EIGEN
    except (QuadratureError, ConvergenceError) as exc:
        print(f"error: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (ConfigError, DomainError, ValueError, KeyError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
