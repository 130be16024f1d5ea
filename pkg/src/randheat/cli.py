"""Command-line front end: CSV tables and path data from a run config.

Subcommands map one-to-one onto the library layers::

    paths     per-draw initial-condition paths on [L1, L2]
    density   one density curve CSV per truncation order
    moments   mean/variance table across orders
    converge  consecutive-order sup-norm differences (plus analytic bound)
    check     theorem-applicability report

Every file starts with a `#` metadata block carrying the config hash and the
seed, and a rerun with the same effective config is byte-identical.  Output
is CSV throughout: comma separators, `.` decimals, UTF-8, LF line endings.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import IO, List, Optional, Sequence

import numpy as np

from . import __version__
from .config import PRESET_NAMES, RunConfig, load_config, preset
from .density import (
    DensityCurve,
    coverage_grid,
    default_grid,
    density_uN_det,
    density_uN_random,
    tail_bound,
)
from .errors import ConfigError, RandHeatError, is_unavailable
from .hypotheses import classify
from .moments import moment_report
from .problem import boundary_line_for_draws
from .series import sample_uN_values  # noqa: F401  (re-export for scripts)

_FMT = "%.12g"


def _fmt(v: float) -> str:
    return _FMT % float(v)


def _meta_lines(cfg: RunConfig, fh: IO[str], **extra) -> None:
    fh.write(f"# config_hash = {cfg.config_hash()}\n")
    fh.write(f"# seed = {cfg.seed}\n")
    for key in sorted(extra):
        fh.write(f"# {key} = {extra[key]}\n")


def _open_out(cfg: RunConfig, name: str):
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return open(out / name, "w", encoding="utf-8", newline="\n")


def _run_grid(cfg: RunConfig) -> np.ndarray:
    """Shared evaluation grid for density/moments, honoring run.grid."""
    if cfg.grid.explicit:
        return np.linspace(cfg.grid.lo, cfg.grid.hi, cfg.grid.points)
    return default_grid(cfg.problem, cfg.x, cfg.t, max(cfg.N_list),
                        rng=cfg.seed, points=cfg.grid.points,
                        span=cfg.grid.span)


def _curve(cfg: RunConfig, N: int, grid: np.ndarray) -> DensityCurve:
    settings = cfg.engine_settings(seed_offset=N)
    if cfg.problem.has_random_bc:
        return density_uN_random(cfg.problem, cfg.x, cfg.t, N, grid, settings)
    return density_uN_det(cfg.problem, cfg.x, cfg.t, N, grid, settings)


def cmd_paths(cfg: RunConfig) -> List[str]:
    """Draw initial-condition paths, one CSV per draw.

    phi(x) = A + y (B - A) + psi(y) at y = (x - L1)/(L2 - L1), with the
    series cut at the process's default truncation; the sine basis vanishes
    at both ends, so the endpoint values are the boundary draws exactly.
    """
    p = cfg.problem
    rng = np.random.default_rng(cfg.seed)
    xs = np.linspace(p.L1, p.L2, cfg.grid.points)
    ys = p.spatial_map().to_unit(xs)
    J = p.psi.truncation_default
    js = np.arange(1, J + 1, dtype=float)
    amps = np.sqrt(2.0 * np.array([p.psi.eigenvalue(int(j)) for j in js]))
    basis = np.sin(np.pi * np.outer(ys, js))  # (points, J)
    written = []
    for k in range(cfg.paths):
        a = float(p.bc_A.dist.sample(rng)) if p.bc_A.is_random else p.bc_A.mean()
        b = float(p.bc_B.dist.sample(rng)) if p.bc_B.is_random else p.bc_B.mean()
        xi = p.psi.coeff_law.sample(rng, J)
        phi = boundary_line_for_draws(p, xs, a, b) + basis @ (amps * xi)
        # pin the endpoints against rounding in the boundary-line evaluation
        phi[0], phi[-1] = a, b
        name = f"path_{k + 1}.csv"
        with _open_out(cfg, name) as fh:
            _meta_lines(cfg, fh, draw=k + 1, truncation=J,
                        bc_A=_fmt(a), bc_B=_fmt(b))
            fh.write("x,phi\n")
            for xv, pv in zip(xs, phi):
                fh.write(f"{_fmt(xv)},{_fmt(pv)}\n")
        written.append(name)
    return written


def cmd_density(cfg: RunConfig) -> List[str]:
    grid = _run_grid(cfg)
    written = []
    for N in cfg.N_list:
        curve = _curve(cfg, N, grid)
        curve.metadata["config_hash"] = cfg.config_hash()
        curve.metadata["config_seed"] = str(cfg.seed)
        name = f"density_N{N}.csv"
        with _open_out(cfg, name) as fh:
            curve.to_csv(fh)
        written.append(name)
    return written


def cmd_moments(cfg: RunConfig) -> List[str]:
    grid = _run_grid(cfg)
    mc_samples = cfg.samples if cfg.estimator == "mc" else None
    rows = []
    for N in cfg.N_list:
        curve = _curve(cfg, N, grid)
        rows.append(moment_report(cfg.problem, cfg.x, cfg.t, N, curve,
                                  mc_samples=mc_samples,
                                  rng=cfg.seed + 7919 * N))
    with _open_out(cfg, "moments.csv") as fh:
        _meta_lines(cfg, fh, x=_fmt(cfg.x), t=_fmt(cfg.t),
                    estimator=cfg.estimator)
        if mc_samples is None:
            fh.write("N,mean,variance,grid_mass\n")
            for r in rows:
                fh.write(f"{r.N},{_fmt(r.mean_density)},"
                         f"{_fmt(r.var_density)},{_fmt(r.grid_mass)}\n")
        else:
            fh.write("N,mean,variance,grid_mass,mean_mc,mean_mc_se,"
                     "var_mc,var_mc_se\n")
            for r in rows:
                fh.write(f"{r.N},{_fmt(r.mean_density)},"
                         f"{_fmt(r.var_density)},{_fmt(r.grid_mass)},"
                         f"{_fmt(r.mean_mc)},{_fmt(r.mean_mc_se)},"
                         f"{_fmt(r.var_mc)},{_fmt(r.var_mc_se)}\n")
    return ["moments.csv"]


def cmd_converge(cfg: RunConfig) -> List[str]:
    """Sup-norm differences of consecutive orders on one shared wide grid."""
    orders = sorted(set(cfg.N_list))
    if len(orders) < 2:
        raise RandHeatError("converge needs at least two orders in run.N")
    grid = coverage_grid(cfg.problem, cfg.x, cfg.t, max(orders),
                         mass_tol=1e-6, points=max(cfg.grid.points, 2001))
    curves = {N: _curve(cfg, N, grid) for N in orders}
    with _open_out(cfg, "converge.csv") as fh:
        _meta_lines(cfg, fh, x=_fmt(cfg.x), t=_fmt(cfg.t),
                    grid_lo=_fmt(grid[0]), grid_hi=_fmt(grid[-1]),
                    grid_points=str(grid.size))
        fh.write("N,N_next,sup_diff,analytic_bound\n")
        for lo_n, hi_n in zip(orders[:-1], orders[1:]):
            diff = float(np.max(np.abs(curves[hi_n].values
                                       - curves[lo_n].values)))
            try:
                bound = tail_bound(cfg.problem, cfg.x, cfg.t, lo_n)
            except RandHeatError:
                bound = None
            bound_txt = ("" if bound is None or is_unavailable(bound)
                         else _fmt(bound))
            fh.write(f"{lo_n},{hi_n},{_fmt(diff)},{bound_txt}\n")
    return ["converge.csv"]


def cmd_check(cfg: RunConfig, out: IO[str]) -> None:
    report = classify(cfg.problem, cfg.t)
    out.write(report.render() + "\n\n")
    out.write("# machine-readable\n")
    out.write(f"config_hash = {cfg.config_hash()}\n")
    for key, value in report.to_kv():
        out.write(f"{key} = {value}\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="randheat",
        description="Density approximation tables for the randomized heat "
                    "equation")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, doc in (
            ("paths", "write per-draw initial-condition path CSVs"),
            ("density", "write one density-curve CSV per order"),
            ("moments", "write the mean/variance table"),
            ("converge", "write consecutive-order sup-difference table"),
            ("check", "print the theorem-applicability report")):
        sp = sub.add_parser(name, help=doc)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", help="TOML run configuration file")
        src.add_argument("--preset", choices=PRESET_NAMES,
                         help="built-in example configuration")
        sp.add_argument("--seed", type=int, help="override run.seed")
        sp.add_argument("--out", help="override output.directory")
        sp.add_argument("--estimator", choices=("quad", "mc"),
                        help="override run.estimator")
        sp.add_argument("--samples", type=int, help="override run.samples")
    return ap


def _effective_config(args: argparse.Namespace) -> RunConfig:
    if args.preset:
        cfg = preset(args.preset)
    else:
        cfg = load_config(args.config)
    raw = cfg.raw
    # overrides edit the raw dict first so the recorded hash matches what ran
    if args.seed is not None:
        raw.setdefault("run", {})["seed"] = int(args.seed)
        cfg.seed = int(args.seed)
    if args.out is not None:
        raw.setdefault("output", {})["directory"] = args.out
        cfg.out_dir = args.out
    if args.estimator is not None:
        raw.setdefault("run", {})["estimator"] = args.estimator
        cfg.estimator = args.estimator
    if args.samples is not None:
        raw.setdefault("run", {})["samples"] = int(args.samples)
        cfg.samples = int(args.samples)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _effective_config(args)
        if args.command == "check":
            cmd_check(cfg, sys.stdout)
            return 0
        runner = {"paths": cmd_paths, "density": cmd_density,
                  "moments": cmd_moments, "converge": cmd_converge}
        written = runner[args.command](cfg)
        for name in written:
            print(f"wrote {Path(cfg.out_dir) / name}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except RandHeatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
