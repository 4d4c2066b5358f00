"""Command line entry point.

Every subcommand writes its results under ``--out``. Exit status is 0 on
success, 1 for invalid input and 2 for numerical failures.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import BUILD_ID
from .analysis import (
    histogram_vs_density,
    log_density_distance,
    sup_distance,
    variance_sweep,
)
from .density_recursion import default_dx, default_half_span, evolve, schedule_steps
from .drift import DriftSpec
from .em_simulator import (
    DEFAULT_BINS,
    Histogram,
    RunConfig,
    mean_path,
    simulate_ensemble,
    smoothed_step_size,
    terminal_histogram,
)
from .errors import NumericalError, ValidationError
from .fokker_planck import DEFAULT_QUAD_TOL, StationaryDensity
from .generator import gaussian_test_density, generator_estimate, generator_limit_reference, laplace_test_density
from .grid import DensityGrid
from .io import read_csv, write_csv, write_json
from .transforms import identity_check

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _pair(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return vals[0], vals[1]


def _log(values):
    with np.errstate(divide="ignore"):
        return np.log(values)


def _density_csv(path, grid: DensityGrid):
    return write_csv(path, ["x", "f", "log_f"], [grid.x, grid.values, _log(grid.values)])


def _grid_from_csv(path) -> DensityGrid:
    cols = read_csv(path)
    if "x" not in cols or "f" not in cols:
        raise ValidationError(f"{path} needs 'x' and 'f' columns")
    x = cols["x"]
    if len(x) < 3:
        raise ValidationError(f"{path} has too few rows")
    dx = (x[-1] - x[0]) / (len(x) - 1)
    return DensityGrid(float(x[-1]), float(dx), cols["f"], mass_tol=None)


def _reference(kind: str, k: float, N, quad_tol=DEFAULT_QUAD_TOL) -> StationaryDensity:
    if kind == "laplace":
        if N is not None:
            raise ValidationError("--N only applies to the smoothed density")
        return StationaryDensity.laplace(k)
    if N is None:
        raise ValidationError("the smoothed density needs --N")
    return StationaryDensity.smoothed(k, N, quad_tol)


def _drift(args) -> DriftSpec:
    if args.drift == "sign":
        if args.N is not None:
            raise ValidationError("--N requires --drift smooth")
        return DriftSpec.exact(args.k)
    if args.N is None:
        raise ValidationError("--drift smooth requires --N")
    return DriftSpec.smoothed(args.k, args.N)


def cmd_simulate(args) -> dict:
    drift = _drift(args)
    h = args.h
    if h is None:
        h = smoothed_step_size(drift.N) if drift.N else 0.001
    config = RunConfig(drift, h, args.T, args.paths, args.x0, args.seed)
    ens = simulate_ensemble(config)
    out = Path(args.out)
    if ens.values is not None and not args.no_paths_csv:
        n_paths, n_times = ens.values.shape
        write_csv(out / "paths.csv", ["path_id", "t", "x"],
                  [np.repeat(np.arange(n_paths), n_times), np.tile(ens.times, n_paths), ens.values.ravel()],
                  int_columns=(0,))
    hist = terminal_histogram(ens, args.bins, args.range)
    write_csv(out / "hist.csv", ["bin_left", "bin_right", "count", "density"],
              [hist.edges[:-1], hist.edges[1:], hist.counts, hist.density], int_columns=(2,))
    ref = StationaryDensity.laplace(drift.k) if drift.N is None else StationaryDensity.smoothed(drift.k, drift.N)
    xt = ens.terminal
    summary = {
        "command": "simulate",
        "config": {**config.to_dict(), "bins": args.bins, "range": [float(hist.edges[0]), float(hist.edges[-1])]},
        "terminal_mean": float(xt.mean()),
        "terminal_variance": float(np.var(xt, ddof=1)) if len(xt) > 1 else 0.0,
        "terminal_sd_of_mean": float(np.std(xt, ddof=1) / math.sqrt(len(xt))) if len(xt) > 1 else 0.0,
        "zero_crossings": {
            "mean": float(ens.zero_crossings.mean()),
            "min": int(ens.zero_crossings.min()),
            "max": int(ens.zero_crossings.max()),
        },
        "histogram_vs_stationary": histogram_vs_density(hist, ref, xt).to_dict(),
    }
    if ens.values is not None:
        summary["max_abs_mean_path"] = float(np.max(np.abs(mean_path(ens))))
    return summary


def cmd_evolve(args) -> dict:
    if args.k <= 0:
        raise ValidationError("k must be positive")
    n_total = schedule_steps(args.h, args.alpha)
    dx = args.dx if args.dx is not None else default_dx(args.h, args.k)
    L = args.L if args.L is not None else default_half_span(args.k, dx)
    snapshots = args.snapshots if args.snapshots else [n_total]
    snaps = evolve(args.h, args.k, args.alpha, snapshots, L=L, dx=dx, mass_tol=args.mass_tol)
    ref = StationaryDensity.laplace(args.k).on_grid(L, dx)
    out = Path(args.out)
    records = []
    for n, f in snaps:
        _density_csv(out / f"density_n{n}.csv", f)
        records.append({
            "n": n,
            "mass": f.mass(),
            "log_distance_to_laplace": log_density_distance(f, ref, args.window),
            "sup_distance_to_laplace": sup_distance(f, ref, args.window),
        })
    return {
        "command": "evolve-density",
        "config": {"k": args.k, "h": args.h, "alpha": args.alpha, "L": L, "dx": dx,
                   "schedule_steps": n_total, "snapshots": [n for n, _ in snaps],
                   "window": list(args.window), "mass_tol": args.mass_tol},
        "snapshots": records,
    }


def cmd_stationary(args) -> dict:
    ref = _reference(args.kind, args.k, args.N, args.quad_tol)
    grid = ref.on_grid(args.L, args.dx)
    out = Path(args.out)
    _density_csv(out / "density.csv", grid)
    record = {**ref.to_dict(), "mass": ref.integral(-math.inf, math.inf), "variance": ref.variance()}
    write_json(out / "stationary.json", record)
    return {"command": "stationary",
            "config": {"kind": args.kind, "k": args.k, "N": args.N, "L": args.L, "dx": args.dx,
                       "quad_tol": args.quad_tol},
            **record}


def cmd_compare(args) -> dict:
    out = Path(args.out)
    if args.hist is not None:
        if args.ref is None:
            raise ValidationError("--hist needs --ref")
        cols = read_csv(args.hist)
        edges = np.append(cols["bin_left"], cols["bin_right"][-1:])
        counts = cols["count"].astype(np.int64)
        hist = Histogram(edges, counts, cols["density"], int(counts.sum()))
        ref = _reference(args.ref, args.k, args.N)
        cmp = histogram_vs_density(hist, ref)
        centres = hist.centers
        ref_avg = np.array([ref.integral(a, b) for a, b in zip(edges[:-1], edges[1:])]) / hist.widths
        write_csv(out / "compare.csv", ["x", "a", "b", "abs_diff"],
                  [centres, hist.density, ref_avg, np.abs(hist.density - ref_avg)])
        return {"command": "compare", "config": {"hist": str(args.hist), "ref": args.ref, "k": args.k, "N": args.N},
                **cmp.to_dict()}
    if args.a is None:
        raise ValidationError("compare needs --a or --hist")
    a = _grid_from_csv(args.a)
    if args.b is not None:
        if args.ref is not None:
            raise ValidationError("give either --b or --ref, not both")
        b = _grid_from_csv(args.b)
    elif args.ref is not None:
        b = _reference(args.ref, args.k, args.N).on_grid(a.L, a.dx)
    else:
        raise ValidationError("compare needs --b or --ref")
    write_csv(out / "compare.csv", ["x", "a", "b", "abs_diff"],
              [a.x, a.values, b.values, np.abs(a.values - b.values)])
    return {
        "command": "compare",
        "config": {"a": str(args.a), "b": None if args.b is None else str(args.b), "ref": args.ref,
                   "k": args.k, "N": args.N, "window": list(args.window), "floor": args.floor},
        "sup_distance": sup_distance(a, b, args.window),
        "log_density_distance": log_density_distance(a, b, args.window, args.floor),
    }


def cmd_generator_check(args) -> dict:
    dx = args.dx if args.dx is not None else default_dx(args.h, args.k)
    if args.density == "gaussian":
        f, df, d2f = gaussian_test_density(args.var)
    else:
        f, df, d2f = laplace_test_density(args.k)
    grid = DensityGrid.from_function(f, args.L, dx)
    est = generator_estimate(grid, args.h, args.k)
    lo, hi = args.window
    x = grid.x
    keep = (np.abs(x) >= lo - 1e-12) & (np.abs(x) <= hi + 1e-12) & (x != 0)
    ref = generator_limit_reference(df, d2f, args.k, x[keep])
    err = np.abs(est[keep] - ref)
    write_csv(Path(args.out) / "generator.csv", ["x", "estimate", "reference", "abs_err"],
              [x[keep], est[keep], ref, err])
    return {
        "command": "generator-check",
        "config": {"density": args.density, "var": args.var, "k": args.k, "h": args.h, "dx": dx,
                   "L": args.L, "window": list(args.window)},
        "max_abs_err": float(err.max()),
        "max_abs_estimate": float(np.max(np.abs(est[keep]))),
    }


def cmd_fourier_check(args) -> dict:
    g, _, _ = gaussian_test_density(args.var)
    grid = DensityGrid.from_function(g, args.L, args.dx)
    samples = identity_check(grid, args.h, args.k, args.omegas)
    write_csv(Path(args.out) / "transform.csv", ["omega", "lhs_re", "lhs_im", "rhs", "residual"],
              [[s.omega for s in samples], [s.lhs.real for s in samples], [s.lhs.imag for s in samples],
               [s.rhs for s in samples], [s.residual for s in samples]])
    return {
        "command": "fourier-check",
        "config": {"var": args.var, "h": args.h, "k": args.k, "dx": args.dx, "L": args.L,
                   "omegas": list(args.omegas)},
        "max_residual": max(s.residual for s in samples),
    }


def cmd_variance_sweep(args) -> dict:
    if args.drift == "smooth":
        if args.N is None:
            raise ValidationError("--drift smooth requires --N")
        drift = DriftSpec.smoothed(1.0, args.N)
    else:
        if args.N is not None:
            raise ValidationError("--N requires --drift smooth")
        drift = DriftSpec.exact(1.0)
    base = RunConfig(drift, args.h, args.T, args.paths, args.x0, args.seed)
    result = variance_sweep(args.k_values, base)
    refs = [(StationaryDensity.laplace(k) if args.N is None else StationaryDensity.smoothed(k, args.N)).variance()
            for k, _ in result]
    write_csv(Path(args.out) / "variance.csv", ["k", "sample_variance", "stationary_variance"],
              [[k for k, _ in result], [v for _, v in result], refs])
    return {
        "command": "variance-sweep",
        "config": {**base.to_dict(), "k_values": list(args.k_values)},
        "variances": [{"k": k, "sample_variance": v, "stationary_variance": r} for (k, v), r in zip(result, refs)],
    }


def cmd_smooth_sweep(args) -> dict:
    exact = StationaryDensity.laplace(args.k)
    grid = exact.on_grid(args.L, args.dx)
    header, cols, records = ["x", "phi"], [grid.x, grid.values], []
    for N in args.N_values:
        ref = StationaryDensity.smoothed(args.k, N, args.quad_tol)
        g = ref.on_grid(args.L, args.dx)
        header.append(f"phi_N{N}")
        cols.append(g.values)
        records.append({**ref.to_dict(), "sup_distance_to_laplace": sup_distance(g, grid, args.window),
                        "mass": ref.integral(-math.inf, math.inf)})
    write_csv(Path(args.out) / "smooth.csv", header, cols)
    return {"command": "smooth-sweep",
            "config": {"k": args.k, "N_values": list(args.N_values), "L": args.L, "dx": args.dx,
                       "window": list(args.window), "quad_tol": args.quad_tol},
            "densities": records}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="signdrift", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=BUILD_ID)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--config", help="key=value file; flags take precedence")
        sp.set_defaults(func=fn)
        return sp

    sp = add("simulate", cmd_simulate, "Euler-Maruyama ensemble, paths and terminal histogram")
    sp.add_argument("--drift", choices=["sign", "smooth"], default="sign")
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--h", type=float, default=None, help="step; default 0.001, or 0.001/N when smoothed")
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--paths", type=int, default=500)
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bins", type=int, default=DEFAULT_BINS)
    sp.add_argument("--range", type=_pair, default=None, help="histogram range lo,hi")
    sp.add_argument("--no-paths-csv", action="store_true", help="skip paths.csv")

    sp = add("evolve-density", cmd_evolve, "recursive density propagation on a grid")
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=0.01)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--snapshots", type=_ints, default=None, help="indices, default the final step")
    sp.add_argument("--L", type=float, default=None)
    sp.add_argument("--dx", type=float, default=None)
    sp.add_argument("--window", type=_pair, default=(-2.0, 2.0))
    sp.add_argument("--mass-tol", type=float, default=1e-6)

    sp = add("stationary", cmd_stationary, "closed-form stationary density")
    sp.add_argument("--kind", choices=["laplace", "smooth"], default="laplace")
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--L", type=float, default=6.0)
    sp.add_argument("--dx", type=float, default=1e-3)
    sp.add_argument("--quad-tol", type=float, default=DEFAULT_QUAD_TOL)

    sp = add("compare", cmd_compare, "distances between densities or a histogram and a reference")
    sp.add_argument("--a", type=Path, default=None, help="density CSV (x,f)")
    sp.add_argument("--b", type=Path, default=None, help="second density CSV on the same grid")
    sp.add_argument("--hist", type=Path, default=None, help="hist.csv from simulate")
    sp.add_argument("--ref", choices=["laplace", "smooth"], default=None)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--window", type=_pair, default=(-2.0, 2.0))
    sp.add_argument("--floor", type=float, default=1e-12)

    sp = add("generator-check", cmd_generator_check, "finite-h generator estimate vs its limit")
    sp.add_argument("--density", choices=["gaussian", "laplace"], default="gaussian")
    sp.add_argument("--var", type=float, default=1.0)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.add_argument("--dx", type=float, default=None, help="default hk/10")
    sp.add_argument("--L", type=float, default=8.0)
    sp.add_argument("--window", type=_pair, default=(0.5, 3.0), help="range of |x|")

    sp = add("fourier-check", cmd_fourier_check, "Fourier identity residuals for a Gaussian")
    sp.add_argument("--var", type=float, default=0.25)
    sp.add_argument("--h", type=float, default=0.01)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--omegas", type=_floats, default=[0.0, 1.0, 5.0, 10.0])
    sp.add_argument("--dx", type=float, default=1e-3)
    sp.add_argument("--L", type=float, default=6.0)

    sp = add("variance-sweep", cmd_variance_sweep, "terminal variance for several gains")
    sp.add_argument("--k-values", type=_floats, default=[1.0, 2.0, 3.0, 4.0])
    sp.add_argument("--drift", choices=["sign", "smooth"], default="sign")
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--h", type=float, default=0.001)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--paths", type=int, default=5000)
    sp.add_argument("--x0", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("smooth-sweep", cmd_smooth_sweep, "smoothed-drift stationary densities for several N")
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--N-values", type=_ints, default=[1, 10, 100, 1000, 10000])
    sp.add_argument("--L", type=float, default=3.0)
    sp.add_argument("--dx", type=float, default=1e-3)
    sp.add_argument("--window", type=_pair, default=(-3.0, 3.0))
    sp.add_argument("--quad-tol", type=float, default=DEFAULT_QUAD_TOL)
    return p


def read_config(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        cfg = read_config(args.config)
        for key, value in cfg.items():
            if key not in known or key in ("help", "out", "config", "func"):
                raise ValidationError(f"unknown config key {key!r}")
            if isinstance(known[key], argparse._StoreTrueAction):
                cfg[key] = value.lower() in ("1", "true", "yes", "on")
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def run(argv=None) -> int:
    try:
        args = parse_args(sys.argv[1:] if argv is None else list(argv))
        summary = args.func(args)
        write_json(Path(args.out) / "summary.json", summary)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
