"""Command-line front end: solve the benchmark problems, write CSV tables
and matplotlib figures, and echo the effective configuration.

Flags may also be supplied through a flat ``key = value`` config file
(``#`` starts a comment); explicit flags override file values, which
override the built-in defaults.  Every run writes a ``manifest.echo`` in
the same format, so any run can be reproduced exactly with
``--config <out-dir>/manifest.echo``.

Outputs (in --out-dir):
  manifest.echo                    always
  solution_table.csv               single-m runs: zeta, exact, approx, abs_error
  stats.csv                        runs with >= 2 trials: m, mean, std, ci bounds
  error_curve.csv / .svg           single-m runs with --emit-plots
  error_curve_m<M>.csv / .svg      sweep runs with --emit-plots, one pair per m
  brownian_path.csv                with --dump-path: the first trial's path
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .benchmarks import Problem1Params, Problem2Params, problem1, problem2
from .collocation import SolverConfig
from .galerkin import GalerkinConfig
from .harness import SolveFailure, run_trial_detailed, t_interval, TrialStats
from . import reporting

__all__ = ["RunManifest", "build_parser", "run", "main"]

_DEFAULTS = {
    "problem": "problem1",
    "method": "ocsc",
    "m": None,
    "m_sweep": None,
    "quad_order": 16,
    "outer_quad_order": 16,
    "ito_n": 1000,
    "oracle_n": 10000,
    "horizon": 1.0,
    "trials": 1,
    "seed": 0,
    "out_dir": "out",
    "emit_plots": False,
    "dump_path": False,
}

_PROBLEMS = ("problem1", "problem2")
_METHODS = ("ocsc", "ocsg")


@dataclass(frozen=True)
class RunManifest:
    problem: str
    method: str
    m: Optional[int]
    m_sweep: Optional[str]
    quad_order: int
    outer_quad_order: int
    ito_n: int
    oracle_n: int
    horizon: float
    trials: int
    seed: int
    out_dir: str
    emit_plots: bool
    dump_path: bool

    def sweep_range(self) -> Optional[list[int]]:
        if self.m_sweep is None:
            return None
        lo, hi = _parse_sweep(self.m_sweep)
        return list(range(lo, hi + 1))


class ManifestError(ValueError):
    pass


def _parse_sweep(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ManifestError(f"invalid --m-sweep {text!r}: expected the form a:b")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ManifestError(f"invalid --m-sweep {text!r}: bounds must be integers") from None
    if lo < 0 or hi < lo:
        raise ManifestError(f"invalid --m-sweep {text!r}: need 0 <= a <= b")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="itovolterra",
        description="Solve the benchmark stochastic integral equations and "
        "write solution tables, trial statistics, and error figures.",
    )
    ap.add_argument("--problem", choices=_PROBLEMS, default=None,
                    help="benchmark problem to solve (default problem1)")
    ap.add_argument("--method", choices=_METHODS, default=None,
                    help="spectral scheme: collocation (ocsc) or Galerkin (ocsg)")
    ap.add_argument("--m", type=int, default=None,
                    help="basis degree cap; m+1 unknown coefficients (default 4)")
    ap.add_argument("--m-sweep", default=None, metavar="A:B",
                    help="run every m in the inclusive range A:B instead of a single m")
    ap.add_argument("--quad-order", type=int, default=None,
                    help="Gauss-Legendre order for drift integrals (default 16)")
    ap.add_argument("--outer-quad-order", type=int, default=None,
                    help="outer Gauss-Legendre order for Galerkin inner products (default 16)")
    ap.add_argument("--ito-n", type=int, default=None,
                    help="subintervals of the left-point Ito sum (default 1000)")
    ap.add_argument("--oracle-n", type=int, default=None,
                    help="trapezoid nodes per unit horizon in the problem1 exact oracle "
                    "(default 10000)")
    ap.add_argument("--horizon", type=float, default=None,
                    help="time horizon T (default 1.0)")
    ap.add_argument("--trials", type=int, default=None,
                    help="number of seeded trials; statistics need >= 2 (default 1)")
    ap.add_argument("--seed", type=int, default=None,
                    help="base seed; trial i uses seed + i (default 0)")
    ap.add_argument("--out-dir", default=None,
                    help="output directory, created if missing (default out)")
    ap.add_argument("--config", default=None, metavar="FILE",
                    help="flat key = value file supplying any of the above; "
                    "explicit flags win")
    ap.add_argument("--emit-plots", action="store_true", default=None,
                    help="also render error-curve figures (SVG)")
    ap.add_argument("--dump-path", action="store_true", default=None,
                    help="write the first trial's Brownian path as CSV")
    return ap


def _read_config(path: str) -> dict:
    values = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as exc:
        raise ManifestError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ManifestError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in _DEFAULTS:
            raise ManifestError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _coerce(key: str, value):
    if not isinstance(value, str):
        return value
    default = _DEFAULTS[key]
    if key in ("m", "m_sweep") and value == "":
        return None
    try:
        if key == "m":
            return int(value)
        if isinstance(default, bool):
            if value.lower() in ("true", "1", "yes"):
                return True
            if value.lower() in ("false", "0", "no"):
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise ManifestError(f"invalid value {value!r} for {key}") from None
    return value


def build_manifest(args: argparse.Namespace) -> RunManifest:
    merged = dict(_DEFAULTS)
    if args.config is not None:
        for key, value in _read_config(args.config).items():
            merged[key] = _coerce(key, value)
    for key in _DEFAULTS:
        flag = getattr(args, key)
        if flag is not None:
            merged[key] = flag
    if merged["m"] is not None and merged["m_sweep"] is not None:
        raise ManifestError("give either --m or --m-sweep, not both")
    if merged["m"] is None and merged["m_sweep"] is None:
        merged["m"] = 4
    manifest = RunManifest(**merged)
    if manifest.problem not in _PROBLEMS:
        raise ManifestError(f"unknown problem {manifest.problem!r}; "
                            f"choose from {', '.join(_PROBLEMS)}")
    if manifest.method not in _METHODS:
        raise ManifestError(f"unknown method {manifest.method!r}; "
                            f"choose from {', '.join(_METHODS)}")
    if manifest.m is not None and manifest.m < 0:
        raise ManifestError(f"m must be >= 0, got {manifest.m}")
    manifest.sweep_range()  # validates the a:b form
    for key in ("quad_order", "outer_quad_order", "ito_n", "trials"):
        if getattr(manifest, key) < 1:
            raise ManifestError(f"{key} must be >= 1, got {getattr(manifest, key)}")
    if manifest.oracle_n < 2:
        raise ManifestError(f"oracle_n must be >= 2, got {manifest.oracle_n}")
    if not manifest.horizon > 0.0:
        raise ManifestError(f"horizon must be > 0, got {manifest.horizon}")
    if manifest.m_sweep is not None and manifest.trials < 2:
        raise ManifestError("an m-sweep reports statistics and needs --trials >= 2")
    return manifest


def _manifest_echo_dict(manifest: RunManifest) -> dict:
    out = {}
    for key in _DEFAULTS:
        value = getattr(manifest, key)
        if value is None:
            continue
        out[key] = value
    return out


def _make_problem(manifest: RunManifest):
    if manifest.problem == "problem1":
        return problem1(Problem1Params(), oracle_n=manifest.oracle_n)
    return problem2(Problem2Params())


def _make_config(manifest: RunManifest, m: int) -> SolverConfig:
    if manifest.method == "ocsg":
        return GalerkinConfig(
            m=m,
            quad_order=manifest.quad_order,
            ito_n=manifest.ito_n,
            horizon_T=manifest.horizon,
            outer_quad_order=manifest.outer_quad_order,
        )
    return SolverConfig(
        m=m,
        quad_order=manifest.quad_order,
        ito_n=manifest.ito_n,
        horizon_T=manifest.horizon,
    )


def run(manifest: RunManifest) -> int:
    """Execute one manifest; returns the process exit status."""
    problem = _make_problem(manifest)
    ms = manifest.sweep_range() or [manifest.m]
    out_dir = manifest.out_dir
    os.makedirs(out_dir, exist_ok=True)

    stats_rows: list[TrialStats] = []
    first_sampler = None
    for m in ms:
        cfg = _make_config(manifest, m)
        trials = []
        for i in range(manifest.trials):
            trial, _, sampler = run_trial_detailed(
                problem, manifest.method, cfg, manifest.seed + i)
            trials.append(trial)
            if first_sampler is None:
                first_sampler = sampler
            print(f"{manifest.problem} {manifest.method} m={m} "
                  f"seed={trial.seed} mean_abs_error={trial.mean_abs_error:.6e}")
        if manifest.trials >= 2:
            mean, std, lo, hi = t_interval([t.mean_abs_error for t in trials])
            stats_rows.append(TrialStats(m, manifest.trials, mean, std, lo, hi))
        if manifest.m_sweep is None:
            reporting.write_solution_table(
                os.path.join(out_dir, "solution_table.csv"), trials[0])
            if manifest.emit_plots:
                title = f"{manifest.problem} {manifest.method} m={m}"
                reporting.write_error_curve(
                    os.path.join(out_dir, "error_curve.csv"), trials[0])
                reporting.render_error_curve(
                    os.path.join(out_dir, "error_curve.svg"), trials[0], title)
        elif manifest.emit_plots:
            title = f"{manifest.problem} {manifest.method} m={m}"
            reporting.write_error_curve(
                os.path.join(out_dir, f"error_curve_m{m}.csv"), trials[0])
            reporting.render_error_curve(
                os.path.join(out_dir, f"error_curve_m{m}.svg"), trials[0], title)

    if stats_rows:
        reporting.write_stats(os.path.join(out_dir, "stats.csv"), stats_rows)
    if manifest.dump_path and first_sampler is not None:
        times, values = first_sampler.known_points()
        reporting.write_brownian_path(
            os.path.join(out_dir, "brownian_path.csv"), times, values)
    reporting.write_manifest_echo(
        os.path.join(out_dir, "manifest.echo"), _manifest_echo_dict(manifest))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = build_manifest(args)
        return run(manifest)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolveFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
