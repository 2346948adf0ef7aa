"""CSV tables, manifest echo files, and matplotlib figures for CLI runs.

All numeric fields are serialised with 17 significant digits so a written
value round-trips to the exact float that produced it, and files are
written with fixed column orders and newlines: identical runs give
byte-identical tables.  Figures are rendered with a pinned hash salt and no
timestamp metadata, keeping repeated renders stable too.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

import numpy as np  # noqa: E402

from .harness import TrialResult, TrialStats  # noqa: E402

__all__ = [
    "fmt",
    "write_csv",
    "write_solution_table",
    "write_stats",
    "write_error_curve",
    "write_brownian_path",
    "write_manifest_echo",
    "render_error_curve",
]

plt.rcParams["svg.hashsalt"] = "itovolterra"


def fmt(x) -> str:
    """One numeric field: 17 significant digits, round-trip safe."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path: str, header: list[str], rows: Iterable[Iterable]) -> None:
    with open(path, "w", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(fmt(v) for v in row) + "\n")


def write_solution_table(path: str, trial: TrialResult) -> None:
    write_csv(
        path,
        ["zeta", "exact", "approx", "abs_error"],
        zip(trial.eval_points, trial.exact_values, trial.approx_values, trial.abs_errors),
    )


def write_stats(path: str, stats: Iterable[TrialStats]) -> None:
    write_csv(
        path,
        ["m", "mean", "std", "ci_lower", "ci_upper"],
        ((s.m, s.mean, s.std, s.ci_lower, s.ci_upper) for s in stats),
    )


def write_error_curve(path: str, trial: TrialResult) -> None:
    write_csv(path, ["zeta", "abs_error"], zip(trial.eval_points, trial.abs_errors))


def write_brownian_path(path: str, times: np.ndarray, values: np.ndarray) -> None:
    write_csv(path, ["t", "B"], zip(times, values))


def write_manifest_echo(path: str, manifest: Mapping[str, object]) -> None:
    """Flat ``key = value`` lines; the file parses back as a config file."""
    with open(path, "w", newline="") as f:
        f.write("# effective parameters of this run\n")
        for key, value in manifest.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            f.write(f"{key} = {value}\n")


def render_error_curve(path: str, trial: TrialResult, title: str) -> None:
    """Absolute error versus evaluation point, saved as a standalone figure."""
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    if np.all(trial.abs_errors > 0.0):
        ax.semilogy(trial.eval_points, trial.abs_errors, "o-", color="tab:red", ms=4)
    else:
        ax.plot(trial.eval_points, trial.abs_errors, "o-", color="tab:red", ms=4)
    ax.set_xlabel(r"$\zeta$")
    ax.set_ylabel("absolute error")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.4)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
