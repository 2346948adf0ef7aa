"""Newton iteration with forward-difference Jacobians for small dense systems.

The residuals assembled by the spectral solvers embed quadrature sums and
Brownian increments; for a fixed path they are smooth in the unknown
coefficients, so finite differences are well posed and spare us analytic
derivatives.  The linear step uses an LU factorisation with partial
pivoting and fails loudly on a negligible pivot instead of returning a
garbage direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

__all__ = ["NewtonConfig", "NewtonReport", "fd_jacobian", "solve_newton"]

_EPS = float(np.finfo(float).eps)
_PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class NewtonConfig:
    residual_tol: float = 1e-12
    step_tol: float = 1e-12
    max_iter: int = 100
    fd_step_scale: float = _EPS**0.5

    def __post_init__(self):
        if min(self.residual_tol, self.step_tol, self.fd_step_scale) <= 0.0:
            raise ValueError("all tolerances must be > 0")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class NewtonReport:
    solution: np.ndarray
    iterations: int
    final_residual_norm: float
    converged: bool
    reason: str


def fd_jacobian(F, x: np.ndarray, fd_step_scale: float = _EPS**0.5) -> np.ndarray:
    """Forward-difference Jacobian, column j stepped by scale * max(1, |x_j|)."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(F(x), dtype=float)
    n = x.size
    J = np.empty((f0.size, n))
    for j in range(n):
        h = fd_step_scale * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        J[:, j] = (np.asarray(F(xp), dtype=float) - f0) / h
    return J


def solve_newton(F, x0: np.ndarray, cfg: NewtonConfig = NewtonConfig()) -> NewtonReport:
    """Iterate x <- x - J^{-1} F(x) from x0 until the residual max-norm or the
    step max-norm drops below tolerance.

    Never raises on non-convergence: the report carries converged=False and a
    reason instead, so callers can attach their own context (e.g. the trial
    seed) before giving up.
    """
    x = np.asarray(x0, dtype=float).copy()
    res_norm = float("inf")
    for it in range(cfg.max_iter + 1):
        fx = np.asarray(F(x), dtype=float)
        if fx.shape != x.shape:
            raise ValueError(f"F must map R^{x.size} to R^{x.size}, got {fx.shape}")
        res_norm = float(np.abs(fx).max())
        if res_norm <= cfg.residual_tol:
            return NewtonReport(x, it, res_norm, True, "residual tolerance met")
        if it == cfg.max_iter:
            break
        J = fd_jacobian(F, x, cfg.fd_step_scale)
        try:
            lu, piv = scipy.linalg.lu_factor(J, check_finite=False)
        except (ValueError, scipy.linalg.LinAlgError) as exc:
            return NewtonReport(x, it, res_norm, False, f"LU factorisation failed: {exc}")
        if np.abs(np.diag(lu)).min() < _PIVOT_TOL:
            return NewtonReport(x, it, res_norm, False, "singular Jacobian (pivot below 1e-14)")
        step = scipy.linalg.lu_solve((lu, piv), fx, check_finite=False)
        x = x - step
        if float(np.abs(step).max()) <= cfg.step_tol:
            fx = np.asarray(F(x), dtype=float)
            res_norm = float(np.abs(fx).max())
            converged = True
            return NewtonReport(x, it + 1, res_norm, converged, "step tolerance met")
    return NewtonReport(
        x, cfg.max_iter, res_norm, False,
        f"no convergence in {cfg.max_iter} iterations (residual {res_norm:.3e})",
    )
