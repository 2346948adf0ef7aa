"""Spectral collocation (OCSC) for nonlinear stochastic Ito-Volterra
integral equations

    Z(t) = Z0 + d1 * int_0^t p(s, Z(s)) ds + d2 * int_0^t q(s, Z(s)) dB(s).

The unknown is expanded as Z_m(t) = sum_j h_j phi_j(t) over the orthonormal
Chelyshkov basis, the drift integral is replaced by Gauss-Legendre
quadrature on [0, t], the noise integral by the left-point Ito sum, and the
discretised equation is enforced at the m+1 interior Newton-Cotes points
x_k = (2k+1) T / (2(m+1)).  The resulting (m+1)-dimensional nonlinear
system is solved by Newton iteration.

For a horizon T != 1 the basis is mapped affinely, phi_j(t/T) / sqrt(T),
which keeps the family orthonormal on [0, T].

All basis values and Brownian increments needed by the residual are frozen
once per system, so the residual is a smooth function of the coefficients
and Newton can meet tight residual tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Callable, Optional

import numpy as np

from .basis import ChelyshkovBasis
from .nonlinear import NewtonConfig, NewtonReport, solve_newton
from .quadrature import gauss_legendre
from .stochastic import BrownianSampler

__all__ = [
    "ProblemSpec",
    "SolverConfig",
    "SpectralSolution",
    "collocation_points",
    "residual_ocsc",
    "solve_ocsc",
]


@dataclass(frozen=True)
class ProblemSpec:
    """One integral-equation instance.

    p and q take (time, state) and should accept equal-shaped numpy arrays
    elementwise (scalar-only callables work too, at a speed penalty).  The
    optional exact oracle maps (sampler, zeta) to the exact solution on the
    sampler's path; it must be handed the same sampler the solver used for
    the comparison to be path-wise.
    """

    Z0: float
    delta1: float
    delta2: float
    p: Callable
    q: Callable
    exact: Optional[Callable] = None
    name: str = ""


@dataclass(frozen=True)
class SolverConfig:
    """Discretisation knobs: basis cap m (m+1 unknowns), drift quadrature
    order, Ito subdivision count, horizon, and Newton settings."""

    m: int = 4
    quad_order: int = 16
    ito_n: int = 1000
    horizon_T: float = 1.0
    newton: NewtonConfig = field(default_factory=NewtonConfig)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.quad_order < 1:
            raise ValueError(f"quad_order must be >= 1, got {self.quad_order}")
        if self.ito_n < 1:
            raise ValueError(f"ito_n must be >= 1, got {self.ito_n}")
        if not self.horizon_T > 0.0:
            raise ValueError(f"horizon_T must be > 0, got {self.horizon_T}")


@dataclass
class SpectralSolution:
    """Solved coefficient vector over the (horizon-mapped) basis."""

    basis: ChelyshkovBasis
    h: np.ndarray
    method_tag: str
    config: SolverConfig
    report: NewtonReport

    def __post_init__(self):
        self._poly = np.asarray(self.h, dtype=float) @ self.basis.coeffs

    def evaluate(self, zeta) -> np.ndarray | float:
        """Z_m(zeta) = (1/sqrt(T)) sum_j h_j phi_j(zeta/T) for zeta in [0, T]."""
        T = self.config.horizon_T
        z = np.asarray(zeta, dtype=float)
        if z.size and (z.min() < 0.0 or z.max() > T):
            raise ValueError(f"zeta must lie in [0, {T}]")
        u = z / T
        acc = np.zeros_like(u)
        for a in range(self._poly.size - 1, -1, -1):
            acc = acc * u + self._poly[a]
        acc = acc / sqrt(T)
        return float(acc) if np.isscalar(zeta) else acc


def collocation_points(m: int, T: float) -> np.ndarray:
    """Interior Newton-Cotes points x_k = (2k+1) T / (2(m+1)), k = 0..m."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if not T > 0.0:
        raise ValueError(f"T must be > 0, got {T}")
    k = np.arange(m + 1)
    return (2.0 * k + 1.0) * T / (2.0 * (m + 1.0))


def _eval2(f, t: np.ndarray, z: np.ndarray) -> np.ndarray:
    """f(t, z) elementwise, retrying pointwise for scalar-only callables."""
    try:
        out = np.asarray(f(t, z), dtype=float)
        if out.shape not in ((), t.shape):
            raise TypeError
    except (TypeError, ValueError):
        out = np.array([f(ti, zi) for ti, zi in zip(t, z)], dtype=float)
    return np.broadcast_to(out, t.shape)


def z0_projection(basis: ChelyshkovBasis, Z0: float, T: float) -> np.ndarray:
    """Coefficients of the constant Z0 in the horizon-mapped basis.

    Since the span contains constants, this reproduces Z0 exactly (up to
    rounding) and is the Newton starting guess for both schemes.
    """
    return Z0 * sqrt(T) * basis.integrals()


class _CollocationSystem:
    """Assembled OCSC residual for one problem, config, and Brownian path."""

    def __init__(self, problem: ProblemSpec, cfg: SolverConfig, sampler: BrownianSampler):
        self.problem = problem
        self.cfg = cfg
        self.basis = ChelyshkovBasis(cfg.m)
        T = cfg.horizon_T
        self._amp = 1.0 / sqrt(T)
        self.points = collocation_points(cfg.m, T)
        rule = gauss_legendre(cfg.quad_order)
        n = cfg.ito_n

        # Basis values at the collocation points.
        self._coll_tab = self._amp * self.basis.eval_many(self.points / T)
        # Per point: drift quadrature nodes on [0, x_k] and basis values there.
        self._drift_nodes = []
        self._drift_tabs = []
        self._drift_w = rule.weights
        # Per point: Ito partition left endpoints, increments, basis values.
        self._ito_left = []
        self._ito_db = []
        self._ito_tabs = []
        for xk in self.points:
            eta = 0.5 * xk * rule.nodes + 0.5 * xk
            self._drift_nodes.append(eta)
            self._drift_tabs.append(self._amp * self.basis.eval_many(eta / T))
            times = np.linspace(0.0, xk, n + 1)
            b = sampler.sample_many(times)
            self._ito_left.append(times[:-1])
            self._ito_db.append(np.diff(b))
            self._ito_tabs.append(self._amp * self.basis.eval_many(times[:-1] / T))

    def residual(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        if h.shape != (self.cfg.m + 1,):
            raise ValueError(f"expected {self.cfg.m + 1} coefficients, got shape {h.shape}")
        pr, cfg = self.problem, self.cfg
        out = np.empty(self.points.size)
        z_at_points = self._coll_tab @ h
        for k, xk in enumerate(self.points):
            z_drift = self._drift_tabs[k] @ h
            pv = _eval2(pr.p, self._drift_nodes[k], z_drift)
            drift = 0.5 * xk * float(self._drift_w @ pv)
            z_ito = self._ito_tabs[k] @ h
            qv = _eval2(pr.q, self._ito_left[k], z_ito)
            noise = float(qv @ self._ito_db[k])
            out[k] = z_at_points[k] - pr.Z0 - pr.delta1 * drift - pr.delta2 * noise
        return out


def residual_ocsc(
    problem: ProblemSpec, cfg: SolverConfig, sampler: BrownianSampler, h: np.ndarray
) -> np.ndarray:
    """OCSC residual at coefficients h: value-at-point minus Z0 minus the
    quadrature drift term minus the Ito noise term, one entry per
    collocation point."""
    return _CollocationSystem(problem, cfg, sampler).residual(h)


def solve_ocsc(
    problem: ProblemSpec,
    cfg: SolverConfig,
    sampler: BrownianSampler,
    x0: Optional[np.ndarray] = None,
) -> SpectralSolution:
    """Solve the OCSC system by Newton iteration from the Z0-projection guess.

    The sampler is mutated (it memoizes every queried time) and the same
    instance must be used for any later path-wise evaluation of the exact
    solution.  Non-convergence is surfaced through the returned report, not
    raised.
    """
    system = _CollocationSystem(problem, cfg, sampler)
    if x0 is None:
        x0 = z0_projection(system.basis, problem.Z0, cfg.horizon_T)
    report = solve_newton(system.residual, x0, cfg.newton)
    return SpectralSolution(system.basis, report.solution, "OCSC", cfg, report)
