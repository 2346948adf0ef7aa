"""Spectral Galerkin (OCSG) scheme: the discretised equation is tested
against each basis function in the L2 inner product with unit weight.

Because the basis is orthonormal under that weight, the unknown-side inner
products collapse to the coefficients themselves, and the system reads

    h_l = <Z0, phi_l> + d1 <int_0^t p(s, Z_m) ds, phi_l>
                      + d2 <int_0^t q(s, Z_m) dB(s), phi_l>.

The Z0 inner product is exact (monomial moments).  The drift term is a
nested quadrature: an outer Gauss-Legendre rule over [0, T] and, at each
outer node, an inner rule over [0, t].  The noise term applies the outer
rule to the left-point Ito sum evaluated at each outer node.  The outer and
inner orders are independent knobs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Optional

import numpy as np

from .basis import ChelyshkovBasis
from .collocation import (
    ProblemSpec,
    SolverConfig,
    SpectralSolution,
    _eval2,
    z0_projection,
)
from .nonlinear import solve_newton
from .quadrature import gauss_legendre
from .stochastic import BrownianSampler

__all__ = ["GalerkinConfig", "residual_ocsg", "solve_ocsg"]


@dataclass(frozen=True)
class GalerkinConfig(SolverConfig):
    """SolverConfig plus the order of the outer rule for the [0, T] integrals
    (quad_order is the inner rule for each drift integral over [0, t])."""

    outer_quad_order: int = 16

    def __post_init__(self):
        super().__post_init__()
        if self.outer_quad_order < 1:
            raise ValueError(f"outer_quad_order must be >= 1, got {self.outer_quad_order}")


class _GalerkinSystem:
    """Assembled OCSG residual for one problem, config, and Brownian path."""

    def __init__(self, problem: ProblemSpec, cfg: GalerkinConfig, sampler: BrownianSampler):
        self.problem = problem
        self.cfg = cfg
        self.basis = ChelyshkovBasis(cfg.m)
        T = cfg.horizon_T
        amp = 1.0 / sqrt(T)
        outer = gauss_legendre(cfg.outer_quad_order)
        inner = gauss_legendre(cfg.quad_order)
        n = cfg.ito_n

        self._z0_vec = problem.Z0 * sqrt(T) * self.basis.integrals()
        self._zeta = 0.5 * T * outer.nodes + 0.5 * T
        self._outer_w = 0.5 * T * outer.weights
        self._outer_tab = amp * self.basis.eval_many(self._zeta / T)
        self._inner_w = inner.weights
        self._drift_nodes = []
        self._drift_tabs = []
        self._ito_left = []
        self._ito_db = []
        self._ito_tabs = []
        for zr in self._zeta:
            eta = 0.5 * zr * inner.nodes + 0.5 * zr
            self._drift_nodes.append(eta)
            self._drift_tabs.append(amp * self.basis.eval_many(eta / T))
            times = np.linspace(0.0, zr, n + 1)
            b = sampler.sample_many(times)
            self._ito_left.append(times[:-1])
            self._ito_db.append(np.diff(b))
            self._ito_tabs.append(amp * self.basis.eval_many(times[:-1] / T))

    def residual(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        if h.shape != (self.cfg.m + 1,):
            raise ValueError(f"expected {self.cfg.m + 1} coefficients, got shape {h.shape}")
        pr = self.problem
        n_outer = self._zeta.size
        drift_at = np.empty(n_outer)
        noise_at = np.empty(n_outer)
        for r, zr in enumerate(self._zeta):
            z_drift = self._drift_tabs[r] @ h
            pv = _eval2(pr.p, self._drift_nodes[r], z_drift)
            drift_at[r] = 0.5 * zr * float(self._inner_w @ pv)
            z_ito = self._ito_tabs[r] @ h
            qv = _eval2(pr.q, self._ito_left[r], z_ito)
            noise_at[r] = float(qv @ self._ito_db[r])
        drift_vec = self._outer_tab.T @ (self._outer_w * drift_at)
        noise_vec = self._outer_tab.T @ (self._outer_w * noise_at)
        return h - self._z0_vec - pr.delta1 * drift_vec - pr.delta2 * noise_vec


def residual_ocsg(
    problem: ProblemSpec, cfg: GalerkinConfig, sampler: BrownianSampler, h: np.ndarray
) -> np.ndarray:
    """OCSG residual at coefficients h, one entry per basis function."""
    return _GalerkinSystem(problem, cfg, sampler).residual(h)


def solve_ocsg(
    problem: ProblemSpec,
    cfg: GalerkinConfig,
    sampler: BrownianSampler,
    x0: Optional[np.ndarray] = None,
) -> SpectralSolution:
    """Solve the OCSG system by Newton iteration from the Z0-projection guess.

    Shares the sampler contract of solve_ocsc: the sampler is mutated and
    must be reused for path-wise evaluation of the exact solution.
    """
    system = _GalerkinSystem(problem, cfg, sampler)
    if x0 is None:
        x0 = z0_projection(system.basis, problem.Z0, cfg.horizon_T)
    report = solve_newton(system.residual, x0, cfg.newton)
    return SpectralSolution(system.basis, report.solution, "OCSG", cfg, report)
