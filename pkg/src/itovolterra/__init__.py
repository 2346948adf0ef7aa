"""Spectral solvers for nonlinear stochastic Ito-Volterra integral equations.

Two schemes over the orthonormal Chelyshkov polynomial basis on [0, 1]:
pointwise collocation at interior Newton-Cotes nodes (OCSC) and an
L2-Galerkin formulation (OCSG).  Both reduce the integral equation to a
small nonlinear algebraic system solved by Newton iteration, with the drift
integral handled by Gauss-Legendre quadrature and the noise integral by a
left-point Ito sum over a seeded, lazily refined Brownian path.
"""

from .basis import ChelyshkovBasis
from .quadrature import GaussRule, gauss_legendre, integrate
from .stochastic import BrownianSampler, ItoConfig, ito_integral
from .nonlinear import NewtonConfig, NewtonReport, fd_jacobian, solve_newton
from .collocation import (
    ProblemSpec,
    SolverConfig,
    SpectralSolution,
    collocation_points,
    residual_ocsc,
    solve_ocsc,
    z0_projection,
)
from .galerkin import GalerkinConfig, residual_ocsg, solve_ocsg
from .benchmarks import (
    Problem1Params,
    Problem2Params,
    bernoulli_solution,
    exact1,
    exact2,
    problem1,
    problem2,
)
from .harness import (
    DEFAULT_EVAL_POINTS,
    SolveFailure,
    TrialResult,
    TrialStats,
    convergence_sweep,
    run_trial,
    run_trial_detailed,
    run_trials,
    run_trials_detailed,
    t_interval,
)

__version__ = "0.1.0"

__all__ = [
    "ChelyshkovBasis",
    "GaussRule",
    "gauss_legendre",
    "integrate",
    "BrownianSampler",
    "ItoConfig",
    "ito_integral",
    "NewtonConfig",
    "NewtonReport",
    "fd_jacobian",
    "solve_newton",
    "ProblemSpec",
    "SolverConfig",
    "SpectralSolution",
    "collocation_points",
    "residual_ocsc",
    "solve_ocsc",
    "z0_projection",
    "GalerkinConfig",
    "residual_ocsg",
    "solve_ocsg",
    "Problem1Params",
    "Problem2Params",
    "bernoulli_solution",
    "exact1",
    "exact2",
    "problem1",
    "problem2",
    "DEFAULT_EVAL_POINTS",
    "SolveFailure",
    "TrialResult",
    "TrialStats",
    "convergence_sweep",
    "run_trial",
    "run_trial_detailed",
    "run_trials",
    "run_trials_detailed",
    "t_interval",
]
