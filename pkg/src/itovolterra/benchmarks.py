"""The two benchmark problems with closed-form path-wise solutions.

Problem 1 (geometric-type dynamics with a quadratic drift):

    Z(t) = Z0 + int_0^t (alpha Z + beta Z^2) ds + gamma int_0^t Z dB,
    Z(t) = exp((alpha - gamma^2/2) t + gamma B(t))
           / (1/Z0 - beta int_0^t exp((alpha - gamma^2/2) s + gamma B(s)) ds).

With gamma = 0 this collapses to the deterministic Bernoulli equation
Z' = alpha Z + beta Z^2, whose closed form serves as a high-precision
oracle for the solvers' deterministic limit.

Problem 2 (bounded trigonometric dynamics):

    Z(t) = Z0 + alpha^2 int_0^t cos(Z) sin^3(Z) ds - alpha int_0^t sin^2(Z) dB,
    Z(t) = arccot(alpha B(t) + cot(Z0)),

with the arccot branch taken in (0, pi) so Z is continuous in the path and
Z(0) = Z0.

Both exact solutions are functionals of the Brownian path; evaluating them
on the SAME sampler the solver used makes every error comparison path-wise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collocation import ProblemSpec
from .stochastic import BrownianSampler

__all__ = [
    "Problem1Params",
    "Problem2Params",
    "problem1",
    "problem2",
    "exact1",
    "exact2",
    "bernoulli_solution",
]

DEFAULT_ORACLE_N = 10_000


@dataclass(frozen=True)
class Problem1Params:
    alpha: float = 1.0 / 8.0
    beta: float = 1.0 / 32.0
    gamma: float = 1.0 / 20.0
    Z0: float = 1.0 / 10.0

    def __post_init__(self):
        if self.Z0 == 0.0:
            raise ValueError("Z0 must be nonzero (its reciprocal enters the exact solution)")


@dataclass(frozen=True)
class Problem2Params:
    alpha: float = 1.0 / 20.0
    Z0: float = 1.0 / 20.0

    def __post_init__(self):
        if not 0.0 < self.Z0 < np.pi:
            raise ValueError(f"Z0 must lie in (0, pi), got {self.Z0}")


def exact1(
    sampler: BrownianSampler,
    zeta: float,
    params: Problem1Params,
    oracle_n: int = DEFAULT_ORACLE_N,
) -> float:
    """Exact Problem-1 solution on the sampler's path.

    The path integral in the denominator is a composite trapezoid on
    oracle_n + 1 uniform nodes of [0, zeta]; its refinement error is damped
    by the beta/denominator^2 sensitivity and sits far below solver errors.
    """
    if oracle_n < 2:
        raise ValueError(f"oracle_n must be >= 2, got {oracle_n}")
    zeta = float(zeta)
    mu = params.alpha - 0.5 * params.gamma**2
    times = np.linspace(0.0, zeta, oracle_n + 1)
    b = sampler.sample_many(times)
    x = np.exp(mu * times + params.gamma * b)
    integral = float(np.trapezoid(x, times))
    denom = 1.0 / params.Z0 - params.beta * integral
    if abs(denom) < 1e-12:
        raise ArithmeticError(
            f"exact solution blows up near zeta={zeta}: denominator {denom:.3e}"
        )
    return float(x[-1]) / denom


def exact2(sampler: BrownianSampler, zeta: float, params: Problem2Params) -> float:
    """Exact Problem-2 solution arccot(alpha B(zeta) + cot(Z0)) on (0, pi)."""
    arg = params.alpha * sampler.sample(zeta) + 1.0 / np.tan(params.Z0)
    return float(0.5 * np.pi - np.arctan(arg))


def bernoulli_solution(zeta, alpha: float, beta: float, Z0: float):
    """Closed form of Z' = alpha Z + beta Z^2, Z(0) = Z0 (the gamma = 0
    deterministic reduction of Problem 1)."""
    zeta = np.asarray(zeta, dtype=float)
    if alpha == 0.0:
        denom = 1.0 / Z0 - beta * zeta
    else:
        denom = 1.0 / Z0 - (beta / alpha) * np.expm1(alpha * zeta)
    return np.exp(alpha * zeta) / denom


def problem1(params: Problem1Params, oracle_n: int = DEFAULT_ORACLE_N) -> ProblemSpec:
    """Problem 1 as a ProblemSpec; drift alpha*Z + beta*Z^2, diffusion
    gamma*Z, both unit-scaled (the constants live inside p and q)."""
    a, b, g = params.alpha, params.beta, params.gamma
    return ProblemSpec(
        Z0=params.Z0,
        delta1=1.0,
        delta2=1.0,
        p=lambda eta, z: a * z + b * z * z,
        q=lambda eta, z: g * z,
        exact=lambda sampler, zeta: exact1(sampler, zeta, params, oracle_n),
        name="problem1",
    )


def problem2(params: Problem2Params) -> ProblemSpec:
    """Problem 2 as a ProblemSpec; delta1 = alpha^2 scales the trigonometric
    drift and delta2 = -alpha the sin^2 diffusion."""
    a = params.alpha
    return ProblemSpec(
        Z0=params.Z0,
        delta1=a * a,
        delta2=-a,
        p=lambda eta, z: np.cos(z) * np.sin(z) ** 3,
        q=lambda eta, z: np.sin(z) ** 2,
        exact=lambda sampler, zeta: exact2(sampler, zeta, params),
        name="problem2",
    )
