import math

import numpy as np
import pytest

from itovolterra import (
    BrownianSampler,
    GalerkinConfig,
    Problem1Params,
    Problem2Params,
    ProblemSpec,
    SolverConfig,
    bernoulli_solution,
    problem1,
    problem2,
    residual_ocsg,
    solve_ocsc,
    solve_ocsg,
    z0_projection,
)
from itovolterra.basis import ChelyshkovBasis

GRID = np.linspace(0.1, 1.0, 10)


def constant_problem(z0):
    return ProblemSpec(
        Z0=z0, delta1=1.0, delta2=1.0,
        p=lambda eta, z: np.zeros_like(z),
        q=lambda eta, z: np.zeros_like(z),
        name="constant",
    )


def test_config_inherits_solver_fields():
    cfg = GalerkinConfig(m=3, outer_quad_order=8)
    assert isinstance(cfg, SolverConfig)
    assert cfg.quad_order == 16 and cfg.outer_quad_order == 8
    with pytest.raises(ValueError):
        GalerkinConfig(outer_quad_order=0)


@pytest.mark.parametrize("m", [0, 1, 4, 8])
def test_residual_vanishes_at_constant_projection(m):
    cfg = GalerkinConfig(m=m, ito_n=20)
    prob = constant_problem(0.37)
    h = z0_projection(ChelyshkovBasis(m), prob.Z0, cfg.horizon_T)
    res = residual_ocsg(prob, cfg, BrownianSampler(1), h)
    assert np.abs(res).max() <= 1e-10


def test_residual_at_zero_coefficients_equals_minus_moments():
    # With p = q = 0 and Z0 = 1 the system is h_l = int_0^1 phi_l, so at
    # h = 0 the residual is -(1/2, sqrt(3)/2) for the two-member basis.
    cfg = GalerkinConfig(m=1, ito_n=5)
    res = residual_ocsg(constant_problem(1.0), cfg, BrownianSampler(2), np.zeros(2))
    np.testing.assert_allclose(res, [-0.5, -math.sqrt(3.0) / 2.0], atol=1e-14)


def test_solved_drift_only_system_has_tiny_residual():
    prob = problem1(Problem1Params(gamma=0.0))
    cfg = GalerkinConfig(m=5, ito_n=10)
    sampler = BrownianSampler(3)
    sol = solve_ocsg(prob, cfg, sampler)
    assert sol.report.converged
    res = residual_ocsg(prob, cfg, sampler, sol.h)
    assert np.abs(res).max() <= cfg.newton.residual_tol


def test_orthonormality_collapse_gives_one_step_newton():
    # p = q = 0 makes the system h_l - <Z0, phi_l> = 0: affine with an
    # exactly diagonal FD Jacobian, so Newton lands in one step from zero.
    cfg = GalerkinConfig(m=4, ito_n=5)
    sampler = BrownianSampler(0)
    sol = solve_ocsg(constant_problem(0.8), cfg, sampler, x0=np.zeros(5))
    assert sol.report.converged
    assert sol.report.iterations == 1


def test_constant_solution_reproduced():
    sol = solve_ocsg(constant_problem(0.1), GalerkinConfig(m=4, ito_n=10), BrownianSampler(9))
    dense = np.linspace(0.0, 1.0, 101)
    assert np.abs(np.asarray(sol.evaluate(dense)) - 0.1).max() <= 1e-10


def test_projection_of_constant_is_exact_in_span():
    basis = ChelyshkovBasis(6)
    h = z0_projection(basis, 0.37, 1.0)
    dense = np.linspace(0.0, 1.0, 101)
    vals = basis.eval_many(dense) @ h
    assert np.abs(vals - 0.37).max() <= 1e-10


def test_deterministic_reduction_matches_bernoulli_closed_form():
    params = Problem1Params(gamma=0.0)
    prob = problem1(params)
    exact = bernoulli_solution(GRID, params.alpha, params.beta, params.Z0)
    errs = {}
    for m in (4, 8):
        sol = solve_ocsg(prob, GalerkinConfig(m=m, ito_n=10), BrownianSampler(0))
        errs[m] = np.abs(np.asarray(sol.evaluate(GRID)) - exact).max()
    assert errs[8] <= 1e-5
    assert errs[8] < errs[4]


def test_agrees_with_collocation_in_deterministic_limit():
    prob = ProblemSpec(
        Z0=0.1, delta1=1.0, delta2=0.0,
        p=lambda eta, z: 0.125 * z + 0.03125 * z * z,
        q=lambda eta, z: z,
        name="drift-only")
    colloc = solve_ocsc(prob, SolverConfig(m=8, ito_n=10), BrownianSampler(0))
    galerkin = solve_ocsg(prob, GalerkinConfig(m=8, ito_n=10), BrownianSampler(1))
    diff = np.abs(np.asarray(colloc.evaluate(GRID)) - np.asarray(galerkin.evaluate(GRID)))
    assert diff.max() <= 1e-4


def test_problem2_errors_within_reference_band():
    prob = problem2(Problem2Params())
    sampler = BrownianSampler(42)
    sol = solve_ocsg(prob, GalerkinConfig(m=6), sampler)
    exact = np.array([prob.exact(sampler, z) for z in GRID])
    errs = np.abs(np.asarray(sol.evaluate(GRID)) - exact)
    assert errs.max() <= 5e-3
