import numpy as np
import pytest

from itovolterra import (
    BrownianSampler,
    Problem1Params,
    ProblemSpec,
    SolverConfig,
    bernoulli_solution,
    collocation_points,
    problem1,
    residual_ocsc,
    solve_ocsc,
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


def test_collocation_points_paper_layout():
    np.testing.assert_allclose(
        collocation_points(4, 1.0), [0.1, 0.3, 0.5, 0.7, 0.9], atol=1e-15)
    np.testing.assert_array_equal(collocation_points(0, 1.0), [0.5])
    np.testing.assert_allclose(collocation_points(1, 2.0), [0.5, 1.5], atol=1e-15)


@pytest.mark.parametrize("m", [0, 1, 5, 12])
@pytest.mark.parametrize("T", [1.0, 2.5])
def test_collocation_points_interior_and_increasing(m, T):
    pts = collocation_points(m, T)
    assert pts.shape == (m + 1,)
    assert 0.0 < pts[0] and pts[-1] < T
    assert np.all(np.diff(pts) > 0.0)


def test_collocation_points_validation():
    with pytest.raises(ValueError):
        collocation_points(-1, 1.0)
    with pytest.raises(ValueError):
        collocation_points(2, 0.0)


@pytest.mark.parametrize("m", [0, 1, 4, 8])
def test_residual_vanishes_at_constant_projection(m):
    cfg = SolverConfig(m=m, ito_n=20)
    prob = constant_problem(0.37)
    h = z0_projection(ChelyshkovBasis(m), prob.Z0, cfg.horizon_T)
    res = residual_ocsc(prob, cfg, BrownianSampler(1), h)
    assert np.abs(res).max() <= 1e-10


def test_residual_at_zero_coefficients_is_minus_z0():
    cfg = SolverConfig(m=3, ito_n=5)
    res = residual_ocsc(constant_problem(1.0), cfg, BrownianSampler(2), np.zeros(4))
    np.testing.assert_allclose(res, -np.ones(4), atol=1e-15)


def test_residual_rejects_wrong_length():
    cfg = SolverConfig(m=3)
    with pytest.raises(ValueError):
        residual_ocsc(constant_problem(1.0), cfg, BrownianSampler(0), np.zeros(3))


def test_solved_drift_only_system_has_tiny_residual():
    prob = problem1(Problem1Params(gamma=0.0))
    cfg = SolverConfig(m=5, ito_n=10)
    sampler = BrownianSampler(3)
    sol = solve_ocsc(prob, cfg, sampler)
    assert sol.report.converged
    res = residual_ocsc(prob, cfg, sampler, sol.h)
    assert np.abs(res).max() <= cfg.newton.residual_tol
    assert np.abs(res).max() == sol.report.final_residual_norm


def test_constant_solution_reproduced():
    sol = solve_ocsc(constant_problem(0.1), SolverConfig(m=4, ito_n=10), BrownianSampler(9))
    dense = np.linspace(0.0, 1.0, 101)
    assert np.abs(np.asarray(sol.evaluate(dense)) - 0.1).max() <= 1e-10


def test_deterministic_reduction_matches_bernoulli_closed_form():
    params = Problem1Params(gamma=0.0)
    prob = problem1(params)
    exact = bernoulli_solution(GRID, params.alpha, params.beta, params.Z0)
    errs = {}
    for m in (4, 8):
        sol = solve_ocsc(prob, SolverConfig(m=m, ito_n=10), BrownianSampler(0))
        errs[m] = np.abs(np.asarray(sol.evaluate(GRID)) - exact).max()
    assert errs[8] <= 1e-5
    assert errs[8] < errs[4]


def test_deterministic_limit_is_seed_independent():
    prob = ProblemSpec(
        Z0=0.2, delta1=1.0, delta2=0.0,
        p=lambda eta, z: 0.5 * z, q=lambda eta, z: z,
        name="no-noise")
    cfg = SolverConfig(m=4, ito_n=10)
    a = solve_ocsc(prob, cfg, BrownianSampler(1))
    b = solve_ocsc(prob, cfg, BrownianSampler(2))
    np.testing.assert_array_equal(a.h, b.h)


def test_stochastic_errors_in_reference_magnitude_band():
    prob = problem1(Problem1Params())
    sampler = BrownianSampler(42)
    sol = solve_ocsc(prob, SolverConfig(m=4), sampler)
    exact = np.array([prob.exact(sampler, z) for z in GRID])
    errs = np.abs(np.asarray(sol.evaluate(GRID)) - exact)
    assert errs.max() <= 2e-2
    assert errs.mean() >= 1e-5


def test_horizon_mapping_keeps_constants():
    cfg = SolverConfig(m=3, ito_n=10, horizon_T=2.0)
    sol = solve_ocsc(constant_problem(0.4), cfg, BrownianSampler(5))
    dense = np.linspace(0.0, 2.0, 41)
    assert np.abs(np.asarray(sol.evaluate(dense)) - 0.4).max() <= 1e-10


def test_evaluate_domain_checked_and_scalar_friendly():
    sol = solve_ocsc(constant_problem(0.1), SolverConfig(m=2, ito_n=5), BrownianSampler(0))
    assert isinstance(sol.evaluate(0.5), float)
    with pytest.raises(ValueError):
        sol.evaluate(1.5)
    with pytest.raises(ValueError):
        sol.evaluate(-0.1)


def test_config_validation():
    for bad in (dict(m=-1), dict(quad_order=0), dict(ito_n=0), dict(horizon_T=0.0)):
        with pytest.raises(ValueError):
            SolverConfig(**bad)
