"""Exact kernel quadrature weights, means and conditioning diagnostics."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from gkquad import gh_rule
from gkquad.errors import DomainError, IllConditionedError, SizeError
from gkquad.exact import exact_weights, kernel_mean, kernel_mean_mean, kernel_system
from gkquad.gauss_hermite import QuadratureRule
from gkquad.wce import worst_case_error


def gaussian_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


@pytest.mark.parametrize("ell", [0.2, 1.0, 4.0])
def test_kernel_mean_matches_quadrature(ell):
    for x0 in (-2.0, 0.0, 0.7, 3.5):
        val, _ = quad(
            lambda t: math.exp(-((x0 - t) ** 2) / (2.0 * ell * ell)) * gaussian_pdf(t),
            -np.inf,
            np.inf,
            limit=200,
        )
        assert abs(val - kernel_mean(ell, x0)) <= 1e-10


def test_kernel_mean_special_values_and_shapes():
    assert kernel_mean(1.0, 0.0) == 1.0 / math.sqrt(2.0)
    xs = np.array([-1.0, 0.0, 2.0])
    out = kernel_mean(0.5, xs)
    assert out.shape == (3,)
    assert out[1] == 0.5 / math.sqrt(1.25)
    assert np.all(out > 0.0)
    assert out.max() == out[1]


@pytest.mark.parametrize("ell", [0.2, 1.0, 4.0])
def test_initial_error_matches_quadrature_of_kernel_mean(ell):
    val, _ = quad(lambda x: kernel_mean(ell, x) * gaussian_pdf(x), -np.inf, np.inf, limit=200)
    assert abs(val - kernel_mean_mean(ell)) <= 1e-12


def test_initial_error_special_value():
    assert kernel_mean_mean(1.0) == 1.0 / math.sqrt(3.0)


def test_single_node_weight_is_mean_ratio():
    w, cond = exact_weights([0.0], 1.0)
    assert w.tolist() == [1.0 / math.sqrt(2.0)]
    assert cond == 1.0


@pytest.mark.parametrize("n", [2, 5, 8, 15])
def test_solution_satisfies_the_linear_system(n):
    nodes = gh_rule(n).nodes
    w, _ = exact_weights(nodes, 1.0)
    system = kernel_system(nodes, 1.0)
    resid = np.abs(system.kernel_matrix @ w - system.embedding_vector).max()
    assert resid <= 1e-14


def test_weights_minimize_worst_case_error():
    # The exact weights are the WCE minimizer for fixed nodes, so any
    # perturbation can only increase the error.
    nodes = gh_rule(8).nodes
    w, _ = exact_weights(nodes, 1.0)
    base = worst_case_error(QuadratureRule(nodes, w), 1.0).wce
    rng = np.random.default_rng(0)
    for _ in range(100):
        pert = w + rng.normal(scale=1e-3, size=w.size)
        alt = worst_case_error(QuadratureRule(nodes, pert), 1.0).wce
        assert alt >= base - 1e-12


def test_condition_estimate_grows_with_size():
    conds = [exact_weights(gh_rule(n).nodes, 1.0)[1] for n in (2, 8, 15, 30)]
    assert all(b > a for a, b in zip(conds, conds[1:]))
    assert conds[0] > 1.0


def test_wide_kernel_solve_is_rejected_not_regularized():
    with pytest.raises(IllConditionedError) as info:
        exact_weights(gh_rule(20).nodes, 4.0)
    assert info.value.condition_estimate >= 1e15


def test_failure_onset_by_length_scale():
    # Wider kernels lose positive definiteness at far smaller N.
    exact_weights(gh_rule(17).nodes, 4.0)
    with pytest.raises(IllConditionedError):
        exact_weights(gh_rule(18).nodes, 4.0)
    exact_weights(gh_rule(85).nodes, 1.0)
    with pytest.raises(IllConditionedError):
        exact_weights(gh_rule(86).nodes, 1.0)


def test_explicit_ridge_restores_solvability():
    nodes = gh_rule(20).nodes
    w, cond = exact_weights(nodes, 4.0, ridge=1e-10)
    assert np.all(np.isfinite(w))
    assert cond < 1e15
    # the ridge answer still integrates constants nearly exactly
    assert abs(w.sum() - 1.0) < 1e-2


def test_system_matrix_structure():
    nodes = np.array([-1.0, 0.25, 2.0])
    system = kernel_system(nodes, 0.7)
    K = system.kernel_matrix
    assert K.shape == (3, 3)
    assert np.array_equal(np.diag(K), np.ones(3))
    assert np.array_equal(K, K.T)
    assert system.embedding_vector.shape == (3,)
    assert system.condition_estimate >= 1.0
    with pytest.raises(Exception):
        K[0, 0] = 2.0
    with pytest.raises(Exception):
        system.embedding_vector[0] = 2.0


def test_guards():
    with pytest.raises(DomainError):
        kernel_mean(0.0, 1.0)
    with pytest.raises(DomainError):
        kernel_mean_mean(-2.0)
    with pytest.raises(DomainError):
        exact_weights([0.0, 0.0], 1.0)
    with pytest.raises(SizeError):
        exact_weights([], 1.0)
    with pytest.raises(SizeError):
        exact_weights(np.linspace(-1, 1, 201), 1.0)
    with pytest.raises(DomainError):
        exact_weights([0.0, 1.0], 1.0, ridge=-1e-3)
    with pytest.raises(DomainError):
        exact_weights([0.0, 1.0], 1.0, ridge=float("nan"))
