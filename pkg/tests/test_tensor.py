"""Tensor-grid cubature, separability and the closed-form test integrand."""

import math

import numpy as np
import pytest

from gkquad import gh_rule, tensor_integrate, tensor_rule
from gkquad.errors import DomainError, EvaluationError, SizeError
from gkquad.gauss_hermite import QuadratureRule
from gkquad.tensor import (
    DIM_MAX,
    GRID_MAX,
    SeparableGaussianKernel,
    TensorRule,
    gaussian_poly_integrand,
)


def test_grid_weights_are_plain_products():
    f0, f1 = gh_rule(4), gh_rule(3)
    rule = tensor_rule([f0, f1])
    for idx, node, weight in rule.points():
        i, j = idx
        assert node == (f0.nodes[i], f1.nodes[j])
        assert weight == f0.weights[i] * f1.weights[j]


def test_enumeration_is_odometer_ordered_and_complete():
    rule = tensor_rule([gh_rule(2), gh_rule(3)])
    seen = [idx for idx, _, _ in rule.points()]
    assert seen == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert rule.size == 6
    assert rule.dimension == 2
    assert isinstance(rule, TensorRule)


def test_single_factor_reduces_to_the_base_rule():
    r = gh_rule(9)
    rule = tensor_rule([r])
    f, _ = gaussian_poly_integrand(1, [4], [0.8], 1.0)
    direct = math.fsum(w * f((x,)) for x, w in zip(r.nodes, r.weights))
    assert tensor_integrate(rule, f) == direct


def test_integral_factorizes_across_dimensions():
    # The cubature sum over the full grid must agree with the product of
    # the per-dimension sums; compensated summation keeps the two paths
    # within a unit or so of rounding of each other.
    powers, sharps, ell = (6, 4, 2), (1.5, 3.0, 0.5), 1.2
    f, _ = gaussian_poly_integrand(3, powers, sharps, ell)
    for n in (5, 9, 12):
        rule = tensor_rule([gh_rule(n)] * 3)
        tensored = tensor_integrate(rule, f)
        product = 1.0
        for mi, ci in zip(powers, sharps):
            g, _ = gaussian_poly_integrand(1, [mi], [ci], ell)
            r = gh_rule(n)
            product *= math.fsum(w * g((x,)) for x, w in zip(r.nodes, r.weights))
        assert abs(tensored - product) <= 4e-16 * abs(product)


def test_closed_form_integral_against_quadrature():
    f, exact = gaussian_poly_integrand(1, [6], [1.5], 1.2)
    r = gh_rule(60)
    q = math.fsum(w * f((x,)) for x, w in zip(r.nodes, r.weights))
    assert abs(q - exact) <= 1e-12


def test_odd_power_integral_is_literal_zero():
    f, exact = gaussian_poly_integrand(2, [3, 2], [1.0, 1.0], 1.0)
    assert exact == 0.0
    assert tensor_integrate(tensor_rule([gh_rule(7), gh_rule(5)]), f) == 0.0


def test_zero_power_closed_form():
    _, exact = gaussian_poly_integrand(2, [0, 0], [2.0, 0.3], 1.1)
    want = (1.0 + 2.0 / 1.21) ** -0.5 * (1.0 + 0.3 / 1.21) ** -0.5
    assert exact == want


def test_integrand_guards():
    with pytest.raises(DomainError):
        gaussian_poly_integrand(0, [], [], 1.0)
    with pytest.raises(DomainError):
        gaussian_poly_integrand(2, [1], [1.0, 1.0], 1.0)
    with pytest.raises(DomainError):
        gaussian_poly_integrand(1, [-2], [1.0], 1.0)
    with pytest.raises(DomainError):
        gaussian_poly_integrand(1, [2], [0.0], 1.0)
    with pytest.raises(DomainError):
        gaussian_poly_integrand(1, [2], [4.0], 1.0)
    with pytest.raises(DomainError):
        gaussian_poly_integrand(1, [2], [1.0], 0.0)


def test_non_finite_integrand_value_is_located():
    rule = tensor_rule([gh_rule(3), gh_rule(3)])

    def bad(x):
        return float("nan") if x[0] > 0 and x[1] > 0 else 1.0

    with pytest.raises(EvaluationError) as info:
        tensor_integrate(rule, bad)
    assert info.value.multi_index == (2, 2)


def test_dimension_and_grid_guards():
    with pytest.raises(SizeError):
        tensor_rule([])
    with pytest.raises(SizeError):
        tensor_rule([gh_rule(2)] * (DIM_MAX + 1))
    with pytest.raises(DomainError):
        tensor_rule([gh_rule(2), object()])
    assert tensor_rule([gh_rule(200)] * 3).size == 8_000_000 <= GRID_MAX
    with pytest.raises(SizeError):
        tensor_rule([gh_rule(200)] * 4)


def test_separable_kernel_values():
    k = SeparableGaussianKernel((1.0, 2.0))
    assert k.value((0.3, -1.0), (0.3, -1.0)) == 1.0
    a, b = (0.0, 0.0), (1.0, 2.0)
    assert k.value(a, b) == k.value(b, a)
    assert abs(k.value(a, b) - math.exp(-(0.5 + 0.5))) <= 1e-16
    with pytest.raises(DomainError):
        k.value((0.0,), (0.0, 1.0))
    with pytest.raises(DomainError):
        SeparableGaussianKernel(())
    with pytest.raises(DomainError):
        SeparableGaussianKernel((1.0, -2.0))


def test_tensor_rule_is_frozen():
    rule = tensor_rule([gh_rule(2)])
    with pytest.raises(Exception):
        rule.factors = ()
