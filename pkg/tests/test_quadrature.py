"""Rule construction, finite integration, and the K-weighted driver."""

import math

import numpy as np
import pytest
import scipy.special as sps

from fhpt.errors import DomainError, IntegrationError
from fhpt.quadrature import (
    TruncationWarning,
    default_r_max,
    gauss_legendre,
    integrate_finite,
    integrate_semi_infinite_k_weight,
)


def test_single_point_rule():
    rule = gauss_legendre(1)
    assert rule.nodes[0] == 0.0
    assert rule.weights[0] == pytest.approx(2.0, abs=1e-15)


def test_nodes_sorted_symmetric_weights_sum():
    for order in (2, 5, 16, 101):
        rule = gauss_legendre(order)
        assert len(rule.nodes) == order
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.all(np.abs(rule.nodes) < 1.0)
        assert np.max(np.abs(rule.nodes + rule.nodes[::-1])) == 0.0
        assert abs(np.sum(rule.weights) - 2.0) < 1e-14


def test_monomial_exactness():
    # an m-point rule integrates degrees up to 2m - 1 exactly
    for order in (2, 8, 33, 64):
        rule = gauss_legendre(order)
        for deg in range(0, 2 * order, 2):
            exact = 2.0 / (deg + 1.0)
            got = float(np.dot(rule.weights, rule.nodes**deg))
            assert abs(got - exact) < 5e-13
        odd = float(np.dot(rule.weights, rule.nodes**3))
        assert abs(odd) < 1e-16


def test_matches_scipy_nodes():
    for order in (64, 256):
        rule = gauss_legendre(order)
        ref_x, ref_w = sps.roots_legendre(order)
        assert np.max(np.abs(rule.nodes - ref_x)) < 1e-14
        assert np.max(np.abs(rule.weights - ref_w)) < 1e-13


def test_rule_is_cached_and_readonly():
    a = gauss_legendre(17)
    assert gauss_legendre(17) is a
    with pytest.raises(ValueError):
        a.nodes[0] = 0.0


def test_rule_order_domain():
    with pytest.raises(DomainError):
        gauss_legendre(0)
    with pytest.raises(DomainError):
        gauss_legendre(4097)


def test_integrate_finite_classics():
    assert integrate_finite(np.sin, 0.0, np.pi) == pytest.approx(2.0, abs=1e-14)
    assert integrate_finite(np.exp, 0.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-14)
    assert integrate_finite(lambda x: x * 0.0 + 1.0, -3.0, 7.0) == pytest.approx(10.0, rel=1e-15)


def test_integrate_finite_rejects_bad_input():
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 0.0, math.inf)
    with pytest.raises(IntegrationError), np.errstate(divide="ignore"):
        integrate_finite(lambda x: 1.0 / (x * 0.0), 0.0, 1.0)


def test_default_r_max_floor_and_growth():
    assert default_r_max(0.0) == 30.0
    assert default_r_max(10.0) == 105.0


def _closed_moment(mu, nu, a=2.0):
    return (
        2.0 ** (mu - 1.0)
        * a ** (-mu - 1.0)
        * math.gamma(0.5 * (1.0 + mu + nu))
        * math.gamma(0.5 * (1.0 + mu - nu))
    )


@pytest.mark.parametrize(
    "mu,nu",
    [(1.5, 0.8), (3.0, 0.0), (5.5, 2.4), (0.5, 1.2), (10.2, 3.0), (21.5, 4.0)],
)
def test_k_weighted_moments_match_closed_form(mu, nu):
    got = integrate_semi_infinite_k_weight(
        lambda r: r**mu, nu, r_max=default_r_max(mu)
    )
    exact = _closed_moment(mu, nu)
    assert got == pytest.approx(exact, rel=1e-11)


def test_k_weighted_other_weight_scale():
    got = integrate_semi_infinite_k_weight(lambda r: r**2.0, 1.0, r_max=60.0, a=1.0)
    assert got == pytest.approx(_closed_moment(2.0, 1.0, a=1.0), rel=1e-11)


def test_k_weighted_warns_on_tight_cutoff():
    with pytest.warns(TruncationWarning):
        integrate_semi_infinite_k_weight(lambda r: r**8.0, 0.5, r_max=3.0)


def test_k_weighted_warns_near_divergence():
    # mu + 1 - nu = 0.01: the lower tail cannot be exhausted by mesh refinement
    with pytest.warns(TruncationWarning):
        integrate_semi_infinite_k_weight(lambda r: r**0.4, 1.39, r_max=30.0)


def test_k_weighted_rejects_bad_scale():
    with pytest.raises(DomainError):
        integrate_semi_infinite_k_weight(lambda r: r, 1.0, r_max=10.0, a=-1.0)
    with pytest.raises(DomainError):
        integrate_semi_infinite_k_weight(lambda r: r, 1.0, r_max=1e-7)
