import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir import quadrature
from casimir.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod rule is exact for degree 22, Gauss for 13
    for deg in range(0, 23, 2):
        exact = 2.0 / (deg + 1)
        assert KRONROD_WEIGHTS @ NODES**deg == pytest.approx(exact, abs=1e-14)
    assert GAUSS_WEIGHTS @ NODES**12 == pytest.approx(2.0 / 13, abs=1e-14)


def test_bose_integral():
    r = quadrature.integrate(lambda x: x**3 * np.exp(-x) / -np.expm1(-x), 0.0, np.inf,
                             rel_tol=1e-12)
    assert r.converged
    assert r.value == pytest.approx(math.pi**4 / 15, rel=1e-12)


def test_gaussian_half_line():
    r = quadrature.integrate(lambda x: np.exp(-x * x), 0.0, np.inf, rel_tol=1e-12)
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)


def test_error_estimate_bounds_true_error():
    r = quadrature.integrate(lambda x: np.sqrt(x), 0.0, 1.0, rel_tol=1e-10)
    assert r.converged
    assert abs(r.value - 2.0 / 3.0) <= max(r.error, 1e-15)


def test_batch_matches_individual():
    a = np.array([0.0, 1.0, 2.0])
    b = np.array([1.0, 3.0, np.inf])

    def f(x, owner):
        return np.exp(-x) * (owner[:, None] + 1)

    res = quadrature.integrate_batch(f, a, b, rel_tol=1e-12)
    expect = [(1 - math.exp(-1)) * 1, (math.exp(-1) - math.exp(-3)) * 2, math.exp(-2) * 3]
    np.testing.assert_allclose(res.value, expect, rtol=1e-12)
    assert res.all_converged


def test_budget_exhaustion_reports_not_converged():
    r = quadrature.integrate(lambda x: np.sin(1 / np.maximum(x, 1e-300)), 0.0, 1.0,
                             rel_tol=1e-14, max_subdivisions=3)
    assert not r.converged


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 20.0), st.floats(-5.0, 5.0))
def test_exponential_family(lam, shift):
    r = quadrature.integrate(lambda x: np.exp(-lam * (x - shift)), shift, np.inf, rel_tol=1e-10)
    assert r.value == pytest.approx(1.0 / lam, rel=1e-9)
