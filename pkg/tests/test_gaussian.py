import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squeezebounds.gaussian import (
    evolve_moments,
    evolve_symplectic,
    moment_derivatives,
    probe_moments,
    rotation_matrix,
    squeeze_matrix,
    symplectic_factors,
)
from squeezebounds.params import ModelParams

lams = st.floats(-1.5, 1.5)
angles = st.floats(-4.0, 4.0)
amps = st.floats(0.0, 3.0)


def params():
    return st.builds(ModelParams, lams, lams, amps, angles, angles)


def test_identity_evolution():
    g = evolve_moments(ModelParams(alpha=1.0))
    assert np.allclose(g.mean, [math.sqrt(2), 0.0])
    assert np.allclose(g.cov, 0.5 * np.eye(2))


@pytest.mark.parametrize("l1, l2", [(0.3, 0.2), (1.0, -0.4), (0.0, 1.2)])
def test_no_scrambler(l1, l2):
    g = evolve_moments(ModelParams(l1, l2, 1.3, 0.7, 0.0))
    assert g.cov[0, 0] == pytest.approx(math.exp(2 * (l1 + l2)) / 2)
    assert g.cov[1, 1] == pytest.approx(math.exp(-2 * (l1 + l2)) / 2)
    assert g.cov[0, 1] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("l1, l2", [(0.3, 0.2), (1.0, -0.4)])
def test_quarter_turn_scrambler(l1, l2):
    g = evolve_moments(ModelParams(l1, l2, 1.3, 0.7, math.pi / 2))
    assert g.cov[0, 0] == pytest.approx(math.exp(2 * (l2 - l1)) / 2)
    assert g.cov[0, 1] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("phi, pairs", [
    (0.0, [((0.2, 0.5), (0.6, 0.1)), ((1.0, -0.3), (0.0, 0.7))]),
    (math.pi / 2, [((0.2, 0.5), (0.6, 0.9)), ((1.0, 1.3), (0.0, 0.3))]),
])
def test_sum_and_difference_dependence(phi, pairs):
    for (a1, a2), (b1, b2) in pairs:
        ga = evolve_moments(ModelParams(a1, a2, 0.8, 0.4, phi))
        gb = evolve_moments(ModelParams(b1, b2, 0.8, 0.4, phi))
        assert np.allclose(ga.mean, gb.mean, atol=1e-14)
        assert np.allclose(ga.cov, gb.cov, atol=1e-14)


def test_symplectic_factor_examples():
    assert np.array_equal(squeeze_matrix(0.0), np.eye(2))
    assert np.array_equal(rotation_matrix(0.0), np.eye(2))
    p = ModelParams(0.4, 0.2, 0.0, 0.0, 1.1)
    s2, r, s1 = symplectic_factors(p)
    m = s2 @ r @ s1
    assert np.allclose(m @ (0.5 * np.eye(2)) @ m.T, evolve_moments(p).cov, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(params())
def test_symplectic_path_matches_closed_forms(p):
    a, b = evolve_moments(p), evolve_symplectic(p)
    assert np.allclose(a.mean, b.mean, rtol=1e-12, atol=1e-12)
    assert np.allclose(a.cov, b.cov, rtol=1e-12, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(params())
def test_purity(p):
    g = evolve_moments(p)
    assert g.purity_det == pytest.approx(0.25, rel=1e-10)
    assert np.allclose(g.cov, g.cov.T)
    assert np.all(np.linalg.eigvalsh(g.cov) > 0)


@settings(max_examples=100, deadline=None)
@given(params(), lams, angles)
def test_cross_term_independent_of_lambda2_and_theta(p, l2, theta):
    a = evolve_moments(p).cov
    b = evolve_moments(p.replace(lambda2=l2, theta=theta)).cov
    assert a[0, 1] == b[0, 1]
    assert a[0, 0] * math.exp(-2 * p.lambda2) == pytest.approx(b[0, 0] * math.exp(-2 * l2))


@pytest.mark.parametrize("l1", [0.1, 0.5, 1.3])
def test_cross_term_maximal_at_quarter_turn(l1):
    phis = np.linspace(0, 2 * math.pi, 721)
    peak = abs(evolve_moments(ModelParams(lambda1=l1, phi=math.pi / 4)).cov[0, 1])
    for phi in phis:
        assert abs(evolve_moments(ModelParams(lambda1=l1, phi=phi)).cov[0, 1]) <= peak + 1e-15


def test_probe_moments():
    g = probe_moments(1.0, 0.0)
    assert np.allclose(g.mean, [math.sqrt(2), 0.0])


@settings(max_examples=60, deadline=None)
@given(params())
def test_moment_derivatives_against_finite_differences(p):
    h = 1e-6
    dmean, dcov = moment_derivatives(p)
    for j, name in enumerate(("lambda1", "lambda2")):
        base = getattr(p, name)
        up = evolve_moments(p.replace(**{name: base + h}))
        dn = evolve_moments(p.replace(**{name: base - h}))
        scale = 1 + np.max(np.abs(up.cov)) + np.max(np.abs(up.mean))
        assert np.allclose(dmean[j], (up.mean - dn.mean) / (2 * h), atol=1e-6 * scale)
        assert np.allclose(dcov[j], (up.cov - dn.cov) / (2 * h), atol=1e-6 * scale)
