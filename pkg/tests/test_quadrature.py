import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockvar import quadrature as qd

# pi * n! / 2^(n+1) for n = 0..6, frozen from the Gamma integral
MOMENTS = [1.5707963267948966, 0.7853981633974483, 0.7853981633974483, 1.1780972450961724,
           2.356194490192345, 5.890486225480862, 17.671458676442587]


def gauss(a):
    return lambda z: np.exp(-a * np.abs(z) ** 2)


def test_frozen_moments_match_gamma(gamma_moment):
    for n, v in enumerate(MOMENTS):
        assert gamma_moment(n) == pytest.approx(v, rel=1e-15)


@pytest.mark.parametrize("n", range(7))
def test_plane_moments(n):
    value, err = qd.integrate_plane(lambda z: np.abs(z) ** (2 * n) * np.exp(-2 * np.abs(z) ** 2),
                                    2.0, 2 * n, 1e-10)
    assert abs(value - MOMENTS[n]) <= max(err, 1e-10 * MOMENTS[n])
    assert err <= 1e-9


def test_plane_examples():
    assert qd.integrate_plane(gauss(2), 2.0, 0, 1e-10).value == pytest.approx(math.pi / 2, abs=1e-10)
    assert qd.integrate_plane(gauss(3), 3.0, 0, 1e-10).value == pytest.approx(math.pi / 3, abs=1e-10)


def test_disk_examples():
    assert qd.integrate_disk(lambda z: np.ones(z.shape), 0, 1).value == pytest.approx(math.pi, abs=1e-12)
    assert qd.integrate_disk(lambda z: np.abs(z) ** 2, 0, 1).value == pytest.approx(math.pi / 2, abs=1e-12)
    v = qd.integrate_disk(gauss(1), 0, 1).value
    assert v == pytest.approx(math.pi * (1 - math.exp(-1)), abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1e-3])
def test_rejects_nonpositive_tolerance(bad):
    with pytest.raises(qd.QuadratureError):
        qd.integrate_plane(gauss(2), 2.0, 0, bad)
    with pytest.raises(qd.QuadratureError):
        qd.integrate_disk(gauss(2), 0, 1, bad)


def test_rejects_nonpositive_radius_and_decay():
    with pytest.raises(qd.QuadratureError):
        qd.integrate_disk(gauss(2), 0, 0.0)
    with pytest.raises(qd.QuadratureError):
        qd.integrate_plane(gauss(2), 0.0, 0)


def test_budget_exhaustion_is_reported():
    kink = lambda z: np.abs(np.real(z) - 0.3) ** 0.5 * np.exp(-2 * np.abs(z) ** 2)
    with pytest.warns(qd.QuadratureWarning):
        value, err = qd.integrate_plane(kink, 2.0, 1, 1e-14)
    assert err > 1e-14


@pytest.mark.parametrize("radius", [0.5, 1.0, 3.7])
def test_weights_sum_to_area(radius):
    rule = qd.disk_rule(1 + 1j, radius)
    assert rule.weights.sum() == pytest.approx(math.pi * radius ** 2, rel=1e-12)
    assert np.all(rule.weights > 0)
    plane = qd.plane_rule(2.0, 4, 1e-9)
    assert plane.weights.sum() == pytest.approx(math.pi * plane.radius ** 2, rel=1e-12)
    assert plane.tail_bound <= plane.tol / 10


def test_tail_bound_is_an_upper_bound():
    # exact tail of exp(-2|z|^2) beyond R is (pi/2) exp(-2 R^2)
    for R in (1.0, 2.0, 3.5):
        exact = math.pi / 2 * math.exp(-2 * R * R)
        assert qd.tail_bound(R, 2.0) == pytest.approx(exact, rel=1e-12)
        assert qd.tail_bound(R, 2.0, 2, 1.0, 0.5) >= exact


def test_monotone_truncation():
    f = lambda z: np.abs(z) ** 3 * np.exp(-2 * np.abs(z) ** 2 + 0.8 * np.abs(z))
    rule = qd.plane_rule(2.0, 3, 1e-9, 1.0, 0.8)
    base = rule.integrate(f)
    wider = qd.PolarRule(0j, qd._base_breaks(2 * rule.radius)).integrate(f)
    assert abs(wider - base) <= rule.tail_bound + 1e-12


@pytest.mark.parametrize("k", [1, 2, 7, 31, 63])
def test_angular_exactness(k):
    theta, w = qd.angular_rule(qd.N_ANGULAR)
    assert abs(np.sum(w * np.exp(1j * k * theta))) <= 1e-13


def test_angular_rule_aliases_at_node_count():
    theta, w = qd.angular_rule(qd.N_ANGULAR)
    assert np.sum(w * np.exp(1j * qd.N_ANGULAR * theta)).real == pytest.approx(2 * math.pi)


@given(st.complex_numbers(max_magnitude=2), st.complex_numbers(max_magnitude=2),
       st.integers(0, 4), st.integers(0, 4))
def test_linearity(a, b, m, n):
    f = lambda z: z ** m * np.exp(-2 * np.abs(z) ** 2)
    g = lambda z: np.conj(z) ** n * np.exp(-2 * np.abs(z) ** 2 + z.real)
    vf, ef = qd.integrate_plane(f, 2.0, m, 1e-10)
    vg, eg = qd.integrate_plane(g, 2.0, n, 1e-10, shift=1.0)
    vh, eh = qd.integrate_plane(lambda z: a * f(z) + b * g(z), 2.0, max(m, n), 1e-10,
                                bound=abs(a) + abs(b), shift=1.0)
    assert abs(vh - (a * vf + b * vg)) <= abs(a) * ef + abs(b) * eg + eh + 1e-12


@given(st.floats(0, 2 * math.pi), st.integers(0, 4))
def test_rotation_invariance(theta, n):
    f = lambda z: np.abs(z) ** (2 * n) * np.exp(-2 * np.abs(z) ** 2) * (1 + np.abs(z))
    rot = np.exp(1j * theta)
    v0, e0 = qd.integrate_plane(f, 2.0, 2 * n + 1, 1e-10, bound=2.0)
    v1, e1 = qd.integrate_plane(lambda z: f(z * rot), 2.0, 2 * n + 1, 1e-10, bound=2.0)
    assert abs(v1 - v0) <= e0 + e1


def test_off_centre_rule():
    # Gaussian centred at 1.5+i integrated on a rule centred at the peak
    c = 1.5 + 1j
    v, err = qd.integrate_plane(lambda z: np.exp(-2 * np.abs(z - c) ** 2), 2.0, 0, 1e-10, center=c)
    assert v == pytest.approx(math.pi / 2, abs=1e-10)


def test_refined_rule_levels():
    rule = qd.disk_rule(0, 1)
    r = rule.refined(1, 2)
    assert (r.radial_level, r.angular_level) == (1, 2)
    assert r.nodes.size == rule.nodes.size * 8
    assert r.weights.sum() == pytest.approx(math.pi, rel=1e-13)


def test_no_warning_for_smooth_integrands():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        qd.integrate_plane(lambda z: np.cos(z.real) * np.exp(-np.abs(z) ** 2), 1.0, 0, 1e-10)
