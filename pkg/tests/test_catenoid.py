import numpy as np
import pytest

from src.analysis.jacobi import SeriesKind, second_order_closed_form
from src.geometry import catenoid
from src.geometry.curvature import max_mean_curvature
from src.geometry.hyperbolic import neck_radius
from src.models.errors import DomainError


def test_turning_radii():
    for k in (0.1, 1.0, 9.0):
        r0, rmax = neck_radius(k), catenoid.max_radius(k)
        assert r0 * rmax == pytest.approx(1.0)
        assert catenoid.first_integral(r0, 0.0) == pytest.approx(k, rel=1e-12)
        assert catenoid.first_integral(rmax, 0.0) == pytest.approx(k, rel=1e-12)


def test_first_integral_rejects_nonpositive_radius():
    with pytest.raises(DomainError):
        catenoid.first_integral(np.array([0.5, 0.0]), np.zeros(2))


def test_profile_conserves_first_integral(tol):
    profile = catenoid.integrate_profile(1.0, tol=tol)
    assert profile.first_integral_drift <= tol.first_integral
    t, r, rp = profile.samples[0]
    assert t == 0.0
    assert rp == pytest.approx(0.0, abs=1e-14)
    assert r == pytest.approx(neck_radius(1.0))
    assert profile.r_max == pytest.approx(catenoid.max_radius(1.0), rel=1e-8)


@pytest.mark.parametrize("k", [0.25, 1.0, 4.0])
def test_first_integral_over_ten_periods(k, tol):
    profile = catenoid.integrate_profile(k, t_max=10.0 * catenoid.profile_period(k, tol), tol=tol)
    assert profile.first_integral_drift < 1e-9
    assert profile.samples[-1, 0] == pytest.approx(10.0 * profile.period)


def test_profile_period(tol):
    k = 0.25
    period = catenoid.profile_period(k, tol)
    profile = catenoid.integrate_profile(k, t_max=1.2 * period, tol=tol)
    assert profile.minima[0] == pytest.approx(period, rel=1e-6)
    r, _ = profile.raw(profile.minima[0])
    assert r == pytest.approx(profile.r0, abs=1e-7)


def test_profile_is_even_and_periodic():
    profile = catenoid.cached_profile(1.0)
    r1, rp1, _ = profile.evaluate(0.3)
    r2, rp2, _ = profile.evaluate(-0.3)
    r3, _, _ = profile.evaluate(0.3 + profile.period)
    assert r1 == pytest.approx(r2)
    assert rp1 == pytest.approx(-rp2)
    assert r3 == pytest.approx(r1, abs=1e-9)


def test_heights_decrease_below_pi(tol):
    ks = np.geomspace(1e-4, 1e3, 12)
    hs = np.array([catenoid.height(k, tol) for k in ks])
    assert np.all(hs < np.pi)
    assert np.all(np.diff(hs) < 0)
    assert np.pi - 0.02 < hs[0] < np.pi
    assert catenoid.height(100.0, tol) < 1.0
    assert hs[-1] < 0.4


def test_small_k_height_law(tol):
    k = 1e-5
    deficit = (np.pi - catenoid.height(k, tol)) / k
    assert deficit == pytest.approx(np.pi / 4.0, rel=0.1)


def test_conformal_modulus(tol):
    assert catenoid.conformal_modulus(1e-4, tol) > 0.96
    for k in (1e-2, 0.1, 1.0):
        assert np.exp(-np.pi) < catenoid.conformal_modulus(k, tol) < 1.0


def test_t_of_r(tol):
    k = 1.0
    assert catenoid.t_of_r(k, neck_radius(k), tol) == 0.0
    assert 2.0 * catenoid.t_of_r(k, 1.0, tol) == pytest.approx(catenoid.height(k, tol))
    with pytest.raises(DomainError):
        catenoid.t_of_r(k, 1.1, tol)
    assert catenoid.bigraph_point(k, 1.0, 0.3, sign=-1).t == pytest.approx(-0.5 * catenoid.height(k, tol))


def test_t_of_r_inverts_profile(tol):
    profile = catenoid.cached_profile(1.0)
    r, _, _ = profile.evaluate(0.4)
    assert catenoid.t_of_r(1.0, r, tol) == pytest.approx(0.4, abs=1e-8)


def test_immersion_stays_in_cylinder():
    k = 1.0
    profile = catenoid.cached_profile(k)
    p = catenoid.immerse_catenoid(k, 0.0, 0.0)
    assert p.x == pytest.approx(neck_radius(k))
    with pytest.raises(DomainError):
        catenoid.immerse_catenoid(k, 0.0, 0.5 * profile.period)
    q = catenoid.ambient_unduloid(k, 0.0, 0.5 * profile.period)
    assert q.x == pytest.approx(catenoid.max_radius(k), rel=1e-8)


@pytest.mark.parametrize("k", [0.25, 1.0, 4.0])
def test_catenoid_is_minimal(k, rng, tol):
    h = catenoid.height(k, tol)
    samples = np.column_stack([rng.uniform(0, 2 * np.pi, 200), rng.uniform(-0.45 * h, 0.45 * h, 200)])
    assert max_mean_curvature(catenoid.catenoid_patch(k), samples, tol) < tol.minimality


def test_dilated_graph():
    with pytest.raises(DomainError):
        catenoid.dilated_graph_phi(0.01, 0.0, -0.5)
    p = catenoid.dilated_graph_phi(0.01, 0.2, 0.5)
    assert 0.0 < p.t < np.pi / 2


def test_k_derivative_matches_second_order_series(tol):
    for x, y in ((0.3, 0.5), (-0.4, 0.6)):
        exact = second_order_closed_form(SeriesKind.CAT, x, y)
        assert catenoid.phi_k_derivative(x, y, tol=tol) == pytest.approx(exact, rel=1e-3)
