import numpy as np
import pytest

from src.geometry import parabolic
from src.geometry.curvature import max_mean_curvature
from src.geometry.hyperbolic import halfplane_to_disk
from src.models.entities import Gauge, Model, ParabolicParam, Point2H, Point3
from src.models.errors import DomainError


def test_psi_and_fhat_differ_by_a_vertical_shift():
    for x, t in ((0.3, 0.4), (-1.2, 2.9)):
        p = parabolic.psi(1.0, x, t)
        q = parabolic.fhat(x, parabolic.shift_gauge(t, Gauge.PSI, Gauge.FHAT))
        assert (p.x, p.y) == pytest.approx((q.x, q.y))
        assert p.t - q.t == pytest.approx(0.5 * np.pi)
        assert parabolic.shift_gauge(q.t, Gauge.FHAT, Gauge.PSI) == pytest.approx(t)


def test_gauge_ranges():
    with pytest.raises(DomainError):
        parabolic.psi(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        parabolic.fhat(0.0, 2.0)
    with pytest.raises(DomainError):
        parabolic.psi(-1.0, 0.0, 1.0)
    assert ParabolicParam(2.0, Gauge.FHAT).t_range == (-0.5 * np.pi, 0.5 * np.pi)


def test_dilation_scales_horizontally():
    p = parabolic.psi(3.0, 0.5, 1.0)
    assert (p.x, p.y, p.t) == pytest.approx((1.5, 3.0 * np.sin(1.0), 1.0))


def test_fhat_lies_on_q():
    for x in np.linspace(-2.0, 2.0, 9):
        for t in np.linspace(-1.5, 1.5, 7):
            assert abs(parabolic.q_residual(parabolic.fhat_in_disk(x, t))) < 1e-12


def test_q_graph_domain():
    assert not parabolic.q_domain(-0.5, 0.0)
    assert not parabolic.q_domain(-1.5, 0.0)
    assert parabolic.q_domain(1.0, 0.0)
    assert parabolic.q_base_height(0.0, 0.0) == pytest.approx(0.0)
    assert np.isnan(parabolic.q_base_height(-0.5, 0.1))


def test_q_sheets():
    heights = parabolic.q_sheets(0.5, 0.5, periods=1)
    assert np.all(np.diff(heights) >= 0)
    np.testing.assert_allclose(heights, -heights[::-1])
    for t in heights:
        assert abs(parabolic.q_residual(Point3(0.5, 0.5, t))) < 1e-12
    assert parabolic.q_sheets(-0.5, 0.0).size == 0


def test_asymptotic_boundary_point():
    info = parabolic.asymptotic_boundary(2.0)
    assert info["vertical_segment"]["ideal_point"]["disk"] == [-1.0, 0.0]
    # far along the positive imaginary axis the half-plane approaches the disk point -1
    z = halfplane_to_disk(Point2H(0.0, 1e8, Model.HALF_PLANE))
    assert z.u == pytest.approx(-1.0, abs=1e-7)


@pytest.mark.parametrize("gauge", list(Gauge))
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_patches_are_minimal(lam, gauge, rng, tol):
    param = ParabolicParam(lam, gauge)
    lo, hi = param.t_range
    samples = np.column_stack([rng.uniform(-3, 3, 200), rng.uniform(lo + 0.1, hi - 0.1, 200)])
    assert max_mean_curvature(parabolic.parabolic_patch(param), samples, tol) < tol.minimality


def test_graph_is_minimal(rng, tol):
    samples = np.column_stack([rng.uniform(-3, 3, 200), rng.uniform(0.05, 0.95, 200)])
    assert max_mean_curvature(parabolic.graph_patch(), samples, tol) < tol.minimality
