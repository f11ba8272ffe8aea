import numpy as np
import pytest

from src.geometry.hyperbolic import (
    compatibility_residual,
    disk_to_halfplane,
    halfplane_to_disk,
    horizontal_dilation,
    hyperbolic_distance,
    metric_at,
    mobius_g,
    mobius_g_inverse,
    mu0,
    mu1,
    neck_radius,
)
from src.models.entities import Model, Point2H, Point3
from src.models.errors import DomainError


def test_g_sends_origin_to_i():
    assert mobius_g(0.0) == 1j
    assert mobius_g_inverse(1j) == 0.0


def test_roundtrip(rng):
    for z in rng.uniform(-0.7, 0.7, 20) + 1j * rng.uniform(-0.7, 0.7, 20):
        assert abs(mobius_g_inverse(mobius_g(z)) - z) < 1e-12
        assert mobius_g(z).imag > 0


def test_poles():
    with pytest.raises(DomainError):
        mobius_g(-1.0)
    with pytest.raises(DomainError):
        mobius_g_inverse(-1j)


def test_model_conversion_checks_model():
    with pytest.raises(DomainError):
        disk_to_halfplane(Point2H(0.0, 1.0, Model.HALF_PLANE))
    with pytest.raises(DomainError):
        halfplane_to_disk(Point2H(0.1, 0.2))


def test_g_is_an_isometry():
    p, q = Point2H(0.1, 0.3), Point2H(-0.5, 0.2)
    d_disk = hyperbolic_distance(p, q)
    d_half = hyperbolic_distance(disk_to_halfplane(p), disk_to_halfplane(q))
    assert d_disk == pytest.approx(d_half, rel=1e-12)


def test_dilation_is_an_isometry():
    p, q = Point2H(0.3, 0.5, Model.HALF_PLANE), Point2H(-1.0, 2.0, Model.HALF_PLANE)
    d = hyperbolic_distance(p, q)
    moved = hyperbolic_distance(horizontal_dilation(p, 3.7), horizontal_dilation(q, 3.7))
    assert moved == pytest.approx(d, rel=1e-12)
    with pytest.raises(DomainError):
        horizontal_dilation(p, 0.0)


def test_distance_requires_one_model():
    with pytest.raises(DomainError):
        hyperbolic_distance(Point2H(0.0, 0.0), Point2H(0.0, 1.0, Model.HALF_PLANE))


def test_neck_radius_and_mu0():
    assert neck_radius(1.0) == pytest.approx(np.sqrt(2.0) - 1.0)
    for k in (0.01, 1.0, 50.0):
        r0 = neck_radius(k)
        assert mu0(k) == pytest.approx((1.0 - r0) / (1.0 + r0), rel=1e-12)
        assert (-1j * mobius_g(r0)).real == pytest.approx(mu0(k), rel=1e-12)
    with pytest.raises(DomainError):
        mu0(0.0)


def test_mu1():
    assert 0.0 < mu1(0.5) < 1.0
    assert mu1(0.2) < mu1(0.8)
    with pytest.raises(DomainError):
        mu1(1.0)


def test_halfplane_metric():
    metric = metric_at(Point3(0.3, 0.5, 1.0), Model.HALF_PLANE)
    np.testing.assert_allclose(np.diag(metric.g), [4.0, 4.0, 1.0])
    # Γ^x_xy = φ_y = -1/y
    assert metric.gamma[0, 0, 1] == pytest.approx(-2.0)


def test_disk_metric_outside_raises():
    with pytest.raises(DomainError):
        metric_at(Point3(1.0, 0.0, 0.0), Model.DISK)


@pytest.mark.parametrize("model, point", [
    (Model.DISK, Point3(0.3, -0.4, 0.0)),
    (Model.DISK, Point3(0.0, 0.0, 2.0)),
    (Model.HALF_PLANE, Point3(1.5, 0.2, -1.0)),
])
def test_metric_compatibility(model, point):
    scale = metric_at(point, model).g[0, 0]
    assert compatibility_residual(point, model) / scale < 1e-12
