import numpy as np
import pytest

from src.export import meshes
from src.geometry import catenoid, tall
from src.geometry.parabolic import q_residual
from src.models.entities import Point3
from src.models.errors import DomainError


def test_grid_mesh_triangulates_cells():
    xs = np.linspace(0.0, 1.0, 3)
    points = np.stack(list(np.meshgrid(xs, xs, indexing="ij")) + [np.zeros((3, 3))], axis=-1)
    mesh = meshes.grid_mesh(points)
    assert mesh.vertices.shape == (9, 3)
    assert mesh.faces.shape == (8, 3)


def test_grid_mesh_skips_non_finite_cells():
    xs = np.linspace(0.0, 1.0, 3)
    points = np.stack(list(np.meshgrid(xs, xs, indexing="ij")) + [np.zeros((3, 3))], axis=-1)
    points[0, 0, 2] = np.nan
    mesh = meshes.grid_mesh(points)
    assert len(mesh.faces) == 6
    assert len(mesh.vertices) == 8
    assert np.all(np.isfinite(mesh.vertices))


def test_grid_mesh_needs_two_samples():
    with pytest.raises(DomainError):
        meshes.grid_mesh(np.zeros((1, 4, 3)))


def test_merge_and_clip():
    a = meshes.Mesh(np.array([[0, 0, 0], [0.5, 0, 0], [0, 0.5, 0]]), np.array([[0, 1, 2]]))
    b = meshes.Mesh(np.array([[2, 0, 0], [3, 0, 0], [2, 1, 0]]), np.array([[0, 1, 2]]))
    merged = meshes.merge([a, b], {"name": "pair"})
    assert merged.faces.tolist() == [[0, 1, 2], [3, 4, 5]]
    clipped = meshes.clip_to_cylinder(merged)
    assert len(clipped.faces) == 1
    assert len(clipped.vertices) == 3
    assert clipped.annotations == {"name": "pair"}


def test_catenoid_mesh(tol):
    mesh = meshes.catenoid_mesh(1.0, n_r=10, n_theta=12, tol=tol)
    radii = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
    assert np.all(radii <= 1.0 + 1e-12)
    assert mesh.annotations["height"] == pytest.approx(catenoid.height(1.0, tol))
    assert np.max(np.abs(mesh.vertices[:, 2])) == pytest.approx(0.5 * catenoid.height(1.0, tol))


def test_unduloid_mesh_leaves_the_cylinder():
    mesh = meshes.unduloid_mesh(1.0, n_theta=8, n_t=17)
    radii = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
    assert radii.max() == pytest.approx(catenoid.max_radius(1.0), rel=1e-6)
    assert mesh.annotations["family"] == "unduloid"


def test_q_mesh_lies_on_q():
    mesh = meshes.q_mesh(box=2.0, n=21)
    assert len(mesh.faces) > 0
    worst = max(abs(q_residual(Point3(*v))) for v in mesh.vertices)
    assert worst < 1e-9


def test_parabolic_mesh_in_disk():
    mesh = meshes.parabolic_mesh(1.0, box=2.0, n=12)
    assert np.all(mesh.vertices[:, 0] ** 2 + mesh.vertices[:, 1] ** 2 < 1.0)
    assert mesh.annotations["ideal_point"] == [-1.0, 0.0]


def test_tall_mesh_heights(tol):
    d = 0.5
    mesh = meshes.tall_mesh(d, n_x=8, n_y=6, tol=tol)
    assert np.max(np.abs(mesh.vertices[:, 2])) == pytest.approx(0.5 * tall.height_tall(d, tol))


def test_tall_periodic_mesh_is_clipped(tol):
    mesh = meshes.tall_periodic_mesh(0.5, copies=1, n_x=8, n_y=10, tol=tol)
    assert np.all(mesh.vertices[:, 0] ** 2 + mesh.vertices[:, 1] ** 2 < 1.0)
    assert mesh.annotations["periodic"] is True
    h = mesh.annotations["height"]
    # the pieces reach beyond one period
    assert mesh.vertices[:, 2].max() > 1.5 * h


def test_transformed_copies():
    mesh = meshes.Mesh(np.zeros((3, 3)), np.array([[0, 1, 2]]))

    def shift(v):
        v[:, 2] += 1.0
        return v

    moved = mesh.transformed(shift)
    assert np.all(moved.vertices[:, 2] == 1.0)
    assert np.all(mesh.vertices == 0.0)
