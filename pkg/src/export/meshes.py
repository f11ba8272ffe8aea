"""
Triangle meshes of the surface families for external viewers.

All meshes live in R³ with the disk model as horizontal coordinates,
except Q which is sampled directly in its defining coordinates. Ambient
pieces are clipped to the open unit cylinder by dropping whole faces.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from ..config import Tolerances
from ..geometry.catenoid import ambient_unduloid, cached_profile, t_of_r
from ..geometry.hyperbolic import halfplane_to_disk, neck_radius
from ..geometry.parabolic import asymptotic_boundary, psi, q_base_height
from ..geometry.tall import d1, height_tall, lambda_extended, sweep
from ..models.entities import Model, Point2H
from ..models.errors import DomainError

logger = logging.getLogger(__name__)

EDGE_OFFSET = 1e-3


@dataclass
class Mesh:
    """Vertices (n, 3), triangular faces (m, 3) of 0-based indices, free-form annotations."""
    vertices: np.ndarray
    faces: np.ndarray
    annotations: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=int).reshape(-1, 3)

    def compact(self) -> "Mesh":
        """Drop vertices no face references and reindex."""
        used = np.unique(self.faces)
        remap = np.full(len(self.vertices), -1, dtype=int)
        remap[used] = np.arange(used.size)
        return Mesh(self.vertices[used], remap[self.faces], dict(self.annotations))

    def transformed(self, func: Callable[[np.ndarray], np.ndarray]) -> "Mesh":
        return Mesh(func(self.vertices.copy()), self.faces.copy(), dict(self.annotations))


def grid_mesh(points: np.ndarray, annotations: Optional[dict] = None) -> Mesh:
    """
    Triangulate an (nu, nv, 3) grid of samples.

    Cells touching a non-finite sample are skipped.
    """
    nu, nv, _ = points.shape
    if nu < 2 or nv < 2:
        raise DomainError("a grid mesh needs at least 2x2 samples", shape=points.shape)
    index = np.arange(nu * nv).reshape(nu, nv)
    a, b = index[:-1, :-1].ravel(), index[1:, :-1].ravel()
    c, d = index[1:, 1:].ravel(), index[:-1, 1:].ravel()
    faces = np.concatenate([np.column_stack([a, b, c]), np.column_stack([a, c, d])])

    vertices = points.reshape(-1, 3)
    finite = np.all(np.isfinite(vertices), axis=1)
    faces = faces[np.all(finite[faces], axis=1)]
    vertices = np.where(finite[:, None], vertices, 0.0)
    return Mesh(vertices, faces, annotations or {}).compact()


def merge(meshes: Iterable[Mesh], annotations: Optional[dict] = None) -> Mesh:
    vertices, faces, offset = [], [], 0
    for mesh in meshes:
        vertices.append(mesh.vertices)
        faces.append(mesh.faces + offset)
        offset += len(mesh.vertices)
    if not vertices:
        return Mesh(np.empty((0, 3)), np.empty((0, 3), dtype=int), annotations or {})
    return Mesh(np.vstack(vertices), np.vstack(faces), annotations or {})


def clip_to_cylinder(mesh: Mesh, radius: float = 1.0) -> Mesh:
    """Keep the faces whose vertices all satisfy x² + y² < radius²."""
    inside = mesh.vertices[:, 0] ** 2 + mesh.vertices[:, 1] ** 2 < radius * radius
    kept = mesh.faces[np.all(inside[mesh.faces], axis=1)]
    logger.debug("cylinder clip kept %d of %d faces", len(kept), len(mesh.faces))
    return Mesh(mesh.vertices, kept, dict(mesh.annotations)).compact()


def _revolution(k: float, n_theta: int) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi / np.sqrt(k), n_theta)


def unduloid_mesh(k: float, n_theta: int = 48, n_t: int = 96, periods: int = 1) -> Mesh:
    """Ambient unduloid over ``periods`` full periods of the profile, unclipped."""
    profile = cached_profile(float(k))
    ts = np.linspace(-0.5 * periods * profile.period, 0.5 * periods * profile.period, n_t)
    thetas = _revolution(k, n_theta)
    points = np.array([
        [ambient_unduloid(k, theta, t, profile).as_array() for t in ts] for theta in thetas
    ])
    return grid_mesh(points, {"family": "unduloid", "k": k, "period": profile.period})


def catenoid_mesh(k: float, n_r: int = 40, n_theta: int = 48, tol: Optional[Tolerances] = None) -> Mesh:
    """The catenoid inside the unit cylinder as the bigraph t = ±t_k(r)."""
    r0 = neck_radius(k)
    radii = np.minimum(r0 + (1.0 - r0) * np.linspace(0.0, 1.0, n_r) ** 2, 1.0)
    heights = np.array([t_of_r(k, r, tol) for r in radii])
    thetas = np.linspace(0.0, 2.0 * np.pi, n_theta)
    sheets = []
    for sign in (1.0, -1.0):
        points = np.stack([
            np.outer(np.cos(thetas), radii),
            np.outer(np.sin(thetas), radii),
            np.broadcast_to(sign * heights, (n_theta, n_r)),
        ], axis=-1)
        sheets.append(grid_mesh(points))
    return merge(sheets, {"family": "catenoid", "k": k, "height": 2.0 * heights[-1]})


def parabolic_mesh(lam: float = 1.0, box: float = 2.0, n: int = 48) -> Mesh:
    """Ψ_λ over [-box, box] × (0, π), carried to the disk model."""
    xs = np.linspace(-box, box, n)
    ts = np.linspace(EDGE_OFFSET, np.pi - EDGE_OFFSET, n)
    points = np.empty((n, n, 3))
    for i, x in enumerate(xs):
        for j, t in enumerate(ts):
            p = psi(lam, x, t)
            z = halfplane_to_disk(Point2H(p.x, p.y, Model.HALF_PLANE))
            points[i, j] = (z.u, z.v, t)
    boundary = asymptotic_boundary(lam)
    ideal = boundary["vertical_segment"]["ideal_point"]["disk"]
    return grid_mesh(points, {"family": "parabolic", "lambda": lam, "ideal_point": ideal})


def q_mesh(box: float = 2.0, n: int = 81, periods: int = 1) -> Mesh:
    """The sheets ±arccos(...) + 2πn of Q over [-box, box]², restricted to its graph domain."""
    xs = np.linspace(-box, box, n)
    xx, yy = np.meshgrid(xs, xs, indexing="ij")
    base = q_base_height(xx, yy)
    sheets = []
    for m in range(-periods, periods):
        for sign in (1.0, -1.0):
            points = np.stack([xx, yy, sign * base + 2.0 * np.pi * m], axis=-1)
            sheets.append(grid_mesh(points))
    return merge(sheets, {"family": "q", "box": box, "periods": periods})


def _tall_samples(d: float, n_x: int, annulus: bool, tol: Optional[Tolerances]) -> tuple[np.ndarray, np.ndarray]:
    a = d1(d)
    upper = 1.0 / a if annulus else 1.0
    xs = a + (upper - a) * np.linspace(0.0, 1.0, n_x)
    heights = np.array([lambda_extended(d, x, tol) for x in xs])
    return xs, heights


def tall_mesh(
    d: float,
    n_x: int = 40,
    n_y: int = 48,
    annulus: bool = False,
    tol: Optional[Tolerances] = None,
) -> Mesh:
    """
    Σ_d swept by T_y, both sheets.

    With ``annulus`` the profile runs over [d₁, 1/d₁] and the piece outside
    the unit cylinder is kept.
    """
    xs, heights = _tall_samples(d, n_x, annulus, tol)
    ys = np.linspace(-1.0 + EDGE_OFFSET, 1.0 - EDGE_OFFSET, n_y)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    u, v = sweep(xx, yy)
    sheets = []
    for sign in (1.0, -1.0):
        tt = np.broadcast_to(sign * heights[:, None], xx.shape)
        sheets.append(grid_mesh(np.stack([u, v, tt], axis=-1)))
    return merge(sheets, {"family": "tall", "d": d, "annulus": annulus})


def tall_periodic_mesh(
    d: float,
    copies: int = 1,
    n_x: int = 40,
    n_y: int = 48,
    tol: Optional[Tolerances] = None,
) -> Mesh:
    """
    Periodic ambient extension of Σ_d clipped to the unit cylinder.

    With S(x, y, t) = (-x, y, h - t) the pieces are A + 2hn and S(A) + 2hn,
    A the annular surface; S composed with its conjugate is the vertical
    translation by 2h.
    """
    h = height_tall(d, tol)
    base = tall_mesh(d, n_x, n_y, annulus=True, tol=tol)

    def symmetric(v: np.ndarray) -> np.ndarray:
        v[:, 0] = -v[:, 0]
        v[:, 2] = h - v[:, 2]
        return v

    def lifted(shift: float) -> Callable[[np.ndarray], np.ndarray]:
        def move(v: np.ndarray) -> np.ndarray:
            v[:, 2] += shift
            return v
        return move

    mirrored = base.transformed(symmetric)
    pieces = []
    for n in range(-copies, copies + 1):
        pieces.append(base.transformed(lifted(2.0 * h * n)))
        pieces.append(mirrored.transformed(lifted(2.0 * h * n)))
    mesh = clip_to_cylinder(merge(pieces))
    mesh.annotations.update({"family": "tall", "d": d, "height": h, "copies": copies, "periodic": True})
    return mesh
