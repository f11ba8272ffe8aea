from .meshes import (
    Mesh,
    catenoid_mesh,
    clip_to_cylinder,
    grid_mesh,
    merge,
    parabolic_mesh,
    q_mesh,
    tall_mesh,
    tall_periodic_mesh,
    unduloid_mesh,
)
from .store import ArtifactStore, render_csv, render_json, render_obj

__all__ = [
    "Mesh",
    "catenoid_mesh",
    "clip_to_cylinder",
    "grid_mesh",
    "merge",
    "parabolic_mesh",
    "q_mesh",
    "tall_mesh",
    "tall_periodic_mesh",
    "unduloid_mesh",
    "ArtifactStore",
    "render_csv",
    "render_json",
    "render_obj",
]
