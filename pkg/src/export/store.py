"""Artifact store for CSV fields, OBJ meshes and JSON reports."""

import csv
import io
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from ..models.errors import to_plain

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV text with round-trip float formatting; identical input gives identical bytes."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def render_obj(mesh) -> str:
    """Wavefront OBJ with vertices and 1-based faces only."""
    lines = [f"# {key}: {value}" for key, value in sorted(mesh.annotations.items())]
    for x, y, z in mesh.vertices:
        lines.append(f"v {FLOAT_FORMAT % x} {FLOAT_FORMAT % y} {FLOAT_FORMAT % z}")
    for face in mesh.faces:
        lines.append("f " + " ".join(str(int(i) + 1) for i in face))
    return "\n".join(lines) + "\n"


def render_json(payload: dict) -> str:
    return json.dumps(to_plain(payload), indent=2, sort_keys=True) + "\n"


class ArtifactStore:
    """
    Writes artifacts under one output directory and keeps a manifest.

    Every write is logged with its kind and metadata so a run can be
    exported as a single snapshot.
    """

    def __init__(self, root: Path):
        self.root = Path(root)
        self._artifacts: list[dict] = []
        self._version = 0

    def _path(self, name: str) -> Path:
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def _record(self, path: Path, kind: str, meta: Optional[dict] = None):
        self._artifacts.append({
            "path": str(path),
            "kind": kind,
            "meta": meta or {},
            "written_at": datetime.utcnow().isoformat(),
        })
        self._version += 1
        logger.info("wrote %s artifact %s", kind, path)

    def write_text(self, name: str, text: str, kind: str, meta: Optional[dict] = None) -> Path:
        path = self._path(name)
        with open(path, "w", newline="") as f:
            f.write(text)
        self._record(path, kind, meta)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]], meta: Optional[dict] = None) -> Path:
        return self.write_text(name, render_csv(header, rows), "csv", meta)

    def write_obj(self, name: str, mesh, meta: Optional[dict] = None) -> Path:
        meta = {"vertices": len(mesh.vertices), "faces": len(mesh.faces), **(meta or {})}
        return self.write_text(name, render_obj(mesh), "obj", meta)

    def write_json(self, name: str, payload: dict, meta: Optional[dict] = None) -> Path:
        stamped = {**payload, "generated_at": datetime.utcnow().isoformat()}
        return self.write_text(name, render_json(stamped), "json", meta)

    def get_artifacts(self, kind: Optional[str] = None) -> list[dict]:
        if kind is None:
            return list(self._artifacts)
        return [a for a in self._artifacts if a["kind"] == kind]

    def export_snapshot(self) -> dict:
        """Export the manifest of everything written so far."""
        return {
            "version": self._version,
            "timestamp": datetime.utcnow().isoformat(),
            "root": str(self.root),
            "artifacts": self._artifacts,
        }

    def save_manifest(self, filename: str = "manifest.json") -> Path:
        path = self._path(filename)
        with open(path, "w") as f:
            json.dump(to_plain(self.export_snapshot()), f, indent=2)
        return path

    def load_manifest(self, filename: str = "manifest.json"):
        with open(self.root / filename, "r") as f:
            snapshot = json.load(f)
        self._artifacts = snapshot.get("artifacts", [])
        self._version = snapshot.get("version", 0)
