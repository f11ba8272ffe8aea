import json

import numpy as np

from src.export.meshes import Mesh
from src.export.store import ArtifactStore, render_csv, render_json, render_obj


def test_csv_round_trips_floats():
    value = 0.1 + 0.2
    text = render_csv(["x", "flag", "n"], [[value, True, 3], [np.float64(1e-300), np.bool_(False), 4]])
    lines = text.splitlines()
    assert lines[0] == "x,flag,n"
    assert float(lines[1].split(",")[0]) == value
    assert lines[1].split(",")[1:] == ["true", "3"]
    assert lines[2].split(",")[1] == "false"
    assert render_csv(["x"], [[value]]) == render_csv(["x"], [[value]])


def test_obj_is_one_based():
    mesh = Mesh(np.eye(3), np.array([[0, 1, 2]]), {"family": "q"})
    lines = render_obj(mesh).splitlines()
    assert lines[0] == "# family: q"
    assert lines[1].startswith("v 1 0 0")
    assert lines[-1] == "f 1 2 3"


def test_json_handles_numpy():
    payload = json.loads(render_json({"a": np.arange(2), "b": np.float32(0.5)}))
    assert payload == {"a": [0, 1], "b": 0.5}


def test_store_writes_and_records(store):
    csv_path = store.write_csv("fields/u.csv", ["x"], [[1.0]])
    obj_path = store.write_obj("m.obj", Mesh(np.eye(3), np.array([[0, 1, 2]])))
    json_path = store.write_json("report.json", {"passed": True})

    assert csv_path.read_text() == "x\n1\n"
    assert obj_path.exists()
    report = json.loads(json_path.read_text())
    assert report["passed"] is True
    assert "generated_at" in report

    assert len(store.get_artifacts()) == 3
    assert store.get_artifacts("obj")[0]["meta"] == {"vertices": 3, "faces": 1}


def test_manifest_round_trip(store):
    store.write_csv("a.csv", ["x"], [[2.0]])
    store.save_manifest()
    restored = ArtifactStore(store.root)
    restored.load_manifest()
    assert restored.get_artifacts() == store.get_artifacts()
    assert restored.export_snapshot()["version"] == 1
