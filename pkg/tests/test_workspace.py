import os

import pytest

from nspoly.boxes import named_box
from nspoly.facets import corr_homog_scaled, inequality_from_functional, mermin_functional
from nspoly.rational import rat
from nspoly.scenarios import deterministic_boxes
from nspoly.symmetry import orbit_partition
from nspoly.workspace import (
    ArtifactError,
    Workspace,
    WorkspaceLockedError,
    read_class_file,
    read_csv,
    read_facet_file,
    read_vertex_file,
    write_class_file,
    write_csv,
    write_facet_file,
    write_vertex_file,
)


def test_vertex_file_roundtrip(tmp_path):
    verts = [named_box("Box3").probabilities, named_box("GHZ").probabilities]
    p = str(tmp_path / "v.txt")
    write_vertex_file(p, verts)
    assert read_vertex_file(p) == verts


def test_facet_file_roundtrip(tmp_path):
    facets = [
        inequality_from_functional(mermin_functional(), 2),
        tuple(range(27)),
    ]
    p = str(tmp_path / "f.txt")
    write_facet_file(p, facets)
    assert read_facet_file(p) == facets


def test_class_file_roundtrip(tmp_path):
    table = orbit_partition(deterministic_boxes())
    p = str(tmp_path / "c.txt")
    write_class_file(p, table)
    back = read_class_file(p)
    assert len(back.classes) == 1
    assert back.classes[0].size == 64
    assert back.classes[0].representative == table.classes[0].representative
    assert back.classes[0].member_indices == table.classes[0].member_indices


def test_csv_roundtrip(tmp_path):
    p = str(tmp_path / "t.csv")
    write_csv(p, ["a", "b"], [[1, "2/3"], [4, "x"]])
    header, rows = read_csv(p)
    assert header == ["a", "b"]
    assert rows == [["1", "2/3"], ["4", "x"]]


def test_wrong_kind_rejected(tmp_path):
    p = str(tmp_path / "v.txt")
    write_vertex_file(p, [named_box("GHZ").probabilities])
    with pytest.raises(ArtifactError):
        read_facet_file(p)


def test_truncated_file_rejected(tmp_path):
    p = str(tmp_path / "v.txt")
    write_vertex_file(p, [named_box("GHZ").probabilities] * 3)
    lines = open(p).readlines()
    with open(p, "w") as f:
        f.writelines(lines[:-1])
    with pytest.raises(ArtifactError):
        read_vertex_file(p)


def test_workspace_bipartite_cache(tmp_path):
    ws = Workspace(str(tmp_path))
    verts = ws.vertices("bipartite")
    assert len(verts) == 24
    # second call must come from the cache file
    assert ws.artifact_path("vertices-bipartite") is not None
    assert ws.vertices("bipartite") == verts


def test_workspace_digest_mismatch(tmp_path):
    ws = Workspace(str(tmp_path))
    ws.vertices("bipartite")
    path = ws.artifact_path("vertices-bipartite")
    with open(path, "a") as f:
        f.write("\n")
    with pytest.raises(ArtifactError):
        ws.vertices("bipartite")


def test_workspace_lock(tmp_path):
    ws = Workspace(str(tmp_path))
    with ws.lock():
        with pytest.raises(WorkspaceLockedError):
            with ws.lock():
                pass
    # released after exit
    with ws.lock():
        pass


def test_unknown_scenario(tmp_path):
    ws = Workspace(str(tmp_path))
    with pytest.raises(ValueError):
        ws.vertices("quadripartite")
