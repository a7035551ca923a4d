import contextlib
import io

from nspoly.boxes import box_to_line, named_box
from nspoly.cli import main


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_enumerate_bipartite(tmp_path):
    code, out = run(["--workspace", str(tmp_path), "enumerate", "--scenario", "bipartite"])
    assert code == 0
    assert "24 vertices" in out


def test_verify_quick(tmp_path):
    code, out = run(["--workspace", str(tmp_path), "verify", "--quick"])
    assert code == 0, out
    assert "FAIL" not in out
    assert "checks passed" in out


def test_box_named(tmp_path):
    code, out = run(["--workspace", str(tmp_path), "box", "--named", "Det0"])
    assert code == 0
    assert "valid no-signaling behavior" in out
    for model in ("L", "NS2", "US2", "KS2", "S2"):
        assert f"{model}: member" in out


def test_box_from_file(tmp_path):
    f = tmp_path / "box.txt"
    f.write_text(box_to_line(named_box("PR-BC")) + "\n")
    code, out = run(["--workspace", str(tmp_path), "box", "--file", str(f)])
    assert code == 0
    assert "L: not a member" in out
    assert "NS2: member" in out


def test_box_invalid_file(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text(" ".join(["1/4"] * 64) + "\n")
    code, out = run(["--workspace", str(tmp_path), "box", "--file", str(f)])
    assert code == 1
    assert "invalid behavior" in out


def test_locked_workspace_reported(tmp_path):
    from nspoly.workspace import Workspace, WorkspaceLockedError

    ws = Workspace(str(tmp_path))
    import pytest

    with ws.lock():
        with pytest.raises(WorkspaceLockedError):
            run(["--workspace", str(tmp_path), "enumerate", "--scenario", "bipartite"])
