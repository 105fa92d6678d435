import json
import subprocess
import sys

import pytest

from meshct import golden
from meshct.cli import main, split_sequence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_split_sequence():
    assert split_sequence("{1,2}@1,{1,2}@1") == ["{1,2}@1", "{1,2}@1"]
    assert split_sequence("1_1, 0_2") == ["1_1", "0_2"]


def test_start_json_g2(capsys):
    code, out, _ = run(capsys, "start", "g2", "--format", "json", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["orbit_count"] == 6 and len(data["orbits"]) == 6
    assert data["meta"]["seed"] == 7


def test_start_text_and_dot(capsys):
    code, out, _ = run(capsys, "start", "b3")
    assert code == 0 and "summands: 15  orbits: 9" in out
    code, out, _ = run(capsys, "start", "b3", "--format", "dot")
    assert out.startswith("digraph EndT") and out.count("->") == 30


def test_mutate_involution(capsys):
    code, out, _ = run(capsys, "mutate", "b3", "--seq", "{1,2}@1,{1,2}@1")
    assert code == 0
    assert "involution: ok" in out
    assert out.count("admissible: yes") == 2


def test_mutate_json_logs_steps(capsys):
    code, out, _ = run(capsys, "mutate", "b2", "--seq", "0_1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    step = data["steps"][0]
    assert step["admissible"] is True
    assert set(step["identities"].values()) == {"pass"}
    assert data["returns_to_start"] is False


def test_usage_errors(capsys):
    assert run(capsys, "start", "x9")[0] == 2
    assert run(capsys, "mutate", "b3", "--seq", "0_0")[0] == 2
    assert run(capsys, "mutate", "b3", "--seq", "7_7")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["start"])
    assert exc.value.code == 2


def test_hammock(capsys):
    code, out, _ = run(capsys, "hammock", "b3", "(0,1)")
    assert code == 0 and out.splitlines()[1].split() == ["level", "0", "1", "2", "3", "4"]
    code, out, _ = run(capsys, "hammock", "b3", "0,1", "--format", "json")
    assert json.loads(out)["source"] == [0, 1]


def test_matrix_commands(capsys, tmp_path):
    f = tmp_path / "B.csv"
    f.write_text(golden.fixture_text("b3_B_principal.csv"))
    code, out, _ = run(capsys, "matrix", "mutate", str(f), "--at", "{1,2}_1")
    assert code == 0 and out == golden.fixture_text("b3_mu2_B_principal.csv")
    code, out, _ = run(capsys, "matrix", "check", str(f), "--format", "json")
    assert json.loads(out)["skew_symmetrizer"] == [2, 1, 1, 2, 1, 1]
    t = tmp_path / "Bt.csv"
    t.write_text(golden.fixture_text("b3_B_tilde_principal.csv"))
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"orbits": [["0_1"], ["1_1", "2_1"], ["3_1", "4_1"], ["0_2"],
                                        ["1_2", "2_2"], ["3_2", "4_2"]]}))
    code, out, _ = run(capsys, "matrix", "fold", str(t), "--partition", str(p))
    assert code == 0 and out == golden.fixture_text("b3_B_principal.csv")
    assert run(capsys, "matrix", "fold", str(t))[0] == 2


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "b2", "--suite", "involution")
    assert code == 0 and "b2 involution: ok" in out
    code, out, _ = run(capsys, "verify", "b2", "--suite", "homprofile")
    assert code == 0 and "gl.dim: 3  dom.dim: 3" in out
    code, out, _ = run(capsys, "verify", "b2", "c3", "--suite", "rigidity", "--steps", "2",
                       "--jobs", "2")
    assert code == 0 and "c3 rigidity: ok" in out


def test_example_b3(capsys, tmp_path):
    code, out, _ = run(capsys, "example", "b3", "--output", str(tmp_path))
    assert code == 0 and "overall: ok" in out
    for name, fixture in golden.MATRIX_FIXTURES:
        assert (tmp_path / f"{name}.csv").read_text() == golden.fixture_text(fixture)
    assert (tmp_path / "end_quiver.dot").read_text().count("->") == 30


def test_export(capsys):
    code, out, _ = run(capsys, "export", "b3", "--format", "json")
    assert len(json.loads(out)["arrows"]) == 8
    code, out, _ = run(capsys, "export", "b3", "--what", "window", "--levels", "0", "2",
                       "--format", "dot")
    assert out.count("->") == 20
    code, out, _ = run(capsys, "export", "b2", "--what", "start")
    assert len(json.loads(out)["summands"]) == 6


def test_field_env_and_determinism(capsys, monkeypatch):
    monkeypatch.setenv("MESHCT_FIELD", "fp32003")
    a = run(capsys, "start", "b3", "--format", "json")[1]
    b = run(capsys, "start", "b3", "--format", "json")[1]
    assert a == b and json.loads(a)["field"] == "fp32003"
    monkeypatch.setenv("MESHCT_FIELD", "rat")
    c = json.loads(run(capsys, "start", "b3", "--format", "json")[1])
    d = json.loads(a)
    assert [s["dims"] for s in c["summands"]] == [s["dims"] for s in d["summands"]]


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "meshct.cli", "start", "b2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "orbits: 4" in r.stdout
