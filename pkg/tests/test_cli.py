import json

import pytest

from qcluster import catalog
from qcluster.cli import run
from qcluster.seeds import QSeed


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_seed_roundtrip(capsys, tmp_path):
    code, out, _ = call(capsys, "seed", "gr3:6")
    assert code == 0
    s = QSeed.from_json(json.loads(out))
    assert s.same_as(catalog.load("gr3:6").seed)
    f = tmp_path / "s.json"
    f.write_text(out)
    assert call(capsys, "seed", str(f))[1] == out


def test_classify_file_equals_name(capsys, tmp_path):
    _, out, _ = call(capsys, "seed", "gr3:8")
    f = tmp_path / "s.json"
    f.write_text(out)
    a = call(capsys, "classify", str(f))[1]
    b = call(capsys, "classify", "gr3:8")[1]
    assert a == b and json.loads(a) == {"type": "E8"}


def test_classify_stdin(capsys, monkeypatch):
    import io

    _, out, _ = call(capsys, "seed", "gr2:6")
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    assert json.loads(call(capsys, "classify", "-")[1]) == {"type": "A3"}


def test_mutate_labels(capsys):
    code, out, _ = call(capsys, "mutate", "gr2:5", "--seq", "14")
    assert code == 0
    s = json.loads(out)
    assert s["labels"][1] == "[35]"
    # current label, then initial label, then position
    code, out2, _ = call(capsys, "mutate", "gr2:5", "--seq", "[14],35,#2")
    assert code == 0
    assert json.loads(out2)["path"] == [1, 1, 2]


def test_mutate_table_sequence(capsys):
    # mu_4 mu_2 mu_1 mu_3 on positions, applied right to left
    code, out, _ = call(capsys, "mutate", "gr3:6", "--seq", "125,145,134,124")
    assert code == 0
    labels = json.loads(out)["labels"]
    assert "[236]" in labels


def test_enumerate_deterministic(capsys):
    a = call(capsys, "enumerate", "gr2:4", "--no-timing")
    b = call(capsys, "enumerate", "gr2:4", "--no-timing", "--threads", "3")
    assert a == b
    rep = json.loads(a[1])
    assert rep["nodes"] == 2 and rep["mutable_variables"] == 2 and rep["type"] == "A1"


def test_enumerate_q1(capsys):
    code, out, _ = call(capsys, "enumerate", "gr3:6", "--q1")
    rep = json.loads(out)
    assert code == 0 and rep["nodes"] == rep["q1"]["nodes"] == 50
    assert set(rep) >= {"nodes", "edges", "mutable_variables", "type", "runtime_ms"}


def test_enumerate_budget_exit(capsys):
    code, out, _ = call(capsys, "enumerate", "gr2:8", "--max-nodes", "10")
    assert code == 1 and json.loads(out)["complete"] is False


def test_verify(capsys, tmp_path):
    rp = tmp_path / "r.json"
    code, out, _ = call(capsys, "verify", "gr2:5", "--report", str(rp))
    assert code == 0
    assert json.loads(out)["clusters"] == 5
    assert json.loads(rp.read_text())["passed"] is True
    code, _, _ = call(capsys, "verify", "gr2:6", "--max-nodes", "3")
    assert code == 1


def test_oracle_l(capsys):
    code, out, _ = call(capsys, "oracle-l", "gr3:7")
    data = json.loads(out)
    assert code == 0 and data["L"] == catalog.load("gr3:7").seed.L.tolist()


@pytest.mark.parametrize("argv", [
    [], ["frobnicate", "gr2:5"], ["seed", "gr2:99"], ["mutate", "gr2:5"],
    ["mutate", "gr2:5", "--seq", "77"], ["enumerate", "gr2:5", "--max-nodes", "0"],
    ["classify", "/nonexistent/file.json"], ["enumerate", "gr2:5", "--threads", "x"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_frozen_mutation_rejected(capsys):
    assert call(capsys, "mutate", "gr2:5", "--seq", "12")[0] == 2
