import json

import pytest

from fanomonads.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delta_quadric_k3(capsys):
    code, out, _ = run(capsys, "delta", "--geometry", "quadric", "--k", "3", "--trials", "5",
                       "--prime", "32003", "--seed", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == 1
    certified = [t for t in doc["report"]["trials"] if t["certified"]]
    assert len(certified) == 5
    assert all(t["delta"] == 12 for t in certified)


def test_sample_then_validate(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, _, _ = run(capsys, "sample", "--geometry", "v5", "--k", "2", "--seed", "7", "--output", str(path))
    assert code == 0
    code, out, _ = run(capsys, "validate", "--input", str(path))
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["passed"] and rep["cohomology_ranks"] == [2] and rep["reassembly_ok"]


def test_jumping_k4(capsys):
    code, out, _ = run(capsys, "jumping", "--geometry", "quadric", "--k", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == 6 and doc["hilbert_burch"]


def test_output_is_deterministic(capsys):
    args = ("sample", "--geometry", "v22", "--k", "2", "--seed", "3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


@pytest.mark.parametrize("args", [
    ("delta", "--geometry", "v5", "--k", "9"),
    ("sample", "--geometry", "quadric", "--k", "7"),
    ("dd", "--k", "3", "--prime", "15"),
    ("chi", "--geometry", "quadric", "--k", "0"),
    ("pencil", "--diagonal", "1,2,3"),
])
def test_config_errors_exit_2(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2
    assert "error" in json.loads(err)


def test_unsupported_k_message_names_range(capsys):
    _, _, err = run(capsys, "delta", "--geometry", "v5", "--k", "9")
    assert "2..4" in json.loads(err)["error"]


def test_validate_reports_failure(capsys, tmp_path):
    path = tmp_path / "s.json"
    run(capsys, "sample", "--geometry", "quadric", "--k", "3", "--seed", "2", "--output", str(path))
    doc = json.loads(path.read_text())
    # break the sampled tensor: zero the first block row so the fibre map drops rank
    nested = doc["monad"]["A"]
    nested[0] = [[0] * len(r) for r in nested[0]]
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", "--input", str(path), "--npoints", "20")
    assert code == 1
    assert not json.loads(out)["report"]["passed"]


def test_other_commands(capsys):
    assert run(capsys, "dd", "--k", "3")[0] == 0
    code, out, _ = run(capsys, "dd", "--k", "3", "--degenerate")
    assert json.loads(out)["verdict"] == "zero"
    code, out, _ = run(capsys, "semistable", "--k", "2", "--net", "zero")
    doc = json.loads(out)
    assert doc["witness"]["verdict"] == "unstable" and doc["verified"]
    code, out, _ = run(capsys, "pencil", "--diagonal", "0,1,2,3,4,5")
    assert json.loads(out)["smooth"]
    code, out, _ = run(capsys, "chi", "--geometry", "v5", "--k", "4")
    assert code == 0 and json.loads(out)["identity"]
    code, out, _ = run(capsys, "apolar", "--seed", "2")
    assert json.loads(out)["quartic"]["degree"] == 4
