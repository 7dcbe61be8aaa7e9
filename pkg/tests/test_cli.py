import json

import pytest

from kirbycalc import alexander, cli
from kirbycalc.errors import InvariantViolation
from kirbycalc.forms import E8_MATRIX
from knots import HOPF_PD, KNOT_942_PD, TREFOIL_FRONT, TREFOIL_PD


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out + out.err


def write(path, doc):
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def test_form_e8(tmp_path, capsys):
    f = write(tmp_path / "e8.json", {"matrix": [list(r) for r in E8_MATRIX]})
    status, out = run_cli(capsys, "form", "--in", f)
    rep = json.loads(out)
    assert status == 0
    assert rep["invariants"]["signature"] == 8 and rep["obstructions"]["mu"] == 1
    assert rep["e8"] == "E8"


def test_alexander_trefoil(capsys):
    status, out = run_cli(capsys, "alexander", "--pd", TREFOIL_PD)
    rep = json.loads(out)
    assert status == 0
    assert rep["alexander_text"] == "t - 1 + t^-1" and rep["determinant"] == 3
    assert rep["fox_milnor"]["det_square"] is False


def test_moves_script(tmp_path, capsys):
    link = write(tmp_path / "hopf_n5.json", {"pd": HOPF_PD, "framings": [0, 5]})
    script = write(tmp_path / "slides.json", [{"op": "slide", "i": 1, "j": 0, "eps": -1}] * 2)
    status, out = run_cli(capsys, "moves", "--in", link, "--script", script)
    rep = json.loads(out)
    assert status == 0
    assert rep["final"] == [[0, 1], [1, 1]] and rep["verified"] is True
    A = rep["basis_change"]
    Q = rep["initial"]
    assert [[sum(A[k][i] * Q[k][l] * A[l][j] for k in range(2) for l in range(2))
             for j in range(2)] for i in range(2)] == rep["final"]


def test_batch(tmp_path, capsys):
    write(tmp_path / "a.txt", TREFOIL_PD)
    write(tmp_path / "b.txt", KNOT_942_PD)
    write(tmp_path / "c.json", {"pd": TREFOIL_PD})
    status, out = run_cli(capsys, "alexander", "--in", str(tmp_path))
    rows = json.loads(out)["rows"]
    assert status == 0
    assert [r["file"] for r in rows] == ["a.txt", "b.txt", "c.json"]
    assert [r["result"]["determinant"] for r in rows] == [3, 7, 3]


def test_batch_isolates_bad_row(tmp_path, capsys):
    write(tmp_path / "a.txt", TREFOIL_PD)
    write(tmp_path / "b.txt", "X(1,2,3)")
    write(tmp_path / "c.json", "{not json")
    status, out = run_cli(capsys, "alexander", "--in", str(tmp_path))
    rows = json.loads(out)["rows"]
    assert status == 1
    assert [r["status"] for r in rows] == ["ok", "error", "error"]
    assert rows[0]["result"]["determinant"] == 3


def test_empty_directory(tmp_path, capsys):
    assert run_cli(capsys, "alexander", "--in", str(tmp_path))[0] == 1


def test_schema_error_location(tmp_path, capsys):
    f = write(tmp_path / "h.json", {"one_handles": ["x"],
                                    "two_handles": [{"word": [["x", 2]], "framing": 0}]})
    status, out = run_cli(capsys, "homology", "--in", f)
    assert status == 1 and "/two_handles/0/word/0/1" in out


def test_invariant_violation_exit(monkeypatch, capsys):
    def broken(*a, **k):
        raise InvariantViolation("forced")
    monkeypatch.setattr(cli, "alexander_polynomial", broken)
    assert run_cli(capsys, "alexander", "--pd", TREFOIL_PD)[0] == 2


def test_missing_input(capsys):
    assert run_cli(capsys, "form")[0] == 1
    with pytest.raises(SystemExit):
        cli.main(["frobnicate", "--pd", TREFOIL_PD])


def test_output_deterministic(tmp_path, capsys):
    f = write(tmp_path / "t.json", {"events": [list(e) for e in TREFOIL_FRONT]})
    first = run_cli(capsys, "legendrian", "--in", f)
    assert first == run_cli(capsys, "legendrian", "--in", f)
    assert first[0] == 0


def test_text_is_derived_from_json(capsys):
    _, js = run_cli(capsys, "invariants", "--pd", HOPF_PD, "--framings", "0 5")
    _, txt = run_cli(capsys, "invariants", "--pd", HOPF_PD, "--framings", "0 5", "--format", "text")
    rep = json.loads(js)
    lines = dict(line.split(": ", 1) for line in txt.strip().splitlines())
    assert json.loads(lines["linking_matrix"]) == rep["linking_matrix"] == [[0, 1], [1, 5]]


def test_library_parity(capsys):
    _, out = run_cli(capsys, "alexander", "--pd", KNOT_942_PD)
    from kirbycalc.linkdiag import parse_pd
    poly = alexander.alexander_polynomial(parse_pd(KNOT_942_PD).diagram)
    assert json.loads(out)["alexander_text"] == str(poly)
