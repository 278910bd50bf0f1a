"""Command-line interface: subcommands, formats, exit codes, determinism."""

import json

import pytest

from engelhomology.cli import main
from engelhomology.liealg import family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# families / jacobi


def test_families_list(capsys):
    code, out, _ = run(capsys, "families", "list")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 6
    assert lines[0] == "family-1: parameters C143, C144, C234, C244"


def test_families_show_examples(capsys):
    _, out4, _ = run(capsys, "families", "show", "4")
    assert "[y2,y4] = C244 y4" in out4
    _, out1, _ = run(capsys, "families", "show", "1")
    assert "[y3,y4] = 0" in out1


def test_jacobi_family_pass(capsys):
    code, out, _ = run(capsys, "jacobi", "--family", "2")
    assert code == 0
    assert out.strip().endswith("verdict: PASS")


def test_jacobi_ansatz_open(capsys):
    code, out, _ = run(capsys, "jacobi", "--ansatz")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("ansatz parameters: C141,")
    assert len([l for l in lines if l.startswith("J(")]) == 16
    assert lines[-1] == "verdict: OPEN"


def test_jacobi_inline(tmp_path, capsys):
    good = tmp_path / "family1.json"
    good.write_text(json.dumps(family(1).to_json()), encoding="utf-8")
    code, out, _ = run(capsys, "jacobi", "--inline", str(good))
    assert code == 0 and "verdict: PASS" in out

    bad = tmp_path / "notlie.json"
    bad.write_text(json.dumps({
        "basis_dim": 4,
        "brackets": [
            {"i": 1, "j": 2, "coeffs": ["0", "0", "1", "0"]},
            {"i": 1, "j": 3, "coeffs": ["0", "0", "0", "1"]},
            {"i": 2, "j": 3, "coeffs": ["0", "0", "0", "1"]},
            {"i": 3, "j": 4, "coeffs": ["1", "0", "0", "0"]},
        ],
    }), encoding="utf-8")
    code, out, _ = run(capsys, "jacobi", "--inline", str(bad))
    assert code == 2
    assert "verdict: FAIL" in out
    assert any(line.startswith("J(") for line in out.split("\n"))


# ---------------------------------------------------------------------------
# betti


def _rows(table_text, label):
    for line in table_text.split("\n"):
        if line.strip().startswith(label):
            return line.split(":")[1].split()
    raise AssertionError(f"no {label} row in {table_text!r}")


def test_betti_tangent_reports(capsys):
    code, out, _ = run(capsys, "betti", "--family", "1",
                       "--complex", "tangent", "--weights", "0,1,2")
    assert code == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 3
    assert blocks[0].startswith("tangent weight 0 family-1")
    assert _rows(blocks[0], "KerD") == ["1", "4", "4", "1", "0"]
    assert _rows(blocks[1], "KerD") == ["6", "19", "19", "6", "0"]
    assert _rows(blocks[2], "Bett") == ["0", "1", "2", "1", "0", "0"]


def test_betti_strata_example(capsys):
    code, out, _ = run(capsys, "betti", "--family", "4",
                       "--complex", "cotangent", "--weights", "-5",
                       "--specialize", "C244=0")
    assert code == 0
    assert _rows(out, "KerD")[1] == "28"


def test_betti_csv(capsys):
    code, out, _ = run(capsys, "betti", "--family", "6",
                       "--complex", "extended", "--weights", "-2",
                       "--format", "csv")
    assert code == 0
    assert out == ("m,dim,ker,betti\n"
                   "1,4,4,1\n"
                   "2,17,14,2\n"
                   "3,28,16,1\n"
                   "4,22,7,1\n"
                   "5,8,2,2\n"
                   "6,1,1,1\n")


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "--family", "1",
                       "--complex", "cotangent", "--weights", "-5,-6",
                       "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert [d["weight"] for d in docs] == [-5, -6]
    for doc in docs:
        assert doc["algebra"] == {"id": 1, "source": "family",
                                  "params": ["C143", "C144", "C234", "C244"]}
        assert doc["mode"] == {"seed": 1729, "trials": 3,
                               "variant": "randomized"}
    assert docs[0]["rows"][1] == {"m": 2, "dim": 28, "ker": 27, "betti": 19}
    assert docs[1]["euler"] == 15


def test_betti_paper_table_alias(capsys):
    _, out, _ = run(capsys, "betti", "--family", "2",
                    "--complex", "cotangent", "--weights", "-5",
                    "--paper-table")
    assert "(caption weight 5)" in out.split("\n")[0]


def test_betti_deterministic(capsys):
    args = ("betti", "--family", "3", "--complex", "tangent",
            "--weights", "2", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_betti_output_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = run(capsys, "betti", "--family", "1",
                       "--complex", "tangent", "--weights", "0",
                       "--format", "csv", "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("m,dim,ker,betti\n")


def test_betti_inline_algebra(tmp_path, capsys):
    path = tmp_path / "f5.json"
    path.write_text(json.dumps(family(5).to_json()), encoding="utf-8")
    code, out, _ = run(capsys, "betti", "--inline", str(path),
                       "--complex", "tangent", "--weights", "0",
                       "--format", "csv")
    assert code == 0
    assert out.split("\n")[1] == "0,1,1,1"


# ---------------------------------------------------------------------------
# elc / foliation


def test_elc_symbolic_matching_type(capsys):
    code, out, _ = run(capsys, "elc", "--type", "1", "--symbolic")
    assert code == 0
    assert out == "p4*Det(3,4)^3\n"


def test_elc_symbolic_mismatch_type9(capsys):
    code, out, _ = run(capsys, "elc", "--type", "9", "--symbolic")
    assert code == 0
    assert "closed-form check: MISMATCH" in out
    assert "corrected:  -(b-1)*Det(2,4)*Det(3,4)*" \
           "(p3*Det(2,4)+b*(p4*Det(1,4)-p2*Det(3,4)))" in out


def test_elc_witness_nonzero(capsys):
    code, out, _ = run(capsys, "elc", "--type", "2",
                       "--witness", "p=0,0,0,1;q=1,0,1,0",
                       "--param", "a=2")
    assert code == 0
    assert out.strip().split("\n") == ["E-l-C = -1", "NONZERO"]


def test_elc_witness_zero_fails(capsys):
    code, out, _ = run(capsys, "elc", "--type", "5",
                       "--witness", "p=0,0,0,1;q=1,0,1,0",
                       "--param", "a=2,b=3")
    assert code == 2
    assert "ZERO" in out


def test_foliation_table(capsys):
    code, out, _ = run(capsys, "foliation", "--family", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1] == "span(C234*y1 - y2)"
    assert lines[2] == "containment re-check: PASS"


def test_foliation_json_family3(capsys):
    code, out, _ = run(capsys, "foliation", "--family", "3",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["solution"] == "span(C244*y1 - C144*y2)"
    assert doc["containment"] is True
    assert "note" in doc


# ---------------------------------------------------------------------------
# exit codes


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["betti", "--family", "1", "--complex", "tangent"])
    assert exc.value.code == 1


def test_bad_weights_exit_1(capsys):
    code, _, err = run(capsys, "betti", "--family", "1",
                       "--complex", "tangent", "--weights", "x")
    assert code == 1
    assert "error" in err


def test_constraint_violation_exits_2(capsys):
    code, _, err = run(capsys, "elc", "--type", "5",
                       "--param", "a=0,b=1", "--symbolic")
    assert code == 2
    assert "constraint violation" in err


def test_missing_parameter_exits_3(capsys):
    code, _, err = run(capsys, "betti", "--family", "1",
                       "--complex", "tangent", "--weights", "0",
                       "--mode", "specialized", "--specialize", "C144=1")
    assert code == 3
    assert "arithmetic error" in err
