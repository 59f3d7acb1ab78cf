"""Serialization round trips and the command-line surface."""

import json

import pytest

import matflock as mf
from matflock import jsonio
from matflock.cli import main
from matflock.discrete_convex import WindowFunction

from conftest import example_param, toric_example, u24_valuation


# ---------------------------------------------------------------------------
# serialization round trips

def test_matroid_round_trip():
    for M in (mf.uniform_matroid(2, 4), mf.fano_matroid(), mf.lazarson(2, "full")):
        assert jsonio.matroid_from_json(matroid := jsonio.matroid_to_json(M)) == M
        json.dumps(matroid)


def test_matrix_round_trip():
    from fractions import Fraction
    rows = ((1, Fraction(1, 2)), (Fraction(-3, 4), 0))
    doc = jsonio.matrix_to_json(rows)
    assert doc == {"rows": [[1, "1/2"], ["-3/4", 0]]}
    assert jsonio.matrix_from_json(doc) == rows


def test_matrix_rejects_floats():
    with pytest.raises(jsonio.InputError):
        jsonio.matrix_from_json({"rows": [[0.5]]})


def test_valuation_round_trip():
    nu = u24_valuation()
    doc = jsonio.valuation_to_json(nu)
    assert jsonio.valuation_from_json(doc) == nu
    # omitted bases default to infinity
    partial = {"ground": [1, 2, 3, 4], "d": 2,
               "values": [{"basis": [1, 2], "value": 0},
                          {"basis": [3, 4], "value": "inf"}]}
    got = jsonio.valuation_from_json(partial)
    assert got.value([1, 2]) == 0 and got.value([3, 4]) == mf.INF


def test_window_function_round_trip():
    f = WindowFunction(2, (-1, -1), (1, 1), {(0, 0): 3, (1, 1): -2})
    assert jsonio.window_function_from_json(jsonio.window_function_to_json(f)) == f


def test_toric_and_linearized_round_trip():
    rep = toric_example(2)
    assert jsonio.toric_from_json(jsonio.toric_to_json(rep)) == rep
    param = example_param(2, 2)
    assert jsonio.linearized_from_json(jsonio.linearized_to_json(param)) == param


def test_p_mismatch_rejected():
    with pytest.raises(jsonio.InputError):
        jsonio.toric_from_json(jsonio.toric_to_json(toric_example(2)), p_override=3)


def test_explicit_flock_from_json():
    doc = {"radius": 1, "entries": [
        {"alpha": [0, 0], "matroid": {"ground": [1, 2], "rank": 1,
                                      "bases": [[1], [2]]}},
        {"alpha": [1, 0], "matroid": {"ground": [1, 2], "rank": 1,
                                      "bases": [[1]]}},
    ]}
    flock = jsonio.explicit_flock_from_json(doc)
    assert sorted(flock.matroid_at((1, 0)).bases) == [(1,)]


# ---------------------------------------------------------------------------
# CLI

def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_cli_check_valuation(tmp_path, capsys):
    path = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    assert main(["check-valuation", path]) == 0
    assert json.loads(capsys.readouterr().out) == {"valid": True}


def test_cli_check_matroid_reports_violation_as_data(tmp_path, capsys):
    path = write(tmp_path, "m.json",
                 {"ground": [1, 2, 3, 4], "rank": 2, "bases": [[1, 2], [3, 4]]})
    assert main(["check-matroid", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["valid"] is False and out["kind"] == "B2"


def test_cli_lindstrom_toric(tmp_path, capsys):
    path = write(tmp_path, "A.json", {"rows": [[1, 0, 1, 1], [0, 1, 1, 2]]})
    assert main(["lindstrom-toric", "--p", "2", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {"basis": [1, 4], "value": 1} in doc["values"]
    assert jsonio.valuation_from_json(doc) == mf.lindstrom_toric(toric_example(2))


def test_cli_flock_from_linearized(tmp_path, capsys):
    path = write(tmp_path, "ex.json", jsonio.linearized_to_json(example_param(2, 2)))
    assert main(["flock-from-linearized", "--p", "2", path,
                 "--alpha", "0,-2,-2,0"]) == 0
    M = jsonio.matroid_from_json(json.loads(capsys.readouterr().out))
    assert M.parallel_pairs() == ((2, 3),)


def test_cli_extract_and_check_flock(tmp_path, capsys):
    vpath = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    assert main(["extract-valuation", "--from-valuation", vpath]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert jsonio.valuation_from_json(doc) == u24_valuation()
    assert main(["check-flock", "--from-valuation", vpath, "--radius", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["valid"] is True and doc["mf1"]["failed"] == 0


def test_cli_rigidity_and_lazarson(capsys):
    assert main(["rigidity", "--name", "fano"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "rigid"
    assert main(["rigidity", "--name", "uniform(2,4)"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "not_rigid" and "witness" in doc
    assert main(["lazarson", "--n", "2", "--variant", "minus"]) == 0
    M = jsonio.matroid_from_json(json.loads(capsys.readouterr().out))
    assert len(M.masks) == 29
    assert main(["lazarson-check", "--n", "4", "--p", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["divisible"] is True


def test_cli_cells_and_leaders(tmp_path, capsys):
    vpath = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    assert main(["cells", vpath, "--beta", "0,0,0,0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["matroid"]["bases"] == [[1, 3], [1, 4], [2, 3], [2, 4]]
    assert main(["leaders", vpath]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["complete"] is True
    assert [[0, 0, -1, -1], [0, 0, 1, 1]] == doc["zero_dimensional_cells"]


def test_cli_svg(tmp_path):
    vpath = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    out = tmp_path / "cells.svg"
    assert main(["--out", str(out), "cells", vpath, "--svg",
                 "--axes", "3,4", "--radius", "3"]) == 0
    text = out.read_text()
    assert text.startswith("<svg") and "<rect" in text
    import xml.dom.minidom
    xml.dom.minidom.parseString(text)


def test_cli_fenchel(tmp_path, capsys):
    f = mf.valuation_point_function(u24_valuation())
    path = write(tmp_path, "f.json", jsonio.window_function_to_json(f))
    assert main(["fenchel", path, "--lo=-2,-2,-2,-2", "--hi", "2,2,2,2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    got = jsonio.window_function_from_json(doc)
    assert got((0, 0, 0, 0)) == mf.g_value(u24_valuation(), (0, 0, 0, 0))


def test_cli_g_value_matroid_at_support(tmp_path, capsys):
    vpath = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    assert main(["g-value", vpath, "--alpha", "1,0,0,0"]) == 0
    assert json.loads(capsys.readouterr().out)["g"] == 1
    assert main(["matroid-at", vpath, "--alpha", "2,0,1,0"]) == 0
    assert json.loads(capsys.readouterr().out)["bases"] == [[1, 3]]
    assert main(["support", vpath]) == 0
    assert len(json.loads(capsys.readouterr().out)["bases"]) == 6


def test_cli_check_ff(tmp_path, capsys):
    path = write(tmp_path, "ex.json", jsonio.linearized_to_json(example_param(2, 1)))
    assert main(["check-ff", path, "--radius", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True


def test_cli_check_flock_explicit_table(tmp_path, capsys):
    nu = mf.Valuation.from_values([1, 2], 1, {(1,): 0, (2,): 0})
    entries = []
    for k in range(-3, 4):
        for l in range(-3, 4):
            entries.append({"alpha": [k, l],
                            "matroid": jsonio.matroid_to_json(mf.matroid_at(nu, (k, l)))})
    path = write(tmp_path, "table.json", {"radius": 3, "entries": entries})
    assert main(["check-flock", "--explicit", path, "--radius", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True


def test_cli_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    assert main(["check-valuation", str(bad)]) == 2
    assert main(["check-valuation", str(tmp_path / "missing.json")]) == 2
    vpath = write(tmp_path, "v.json", jsonio.valuation_to_json(u24_valuation()))
    assert main(["matroid-at", vpath, "--alpha", "1,2"]) == 2
    capsys.readouterr()


def test_cli_domain_errors_exit_1(tmp_path, capsys):
    path = write(tmp_path, "A.json", {"rows": [[2, 0], [0, 2]]})
    assert main(["lindstrom-toric", "--p", "2", path]) == 2  # rejected at parse
    # unsaturated matrix embedded in a toric document also fails cleanly
    path2 = write(tmp_path, "t.json", {"p": 2, "A": [[2, 0], [0, 2]]})
    assert main(["lindstrom-toric", path2]) == 2
    capsys.readouterr()
