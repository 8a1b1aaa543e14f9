import csv
import json

import pytest

from e10pairs.cli import CSV_HEADER, main
from e10pairs.e10 import e8_gram
from e10pairs.lattice import gram_to_json


@pytest.fixture
def gram_file(tmp_path):
    def make(g, name="g.json"):
        path = tmp_path / name
        path.write_text(gram_to_json(g))
        return str(path)

    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_symbol(capsys, gram_file):
    code, out, _ = run(capsys, "symbol", "--gram", gram_file(((2, 3), (3, 2))), "--p", "2")
    assert code == 0 and json.loads(out)["text"] == "1^{-2}_II"
    code, out, _ = run(capsys, "symbol", "--gram", gram_file(((2, 3), (3, 2))), "--p", "5")
    assert json.loads(out)["text"] == "1^{-1} 5^{-1}"
    code, out, _ = run(capsys, "symbol", "--gram", gram_file(((2, 3), (3, 2))))
    assert json.loads(out)["det"] == -5


def test_symbol_errors(capsys, gram_file, tmp_path):
    assert run(capsys, "symbol", "--gram", gram_file(((2, 2), (2, 2))), "--p", "2")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "symbol", "--gram", str(bad), "--p", "2")[0] == 2
    assert run(capsys, "symbol", "--gram", str(tmp_path / "missing.json"))[0] == 5
    assert run(capsys, "symbol")[0] == 2


def test_mass(capsys, gram_file):
    code, out, _ = run(capsys, "mass", "--k", "3", "--method", "both")
    data = json.loads(out)
    assert code == 0 and data["closed"]["coeff_den"] == 14515200 and data["equal"] is False
    code, out, _ = run(capsys, "mass", "--k", "3", "--method", "both", "--corrected")
    assert json.loads(out)["equal"] is True
    code, out, _ = run(capsys, "mass", "--k", "6", "--method", "closed")
    assert json.loads(out)["closed"] == {**json.loads(out)["closed"], "coeff_num": 1, "coeff_den": 30240 * 1024, "d": 32}
    code, out, _ = run(capsys, "mass", "--gram", gram_file(e8_gram()), "--method", "stepwise")
    data = json.loads(out)
    assert data["exact"] == "1/696729600"
    lo, hi = data["stepwise"]["numeric"]
    assert float(lo) <= 1 / 696729600 <= float(hi)


def test_mass_errors(capsys, gram_file):
    assert run(capsys, "mass", "--gram", gram_file(((2, -1), (-1, 2))), "--method", "stepwise")[0] == 4
    odd = [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    odd[1][1], odd[2][2] = 2, 4
    code, _, err = run(capsys, "mass", "--gram", gram_file(odd), "--method", "stepwise")
    assert code == 4 and "2^0" in err
    assert run(capsys, "mass", "--k", "2")[0] == 2
    assert run(capsys, "mass")[0] == 2


def test_bound(capsys, tmp_path):
    code, out, _ = run(capsys, "bound", "--k-min", "3", "--k-max", "10")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and tuple(rows[0]) == CSV_HEADER and len(rows) == 9
    lows = [float(r[7]) for r in rows[1:]]
    assert lows == sorted(lows)
    code, out, _ = run(capsys, "bound", "--k", "3")
    row = list(csv.reader(out.splitlines()))[1]
    assert float(row[7]) >= 5.9e-17 * (1 - 1e-3)
    path = tmp_path / "b.csv"
    assert run(capsys, "bound", "--k", "4", "--out", str(path))[0] == 0
    assert path.read_text().startswith("k,d,e2_case")
    assert run(capsys, "bound", "--k-min", "2", "--k-max", "4")[0] == 2
    assert run(capsys, "bound", "--k", "3", "--out", str(tmp_path / "no" / "x.csv"))[0] == 5


def test_output_is_deterministic(capsys):
    first = run(capsys, "bound", "--k-min", "3", "--k-max", "6")[1]
    second = run(capsys, "bound", "--k-min", "3", "--k-max", "6")[1]
    assert first == second
    a = run(capsys, "complement", "--k", "4", "--method", "construct")[1]
    b = run(capsys, "complement", "--k", "4", "--method", "construct")[1]
    assert a == b


def test_pair_complement_glue(capsys):
    code, out, _ = run(capsys, "pair", "--k", "-1", "--max-word-len", "30")
    data = json.loads(out)
    assert data["found"] and data["prenilpotent"] and data["positivize"] == []
    assert json.loads(run(capsys, "pair", "--k", "3")[1])["found"] is False
    data = json.loads(run(capsys, "pair", "--k", "3", "--method", "construct")[1])
    assert data["found"] and data["saturated"] and data["span_gram"] == [[2, 3], [3, 2]]
    data = json.loads(run(capsys, "complement", "--k", "5", "--method", "construct")[1])
    assert data["det"] == 21 and data["sig"] == [8, 0] and data["even"]
    assert run(capsys, "complement", "--k", "5")[0] == 2
    data = json.loads(run(capsys, "glue", "--k", "3", "--method", "construct")[1])
    assert data["anti_isometries"] == 2
    assert all(g["det"] == -1 and g["sig"] == [9, 1] and g["even"] for g in data["glues"])


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "theorem1", "--k-max", "20")
    assert code == 0 and json.loads(out)["passed"]
    code, out, err = run(capsys, "verify", "--suite", "lemma4", "--k-max", "10")
    assert code == 1 and json.loads(out)["first_failure"] == "lemma4:mass_stepwise_vs_closed"
    assert "mass_stepwise_vs_closed" in err
