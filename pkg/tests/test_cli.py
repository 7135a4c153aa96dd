import csv
import io
import json

import numpy as np
import pytest

from lorcal.cli import main

FULL_TURN = '{"E":[0,0,0],"B":[0,0,6.283185307179586]}'
ZERO = '{"E":[0,0,0],"B":[0,0,0]}'


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_exp_full_turn_warns(capsys):
    code, text = run("exp", "--op", FULL_TURN)
    assert code == 0
    d = json.loads(text)
    np.testing.assert_allclose(d["matrix"], np.eye(4), atol=1e-14)
    assert d["warning"]["n"] == 1
    assert "singular" in capsys.readouterr().err


def test_exp_zero_no_warning():
    code, text = run("exp", "--op", ZERO)
    d = json.loads(text)
    assert code == 0 and "warning" not in d
    assert d["matrix"] == np.eye(4).tolist()


def test_log_of_exp_roundtrip():
    op = {"E": [0.3, -0.4, 0.1], "B": [0.2, 1.1, -0.5]}
    _, text = run("exp", "--op", json.dumps(op))
    code, back = run("log", "--matrix", text)
    assert code == 0
    d = json.loads(back)
    np.testing.assert_allclose(d["E"], op["E"], atol=1e-8)
    np.testing.assert_allclose(d["B"], op["B"], atol=1e-8)


@pytest.mark.parametrize("argv, field", [
    (("exp", "--op", '{"E":[0,0],"B":[0,0,0]}'), "--op"),
    (("exp", "--op", '{"E":[0,0,0]'), "--op"),
    (("exp", "--op", '[1,2]'), "--op"),
    (("exp", "--op", '{"E":["a",0,0],"B":[0,0,0]}'), "--op"),
    (("dexp", "--op", ZERO, "--dir", '{"B":[0,0,0]}'), "--dir"),
    (("compose", "--ops", f"[{ZERO}, 3]"), "--ops[1]"),
    (("log", "--matrix", "[[1,0],[0,1]]"), "--matrix"),
    (("log", "--matrix", json.dumps(np.diag([1.0, -1, 1, 1]).tolist())), "--matrix"),
    (("singularity", "--op", ZERO), "--op"),
    (("em-field", "--q", "1", "--r", "1", "--w", "0,0", "--a", "1,0,0"), "--w"),
    (("em-field", "--q", "1", "--r", "0", "--w", "0,0,1", "--a", "1,0,0"), "--r"),
    (("em-field", "--q", "1", "--a", "1,0,0"), "--r"),
    (("verify-all", "--only", "12"), "--only"),
    (("verify-identities", "--seeds", "0"), "--seeds"),
])
def test_malformed_input_exits_2(argv, field, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert f"error: {field}" in capsys.readouterr().err


def test_log_branch_boundary_exits_2(capsys):
    _, text = run("exp", "--op", '{"E":[0,0,0],"B":[0,0,3.141592653589793]}')
    assert run("log", "--matrix", text)[0] == 2
    assert "negative real axis" in capsys.readouterr().err


def test_dexp_routes():
    G = '{"E":[1,0,0],"B":[0,0,0]}'
    for route in ("helgason", "closed_form", "finite_difference"):
        code, text = run("dexp", "--op", FULL_TURN, "--dir", G, "--route", route)
        assert code == 0
        assert np.max(np.abs(json.loads(text)["matrix"])) < 1e-6


def test_singularity_report():
    code, text = run("singularity", "--op", FULL_TURN)
    d = json.loads(text)
    assert code == 0 and d["is_singular"] and d["n"] == 1 and d["rank"] == 2
    assert len(d["kernel_basis"]) == 4 and len(d["complement_basis"]) == 2


def test_compose():
    code, text = run("compose", "--ops", '[{"E":[0.3,0,0],"B":[0,0,0]},{"E":[0,0,0],"B":[0,0.2,0]}]')
    d = json.loads(text)
    assert code == 0 and d["jacobian_rank"] == 6
    assert np.shape(d["matrix"]) == (4, 4)


def test_classify():
    _, text = run("classify", "--op", '{"E":[1,0,0],"B":[0,1,0]}')
    d = json.loads(text)
    assert d["class"] == "null" and len(d["null_eigenvectors"]) == 1
    _, text = run("classify", "--op", ZERO)
    assert json.loads(text)["class"] == "zero"


def test_basis_table():
    code, text = run("basis-table")
    d = json.loads(text)
    assert code == 0 and d["relation_failures"] == [] and d["alpha_normalization"] == 2.0
    assert len(d["products"]) == 16


def test_em_field_single_state():
    code, text = run("em-field", "--q", "1", "--r", "1", "--w", "0,0,1", "--a", "1,0,0")
    d = json.loads(text)
    assert code == 0
    assert d["F_a"] == {"E": [-1.0, 0.0, 1.0], "B": [0.0, -1.0, 0.0]}


def test_em_field_grid_csv():
    code, text = run("em-field", "--q", "1", "--a", "0.5,0,0", "--grid", "0.5,1,2", "--directions", "4")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 12
    assert list(rows[0])[-1] == "class"
    for row in rows:
        assert abs(float(row["lambda_sq_re"]) - float(row["r"]) ** -4) < 1e-9


def test_verify_identities_json_and_determinism():
    a = run("verify-identities", "--seeds", "10", "--seed", "3", "--json")
    b = run("verify-identities", "--seeds", "10", "--seed", "3", "--json")
    assert a[0] == 0
    da, db = json.loads(a[1]), json.loads(b[1])
    assert da["pass"] and da["identities"] == db["identities"]
    assert da["t_operator_normalization"]["closed_forms_need"] == "half"


def test_verify_identities_tolerance_override(monkeypatch):
    monkeypatch.setenv("LORCAL_TOL", "1e-30")
    assert run("verify-identities", "--seeds", "3")[0] == 1
    monkeypatch.setenv("LORCAL_TOL", "bogus")
    assert run("verify-identities", "--seeds", "3")[0] == 2


def test_verify_all_subset():
    code, text = run("verify-all", "--only", "4", "--json")
    d = json.loads(text)
    assert code == 0 and d["pass"] and list(d["sweeps"]) == ["4:basis_exactness"]
