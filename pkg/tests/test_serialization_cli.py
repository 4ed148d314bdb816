import io
import json

import pytest

from padic_arrangements.arrangements import Arrangement
from padic_arrangements.cli import main
from padic_arrangements.errors import InvariantViolation, ParseError
from padic_arrangements.projective import Hyperplane, canonicalize
from padic_arrangements.serialization import (
    arrangement_from_dict,
    arrangement_to_dict,
    dumps,
    load_arrangement,
    parse_members,
    point_from_dict,
    point_to_dict,
    save_arrangement,
    schema_tag,
)


def run(*argv, env=None):
    out = io.StringIO()
    code = main(list(argv), out=out, environ=env or {})
    return code, out.getvalue()


# -- documents -------------------------------------------------------------------

def test_load_valid_file(tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"flavor": "closed", "p": 2, "order": 3, "members": [[1, 0], [1, 2]]}))
    A = load_arrangement(f)
    assert len(A) == 2 and A.order == 3


def test_load_non_unimodular_member(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"flavor": "closed", "p": 3, "order": 1, "members": [[0, 3]]}))
    with pytest.raises(InvariantViolation):
        load_arrangement(f)


def test_round_trip(tmp_path):
    A = Arrangement.from_vectors("closed", 3, 2, [(1, 0, 0), (2, 3, 1), (0, 1, 4)])
    f = tmp_path / "rt.json"
    save_arrangement(A, f)
    assert load_arrangement(f) == A
    text = f.read_text()
    save_arrangement(load_arrangement(f), f)
    assert f.read_text() == text
    B = Arrangement.from_vectors("algebraic", 5, None, [(1, 0), (2, 5)])
    assert arrangement_from_dict(arrangement_to_dict(B)) == B


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"flavor": "weird", "p": 2, "order": 1, "members": [[1, 0]]},
        {"flavor": "closed", "p": 2, "members": [[1, 0]]},
        {"flavor": "closed", "p": 2, "order": 1, "members": []},
        {"flavor": "closed", "p": 2, "order": 1, "members": [[1, 0], [1, 0, 0]]},
        {"flavor": "closed", "p": "2", "order": 1, "members": [[1, 0]]},
        {"schema": "padic-arr/point/v1", "flavor": "closed", "p": 2, "order": 1, "members": [[1, 0]]},
    ],
)
def test_parse_errors(doc):
    with pytest.raises(ParseError):
        arrangement_from_dict(doc)


def test_unreadable_file(tmp_path):
    f = tmp_path / "x.json"
    f.write_text("{not json")
    with pytest.raises(ParseError):
        load_arrangement(f)
    with pytest.raises(ParseError):
        load_arrangement(tmp_path / "missing.json")


def test_duplicate_members_rejected():
    with pytest.raises(InvariantViolation):
        arrangement_from_dict({"flavor": "closed", "p": 2, "order": 1, "members": [[1, 0], [3, 2]]})


def test_point_documents():
    z = canonicalize((3, 2), 2, 2)
    doc = point_to_dict(z)
    assert doc["schema"] == schema_tag("point") == "padic-arr/point/v1"
    assert point_from_dict(doc) == z
    assert point_from_dict({"p": 2, "n": 2, "coords": [3, 2], "role": "dual"}) == Hyperplane(z)


def test_dumps_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    assert parse_members("1,0; 1,-4") == [[1, 0], [1, -4]]
    with pytest.raises(ParseError):
        parse_members("1,x")


# -- command line ------------------------------------------------------------------

def test_cli_rank_and_classify():
    code, out = run("rank", "--p", "3", "--n", "4", "--members", "1,0,0;1,9,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["rank"] == 2 and doc["schema"] == "padic-arr/rank/v1"
    code, out = run("classify-uni", "--p", "3", "--n", "4", "--members", "1,0,0;1,9,0")
    assert json.loads(out)["shape"]["beta"] == [4, 2]


def test_cli_file_input(tmp_path):
    f = tmp_path / "a.json"
    save_arrangement(Arrangement.from_vectors("closed", 2, 3, [(1, 0), (0, 1)]), f)
    code, out = run("rank", "--file", str(f))
    assert code == 0 and json.loads(out)["rank"] == 2


def test_cli_enumerate_and_project():
    code, out = run("enumerate", "--p", "2", "--n", "2", "--d", "1")
    assert code == 0 and json.loads(out)["count"] == 6
    code, _ = run("enumerate", "--p", "5", "--n", "3", "--d", "3", "--cap", "100")
    assert code == 2
    code, out = run("project", "--p", "3", "--n", "2", "--coords", "1,4", "--to", "1")
    assert json.loads(out)["target"]["coords"] == [1, 1]


def test_cli_cech_torus_xdt():
    code, out = run("cech-twisted", "--t", "2", "--alpha", "-1,2,0")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "acyclic" and doc["terms"] == [1, 2, 1]
    code, out = run("torus-h", "--t", "3")
    doc = json.loads(out)
    assert code == 0 and doc["matches_prediction"]
    code, out = run("xdt-graded", "--d", "2", "--t", "1", "--k", "0", "--cap", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["degree,rank", "2,1", "3,2", "4,3"]


def test_cli_limits_verbs():
    code, out = run("restriction-check", "--dims", "3", "--ranges", "2", "--prec", "4", "--steps", "2")
    assert code == 0 and json.loads(out)["min_exponent"] == 2
    code, out = run("filtered-check", "--p", "2", "--system", "positive")
    assert code == 0 and json.loads(out)["holds"]
    code, out = run("filtered-check", "--p", "2", "--system", "negative")
    doc = json.loads(out)
    assert code == 0 and not doc["holds"] and doc["witness"] is not None
    code, out = run("measures", "--p", "2", "--family", "1,0;1,4", "--level", "3")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and [e["size"] for e in doc["levels"]] == [1, 1, 2]
    code, out = run("kummer", "--p", "5", "--family", "1,0;0,1;1,1", "--modulus", "3", "--weights", "3,-3,0")
    doc = json.loads(out)
    assert code == 0 and doc["holds"] and doc["reduced"] == [0, 0, 0]
    code, _ = run("kummer", "--p", "5", "--family", "1,0;0,1", "--modulus", "10")
    assert code == 2
    code, out = run("logexp", "--p", "3", "--prec", "5")
    assert code == 0 and json.loads(out)["pass"]


def test_cli_text_format():
    code, out = run("rank", "--p", "2", "--n", "2", "--members", "1,0", "--format", "text")
    assert code == 0 and "rank" in out and not out.lstrip().startswith("{")


def test_cli_env_override_and_flag_precedence():
    env = {"PADIC_ARR_P": "3", "PADIC_ARR_N": "1"}
    code, out = run("enumerate", "--d", "1", env=env)
    assert code == 0 and json.loads(out)["count"] == 4
    code, out = run("enumerate", "--d", "1", "--p", "2", env=env)
    assert json.loads(out)["count"] == 3
    code, _ = run("enumerate", env={"PADIC_ARR_P": "three"})
    assert code == 2


def test_cli_config_errors():
    assert run()[0] == 2
    assert run("no-such-verb")[0] == 2
    assert run("rank", "--p", "2")[0] == 2
    assert run("rank", "--p", "2", "--n", "1", "--members", "0,2")[0] == 2
    assert run("torus-h", "--t", "9")[0] == 2
    assert run("verify-all", "--samples", "0")[0] == 2


def test_cli_verify_exit_and_determinism():
    code, first = run("verify-all", "--suite", "torus", "--seed", "0")
    assert code == 0
    _, second = run("verify-all", "--suite", "torus", "--seed", "0")
    assert first == second
    assert json.loads(first)["pass"]


def test_globals_after_or_before_verb():
    a = run("--p", "3", "enumerate", "--n", "1", "--d", "1")
    b = run("enumerate", "--p", "3", "--n", "1", "--d", "1")
    assert a == b and a[0] == 0
