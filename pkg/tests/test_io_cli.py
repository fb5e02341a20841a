import json

import pytest
from hypothesis import given, settings

from novikov.cli import main
from novikov.constructions import binomial_mishchenko, build, example1, mishchenko, truncated_witt
from novikov.io import DefinitionError, definition_of, dumps_definition, loads_definition, read_definition, write_definition
from novikov.suite import perturb

from .strategies import algebras

SAMPLES = [
    example1(),
    truncated_witt(6),
    mishchenko(4),
    binomial_mishchenko(3, "F7"),
    build("gelfand-dorfman", d=5, seed=11),
]


@pytest.mark.parametrize("A", SAMPLES, ids=str)
def test_byte_round_trip(A, tmp_path):
    text = dumps_definition(A)
    B = loads_definition(text)
    assert B == A and B.labels == A.labels
    assert dumps_definition(B) == text
    path = tmp_path / "a.json"
    write_definition(A, path)
    assert path.read_text() == text and read_definition(path) == A


@given(algebras(max_dim=4))
@settings(max_examples=60, deadline=None)
def test_round_trip_random(A):
    text = dumps_definition(A)
    assert dumps_definition(loads_definition(text)) == text


def test_canonicalization():
    raw = {
        "field": {"kind": "rationals"},
        "dim": 2,
        "table": [
            {"i": 1, "j": 0, "terms": [{"k": 1, "c": "2/4"}, {"k": 0, "c": 0}]},
            {"i": 0, "j": 1, "terms": [{"k": 1, "c": "1"}, {"k": 0, "c": "3"}, {"k": 0, "c": "-3"}]},
        ],
    }
    A = loads_definition(json.dumps(raw))
    d = definition_of(A)
    assert d["basis"] == ["e0", "e1"]
    assert d["table"] == [
        {"i": 0, "j": 1, "terms": [{"k": 1, "c": "1"}]},
        {"i": 1, "j": 0, "terms": [{"k": 1, "c": "1/2"}]},
    ]


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"field": ', "line 1, column 11"),
        ("[]", "top level"),
        ('{"dim": 1, "table": []}', "missing field 'field'"),
        ('{"field": {"kind": "prime-field", "p": 9}, "dim": 1, "table": []}', "divisible by 3"),
        ('{"field": {"kind": "rationals"}, "dim": 0, "table": []}', "dim"),
        ('{"field": {"kind": "rationals"}, "dim": 1, "table": [{"i": 0, "j": 0, "terms": [{"k": 0, "c": 0.5}]}]}', "table[0].terms[0].c"),
        ('{"field": {"kind": "rationals"}, "dim": 1, "table": [{"i": 0, "terms": []}]}', "table[0]: missing field 'j'"),
        ('{"field": {"kind": "rationals"}, "dim": 2, "table": [{"i": 0, "j": 0, "terms": [{"k": 2, "c": "1"}]}]}', "out of range"),
        ('{"field": {"kind": "rationals"}, "dim": 1, "table": [{"i": 0, "j": 0, "terms": [{"k": 0, "c": "x"}]}]}', "unparsable"),
        ('{"field": {"kind": "rationals"}, "dim": 1, "basis": [1], "table": []}', "basis"),
    ],
)
def test_malformed_definitions(text, message):
    with pytest.raises(DefinitionError) as info:
        loads_definition(text, "f.json")
    assert message in str(info.value) and str(info.value).startswith("f.json")


def test_missing_file(tmp_path):
    with pytest.raises(DefinitionError, match="No such file"):
        read_definition(tmp_path / "absent.json")


# command line


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, A in {
        "example1": example1(),
        "m3": mishchenko(3),
        "m5": mishchenko(5),
        "m6": mishchenko(6),
        "w6": truncated_witt(6),
        "bad": perturb(truncated_witt(5), 1, 1, 2, 1),
        "b2": binomial_mishchenko(3, "F2"),
        "zero": build("gelfand-dorfman", d=1),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        write_definition(A, paths[name])
    (tmp_path / "malformed.json").write_text('{"field": {"kind": "rationals"}, "dim": 2,\n "table": [}')
    paths["malformed"] = tmp_path / "malformed.json"
    return paths


def test_construct(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "example1", "--field", "Q")
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 2 and len(doc["table"]) == 1
    code, _, _ = run(capsys, "construct", "mishchenko", "--d", 4, "--field", "Q", "-o", tmp_path / "m.json")
    assert code == 0 and read_definition(tmp_path / "m.json").dim == 8
    code, _, err = run(capsys, "construct", "truncated-witt", "--d", 0)
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "construct", "mishchenko", "--d", 2, "--field", "Fp", "--p", 6)
    assert code == 2 and "divisible by 2" in err
    code, out, _ = run(capsys, "construct", "binomial-mishchenko", "--d", 2, "--field", "Fp", "--p", 5)
    assert code == 0 and json.loads(out)["field"] == {"kind": "prime-field", "p": 5}
    code, _, err = run(capsys, "construct", "gelfand-dorfman", "--seed", 4, "-o", tmp_path / "g.json")
    assert code == 0 and "seed 4" in err


def test_validate(capsys, files):
    assert run(capsys, "validate", files["m3"])[0] == 0
    code, out, _ = run(capsys, "validate", files["bad"])
    assert code == 1 and "(e1, e1, e2)" in out
    code, out, _ = run(capsys, "validate", files["bad"], "--json")
    assert json.loads(out)["witness"] == ["e1", "e1", "e2"]
    code, _, err = run(capsys, "validate", files["malformed"])
    assert code == 2 and "line 2" in err


def test_report(capsys, files):
    code, out, _ = run(capsys, "report", files["example1"], "--json")
    r = json.loads(out)
    assert code == 0
    assert (r["right_power"]["index"], r["derived"]["index"], r["nilpotent"]) == (3, 2, False)
    code, out, _ = run(capsys, "report", files["m5"], "--json")
    assert json.loads(out)["lie_derived"]["index"] == 3
    code, out, _ = run(capsys, "report", files["zero"], "--json")
    r = json.loads(out)
    assert (r["power"]["index"], r["right_power"]["index"], r["derived"]["index"], r["lie_derived"]["index"]) == (2, 2, 1, 1)
    code, out, _ = run(capsys, "report", files["m5"])
    assert code == 0 and "Lie-solvable" in out and "index 3" in out
    code, out, _ = run(capsys, "report", files["bad"])
    assert code == 1 and "not a Novikov algebra" in out


def test_report_json_stable(capsys, files):
    a = run(capsys, "report", files["m6"], "--json")[1]
    b = run(capsys, "report", files["m6"], "--json")[1]
    assert a == b and list(json.loads(a)) == sorted(json.loads(a))


def test_identity(capsys, files):
    assert run(capsys, "identity", files["w6"], "--id", "f2")[0] == 0
    code, out, _ = run(capsys, "identity", files["m3"], "--id", "g1", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail" and all(isinstance(s, str) for s in doc["witness"])
    code, out, _ = run(capsys, "identity", files["b2"], "--id", "f12")
    assert code == 3 and "hypothesis not satisfied" in out
    code, out, _ = run(capsys, "identity", files["w6"], "--expr", "(x1*x2)*x3 - (x1*x3)*x2")
    assert code == 0
    code, _, err = run(capsys, "identity", files["w6"], "--expr", "x1*(x1*x2)")
    assert code == 2 and "multilinear" in err
    code, _, err = run(capsys, "identity", files["w6"], "--id", "nope")
    assert code == 2


def test_theorems(capsys, files):
    code, out, _ = run(capsys, "theorems", files["m6"])
    assert code == 0 and "T1" in out and "pass" in out
    code, out, _ = run(capsys, "theorems", files["m6"], "--json")
    doc = json.loads(out)
    assert doc["items"][0]["checks"]["T1"]["status"] == "pass"
    code, out, _ = run(capsys, "theorems", files["bad"])
    assert code == 1 and "not a Novikov algebra" in out
    code, _, _ = run(capsys, "theorems")
    assert code == 2


@pytest.mark.slow
def test_theorems_default_corpus(capsys):
    code, out, _ = run(capsys, "theorems", "--corpus", "default", "--seed", 5)
    assert code == 0 and "seed 5" in out and "98 instances, 0 failures" in out
    code, out, _ = run(capsys, "theorems", "--corpus", "default", "--json")
    doc = json.loads(out)
    assert doc["seed"] == 20211 and doc["failures"] == 0
