import json
from importlib.resources import files

import pytest

from stratos.cli import EXIT_INVALID, EXIT_OK, EXIT_USAGE, Config, run
from stratos.errors import InputError

DATA = files("stratos") / "data"


def path(name):
    return str(DATA / name)


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_alex_roundtrip(capsys):
    for name in ("pseudocircle.json", "circle8.json", "point.json"):
        assert invoke(capsys, "alex", "roundtrip", path(name)) == (EXIT_OK, "OK\n", "")


def test_alex_conversions(tmp_path, capsys):
    code, out, _ = invoke(capsys, "alex", "to-space", path("pseudocircle.json"))
    assert code == EXIT_OK
    space = json.loads(out)
    assert space["schema"] == "stratos/space@1"
    f = tmp_path / "space.json"
    f.write_text(out)
    code, out, _ = invoke(capsys, "alex", "to-poset", str(f))
    assert code == EXIT_OK
    assert sorted(map(tuple, json.loads(out)["relations"])) == sorted(
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
    )


def test_homset_dot_is_a_two_chain(tmp_path, capsys):
    dot = tmp_path / "out.dot"
    code, out, _ = invoke(capsys, "homset", path("pseudocircle.json"), path("pseudocircle.json"), "--flavor", "R", "--dot", str(dot))
    assert code == EXIT_OK
    assert len(json.loads(out)["classes"]) == 5
    text = dot.read_text()
    assert "rankdir=BT" in text
    edges = [line for line in text.splitlines() if "->" in line]
    assert edges == ['  "[a,a,a,a]" -> "[a,b,c,d]";']


def test_strata(capsys):
    code, out, _ = invoke(capsys, "strata", path("pseudocircle_strata.json"))
    assert code == EXIT_OK
    assert json.loads(out)["schema"] == "stratos/strata@1"


def test_homology(capsys):
    code, out, _ = invoke(capsys, "homology", path("pseudocircle.json"), "-n", "1")
    assert code == EXIT_OK
    assert json.loads(out)["group"]["text"] == "Z"
    code, out, _ = invoke(capsys, "homology", path("circle8.json"), "-n", "1", "--coeff", "F2", "--cohomology")
    assert json.loads(out)["group"]["text"] == "Z/2"


def test_image_order(capsys):
    code, out, _ = invoke(capsys, "image-order", path("circle8.json"), path("circle4.json"))
    assert code == EXIT_OK
    assert json.loads(out)["monotone"]


def test_gottlieb_and_cat(capsys):
    code, out, _ = invoke(capsys, "gottlieb", path("pseudocircle_identity.json"))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["subgroup"]["text"] == "0"
    assert rep["homotopy_set"]["reversed_monotone"]
    code, out, _ = invoke(capsys, "gottlieb", path("pseudocircle_constant.json"), "--basepoint", "c")
    assert json.loads(out)["subgroup"]["text"] == "Z"
    code, out, _ = invoke(capsys, "cat", path("pseudocircle_identity.json"))
    assert json.loads(out)["cat"] == 1
    code, out, _ = invoke(capsys, "cat", path("double_cover.json"), "--descents")
    rep = json.loads(out)
    assert rep["cat"] == 1
    assert all(not d["violations"] for d in rep["descents"]["descents"].values())


def test_rational_example_writes_two_dot_files(tmp_path, capsys):
    dot = tmp_path / "ex.dot"
    code, out, _ = invoke(capsys, "rational", "example-ex1", "--dot", str(dot))
    assert code == EXIT_OK
    law1 = (tmp_path / "ex.law1.dot").read_text()
    law2 = (tmp_path / "ex.law2.dot").read_text()
    assert law1.count("->") == 4 and law2.count("->") == 3
    assert '"alpha\'" -> "gamma\'"' in law2
    assert json.loads(out)["induced_map"]["on_classes"]["gamma"] == "alpha'"


def test_rational_custom(tmp_path, capsys):
    code, out, _ = invoke(capsys, "rational", "custom", path("ex1_law2.json"), "--dot", str(tmp_path / "c.dot"))
    assert code == EXIT_OK
    assert (tmp_path / "c.R.dot").exists()
    assert len(json.loads(out)["R"]["quotient"]["classes"]) == 4
    assert invoke(capsys, "rational", "custom")[0] == EXIT_USAGE


def test_output_file(tmp_path, capsys):
    target = tmp_path / "h.json"
    code, out, _ = invoke(capsys, "homology", path("point.json"), "-n", "0", "-o", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["group"]["text"] == "Z"


@pytest.mark.parametrize(
    "argv",
    [["bogus"], [], ["homology", path("point.json")], ["homset", path("point.json"), path("point.json"), "--flavor", "X"], ["cat", path("point.json"), "--nope"]],
)
def test_usage_errors(argv, capsys):
    assert invoke(capsys, *argv)[0] == EXIT_USAGE


def test_invalid_inputs_give_json_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["a"], "extra": 1}')
    code, out, err = invoke(capsys, "alex", "roundtrip", str(bad))
    assert code == EXIT_INVALID and out == ""
    assert json.loads(err)["error"] == "input"
    bad.write_text("{not json")
    code, _, err = invoke(capsys, "homology", str(bad), "-n", "1")
    assert code == EXIT_INVALID and "line" in json.loads(err)["witness"]
    bad.write_text('{"elements": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]}')
    assert invoke(capsys, "homology", str(bad), "-n", "0", "--coeff", "F4")[0] == EXIT_INVALID
    assert invoke(capsys, "homset", path("pseudocircle.json"), path("pseudocircle.json"), "--budget", "3")[0] == EXIT_INVALID
    assert invoke(capsys, "homology", path("point.json"), "-n", "0", "--budget", "0")[0] == EXIT_INVALID


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("STRATOS_BUDGET", "3")
    assert invoke(capsys, "homset", path("pseudocircle.json"), path("pseudocircle.json"))[0] == EXIT_INVALID


def test_config_validation():
    with pytest.raises(InputError):
        Config(budget=0)
    with pytest.raises(InputError):
        Config(jobs=0)


@pytest.mark.parametrize(
    "argv",
    [
        ["cat", path("double_cover.json"), "--descents"],
        ["homset", path("circle8.json"), path("circle4.json"), "--flavor", "LR"],
        ["rational", "example-ex1"],
    ],
)
def test_output_is_deterministic_across_runs_and_jobs(argv, capsys):
    first = invoke(capsys, *argv)
    assert first[0] == EXIT_OK
    assert invoke(capsys, *argv) == first
    assert invoke(capsys, *argv, "--jobs", "4") == first
