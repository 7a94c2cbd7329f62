import io
import json

import pytest

from pfzeta.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    return code, json.loads(out)


def test_poles():
    code, rep = call_json("poles", "--m", "6", "--m0", "2")
    assert code == 0
    assert rep["command"] == "poles"
    assert rep["result"]["poles"] == ["-15/2", "-6"]


def test_check_mc_json():
    code, rep = call_json("check", "mc", "--m", "12", "--m0", "6")
    assert code == 0 and rep["result"]["verdict"] is True


def test_check_hc():
    code, rep = call_json("check", "hc", "--m", "6", "--m0", "2", "--d0", "5")
    assert code == 0 and rep["result"]["verdict"] == "holomorphic"


def test_oracle_census():
    code, rep = call_json("oracle", "census", "--m", "2", "--l", "1", "--q", "3", "--threads", "1")
    assert code == 0 and rep["result"]["mismatches"] == [] and rep["result"]["total"] == 9


def test_oracle_contact_and_stabilizer():
    code, rep = call_json("oracle", "contact", "--m", "2", "--m0", "1", "--p", "0", "--l", "1", "--q", "3")
    assert code == 0 and rep["result"]["direct"] == rep["result"]["predicted"] == 6
    code, rep = call_json("oracle", "stabilizer", "--m", "2", "--lam", "(0)", "--l", "1", "--q", "3")
    assert code == 0 and rep["result"]["count"] == 648


def test_zeta_commands():
    code, rep = call_json("zeta", "vp", "--m", "2", "--m0", "1", "--order", "2")
    assert [c["coefficient"] for c in rep["result"]["coefficients"]] == ["L - 1", "1 - L^(-1)", "L^(-1) - L^(-2)"]
    code, rep = call_json("zeta", "top", "--m", "4", "--m0", "2")
    assert rep["result"]["poles"] == ["-3", "-1"]
    assert rep["diagnostics"]["constant_computed"] == "6"
    assert rep["diagnostics"]["constant m!/2^(2n)"] == "3/2"


def test_strata_components_hasse_eigenvalues():
    code, rep = call_json("strata", "--m", "4", "--m0", "1", "--p", "1", "--l", "1")
    assert rep["result"]["strata"] == ["(1,1)", "(1,TOP)"]
    code, rep = call_json("strata", "--m", "4", "--m0", "2", "--p", "2", "--cap", "2")
    assert rep["result"]["count"] == 2
    code, rep = call_json("components", "--m", "6", "--m0", "2", "--p", "3")
    assert rep["result"]["components"] == ["(0,3,3)", "(1,2,2)"]
    assert rep["diagnostics"]["closed_family_agrees"] is False
    code, rep = call_json("hasse", "--m", "4", "--m0", "2", "--p", "2", "--cap", "2")
    assert rep["result"]["edges"] == [{"lower": "(0,2)", "upper": "(1,1)"}]
    code, rep = call_json("eigenvalues", "--m", "8", "--m0", "3")
    assert rep["result"]["eigenvalues"] == ["0", "1/3", "1/2", "2/3"]


def test_pfaffian_file(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("4 3 Q\n1 2 t\n3 4 t^2\n")
    code, rep = call_json("pfaffian", "--input", str(f))
    assert code == 0
    assert rep["result"]["pfaffian"] == "t^3"
    assert rep["result"]["lambda"] == "(1,2)"
    assert rep["result"]["pfaffian_orders"] == [{"k": 1, "order": "1"}, {"k": 2, "order": "3"}]
    f.write_text("2 1 Q\n")
    code, rep = call_json("pfaffian", "--input", str(f))
    assert rep["result"]["pfaffian_orders"] == [{"k": 1, "order": "OVERFLOW"}]


@pytest.mark.parametrize(
    "argv",
    [
        ["poles", "--m", "6"],
        ["poles", "--m", "6", "--m0", "4"],
        ["bogus"],
        ["poles", "--m", "6", "--m0", "2", "--nope"],
        ["oracle", "census", "--m", "4", "--l", "3", "--q", "3"],
        ["oracle", "census", "--m", "2", "--l", "1", "--q", "2"],
        ["pfaffian", "--input", "/nonexistent/file"],
        ["zeta", "vp", "--m", "2", "--m0", "1", "--order", "-1"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = call(*argv)
    assert code == 2 and out == ""


def test_budget_message_names_requirement():
    code, out, err = call("oracle", "census", "--m", "4", "--l", "3", "--q", "3")
    assert "282429536481" in err


def test_char2_flag():
    code, rep = call_json("oracle", "census", "--m", "2", "--l", "1", "--q", "2", "--allow-char2")
    assert code == 0


def _numbers(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k != "elapsed":
                yield from _numbers(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _numbers(v)
    elif isinstance(obj, bool):
        yield "true" if obj else "false"
    else:
        yield str(obj)


@pytest.mark.parametrize(
    "argv",
    [
        ["poles", "--m", "7", "--m0", "3"],
        ["check", "mc", "--m", "9", "--m0", "2"],
        ["zeta", "top", "--m", "6", "--m0", "2"],
        ["oracle", "census", "--m", "2", "--l", "2", "--q", "3"],
        ["components", "--m", "8", "--m0", "3", "--p", "4"],
    ],
)
def test_text_and_json_agree(argv):
    _, text, _ = call(*argv, "--format", "text")
    _, js, _ = call(*argv, "--format", "json")
    payload = json.loads(js)
    for value in _numbers({k: payload[k] for k in ("params", "result")}):
        assert value in text


def test_json_round_trip():
    _, js, _ = call("check", "hc", "--m", "8", "--m0", "3", "--d0", "2", "--format", "json")
    payload = json.loads(js)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["result"]["candidates"] == ["-15/2"]
