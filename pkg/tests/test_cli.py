import json
import math
import subprocess
import sys

import pytest

from ruelle.cli import FilterSpec, UsageError, parse_filter, run
from ruelle.laurent import make
from ruelle.transfer import Filter


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _json(capsys, *argv):
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# -- parse_filter ------------------------------------------------------------

def test_parse_presets():
    assert parse_filter(FilterSpec.from_arg("haar")).m0 == make(0, [1 / math.sqrt(2)] * 2)
    F = parse_filter(FilterSpec.from_arg("stretched:9"))
    assert F.N == 2 and F.m0.support == (0, 9)


@pytest.mark.parametrize("text", ["stretched:4", "stretched:x", "stretched:-3", "nope.json",
                                  "1,abc"])
def test_parse_rejects(text):
    with pytest.raises(UsageError):
        parse_filter(FilterSpec.from_arg(text))


def test_parse_inline_forms():
    a = parse_filter(FilterSpec.from_arg("0.5,0.5", N=2, min_deg=-1))
    assert a.m0 == make(-1, [0.5, 0.5])
    b = parse_filter(FilterSpec.from_arg("[[0.5, 0], 0.5, [0, 1]]", N=3))
    assert b.N == 3 and b.m0 == make(0, [0.5, 0.5, 1j])
    with pytest.raises(UsageError):
        parse_filter(FilterSpec.from_arg("1,1", N=1))


def test_spec_needs_exactly_one_source():
    with pytest.raises(UsageError):
        FilterSpec()
    with pytest.raises(UsageError):
        FilterSpec(preset="haar", inline="1")


# -- subcommands -------------------------------------------------------------

def test_cycles(capsys):
    code, out, _ = _run(capsys, "cycles", "--p", "9")
    assert code == 0
    assert json.loads(out) == {"p": 9, "cycles": [[0], [1, 2, 4, 5, 7, 8], [3, 6]]}


def test_spectrum_haar(capsys):
    obj = _json(capsys, "spectrum", "--filter", "haar")
    assert obj == {"N": 2, "d": 1, "eigenvalues": [1.0, 0.5, 0.5]}


def test_spectrum_csv(capsys):
    code, out, _ = _run(capsys, "spectrum", "--filter", "haar", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "re,im" and len(lines) == 4


def test_verdict_stretched(capsys):
    obj = _json(capsys, "verdict", "--filter", "stretched:9")
    assert obj["verdict"] == "Fails" and obj["dim"] == 3


def test_verdict_pair(capsys):
    obj = _json(capsys, "verdict", "--filter", "haar", "--filter2", "haar")
    assert obj["verdict"] == "Biorthogonal"


def test_fixedspace(capsys):
    obj = _json(capsys, "fixedspace", "--filter", "stretched:3")
    assert obj["dim"] == 2


def test_eigenbasis(capsys):
    obj = _json(capsys, "eigenbasis", "--p", "9")
    assert obj["p"] == 9 and len(obj["basis"]) == 3


def test_cascade_csv(capsys):
    code, out, _ = _run(capsys, "cascade", "--filter", "haar", "--n", "10", "--K", "50",
                        "--grid", "16")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "omega,re,im" and len(lines) == 17
    assert abs(float(lines[1].split(",")[1]) - 1) < 1e-12


def test_cascade_json(capsys):
    obj = _json(capsys, "cascade", "--filter", "haar", "--n", "5", "--K", "5", "--grid", "16",
                "--format", "json")
    assert len(obj["values"]) == 16 and obj["domain_start"] == 0.0


def test_elemprop(capsys):
    obj = _json(capsys, "elemprop", "--seed", "3", "--count", "10")
    assert obj["passed"] == 10 and obj["failures"] == []
    assert obj["max_residual"] <= 1e-11


def test_export_roundtrip(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, _, _ = _run(capsys, "export", "--filter", "stretched:9", "--out", str(path))
    assert code == 0
    back = parse_filter(FilterSpec.from_arg(str(path)))
    assert back == parse_filter(FilterSpec.from_arg("stretched:9"))
    # the exported file is accepted wherever a filter is
    obj = _json(capsys, "verdict", "--filter", str(path))
    assert obj["dim"] == 3


def test_export_stdout_inline(capsys):
    obj = _json(capsys, "export", "--filter", "1,2j", "--N", "3", "--min-deg", "-1")
    assert obj["N"] == 3 and obj["min_deg"] == -1
    assert Filter.from_json_obj(obj).m0 == make(-1, [1, 2j])


def test_config(capsys, monkeypatch):
    monkeypatch.delenv("RL_DEFAULT_TOL", raising=False)
    obj = _json(capsys, "config")
    assert obj["tol"] == 1e-9 and obj["n"] == 20 and obj["K"] == 1000 and obj["grid"] == 256
    monkeypatch.setenv("RL_DEFAULT_TOL", "1e-7")
    assert _json(capsys, "config")["tol"] == 1e-7


# -- errors ------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["spectrum", "--filter", "stretched:4"],
    ["cycles", "--p", "8"],
    ["cycles"],
    ["bogus"],
    ["verdict", "--filter", "haar", "--tol", "-1"],
    ["verdict", "--filter", "haar", "--filter2", "1,1", "--N", "3"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_bad_env_tol_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("RL_DEFAULT_TOL", "abc")
    code, out, err = _run(capsys, "config")
    assert code == 2 and "RL_DEFAULT_TOL" in err


def test_analysis_error_exits_1(capsys, monkeypatch):
    import ruelle.transfer as tr
    from ruelle.transfer import InvarianceError

    def boom(*a, **k):
        raise InvarianceError("column escapes the window")

    monkeypatch.setattr("ruelle.cli.lawton_matrix", boom)
    code, out, err = _run(capsys, "spectrum", "--filter", "haar")
    assert code == 1 and out == "" and "escapes" in err
    assert tr.lawton_matrix is not boom


@pytest.mark.parametrize("cmd", ["verdict", "spectrum", "fixedspace", "cycles", "eigenbasis",
                                 "cascade", "elemprop", "export", "config"])
def test_help_lists_defaults(capsys, cmd):
    code, out, _ = _run(capsys, cmd, "--help")
    assert code == 0
    text = " ".join(out.split())
    for key in ("tol=", "n=20", "K=1000", "grid=256"):
        assert key in text


def test_console_script_is_deterministic():
    argv = [sys.executable, "-m", "ruelle.cli", "verdict", "--filter", "stretched:9"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["dim"] == 3
