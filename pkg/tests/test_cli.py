import json
import subprocess
import sys

import pytest

from monores.cli import run

EX44 = "ring 3\n# M = (x^2y^2z, x^2z^2, yz^2)\ngen x1^2*x2^2*x3\ngen x1^2*x3^2\ngen x2*x3^2\n"


@pytest.fixture
def ex44(tmp_path):
    path = tmp_path / "ex44.ideal"
    path.write_text(EX44)
    return str(path)


@pytest.fixture
def principal(tmp_path):
    path = tmp_path / "principal.ideal"
    path.write_text("ring a b\ngen a^2*b\n")
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_betti_table(capsys, ex44):
    code, out, _ = call(capsys, "betti", "--ideal", ex44)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "pd = 2"
    assert lines[0] == "field: q"
    assert lines[2].split() == ["total:", "1", "3", "2"]


def test_twin_output(capsys, ex44):
    code, out, _ = call(capsys, "twin", "--ideal", ex44)
    assert (code, out) == (0, "x1^2*x2^2, x3^2\n")
    code, out, _ = call(capsys, "twin", "--ideal", ex44, "--json", "--field", "zp:2")
    data = json.loads(out)
    assert data == {"field": "zp:2", "ring": ["x1", "x2", "x3"], "gens": ["x1^2*x2^2", "x3^2"], "lcm": "x1^2*x2^2*x3^2"}


def test_pd(capsys, principal):
    assert call(capsys, "pd", "--ideal", principal)[1] == "pd = 1\n"
    assert json.loads(call(capsys, "pd", "--ideal", principal, "--json", "--oracle")[1]) == {"field": "q", "pd": 1}


def test_betti_json_schema_and_oracle_agree(capsys, ex44):
    _, a, _ = call(capsys, "betti", "--ideal", ex44, "--json")
    _, b, _ = call(capsys, "betti", "--ideal", ex44, "--json", "--oracle")
    assert a == b
    data = json.loads(a)
    assert set(data) == {"field", "pd", "total", "graded", "multigraded"}
    assert data["total"] == {"0": 1, "1": 3, "2": 2}
    assert data["graded"] == sorted(data["graded"], key=lambda r: (r["i"], r["j"]))
    assert data["multigraded"] == sorted(data["multigraded"], key=lambda r: (r["i"], r["m"]))
    assert {"i": 2, "m": "x1^2*x2^2*x3^2", "b": 1} in data["multigraded"]


def test_taylor_stats(capsys, ex44):
    code, out, _ = call(capsys, "taylor", "--stats", "--ideal", ex44)
    assert json.loads(out) == {"q": 3, "ranks": [1, 3, 3, 1], "distinct_multidegrees": 6, "field": "q"}


def test_minimize_trace(capsys):
    code, out, _ = call(capsys, "minimize", "--trace", "--gens", "x*y,y*z,x*z", "--ring", "x y z")
    steps = [json.loads(line) for line in out.splitlines()]
    assert steps == [{"s": 3, "source": [0, 1, 2], "target": [0, 1]}]
    code, out, _ = call(capsys, "minimize", "--json", "--gens", "x*y,y*z,x*z", "--ring", "x y z")
    assert json.loads(out) == {"field": "q", "ranks": [1, 3, 2], "cancellations": 1}


def test_restrict_and_compress(capsys, ex44):
    assert call(capsys, "restrict", "--ideal", ex44, "--at", "x1^2*x3^2")[1] == "x1^2*x3^2\n"
    assert call(capsys, "restrict", "--ideal", ex44, "--at", "x1")[1] == "0\n"
    code, out, _ = call(capsys, "compress", "--ideal", ex44, "--json")
    assert json.loads(out)["gens"] == ["y1*y2", "y3"]
    assert json.loads(out)["substitution"] == {"y1": "x1^2", "y2": "x2^2", "y3": "x3^2"}


def test_random_is_reproducible(capsys, tmp_path):
    a = call(capsys, "random", "--n", "5", "--q", "6", "--seed", "42")[1]
    b = call(capsys, "random", "--n", "5", "--q", "6", "--seed", "42")[1]
    assert a == b and a.startswith("ring 5\n")
    path = tmp_path / "r.ideal"
    path.write_text(a)
    assert call(capsys, "pd", "--ideal", str(path))[0] == 0


def test_verify_subcommands(capsys, ex44, tmp_path):
    for theorem in ("c42", "t45", "compress"):
        code, out, _ = call(capsys, "verify", theorem, "--ideal", ex44)
        report = json.loads(out)
        assert code == 0 and report["theorem"] == theorem and report["failures"] == []
    code, out, _ = call(capsys, "verify", "t31", "--n", "4", "--k", "1", "--trials", "15", "--seed", "2")
    assert code == 0 and json.loads(out)["passed"] == 15
    out_file = tmp_path / "report.json"
    args = ["verify", "t46", "--n", "3", "--trials", "10", "--seed", "2", "--field", "zp:32003"]
    assert call(capsys, *args, "--out", str(out_file))[0] == 0
    first = out_file.read_text()
    call(capsys, *args, "--out", str(out_file))
    assert out_file.read_text() == first
    code, out, _ = call(capsys, "verify", "c42", "--trials", "5", "--n", "3", "--q-max", "4")
    assert code == 0 and json.loads(out)["attempted"] >= 5


def test_verify_failure_exit_code(capsys, ex44, monkeypatch):
    from monores import harness

    monkeypatch.setattr(harness, "strand_betti", lambda M, m, field, cap=None: {0: M.q})
    code, out, _ = call(capsys, "verify", "t45", "--ideal", ex44)
    assert code == 1 and json.loads(out)["failures"]


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["betti", "--ideal", "/no/such/file"], "not found"),
        (["betti", "--gens", "x1*x9", "--ring", "2"], "parse error"),
        (["betti", "--gens", "x1", "--ring", "2", "--field", "zp:6"], "not prime"),
        (["betti", "--gens", "x1"], "--ring"),
        (["verify", "t31", "--n", "3", "--k", "3"], "invalid parameters"),
        (["random", "--n", "2", "--q", "1", "--min-deg", "3", "--squarefree"], "invalid parameters"),
    ],
)
def test_usage_errors_exit_2(capsys, argv, needle):
    code, out, err = call(capsys, *argv)
    assert code == 2 and needle in err and out == ""


def test_parse_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.ideal"
    path.write_text("ring 2\ngen x1\ngen x1^^2\n")
    code, _, err = call(capsys, "pd", "--ideal", str(path))
    assert code == 2 and "line 3" in err and "column" in err


def test_cap_override(capsys):
    gens = ",".join(f"x1^{i}*x2^{6 - i}" for i in range(7))
    code, _, err = call(capsys, "pd", "--gens", gens, "--ring", "2", "--cap", "6")
    assert code == 2 and "--cap 7" in err
    assert call(capsys, "pd", "--gens", gens, "--ring", "2", "--cap", "7")[1] == "pd = 2\n"


def test_argparse_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "p.ideal"
    path.write_text("ring 2\ngen x1*x2\n")
    proc = subprocess.run([sys.executable, "-m", "monores", "pd", "--ideal", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "pd = 1\n"
