import json

import pytest

from iet_lowdisc.cli import main
from iet_lowdisc.discrepancy import DiscrepancyCurve
from iet_lowdisc.quadratic import beta, golden, parse_quad


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def points(out):
    rows = [l for l in out.splitlines() if l and not l.startswith("#")][1:]
    return [parse_quad(r.split(",", 1)[1]) for r in rows]


def test_gen_ls(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "ls", "--L", "1", "--S", "1", "--n", "8")
    b = golden()
    assert code == 0
    assert points(out) == [0, b, b ** 2, b ** 3, b + b ** 3, b ** 4, b + b ** 4, b ** 2 + b ** 4]


def test_gen_kronecker_and_jls(capsys):
    g = golden()
    _, out, _ = run(capsys, "gen", "--kind", "kronecker", "--z", "golden", "--n", "3")
    assert points(out) == [0, g, 2 * g - 1]
    b = beta(2, 2)
    _, out, _ = run(capsys, "gen", "--kind", "jls", "--L", "2", "--S", "2", "--n", "4")
    assert points(out) == [0, b * b, b, b + b * b]


def test_gen_json_and_decimals(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "fls", "--L", "2", "--S", "2", "--n", "3", "--format", "json", "--precision", "5")
    data = json.loads(out)
    assert code == 0 and data["stream"]["kind"] == "iet" and len(data["points"]) == 3
    assert all(len(p.split(".")[1]) == 5 for p in data["points"])


def test_gen_iet_from_gamma_and_restriction(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "iet", "--lc", "2/5", "--n", "5", "--sub", "0,1/2")
    assert code == 0 and all(0 <= p < parse_quad("1/2") for p in points(out))


def test_usage_errors(capsys):
    assert run(capsys, "gen", "--kind", "ls", "--L", "0", "--S", "1")[0] == 2
    assert run(capsys, "gen", "--kind", "ls", "--L", "1")[0] == 2
    assert run(capsys, "gen", "--kind", "kronecker", "--z", "1/0")[0] == 2
    assert run(capsys, "curve", "--kind", "kronecker", "--precision", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    code, _, err = run(capsys, "gen", "--kind", "iet", "--lc", "golden/2")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "gen", "--kind", "iet", "--lc", "3/10")
    assert code == 2 and "lambda_A" in err


def test_cf(capsys):
    _, out, _ = run(capsys, "cf", "golden")
    data = json.loads(out)
    assert data["cf"] == "[0; (1)]" and data["moving_average"]["limit"] == "1"
    _, out, _ = run(capsys, "cf", "--z=-1/2+1/2*sqrt(3)")
    data = json.loads(out)
    assert data["cf"] == "[0; (2,1)]" and data["moving_average"]["limit"] == "3/2"
    code, out, _ = run(capsys, "cf", "3/7")
    data = json.loads(out)
    assert code == 0 and data["terminated"] and data["moving_average"] is None
    assert "RationalInput" in data["note"]
    assert run(capsys, "cf", "sqrt(")[0] == 2


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "example35", "--window", "50")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--suite", "orbit-jls", "--L", "2", "--S", "2")
    check = json.loads(out)["checks"][0]
    assert code == 0 and check["details"]["super_cycle"] == 8
    code, out, _ = run(capsys, "verify", "--suite", "ls-noncoincidence", "--L", "1", "--S", "2", "--lmax", "8")
    dens = json.loads(out)["checks"][0]["details"]["denominators"]
    assert code == 0 and list(dens.values()) == [2 ** k for k in range(1, 8)]


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "orbit-jls", "--L", "2", "--S", "2", "--r", "1")
    report = json.loads(out)
    assert code == 1 and not report["passed"] and report["first_failure"] == "orbit-jls"


def test_curve_round_trip(capsys, tmp_path):
    path = tmp_path / "c.csv"
    argv = ["curve", "--kind", "kronecker", "--z", "golden", "--N", "300", "--step", "3", "--precision", "10", "--out", str(path)]
    assert main(argv) == 0
    first = path.read_text()
    assert main(argv) == 0
    assert path.read_text() == first
    rows = DiscrepancyCurve.read_csv(first)
    assert len(rows) == 100 and rows[-1][0] == 300


def test_disc(capsys):
    code, out, _ = run(capsys, "disc", "--kind", "jls", "--L", "2", "--S", "2", "--N", "50", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["N"] == 50
    assert float(data["Dstar"]) <= float(data["D"]) <= 2 * float(data["Dstar"])


def test_figure2_small(capsys):
    code, out, _ = run(capsys, "figure2", "--N", "100", "--step", "10")
    assert code == 0
    lines = out.splitlines()
    header = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    assert body[0] == "N,Dstar_rotation,Dstar_iet_a,Dstar_iet_b,logN_over_N"
    assert len(body) == 11
    assert any("fallback lambda_C = 2/5" in l for l in header)
    assert any("fallback lambda_C = 9/20" in l for l in header)


def test_figure2_with_feasible_request(capsys):
    code, out, _ = run(capsys, "figure2", "--N", "50", "--lc", "1/2,11/20", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert not data["params"]["iet_a"]["fallback"] and data["params"]["iet_b"]["lambda_c"] == "11/20"
