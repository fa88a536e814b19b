import json
from fractions import Fraction

import pytest

from bppcalc import cli, lr_process


def run(capsys, *argv):
    status = cli.main(list(argv))
    return status, capsys.readouterr().out


def report(capsys, *argv):
    status, out = run(capsys, *argv)
    assert status == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["config"]["subcommand"] == argv[0]
    return data["result"]


def test_wg_identity_class(capsys):
    result = report(capsys, "wg", "--d", "3", "--class", "1,1,1")
    (row,) = result["classes"]
    assert row["numerator"] == [-2, 0, 1]
    assert row["denominator"] == [0, 4, 0, -5, 0, 1]


def test_biasimir_example(capsys):
    result = report(capsys, "biasimir", "--perm", "(1 3 2)", "--exp", "2,1,1", "--oracle", "2")
    assert result["classical"] == {"C4": {"1": 1}}
    assert result["quantum"] == {"C1*C2": {"1": 1}, "C3": {"N": -1}}
    assert result["oracle"]["passed"] is True


def test_tau_limit(capsys):
    result = report(capsys, "tau", "--p", "2,1,1", "--q", "3,1,1", "--limit")
    assert result["limit"]["monomials"] == {"classical": 10, "quantum": 4, "total": 14}
    result = report(capsys, "tau", "--p", "1,1,1", "--q", "1,1,1", "--limit")
    assert result["limit"]["monomials"]["total"] == 10


def test_tau_probe_values(capsys):
    result = report(capsys, "tau", "--p", "1,1,1", "--q", "1,1,1", "--N-list", "10,100",
                    "--a", "2,3,4,5", "--b", "1,3,5,7", "--hbar", "1/2")
    for row in result["evaluations"]:
        classical, quantum, tau = (Fraction(row[k]) for k in ("classical", "quantum", "tau"))
        assert tau == classical + Fraction(1, 2) * quantum


def test_other_subcommands_run(capsys):
    report(capsys, "walks", "--pi1", "()", "--pi2", "(1 2 3)", "--geodesics")
    report(capsys, "tau2", "--p1", "1", "--q1", "0", "--p2", "1", "--q2", "0")
    report(capsys, "free", "--p", "1,1", "--q", "1,1", "--a", "1,2", "--b", "2,5", "--k-max", "2")
    report(capsys, "lr", "--lam", "2,1", "--mu", "1,0")
    report(capsys, "bpp", "--lam", "2,0", "--hbar", "1/3")
    report(capsys, "check-biane", "--lam", "1,0", "--mu", "1,0", "--k", "1,2")
    report(capsys, "check-pp", "--lam", "2,1")
    report(capsys, "lln", "--k", "2", "--N-list", "2,3")


def test_free_routes_agree(capsys):
    result = report(capsys, "free", "--p", "1,1", "--q", "1,1", "--a", "1,2", "--b", "2,5", "--k-max", "2")
    text = json.dumps(result)
    assert '"9/1"' in text


def test_global_flags_anywhere(capsys):
    _, before = run(capsys, "--seed", "5", "measure", "--lam", "1,0", "--mu", "1,0", "--count", "20")
    _, after = run(capsys, "measure", "--lam", "1,0", "--mu", "1,0", "--count", "20", "--seed", "5")
    assert before == after
    assert json.loads(before)["config"]["seed"] == 5


def test_deterministic_output(capsys):
    argv = ["measure", "--lam", "2,1,0", "--mu", "1,0,0", "--count", "100", "--seed", "11"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_csv(capsys):
    status, out = run(capsys, "lr", "--lam", "1,0", "--mu", "1,0", "--format", "csv")
    assert status == 0
    assert out.splitlines() == ["nu,mult,dim", '"(2,0)",1,3', '"(1,1)",1,1']


@pytest.mark.parametrize("argv", [
    ["biasimir", "--perm", "(1 1)"],
    ["lr", "--lam", "0,1", "--mu", "1,0"],
    ["tau", "--p", "1,x", "--q", "1,1"],
    ["wg", "--d", "9"],
    ["wg", "--d", "2", "--cap-d", "0"],
    ["bpp", "--lam", "1,0", "--hbar", "-1"],
])
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_parse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tau", "--p", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(lr_process, "perelomov_popov_check", lambda *a, **k: False)
    status, _ = run(capsys, "check-pp", "--lam", "1,0")
    assert status == 1
