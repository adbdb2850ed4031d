import json
import shutil
import subprocess

import pytest
from click.testing import CliRunner

from xicheck.cli import main, parse_grid
from xicheck.harness import IdentityId


@pytest.fixture
def runner():
    return CliRunner()


def test_check_defaults(runner):
    res = runner.invoke(main, ["check", "--identity", "thm31"])
    assert res.exit_code == 0, res.output
    (report,) = json.loads(res.stdout_bytes)
    assert report["pass"] is True and len(report["sides"]) == 3


def test_check_overrides(runner):
    res = runner.invoke(main, ["check", "--identity", "thm41", "--z-re", "0.8", "--alpha", "5"])
    assert res.exit_code == 0
    (report,) = json.loads(res.stdout_bytes)
    assert report["params"] == {"z": 0.8, "alpha": 5.0}


def test_check_complex_z(runner):
    res = runner.invoke(main, ["check", "--identity", "cor32", "--z-im", "2"])
    assert res.exit_code == 0
    (report,) = json.loads(res.stdout_bytes)
    assert report["params"]["z"] == {"re": 4.0, "im": 2.0}


def test_check_failure_exit_one(runner):
    res = runner.invoke(main, ["check", "--identity", "thm31", "--z-re", "1.5"])
    assert res.exit_code == 1
    (report,) = json.loads(res.stdout_bytes)
    assert report["pass"] is False and report["error"].startswith("DomainError")


@pytest.mark.parametrize(
    "args",
    [
        ["check", "--identity", "bogus"],
        ["check", "--identity", "guinand", "--alpha", "2"],
        ["check", "--identity", "thm31", "--tol", "5"],
        ["check", "--identity", "thm31", "--out", "xml"],
        ["sweep", "--identity", "guinand", "--grid", "k=2;q=1"],
        ["sweep", "--identity", "guinand", "--grid", "k"],
        ["check"],
    ],
)
def test_usage_errors(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_csv_output(runner):
    res = runner.invoke(main, ["check", "--identity", "guinand", "--k", "3", "--x", "0.5", "--out", "csv"])
    assert res.exit_code == 0
    raw = res.stdout_bytes
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode("utf-8").splitlines()
    assert lines[0].startswith("identity,param:k,param:x,side:lhs,side:rhs")
    assert lines[1].startswith("guinand,3,5.0000000000000000e-01,")


def test_sweep(runner):
    res = runner.invoke(main, ["sweep", "--identity", "thm41", "--grid", "z=0.3,1.7;alpha=0.5,2", "--out", "csv"])
    assert res.exit_code == 0
    assert len(res.stdout_bytes.decode().splitlines()) == 5


def test_sweep_partial_failure(runner):
    res = runner.invoke(main, ["sweep", "--identity", "thm31", "--grid", "z=1.5,4;alpha=2"])
    assert res.exit_code == 1
    assert [r["pass"] for r in json.loads(res.stdout_bytes)] == [False, True]


def test_list(runner):
    res = runner.invoke(main, ["list"])
    assert res.exit_code == 0
    for ident in IdentityId:
        assert ident.value in res.output


def test_parse_grid():
    assert parse_grid("z=2.5,4; alpha=0.5,2") == {"z": [2.5, 4.0], "alpha": [0.5, 2.0]}
    assert parse_grid("k=2,3")["k"] == [2, 3]
    assert parse_grid("z=3+1i")["z"] == [3 + 1j]
    assert parse_grid("") == {}


@pytest.mark.skipif(shutil.which("xicheck") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["xicheck", "check", "--identity", "sine"], capture_output=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["identity"] == "sine"
