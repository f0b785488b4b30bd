import json
import subprocess
import sys

import pytest

from tqm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_star_text(capsys):
    code, out, _ = run(capsys, "star", "--format", "text", "x1", "p1")
    assert code == 0 and out.strip() == "x1*p1 + 1/2*i*h"


def test_star_json(capsys):
    code, out, _ = run(capsys, "star", "x1", "p1")
    data = json.loads(out)
    assert code == 0 and data["rank"] == 1 and len(data["terms"]) == 2


def test_exit_codes(capsys):
    assert run(capsys, "star", "x1", "p2")[0] == 2
    assert run(capsys, "star", "x1 +", "p1")[0] == 1
    assert run(capsys, "partition", "--sigma2", "0")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "b", "x1")[0] == 2


def test_hkr_and_b(capsys):
    code, out, _ = run(capsys, "hkr", "--format", "text", "x1 | p1 | x1*p1")
    assert code == 0 and out.strip() == "(-1/2*x1*p1 + 1/12*i*h)*dx1^dp1"
    code, out, _ = run(capsys, "b", "--format", "text", "--product", "commutative", "x1 | p1")
    assert code == 0 and out.strip() == "0"


def test_wick(capsys):
    code, out, _ = run(capsys, "wick", "--format", "text", "x1@0", "x1@1/3", "p1@2/3")
    assert code == 0 and out.strip() == "x1^2*p1"
    assert run(capsys, "wick", "x1@0", "p1@1")[0] == 2
    assert run(capsys, "wick", "x1")[0] == 1


def test_hkr_check_is_deterministic(capsys):
    args = ["hkr-check", "--r", "2", "--max-m", "2", "--cases", "10", "--seed", "7"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args, "--threads", "2")
    assert code1 == code2 == 0 and out1 == out2
    assert json.loads(out1)["failed"] == 0


def test_partition_exact_only(capsys):
    code, out, _ = run(capsys, "partition", "--sigma2", "1", "--exact-only")
    data = json.loads(out)
    assert code == 0 and "mc_estimate" not in data
    assert abs(data["exact_truncated"] - 0.9609910548493976) < 1e-12


def test_mc_propagator(capsys):
    code, out, _ = run(capsys, "mc-propagator", "--sigma2", "1", "--samples", "50000", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["config"]["seed"] == 3 and data["generator_id"]
    assert {"mean_re", "mean_im", "stderr_re", "stderr_im", "oracle_im", "backend"} <= set(data)


def test_sign_problem_exit_code(capsys):
    code, _, err = run(capsys, "mc-propagator", "--sigma2", "60", "--samples", "20000")
    assert code == 2 and "sign problem" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tqm", "star", "--format", "text", "p1", "x1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "x1*p1 - 1/2*i*h"


@pytest.mark.slow
def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick", "--seed", "3")
    assert code == 0 and json.loads(out)["passed"]
