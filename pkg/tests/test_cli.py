import csv
import io
import json

import pytest

from tensorgen.cli import main
from tensorgen.partitions import BUDGET_ENV


def run_json(capsys, *args):
    code = main([*args, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_partition_examples(capsys):
    code, rec = run_json(capsys, "partition", "--p", "5", "--m", "2", "--n", "3")
    assert code == 0
    assert rec["schema_version"] == "1" and rec["command"] == "partition"
    assert rec["inputs"] == {"p": 5, "m": 2, "n": 3}
    assert rec["result"]["parts"] == [4, 2] and rec["result"]["standard"] is True
    assert rec["result"]["alpha"] == 1
    code, rec = run_json(capsys, "partition", "--p", "2", "--m", "2", "--n", "2")
    assert rec["result"]["parts"] == [2, 2] and rec["result"]["standard"] is False


def test_validation_errors_exit_one(capsys):
    assert main(["partition", "--p", "3", "--m", "1", "--n", "5"]) == 1
    assert "error" in capsys.readouterr().err
    assert main(["partition", "--p", "4", "--m", "2", "--n", "5"]) == 1
    assert main(["verify", "--p", "3", "--max-sum", "9", "--checks", "nonsense"]) == 1
    assert main(["frobnicate"]) == 1


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "10")
    assert main(["partition", "--p", "3", "--m", "3", "--n", "5"]) == 1
    assert "budget" in capsys.readouterr().err.lower()


def test_generators_golden(capsys):
    code, rec = run_json(capsys, "generators", "--p", "3", "--m", "4", "--n", "5")
    assert code == 0 and rec["certified"] is True
    k3 = next(s for s in rec["result"]["summands"] if s["k"] == 3)
    assert k3["y"] == [[2, 5, "20"], [3, 4, "-20"], [4, 3, "10"]]
    assert k3["y_mod_p"] == [[2, 5, 2], [3, 4, 1], [4, 3, 1]]
    assert k3["detA"] == "10" and k3["B"] == ["20", "-20", "10"]
    assert [s["summand_dim"] for s in rec["result"]["summands"]] == [8, 6, 4, 2]
    assert rec["result"]["spanning_rank"] == 20


def test_generators_small_and_refusal(capsys):
    code, rec = run_json(capsys, "generators", "--p", "5", "--m", "2", "--n", "3")
    assert code == 0
    assert [s["summand_dim"] for s in rec["result"]["summands"]] == [4, 2]
    code = main(["generators", "--p", "5", "--m", "4", "--n", "5"])
    captured = capsys.readouterr()
    assert code == 2 and captured.out == ""
    assert "not standard for p = 5" in captured.err
    assert main(["generators", "--p", "2", "--m", "2", "--n", "4"]) == 2
    assert "n >= 3 odd" in capsys.readouterr().err


def test_verify_theorem_sweep(capsys):
    code, rec = run_json(capsys, "verify", "--p", "3,5,7", "--max-sum", "24", "--checks", "theorem")
    assert code == 0 and rec["violations"] == []
    assert rec["result"]["counts"]["theorem"]["Z"] > 0


def test_verify_classifier_against_oracle(capsys):
    code, rec = run_json(capsys, "verify", "--p", "3", "--max-sum", "60", "--checks", "classifier-vs-oracle")
    assert code == 0 and rec["violations"] == []
    assert rec["result"]["counts"]["classifier-vs-oracle"]["3"] > 400


def test_verify_valuations_non_vacuous(capsys):
    code, rec = run_json(capsys, "verify", "--p", "3", "--max-sum", "10", "--checks", "valuations")
    assert code == 0 and rec["violations"] == []
    failures = rec["result"]["nonmember_failures"]
    assert failures
    assert any((f["m"], f["n"]) == (3, 3) for f in failures)


def test_verify_skips_valuations_for_two(capsys):
    code, rec = run_json(capsys, "verify", "--p", "2", "--max-sum", "12", "--checks", "valuations,decompose")
    assert code == 0
    assert "valuations" in rec["result"]["skipped"]
    assert rec["result"]["counts"]["decompose"]["2"] == 5


def test_valuations_single_pair(capsys):
    code, rec = run_json(capsys, "valuations", "--p", "3", "--m", "3", "--n", "3")
    assert code == 0 and rec["result"]["member"] is False
    assert rec["result"]["rows"][0] == {"k": 0, "left": 0, "right": 1, "equal": False}
    code, rec = run_json(capsys, "valuations", "--p", "3", "--m", "4", "--n", "5")
    assert rec["result"]["member"] is True and rec["violations"] == []


def test_enumerate_csv(capsys):
    assert main(["enumerate", "--p", "2", "--max-sum", "12", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "stratum", "t", "i", "j", "r"]
    assert [(int(r[0]), int(r[1])) for r in rows[1:]] == [(2, 3), (2, 5), (2, 7), (2, 9), (3, 6)]
    assert out.endswith("\r\n")


def test_enumerate_examples(capsys):
    _, rec = run_json(capsys, "enumerate", "--p", "7", "--max-sum", "8")
    assert {"m": 2, "n": 3} in [{"m": r["m"], "n": r["n"]} for r in rec["result"]["pairs"]]
    assert next(r for r in rec["result"]["pairs"] if (r["m"], r["n"]) == (2, 3))["stratum"] == "S0"
    _, rec = run_json(capsys, "enumerate", "--p", "3", "--max-sum", "5")
    assert [(r["m"], r["n"]) for r in rec["result"]["pairs"]] == [(2, 2)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_partition_agrees_with_enumerate(capsys, p):
    max_sum = 16
    _, rec = run_json(capsys, "enumerate", "--p", str(p), "--max-sum", str(max_sum))
    members = {(r["m"], r["n"]) for r in rec["result"]["pairs"]}
    for m in range(2, max_sum // 2 + 1):
        for n in range(m, max_sum - m + 1):
            _, part = run_json(capsys, "partition", "--p", str(p), "--m", str(m), "--n", str(n))
            assert part["result"]["standard"] == ((m, n) in members), (m, n)


def test_plain_output(capsys):
    assert main(["generators", "--p", "3", "--m", "4", "--n", "5"]) == 0
    out = capsys.readouterr().out
    assert "2:5:2 3:4:1 4:3:1" in out
    assert "certified=true" in out


def test_subprocess_determinism_and_exit_codes(run_cli):
    args = ["generators", "--p", "3", "--m", "4", "--n", "5", "--format", "json"]
    first, second = run_cli(*args), run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["command"] == "generators"
    refused = run_cli("generators", "--p", "5", "--m", "4", "--n", "5")
    assert refused.returncode == 2 and refused.stderr
    bad = run_cli("partition", "--p", "3", "--m", "1", "--n", "5")
    assert bad.returncode == 1
