import json

import pytest
from click.testing import CliRunner

from pdfill.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, env=None):
    return runner.invoke(main, args, env=env, catch_exceptions=False)


def test_complex_euler(runner):
    result = invoke(runner, ["complex", "Sigma2", "Z", "--euler"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["euler"] == -2
    assert payload["ranks"] == [1, 4, 1]


def test_complex_dualize_free_group(runner):
    result = invoke(runner, ["complex", "F2", "Z", "--dualize"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["ranks"] == [0, 2, 1]
    assert payload["differentials"][1] == [["1 - a^-1", "1 - b^-1"]]


def test_complex_twist_klein(runner):
    result = invoke(runner, ["complex", "Klein", "Z", "--twist", "a:-1,b:1"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["differentials"][0] == [["1 + a"], ["1 - b"]]


def test_complex_homology(runner):
    result = invoke(runner, ["complex", "Klein", "Z", "--homology", "Q"])
    payload = json.loads(result.output)
    assert payload["homology"]["dimensions"][1] >= 1


def test_usage_errors_exit_2(runner):
    assert invoke(runner, ["complex", "Nope", "Z"]).exit_code == 2
    assert invoke(runner, ["complex", "F2", "GF9"]).exit_code == 2
    assert invoke(runner, ["complex", "Klein", "Z", "--twist", "a:2,b:1"]).exit_code == 2
    assert invoke(runner, ["complex", "F2", "H", "--twist", "a:1,b:1"]).exit_code == 2
    assert invoke(runner, ["complex", "Klein", "Z/5", "--twist", "a:2,b:1"]).exit_code == 2
    assert invoke(runner, ["complex", "F2", "Z", "--homology", "Z/4"]).exit_code == 2


def test_budget_errors_exit_3(runner):
    result = invoke(
        runner,
        ["fill", "Z^2", "Z", "--radius", "6", "--max-word", "4"],
        env={"PDFILL_BUDGET": "10"},
    )
    assert result.exit_code == 3
    result = invoke(runner, ["folner", "F2", "--family", "connected:13"])
    assert result.exit_code == 3


def test_fill_report(runner):
    result = invoke(runner, ["fill", "Z^2", "Z", "--radius", "3", "--max-word", "4"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["max_ratio"] == "1/4"
    assert payload["corpus_size"] == 8
    assert all(entry["status"] == "filled" for entry in payload["per_cycle"])


def test_fill_empty_corpus(runner):
    result = invoke(runner, ["fill", "F2", "Z", "--radius", "3", "--max-word", "6"])
    payload = json.loads(result.output)
    assert payload["corpus_size"] == 0
    assert payload["kappa_hat"] == 0


def test_fill_csv(runner):
    result = invoke(
        runner, ["fill", "Z^2", "Z", "--radius", "3", "--max-word", "4", "--csv"]
    )
    lines = result.output.strip().splitlines()
    assert lines[0] == "word,word_length,cycle_norm,filler_norm,ratio,optimal"
    assert len(lines) == 9


def test_folner_report_and_csv(runner):
    result = invoke(runner, ["folner", "Z^2", "--family", "boxes:20"])
    payload = json.loads(result.output)
    assert payload["verdict"] == "ratio-vanishing"
    result = invoke(runner, ["folner", "F2", "--family", "connected:6", "--csv"])
    lines = result.output.strip().splitlines()
    assert lines[0] == "set_size,ratio"
    assert len(lines) == 7


def test_folner_klein_balls(runner):
    result = invoke(runner, ["folner", "Klein", "--family", "balls:6"])
    payload = json.loads(result.output)
    ratios = payload["series"]
    assert len(ratios) == 7


def test_slim_report_and_series(runner):
    result = invoke(runner, ["slim", "F2", "--radius", "5"])
    payload = json.loads(result.output)
    assert payload["delta_hat"] == 0
    result = invoke(runner, ["slim", "Z^2", "--radius", "4", "--csv"])
    lines = result.output.strip().splitlines()
    assert lines[0] == "radius,delta_hat"
    assert lines[-1] == "4,2"


def test_constants(runner):
    result = invoke(runner, ["constants", "Sigma2", "--kappa", "1"])
    payload = json.loads(result.output)
    assert (payload["N"], payload["k"], payload["m"]) == (8, 65, 8)


def test_transfer(runner):
    result = invoke(
        runner,
        ["transfer", "--kappa", "2", "--norm-x", "3", "--norm-z", "1", "--norm-h", "4"],
    )
    assert json.loads(result.output)["constant"] == 10
    result = invoke(
        runner,
        ["transfer", "--kappa", "1/2", "--norm-x", "3", "--norm-z", "2", "--norm-h", "1"],
    )
    assert json.loads(result.output)["constant"] == 4


def test_output_file(runner, tmp_path):
    target = tmp_path / "out.json"
    result = invoke(
        runner, ["constants", "Klein", "--kappa", "1", "--output", str(target)]
    )
    assert result.exit_code == 0
    assert json.loads(target.read_text())["N"] == 4


COMMANDS = [
    ["complex", "Sigma2", "Z", "--euler", "--homology", "Q"],
    ["complex", "Klein", "Z", "--dualize", "--twist", "a:-1,b:1"],
    ["fill", "Z^2", "Z", "--radius", "4", "--max-word", "8"],
    ["folner", "F2", "--family", "connected:7"],
    ["folner", "Z^2", "--family", "boxes:12", "--csv"],
    ["slim", "Z^2", "--radius", "4", "--seed", "0"],
    ["constants", "Sigma2", "--kappa", "2"],
    ["transfer", "--kappa", "3/2", "--norm-x", "2", "--norm-z", "2", "--norm-h", "1"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: a[0] + ":" + "-".join(a[1:3]))
def test_byte_identical_reruns(runner, args):
    first = invoke(runner, args)
    second = invoke(runner, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output
