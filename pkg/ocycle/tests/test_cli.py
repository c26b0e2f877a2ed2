import json

import pytest

from ocycle import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_fixed_space_csv(capsys):
    code, out = run(capsys, "fixed-space", "--q", "2", "--dim", "2", "--format", "csv")
    assert code == 0
    assert out == "k,p_plus,p_minus\n0,0,1/3\n1,1/2,1/2\n2,1/2,1/6\n"


def test_classes_json_schema(capsys):
    code, out = run(capsys, "classes", "--dim", "2", "--data", "z^2+z+1:[1]", "--sign", "-", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "classes"
    assert payload["params"]["q"] == "2"
    assert payload["rows"] == [{"data": "{z^2+z+1:[1]}", "p_plus": "0", "p_minus": "1/3", "p_omega": "2/3"}]


def test_classes_over_a_whole_dimension(capsys):
    code, out = run(capsys, "classes", "--dim", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "data,p_plus,p_minus"
    assert len(lines) == 4


def test_cyclic_text(capsys):
    code, out = run(capsys, "cyclic", "--order", "2")
    assert code == 0
    assert "5/6" in out.splitlines()[1]


def test_unipotent_table(capsys):
    code, out = run(capsys, "unipotent", "--dim", "4", "--context", "Sp", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert sum(int(r["classes"]) for r in rows) == 6
    assert {r["jordan_type"]: r["induced_weil"] for r in rows}["[1,1,1,1]"] == "112"


def test_proportions_statistic(capsys):
    code, out = run(capsys, "proportions", "--dim", "2", "--statistic", "cyclic", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "cyclic,2,1/2,5/6"


def test_sampling_is_reproducible(capsys):
    args = ("sample", "--u", "1/2", "--q", "2", "--seed", "7", "-n", "5", "--format", "csv")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert first[0] == 0
    assert len(first[1].splitlines()) == 6


def test_oracle_writes_file(capsys, tmp_path):
    target = tmp_path / "out" / "o2minus.json"
    code, out = run(capsys, "oracle", "--group", "O-", "--dim", "2", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    rows = json.loads(target.read_text(encoding="utf-8"))["rows"]
    assert len(rows) == 3
    assert all(r["predicted"] == r["proportion"] for r in rows)


def test_verify_suite_passes(capsys):
    code, out = run(capsys, "verify", "--suite", "oracle", "--q", "2", "--max-dim", "4", "--format", "csv")
    assert code == 0
    assert "FAIL" not in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["sample", "--u", "abc"],
        ["sample", "--u", "2", "--q", "2"],
        ["fixed-space", "--q", "3"],
        ["fixed-space", "--dim", "3"],
        ["classes", "--data", "z+1:[3,1]", "--dim", "4"],
        ["classes", "--data", "q+1:[1]"],
        ["oracle", "--group", "Spin"],
    ],
)
def test_usage_errors_exit_with_two(capsys, argv):
    assert cli.main(argv) == 2


def test_budget_errors_exit_with_three(capsys):
    assert cli.main(["oracle", "--group", "O-", "--dim", "8"]) == 3
