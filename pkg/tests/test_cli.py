import json

import pytest
from click.testing import CliRunner

from triphy import generate_fm, serialize_matrix
from triphy.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fm2_csv(tmp_path):
    path = tmp_path / "fm2.csv"
    path.write_text(serialize_matrix(generate_fm(2).matrix))
    return path


@pytest.fixture
def fm3_csv(tmp_path):
    path = tmp_path / "fm3.csv"
    path.write_text(serialize_matrix(generate_fm(3).matrix))
    return path


@pytest.fixture
def compatible_csv(tmp_path):
    path = tmp_path / "ok.csv"
    path.write_text("0,0\n0,1\n1,1\n")
    return path


def test_check_fm2_witness(runner, fm2_csv, tmp_path):
    report_path = tmp_path / "report.json"
    result = runner.invoke(main, ["check", str(fm2_csv), "--json", str(report_path)])
    assert result.exit_code == 1
    assert "witness characters [0, 1]" in result.output
    report = json.loads(report_path.read_text())
    assert report["verdict"] == "witness"
    assert report["witness"]["characters"] == [0, 1]
    assert report["witness"]["pattern"] == "two_color_cycle"


def test_check_single_char_exit_zero(runner, tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("0\n1\n2\n")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 0
    assert "perfect phylogeny: yes" in result.output


def test_check_fm3_witness_pattern(runner, fm3_csv):
    result = runner.invoke(main, ["check", str(fm3_csv)])
    assert result.exit_code == 1
    assert "witness characters [0, 1, 2]" in result.output
    assert "four_cycle_forced" in result.output


def test_check_bad_input_exit_two(runner, tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("0,1\n0\n")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 2
    assert "error" in result.output


def test_check_four_state_input_exit_two(runner, tmp_path):
    path = tmp_path / "wide.csv"
    path.write_text(serialize_matrix(generate_fm(4).matrix))
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 2


def test_check_writes_dot_and_newick(runner, compatible_csv, tmp_path):
    dot = tmp_path / "graph.dot"
    nwk = tmp_path / "tree.nwk"
    result = runner.invoke(
        main,
        ["check", str(compatible_csv), "--dot", str(dot), "--newick", str(nwk)],
    )
    assert result.exit_code == 0
    assert dot.read_text().startswith("graph")
    assert nwk.read_text().endswith(";\n")


def test_check_newick_on_witness_fails(runner, fm2_csv, tmp_path):
    result = runner.invoke(
        main, ["check", str(fm2_csv), "--newick", str(tmp_path / "t.nwk")]
    )
    assert result.exit_code == 1
    assert "--newick needs a tree verdict" in result.output


def test_check_threads_flag(runner, fm3_csv):
    result = runner.invoke(main, ["check", str(fm3_csv), "--threads", "4"])
    assert result.exit_code == 1
    assert "witness characters [0, 1, 2]" in result.output


def test_gen_fm_r2(runner):
    result = runner.invoke(main, ["gen-fm", "--r", "2"])
    assert result.exit_code == 0
    assert result.output == "0,0\n1,1\n0,1\n1,0\n"


def test_gen_fm_bad_r(runner):
    result = runner.invoke(main, ["gen-fm", "--r", "1"])
    assert result.exit_code == 2


def test_conflicts_fm3(runner, fm3_csv):
    result = runner.invoke(main, ["conflicts", str(fm3_csv)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["edges2"] == []
    assert report["edges3"] == [[0, 1, 2]]


def test_remove_compatible_k0(runner, compatible_csv):
    result = runner.invoke(main, ["remove", str(compatible_csv), "--k", "0"])
    assert result.exit_code == 0
    assert "remove characters: []" in result.output


def test_remove_fm3(runner, fm3_csv):
    result = runner.invoke(main, ["remove", str(fm3_csv), "--k", "1"])
    assert result.exit_code == 0
    assert "remove characters: [0]" in result.output


def test_remove_budget_too_small(runner, fm3_csv):
    result = runner.invoke(main, ["remove", str(fm3_csv), "--k", "0"])
    assert result.exit_code == 1
    assert "no removal set" in result.output


def test_oracle_command(runner, fm2_csv, compatible_csv):
    assert runner.invoke(main, ["oracle", str(fm2_csv)]).exit_code == 1
    result = runner.invoke(main, ["oracle", str(compatible_csv)])
    assert result.exit_code == 0
    assert "perfect phylogeny: yes" in result.output


def test_oracle_accepts_four_states(runner, tmp_path):
    path = tmp_path / "fm4.csv"
    path.write_text(serialize_matrix(generate_fm(4).matrix))
    assert runner.invoke(main, ["oracle", str(path)]).exit_code == 1


def test_export_requires_target(runner, compatible_csv):
    assert runner.invoke(main, ["export", str(compatible_csv)]).exit_code == 2


def test_export_dot_witness_and_newick(runner, fm2_csv, compatible_csv, tmp_path):
    dot = tmp_path / "w.dot"
    result = runner.invoke(main, ["export", str(fm2_csv), "--dot", str(dot)])
    assert result.exit_code == 0
    assert "style=solid" in dot.read_text()

    result = runner.invoke(
        main, ["export", str(fm2_csv), "--newick", str(tmp_path / "w.nwk")]
    )
    assert result.exit_code == 1

    nwk = tmp_path / "ok.nwk"
    result = runner.invoke(main, ["export", str(compatible_csv), "--newick", str(nwk)])
    assert result.exit_code == 0
    assert nwk.read_text().count(";") == 1


def test_ws_format(runner, tmp_path):
    path = tmp_path / "tab.txt"
    path.write_text("0 0\n0 1\n1 0\n1 1\n")
    result = runner.invoke(main, ["check", str(path), "--format", "ws"])
    assert result.exit_code == 1


def test_json_reports_byte_identical(runner, fm3_csv, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        result = runner.invoke(main, ["check", str(fm3_csv), "--json", str(p)])
        assert result.exit_code == 1
    assert paths[0].read_bytes() == paths[1].read_bytes()

    outputs = [
        runner.invoke(main, ["conflicts", str(fm3_csv)]).output for _ in range(2)
    ]
    assert outputs[0] == outputs[1]
