"""
Command-line surface: output formats, verdict lines and exit codes.
"""

import json
import math

import pytest

from sombor_trees.cli import EXIT_CAP, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, build_parser, main, run
from sombor_trees.models import Command, OutputFormat, RunConfig
from sombor_trees.tree import parse_edge_list

MIN_322 = 2 * math.sqrt(13) + math.sqrt(10) + 2 * math.sqrt(5)
MAX_322 = math.sqrt(13) + math.sqrt(8) + 2 * math.sqrt(10) + math.sqrt(5)


def run_cli(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_greedy_dot(capsys):
    status, out, _ = run_cli(capsys, "greedy", "--internal", "5 4 3 3 3 2 2 2", "--format", "dot")
    assert status == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "graph tree {"
    assert '    0 [label="0 (deg 5)"];' in lines
    assert sum(1 for line in lines if " -- " in line) == 17
    assert lines[-1].startswith("# greedy: sombor = ")


def test_greedy_edges_parse_back(capsys):
    status, out, _ = run_cli(capsys, "greedy", "3 2 2 1 1 1", "--format", "edges")
    assert status == EXIT_OK
    tree = parse_edge_list(out)
    assert tree.n == 6
    assert out.splitlines()[-1] == f"# greedy: sombor = {MIN_322:.6f}"


def test_greedy_text(capsys):
    status, out, _ = run_cli(capsys, "greedy", "--internal", "3,2,2")
    assert status == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "greedy"
    assert "n: 6" in lines
    assert "degrees: 3 2 2 1 1 1" in lines
    assert f"sombor: {MIN_322:.6f}" in lines


def test_altgreedy_all_structured(capsys):
    status, out, _ = run_cli(capsys, "altgreedy", "--internal", "5 4 3 3 3 2 2 2", "--all",
                             "--format", "structured")
    assert status == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) >= 3
    assert len({r["form"] for r in records}) == len(records)
    for record in records:
        assert record["n"] == 18
        assert sorted(record["degrees"], reverse=True)[:8] == [5, 4, 3, 3, 3, 2, 2, 2]


def test_altgreedy_text_shows_trace(capsys):
    status, out, _ = run_cli(capsys, "altgreedy", "--internal", "5 4 3 3 3 2 2 2")
    assert status == EXIT_OK
    steps = [line for line in out.splitlines() if line.startswith("step ")]
    assert len(steps) == 4
    assert steps[0].startswith("step 1: a2 on (5 4 3 3 3 2 2 2)")
    assert steps[-1].startswith("step 4: a1 on (3 3)")


def test_index_from_file(capsys, tmp_path):
    path = tmp_path / "path3.txt"
    path.write_text("0 1\n1 2\n")
    status, out, _ = run_cli(capsys, "index", "--tree", str(path))
    assert status == EXIT_OK
    assert f"sombor: {2 * math.sqrt(5):.6f}" in out.splitlines()

    status, out, _ = run_cli(capsys, "index", "--tree", str(path), "--index", "product", "--format", "edges")
    assert status == EXIT_OK
    assert out.splitlines()[-1].endswith("product = 4.000000")


def test_index_missing_file(capsys, tmp_path):
    status, _, err = run_cli(capsys, "index", "--tree", str(tmp_path / "absent.txt"))
    assert status == EXIT_USAGE
    assert "error:" in err


def test_verify_322(capsys):
    status, out, _ = run_cli(capsys, "verify", "--internal", "3 2 2", "--jobs", "1")
    assert status == EXIT_OK
    assert out.splitlines()[0] == (
        f"min {MIN_322:.6f} attained by greedy: yes; "
        f"max {MAX_322:.6f} attained by alternating greedy: yes"
    )
    assert "labeled_count: 12" in out.splitlines()
    assert "unlabeled_count: 2" in out.splitlines()


def test_verify_output_independent_of_jobs(capsys):
    _, serial, _ = run_cli(capsys, "verify", "3 3 2 2 1 1 1 1", "--jobs", "1")
    _, parallel, _ = run_cli(capsys, "verify", "3 3 2 2 1 1 1 1", "--jobs", "2")
    _, again, _ = run_cli(capsys, "verify", "3 3 2 2 1 1 1 1", "--jobs", "1")
    assert serial == parallel == again


def test_verify_structured(capsys):
    status, out, _ = run_cli(capsys, "verify", "--internal", "3 2 2", "--jobs", "1", "--format", "structured")
    assert status == EXIT_OK
    record = json.loads(out)
    assert record["labeled_count"] == 12
    assert record["verified"] is True
    assert record["min_value"] == pytest.approx(MIN_322, abs=1e-9)


def test_verify_cap(capsys):
    status, _, err = run_cli(capsys, "verify", "3 2 2 1 1 1", "--cap", "5", "--jobs", "1")
    assert status == EXIT_CAP
    assert "exceeds cap 5" in err


def test_condition_minus_sombor(capsys):
    status, out, _ = run_cli(capsys, "condition", "--f", "minus_sombor", "--grid", "50")
    assert status == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "holds: yes, strict: yes"
    assert lines[1].startswith("closed_form_agrees: yes")


def test_condition_sombor_fails(capsys):
    status, out, _ = run_cli(capsys, "condition", "--index", "sombor", "--grid", "10")
    assert status == EXIT_COUNTEREXAMPLE
    lines = out.splitlines()
    assert lines[0] == "holds: no, strict: no"
    assert lines[1].startswith("witness: 2 1 2 1")


def test_sweep_small(capsys):
    status, out, _ = run_cli(capsys, "sweep", "--n-max", "6", "--jobs", "1")
    assert status == EXIT_OK
    lines = out.splitlines()
    assert "sequences: 12" in lines
    assert "greedy_failures: 0" in lines
    assert "alt_greedy_failures: 0" in lines


def test_switch_scan(capsys):
    status, out, _ = run_cli(capsys, "switch-scan", "--internal", "3 2 2")
    assert status == EXIT_OK
    assert out.splitlines() == ["greedy: local minimum: yes"]

    status, out, _ = run_cli(capsys, "switch-scan", "--internal", "3 2 2", "--all")
    assert status == EXIT_OK
    assert out.splitlines() == ["greedy: local minimum: yes", "alternating greedy 1/1: local maximum: yes"]


def test_switch_scan_direction_follows_orientation(capsys):
    # sombor has a known orientation, so --maximize does not flip a sequence scan
    status, out, _ = run_cli(capsys, "switch-scan", "--internal", "3 2 2", "--all", "--maximize")
    assert status == EXIT_OK
    assert out.splitlines() == ["greedy: local minimum: yes", "alternating greedy 1/1: local maximum: yes"]

    status, out, _ = run_cli(capsys, "switch-scan", "--internal", "3 2 2", "--all", "--index", "minus_sombor")
    assert status == EXIT_OK
    assert out.splitlines() == ["greedy: local maximum: yes", "alternating greedy 1/1: local minimum: yes"]


def test_switch_scan_reports_improving_switch(capsys, tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text("0 1\n0 2\n0 3\n3 4\n4 5\n")
    status, out, _ = run_cli(capsys, "switch-scan", "--tree", str(path))
    assert status == EXIT_COUNTEREXAMPLE
    assert out.startswith(f"{path}: local minimum: no; switch ")
    assert "takes sombor from 14.994602 to 14.845516" in out


def test_switch_scan_maximize_file(capsys, tmp_path):
    path = tmp_path / "chain.txt"
    # 3-2-2 chain: the Sombor maximiser for (3,2,2)
    path.write_text("0 1\n0 2\n0 3\n3 4\n4 5\n")
    status, out, _ = run_cli(capsys, "switch-scan", "--tree", str(path), "--maximize")
    assert status == EXIT_OK
    assert out.splitlines() == [f"{path}: local maximum: yes"]


@pytest.mark.parametrize("argv", [
    ["verify", "3 3 1 1"],
    ["greedy", "3 x 1"],
    ["greedy", "--internal", "3 1"],
    ["greedy"],
    ["index"],
    ["greedy", "1 1", "--index", "harmonic"],
    ["frobnicate"],
    [],
    ["condition", "--grid", "1"],
])
def test_usage_errors(capsys, argv):
    status, _, _ = run_cli(capsys, *argv)
    assert status == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    status, out, _ = run_cli(capsys, "--help")
    assert status == EXIT_OK
    assert "verify" in out


def test_parser_and_run():
    args = build_parser().parse_args(["greedy", "1 1", "--format", "edges"])
    assert args.command == "greedy"
    assert args.output_format == "edges"

    config = RunConfig(command=Command.GREEDY, sequence="1 1", output_format=OutputFormat.EDGES)
    assert run(config) == EXIT_OK
