from __future__ import annotations

import json

import polars as pl
import pytest

from runner import read_results
from runner.cli import main, parse_vertex_set


def test_parse_vertex_set(tmp_path) -> None:
    assert parse_vertex_set("1,2, 3") == [1, 2, 3]
    listed = tmp_path / "a.json"
    listed.write_text("[4, 5]")
    assert parse_vertex_set(f"set:{listed}") == [4, 5]
    spaced = tmp_path / "a.txt"
    spaced.write_text("6 7\n8\n")
    assert parse_vertex_set(f"set:{spaced}") == [6, 7, 8]


def test_graph_command(tmp_path, capsys) -> None:
    output = tmp_path / "torus.json"
    assert main(["graph", "torus:n=4,m=3", "--output", str(output)]) == 0
    out = capsys.readouterr().out
    assert '"vertices": 12' in out
    assert '"edges": 24' in out
    assert json.loads(output.read_text())["n"] == 12
    assert (tmp_path / "torus.coords.json").exists()


def test_simulate_pair(capsys) -> None:
    argv = ["simulate", "cycle:n=6", "-p", "1.0", "--pair", "0", "3", "--trials", "5"]
    assert main([*argv, "--seed", "1"]) == 0
    assert '"estimate": 1.0' in capsys.readouterr().out


def test_unknown_family_fails() -> None:
    assert main(["simulate", "nosuch:n=3", "-p", "0.5", "--seed", "1"]) == 1


def test_extract_command(capsys) -> None:
    assert main(["extract", "--mods", "12", "--gens", "(1)", "-r", "3"]) == 0
    assert '"cover_ok": true' in capsys.readouterr().out


def test_couple_command() -> None:
    assert main(["couple", "torus:n=4,m=4", "-p", "0.5", "--samples", "10", "--seed", "2"]) == 0


def test_iso_command_on_a_set(capsys) -> None:
    assert main(["iso", "cycle:n=10", "-d", "1", "--set", "2,3,4"]) == 0
    assert '"boundary": 2' in capsys.readouterr().out


def test_run_command(tmp_path) -> None:
    spec = tmp_path / "spec.json"
    output = tmp_path / "results" / "conductance.csv"
    spec.write_text(
        json.dumps(
            {
                "kind": "conductance-exactness",
                "grid": {"n": [20], "graphs": [3], "max_vertices": [20]},
                "seed": 4,
                "output": str(output),
            }
        )
    )
    assert main(["run", "--spec", str(spec)]) == 0
    assert read_results(output).height == 1
    assert json.loads(output.with_suffix(".json").read_text())["passed"] is True


def test_run_command_exit_code_on_failure(tmp_path) -> None:
    spec = tmp_path / "spec.json"
    spec.write_text(
        json.dumps(
            {
                "kind": "giant-grid",
                "graph": "nosuch:n=1",
                "grid": {"p": [0.5]},
                "seed": 4,
                "output": str(tmp_path / "bad.csv"),
            }
        )
    )
    assert main(["run", "--spec", str(spec)]) == 1


def test_scan_command(tmp_path) -> None:
    output = tmp_path / "scan.csv"
    code = main(
        [
            "scan",
            "--family",
            "torus:n={L},m={L}",
            "--sizes",
            "4",
            "--trials",
            "50",
            "--tol",
            "0.1",
            "--seed",
            "3",
            "--output",
            str(output),
        ]
    )
    assert code == 0
    assert output.read_text().splitlines()[0].startswith("size,descriptor,pc_low")


def test_simulate_with_graph_flag(capsys) -> None:
    assert main(["simulate", "--graph", "cycle:n=6", "--p", "1.0", "--pair", "0", "3", "--seed", "1"]) == 0
    assert '"estimate": 1.0' in capsys.readouterr().out


def test_simulate_writes_a_row_per_p(tmp_path) -> None:
    output = tmp_path / "giant.csv"
    argv = ["simulate", "--graph", "torus:n=4,m=4", "--p", "0.0", "1.0", "--trials", "10", "--seed", "2"]
    assert main([*argv, "--output", str(output)]) == 0
    frame = pl.read_csv(output)
    assert frame.columns == ["p", "estimate", "stderr", "trials", "seed"]
    assert frame["p"].to_list() == [0.0, 1.0]
    assert frame["estimate"].to_list() == [0.0, 1.0]
    assert frame["trials"].to_list() == [10, 10]


def test_pc_with_graph_flag(capsys) -> None:
    argv = ["pc", "--graph", "torus:n=4,m=4", "--alpha", "0.5", "--q", "0.5", "--tol", "0.1"]
    assert main([*argv, "--trials", "40", "--seed", "3"]) == 0
    assert '"resolved"' in capsys.readouterr().out


@pytest.mark.parametrize("kind", ["union", "quotient", "embed"])
def test_couple_kinds(tmp_path, kind: str) -> None:
    output = tmp_path / "couple.csv"
    argv = ["couple", "--graph", "torus:n=4,m=4", "--p", "0.5", "--kind", kind, "--p2", "0.4"]
    assert main([*argv, "--samples", "10", "--seed", "1", "--output", str(output)]) == 0
    frame = pl.read_csv(output)
    assert frame["kind"].len() == 1
    assert frame["violations"].to_list() == [0]
    assert frame["p"].to_list() == [0.5]


def test_union_coupling_on_a_non_cayley_graph() -> None:
    assert main(["couple", "path:n=6", "-p", "0.3", "--kind", "union", "--samples", "10", "--seed", "1"]) == 0
    assert main(["couple", "path:n=6", "-p", "0.3", "--kind", "embed", "--samples", "10", "--seed", "1"]) == 1


def test_gff_verify_on_a_grid(tmp_path, capsys) -> None:
    output = tmp_path / "gff.csv"
    argv = ["gff-verify", "--graph", "grid:n=8", "--boundary", "ring", "--outer", "60", "--inner", "20"]
    assert main([*argv, "--seed", "4", "--output", str(output)]) == 0
    frame = pl.read_csv(output)
    assert frame.columns == ["bound", "estimate", "stderr_outer", "stderr_inner", "conductance", "holds"]
    assert 0 < frame["bound"][0] < 1
    assert frame["holds"].to_list() == [True]
    assert '"holds": true' in capsys.readouterr().out


def test_gff_verify_with_boundary_file(tmp_path) -> None:
    boundary = tmp_path / "boundary.txt"
    boundary.write_text("4\n")
    output = tmp_path / "gff.csv"
    argv = ["gff-verify", "--graph", "path:n=5", "--boundary", f"set:{boundary}", "--a", "0"]
    main([*argv, "--outer", "20", "--inner", "10", "--seed", "1", "--output", str(output)])
    # four unit edges in series
    assert pl.read_csv(output)["conductance"][0] == pytest.approx(0.25)


def test_gff_verify_needs_a_off_boxes() -> None:
    assert main(["gff-verify", "--graph", "path:n=5", "--boundary", "set:/dev/null", "--seed", "1"]) == 1


def test_iso_exhaustive_profile(tmp_path, capsys) -> None:
    output = tmp_path / "profile.csv"
    argv = ["iso", "--graph", "cycle:n=10", "--mode", "exhaustive", "--d", "1", "--output", str(output)]
    assert main(argv) == 0
    frame = pl.read_csv(output, schema_overrides={"witness": pl.String})
    assert frame.columns == ["s", "min_boundary", "witness"]
    assert frame["s"].to_list() == [1, 2, 3, 4, 5]
    assert frame["min_boundary"].to_list() == [2] * 5
    assert frame["witness"][0] == "0"
    assert frame["witness"][2] == "0 1 2"
    assert '"mode": "exhaustive"' in capsys.readouterr().out


def test_iso_positional_exhaustive() -> None:
    assert main(["iso", "cycle:n=10", "--mode", "exhaustive", "-d", "1"]) == 0


def test_iso_search(tmp_path) -> None:
    output = tmp_path / "best.csv"
    argv = ["iso", "--graph", "cycle:n=12", "--mode", "search", "--d", "1"]
    assert main([*argv, "--output", str(output)]) == 0
    frame = pl.read_csv(output, schema_overrides={"witness": pl.String})
    assert frame.height == 1
    assert frame["min_boundary"].to_list() == [2]


def test_p_is_not_an_abbreviation() -> None:
    with pytest.raises(SystemExit):
        main(["simulate", "cycle:n=6", "--pa", "0", "3", "-p", "0.5", "--seed", "1"])


def test_missing_graph_fails() -> None:
    assert main(["simulate", "--p", "0.5", "--seed", "1"]) == 1
