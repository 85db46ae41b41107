from __future__ import annotations

import json

import pytest

from runner import RESULTS_HEADER, ResultRow, ResultWriter, RunSummary, read_results


def rows() -> list[ResultRow]:
    return [
        ResultRow(kind="crossing", row=0, params={"p": 0.3}, estimate=0.1, stderr=0.01, extra={"tolerance": None}),
        ResultRow(kind="crossing", row=1, params={"p": 0.5}, estimate=0.5, check=True, monotone=True),
        ResultRow(kind="crossing", row=2, params={"p": 0.7}, status="error", message="ValueError: boom"),
    ]


def columns() -> list[str]:
    return ["kind", "row", "graph", "p", "estimate", "stderr", "check", "monotone", "tolerance", "status", "message", "runtime"]


def test_header_and_rows(tmp_path) -> None:
    path = tmp_path / "nested" / "crossing.csv"
    with ResultWriter(path, columns(), ["tolerance"]) as writer:
        for row in rows():
            writer.write(row)
    lines = path.read_text().splitlines()
    assert lines[0] == RESULTS_HEADER
    assert lines[1].split(",") == columns()
    assert len(lines) == 5

    frame = read_results(path)
    assert frame.columns == columns()
    assert frame["row"].to_list() == [0, 1, 2]
    assert frame["status"].to_list() == ["ok", "ok", "error"]
    assert frame["message"][2] == "ValueError: boom"


def test_summary_next_to_results(tmp_path) -> None:
    path = tmp_path / "run.csv"
    summary = RunSummary(kind="crossing", seed=1, rows=3, errors=1, failed_checks=0, passed=False, output=path)
    with ResultWriter(path, columns(), ["tolerance"]) as writer:
        written = writer.write_summary(summary)
    assert written == tmp_path / "run.json"
    assert json.loads(written.read_text())["errors"] == 1


def test_unversioned_file_is_rejected(tmp_path) -> None:
    path = tmp_path / "plain.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_results(path)


def test_write_requires_open_writer(tmp_path) -> None:
    writer = ResultWriter(tmp_path / "x.csv", columns(), ["tolerance"])
    with pytest.raises(RuntimeError):
        writer.write(rows()[0])
