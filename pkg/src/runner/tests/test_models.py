from __future__ import annotations

from pathlib import Path

import pytest
from pydantic import ValidationError

from runner import ExperimentSpec, ResultRow


def spec(**overrides) -> ExperimentSpec:
    fields = {
        "kind": "giant-grid",
        "graph": "torus:n={n},m={n}",
        "grid": {"n": [4, 6], "p": [0.3, 0.5, 0.7]},
        "seed": 1,
        "output": "out/giant.csv",
    }
    fields.update(overrides)
    return ExperimentSpec.model_validate(fields)


def test_rows_are_the_grid_product() -> None:
    rows = spec().rows()
    assert len(rows) == 6
    assert rows[0] == {"n": 4, "p": 0.3}
    assert rows[1] == {"n": 4, "p": 0.5}
    assert rows[-1] == {"n": 6, "p": 0.7}


def test_spec_from_json() -> None:
    text = '{"kind": "crossing", "grid": {"n": [8], "p": [0.5]}, "seed": 3, "output": "x.csv", "trials": 50}'
    parsed = ExperimentSpec.model_validate_json(text)
    assert parsed.trials == 50
    assert parsed.output == Path("x.csv")
    assert parsed.graph is None


@pytest.mark.parametrize(
    "overrides",
    [
        {"grid": {}},
        {"grid": {"p": []}},
        {"grid": {"status": [1]}},
        {"kind": "no-such-kind"},
        {"trials": 0},
    ],
)
def test_invalid_specs(overrides: dict) -> None:
    with pytest.raises(ValidationError):
        spec(**overrides)


def test_seed_is_mandatory() -> None:
    with pytest.raises(ValidationError):
        ExperimentSpec.model_validate({"kind": "crossing", "grid": {"p": [0.5]}, "output": "x.csv"})


def test_budgets_fall_back_to_settings(monkeypatch) -> None:
    monkeypatch.setattr("runner.models.get_max_edges", lambda: 123)
    monkeypatch.setattr("runner.models.get_row_timeout", lambda: 7.0)
    assert spec().edge_budget() == 123
    assert spec(max_edges=10).edge_budget() == 10
    assert spec().time_budget() == 7.0
    assert spec(max_trials=5).trial_budget() == 5


def test_flat_column_order() -> None:
    row = ResultRow(
        kind="giant-grid",
        row=2,
        graph="torus:n=4,m=4",
        params={"n": 4, "p": 0.5},
        estimate=0.25,
        stderr=0.01,
        extra={"vertices": 16, "ignored": 1},
        runtime=0.1,
    )
    record = row.flat(["vertices", "edges"])
    assert list(record) == [
        "kind",
        "row",
        "graph",
        "n",
        "p",
        "estimate",
        "stderr",
        "check",
        "monotone",
        "vertices",
        "edges",
        "status",
        "message",
        "runtime",
    ]
    assert record["edges"] is None
    assert row.passed


def test_failed_rows_do_not_pass() -> None:
    base = {"kind": "crossing", "row": 0, "params": {"p": 0.5}}
    assert not ResultRow(**base, check=False).passed
    assert not ResultRow(**base, monotone=False).passed
    assert not ResultRow(**base, status="error").passed
