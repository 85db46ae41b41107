import itertools
from pathlib import Path
from typing import Literal

from conf import get_max_edges, get_max_trials, get_row_timeout
from pydantic import BaseModel, Field, field_validator

RESULTS_HEADER = "# perclab-results v1"

RESERVED_COLUMNS = frozenset(
    {"kind", "row", "graph", "estimate", "stderr", "check", "monotone", "status", "message", "runtime"}
)

type Scalar = int | float | str | bool | None

ExperimentKind = Literal[
    "giant-grid",
    "elongated-torus-phase",
    "progression-corpus",
    "gff-verify",
    "box-connectivity",
    "crossing",
    "coupling-containment",
    "conductance-exactness",
    "iso-oracle",
    "sharp-threshold",
]


class RunnerError(Exception):
    """Base class for errors raised while running experiments."""

    pass


class SpecError(RunnerError):
    """Raised when an experiment spec is missing something its kind needs."""

    pass


class RowBudgetError(RunnerError):
    """Raised when a row would exceed its edge, trial or wall-clock budget.
    The row is recorded as an error and the run continues.
    """

    pass


class ExperimentSpec(BaseModel):
    """
    One experiment: a kind, an optional graph descriptor and a parameter
    grid. The descriptor may hold ``{name}`` fields filled from each grid
    row, e.g. ``torus:n={n},m={m}``. Budgets left unset fall back to the
    runner settings.
    """

    kind: ExperimentKind
    graph: str | None = None
    grid: dict[str, list[int | float | str]]
    seed: int
    output: Path
    trials: int = Field(default=200, gt=0)
    max_edges: int | None = None
    max_trials: int | None = None
    row_timeout: float | None = None
    chart: bool = False

    @field_validator("grid")
    @classmethod
    def _grid_nonempty(cls, grid: dict[str, list[int | float | str]]) -> dict[str, list[int | float | str]]:
        if not grid:
            raise ValueError("The parameter grid must name at least one parameter")
        empty = [name for name, values in grid.items() if not values]
        if empty:
            raise ValueError(f"Grid parameters without values: {empty}")
        clashing = sorted(RESERVED_COLUMNS.intersection(grid))
        if clashing:
            raise ValueError(f"Grid parameters clash with result columns: {clashing}")
        return grid

    def rows(self) -> list[dict[str, int | float | str]]:
        """Cartesian product of the grid, last parameter varying fastest."""
        names = list(self.grid)
        return [dict(zip(names, values)) for values in itertools.product(*self.grid.values())]

    def edge_budget(self) -> int:
        return get_max_edges() if self.max_edges is None else self.max_edges

    def trial_budget(self) -> int:
        return get_max_trials() if self.max_trials is None else self.max_trials

    def time_budget(self) -> float:
        return get_row_timeout() if self.row_timeout is None else self.row_timeout


class RowResult(BaseModel):
    """What an experiment kind computes for a single grid row."""

    estimate: float | None = None
    stderr: float | None = None
    check: bool | None = None
    extra: dict[str, Scalar] = {}


class ResultRow(BaseModel):
    """One completed (or failed) grid row."""

    kind: str
    row: int
    graph: str | None = None
    params: dict[str, int | float | str]
    estimate: float | None = None
    stderr: float | None = None
    check: bool | None = None
    monotone: bool | None = None
    status: Literal["ok", "error"] = "ok"
    message: str | None = None
    runtime: float = 0.0
    extra: dict[str, Scalar] = {}

    @property
    def passed(self) -> bool:
        return self.status == "ok" and self.check is not False and self.monotone is not False

    def flat(self, extra_columns: list[str]) -> dict[str, Scalar]:
        """Column name to value, with every extra column present."""
        record: dict[str, Scalar] = {"kind": self.kind, "row": self.row, "graph": self.graph}
        record.update(self.params)
        record.update(
            estimate=self.estimate,
            stderr=self.stderr,
            check=self.check,
            monotone=self.monotone,
        )
        record.update({name: self.extra.get(name) for name in extra_columns})
        record.update(status=self.status, message=self.message, runtime=self.runtime)
        return record


class RunSummary(BaseModel):
    kind: str
    seed: int
    rows: int
    errors: int
    failed_checks: int
    run_check: bool | None = None
    passed: bool
    output: Path
    chart: Path | None = None


class ScanRow(BaseModel):
    """
    Critical-probability estimates at levels ε and 1−ε for one family size.

    ``gap_halfwidth`` combines the two bisection half-widths; ``wide`` flags
    a gap that the brackets cannot separate from zero.
    """

    size: int
    descriptor: str
    pc_low: float
    pc_high: float
    gap: float
    gap_halfwidth: float
    resolved: bool
    wide: bool
