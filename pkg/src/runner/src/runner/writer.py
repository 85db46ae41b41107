import logging
from pathlib import Path
from typing import TextIO

import polars as pl

from runner.models import RESULTS_HEADER, ResultRow, RunSummary

logger = logging.getLogger(__name__)


class ResultWriter:
    """
    Single consumer for a run's rows. The CSV starts with the versioned
    header line, then the column names, then one line per row; each row
    is flushed as soon as it is written.
    """

    def __init__(self, path: Path, columns: list[str], extra_columns: list[str]):
        self.path = Path(path)
        self.columns = columns
        self.extra_columns = extra_columns
        self.rows_written = 0
        self._handle: TextIO | None = None

    def __enter__(self) -> "ResultWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", encoding="utf-8", newline="")
        self._handle.write(f"{RESULTS_HEADER}\n")
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None
            logger.info(f"Wrote {self.rows_written} rows to {self.path}")

    def write(self, row: ResultRow) -> None:
        if self._handle is None:
            raise RuntimeError("ResultWriter is not open")
        frame = pl.DataFrame([row.flat(self.extra_columns)]).select(self.columns)
        frame.write_csv(self._handle, include_header=self.rows_written == 0)
        self._handle.flush()
        self.rows_written += 1
        logger.debug(f"Row {row.row} written ({row.status})")

    def write_summary(self, summary: RunSummary) -> Path:
        path = self.path.with_suffix(".json")
        path.write_text(summary.model_dump_json(indent=2))
        return path


def read_results(path: Path | str) -> pl.DataFrame:
    """Read a results CSV back, checking its version header."""
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n")
    if header != RESULTS_HEADER:
        raise ValueError(f"{path} does not start with {RESULTS_HEADER!r}")
    return pl.read_csv(path, skip_rows=1)
