import logging
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from runner.models import ResultRow  # noqa: E402

logger = logging.getLogger(__name__)


def plot_results(rows: list[ResultRow], parameter: str, path: Path) -> Path:
    """Estimate against ``parameter`` with ±1 stderr bars, one series per
    combination of the other grid parameters.
    """
    series: dict[str, list[ResultRow]] = defaultdict(list)
    for row in rows:
        if row.status != "ok" or row.estimate is None or parameter not in row.params:
            continue
        others = ", ".join(f"{k}={v}" for k, v in row.params.items() if k != parameter)
        series[others].append(row)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, members in series.items():
        members.sort(key=lambda row: float(row.params[parameter]))
        ax.errorbar(
            [float(row.params[parameter]) for row in members],
            [row.estimate for row in members],
            yerr=[row.stderr or 0.0 for row in members],
            marker="o",
            capsize=3,
            label=label or None,
        )
    ax.set_xlabel(parameter)
    ax.set_ylabel("estimate")
    if rows:
        ax.set_title(rows[0].kind)
    if any(series):
        ax.legend(fontsize="small")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    logger.info(f"Saved chart to {path}")
    return path
