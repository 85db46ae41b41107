"""
Size scans over a graph family and the CI-aware trend checks used by the
runner's pass/fail columns.
"""

import logging
import math
from collections.abc import Sequence

from conf import get_mc_sigma
from graphs import parse_descriptor
from percolation import McEstimate, PcEstimate, estimate_pc

from runner.models import ResultRow, ScanRow

logger = logging.getLogger(__name__)


def family_descriptor(template: str, size: int) -> str:
    """Fill the ``{L}`` field of a family template, e.g. ``torus:n={L},m={L}``."""
    if "{L}" not in template:
        raise ValueError(f"Family template {template!r} has no {{L}} field")
    return template.replace("{L}", str(size))


def scan_row(size: int, descriptor: str, low: PcEstimate, high: PcEstimate) -> ScanRow:
    """
    The gap between the two bisections for one size. The gap is wide when
    either bracket is unresolved or the brackets overlap.
    """
    halfwidth = (low.hi - low.lo) / 2 + (high.hi - high.lo) / 2
    gap = high.estimate - low.estimate
    resolved = low.resolved and high.resolved
    row = ScanRow(
        size=size,
        descriptor=descriptor,
        pc_low=low.estimate,
        pc_high=high.estimate,
        gap=gap,
        gap_halfwidth=halfwidth,
        resolved=resolved,
        wide=not resolved or gap <= halfwidth,
    )
    if row.wide:
        logger.warning(f"{descriptor}: gap {gap:.4f} not resolved within ±{halfwidth:.4f}")
    logger.info(f"{descriptor}: p_c in [{low.estimate:.4f}, {high.estimate:.4f}]")
    return row


def sharp_threshold_scan(
    template: str,
    sizes: Sequence[int],
    alpha: float,
    eps: float,
    trials: int,
    seed: int,
    tol: float = 0.01,
    max_trials: int | None = None,
) -> list[ScanRow]:
    """p_c(G_L, α, ε) and p_c(G_L, α, 1−ε) for each size L, and their gap."""
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    rows = []
    for size in sizes:
        descriptor = family_descriptor(template, size)
        G = parse_descriptor(descriptor).graph
        low = estimate_pc(G, alpha, eps, tol, trials, seed, max_trials=max_trials)
        high = estimate_pc(G, alpha, 1 - eps, tol, trials, seed, max_trials=max_trials)
        rows.append(scan_row(size, descriptor, low, high))
    return rows


def gap_trend_holds(rows: Sequence[ScanRow]) -> bool:
    """Gaps weakly decreasing in size, up to the combined bracket widths."""
    ordered = sorted(rows, key=lambda row: row.size)
    return all(
        b.gap <= a.gap + a.gap_halfwidth + b.gap_halfwidth for a, b in zip(ordered, ordered[1:])
    )


def monotone_step(
    previous: McEstimate | ResultRow,
    current: McEstimate | ResultRow,
    increasing: bool = True,
    sigma: float | None = None,
) -> bool:
    """Whether ``current`` does not move against the expected direction
    by more than ``sigma`` combined standard errors.
    """
    sigma = get_mc_sigma() if sigma is None else sigma
    slack = sigma * math.hypot(previous.stderr or 0.0, current.stderr or 0.0)
    if increasing:
        return current.estimate >= previous.estimate - slack
    return current.estimate <= previous.estimate + slack
