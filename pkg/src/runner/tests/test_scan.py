from __future__ import annotations

import pytest
from percolation import McEstimate, PcEstimate

from runner import ScanRow, gap_trend_holds, monotone_step, scan_row, sharp_threshold_scan
from runner.scan import family_descriptor


def make_row(size: int, gap: float, halfwidth: float) -> ScanRow:
    return ScanRow(
        size=size,
        descriptor=f"torus:n={size},m={size}",
        pc_low=0.5 - gap / 2,
        pc_high=0.5 + gap / 2,
        gap=gap,
        gap_halfwidth=halfwidth,
        resolved=True,
        wide=gap <= halfwidth,
    )


def test_family_descriptor() -> None:
    assert family_descriptor("torus:n={L},m={L}", 16) == "torus:n=16,m=16"
    with pytest.raises(ValueError):
        family_descriptor("torus:n=4,m=4", 16)


def test_gap_trend() -> None:
    assert gap_trend_holds([make_row(16, 0.2, 0.01), make_row(32, 0.1, 0.01), make_row(64, 0.05, 0.01)])
    # within the combined bracket widths
    assert gap_trend_holds([make_row(16, 0.10, 0.02), make_row(32, 0.12, 0.02)])
    assert not gap_trend_holds([make_row(16, 0.05, 0.01), make_row(32, 0.2, 0.01)])
    assert gap_trend_holds([make_row(16, 0.3, 0.1)])


def test_gap_trend_sorts_by_size() -> None:
    assert gap_trend_holds([make_row(64, 0.05, 0.01), make_row(16, 0.2, 0.01)])


def test_monotone_step() -> None:
    low = McEstimate(estimate=0.40, stderr=0.01, trials=100, seed=0)
    high = McEstimate(estimate=0.60, stderr=0.01, trials=100, seed=0)
    close = McEstimate(estimate=0.39, stderr=0.01, trials=100, seed=0)
    assert monotone_step(low, high)
    assert not monotone_step(high, low)
    assert monotone_step(high, low, increasing=False)
    assert monotone_step(low, close, sigma=3.0)
    assert not monotone_step(low, close, sigma=0.5)


def test_single_size_scan() -> None:
    rows = sharp_threshold_scan("torus:n={L},m={L}", [4], alpha=0.5, eps=0.25, trials=100, seed=5, tol=0.05)
    assert len(rows) == 1
    row = rows[0]
    assert row.size == 4
    assert row.descriptor == "torus:n=4,m=4"
    assert row.gap == pytest.approx(row.pc_high - row.pc_low)
    assert row.gap_halfwidth > 0


def test_tiny_torus_gap_is_wide() -> None:
    rows = sharp_threshold_scan(
        "torus:n={L},m={L}", [4], alpha=0.5, eps=0.25, trials=20, seed=5, tol=0.01, max_trials=20
    )
    assert not rows[0].resolved
    assert rows[0].wide


def bracket(lo: float, hi: float, q: float, resolved: bool = True) -> PcEstimate:
    return PcEstimate(
        estimate=(lo + hi) / 2,
        lo=lo,
        hi=hi,
        alpha=0.5,
        q=q,
        tol=0.01,
        resolved=resolved,
        steps=7,
        trials_used=1400,
    )


@pytest.mark.parametrize(
    ("low", "high", "gap", "wide"),
    [
        (bracket(0.40, 0.41, 0.25), bracket(0.55, 0.56, 0.75), 0.15, False),
        (bracket(0.40, 0.50, 0.25), bracket(0.45, 0.55, 0.75), 0.05, True),
        (bracket(0.40, 0.41, 0.25, resolved=False), bracket(0.55, 0.56, 0.75), 0.15, True),
    ],
)
def test_scan_row_flags_wide_gaps(low: PcEstimate, high: PcEstimate, gap: float, wide: bool) -> None:
    row = scan_row(16, "torus:n=16,m=16", low, high)
    assert row.gap == pytest.approx(gap)
    assert row.gap_halfwidth == pytest.approx((low.hi - low.lo + high.hi - high.lo) / 2)
    assert row.wide is wide


def test_scan_rejects_bad_eps() -> None:
    with pytest.raises(ValueError):
        sharp_threshold_scan("torus:n={L},m={L}", [4], alpha=0.5, eps=0.5, trials=10, seed=0)
