from __future__ import annotations

import numpy as np
import pytest
from graphs import elongated_torus

from percolation import (
    blocked_columns,
    blocked_cycle_count,
    column_neighbourhood_size,
    crossing_probability,
    expected_blocked_cycles,
    four_sides_probability,
)


def test_expected_blocked_cycles() -> None:
    assert expected_blocked_cycles(10, 3, 0.5) == pytest.approx(5 * 0.5**9)
    assert expected_blocked_cycles(11, 4, 0.0) == 5
    assert expected_blocked_cycles(11, 4, 1.0) == 0


@pytest.mark.parametrize("n", [10, 11])
def test_blocked_cycles_at_extremes(n: int) -> None:
    torus = elongated_torus(n, 4)
    assert blocked_cycle_count(torus, 0.0, seed=0) == n // 2
    assert blocked_cycle_count(torus, 1.0, seed=0) == 0


def test_single_open_edge_unblocks_one_column() -> None:
    torus = elongated_torus(8, 3)
    G = torus.graph
    open_mask = np.zeros(G.edge_count, dtype=bool)
    # the horizontal edge between columns 2 and 3 in row 0
    open_mask[G.edge_index(torus.vertex((2, 0)), torus.vertex((3, 0)))] = True
    assert blocked_columns(torus, open_mask).tolist() == [True, False, True, True]


def test_blocked_cycle_count_matches_expectation() -> None:
    n, m, p, trials = 40, 3, 0.2, 500
    torus = elongated_torus(n, m)
    counts = np.array([blocked_cycle_count(torus, p, seed=1, trial=t) for t in range(trials)])
    expected = expected_blocked_cycles(n, m, p)
    per_column = (1 - p) ** (3 * m)
    stderr = np.sqrt((n // 2) * per_column * (1 - per_column) / trials)
    assert abs(counts.mean() - expected) <= 4 * stderr


def test_crossing_extremes() -> None:
    assert crossing_probability(3, 1.0, trials=10, seed=0).estimate == 1.0
    assert crossing_probability(3, 0.0, trials=10, seed=0).estimate == 0.0


def test_crossing_near_one_half() -> None:
    estimate = crossing_probability(10, 0.5, trials=400, seed=2).estimate
    assert 0.3 <= estimate <= 0.7


def test_crossing_is_monotone() -> None:
    values = [crossing_probability(6, p, trials=200, seed=4).estimate for p in (0.3, 0.5, 0.7)]
    assert values == sorted(values)


def test_four_sides_extremes() -> None:
    assert four_sides_probability(4, 1.0, None, trials=10, seed=0).estimate == 1.0
    assert four_sides_probability(4, 0.0, None, trials=10, seed=0).estimate == 0.0


@pytest.mark.parametrize(("m", "size"), [(1, 2), (2, 5), (3, 9), (5, 15)])
def test_column_neighbourhood_size(m: int, size: int) -> None:
    assert column_neighbourhood_size(elongated_torus(10, m)) == size
