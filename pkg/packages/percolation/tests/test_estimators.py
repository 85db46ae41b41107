from __future__ import annotations

import math

import pytest
from graphs import box_graph, build_graph, elongated_torus

from percolation import (
    GiantEvent,
    cluster_tail_check,
    connection_lower_bound,
    estimate_pc,
    mc_giant,
    set_to_set,
    theta_power_check,
    two_point,
)
from percolation.models import McEstimate, UnresolvedBracketError


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_mc_estimate_stderr() -> None:
    estimate = McEstimate.from_counts(30, 100, seed=1)
    assert estimate.estimate == pytest.approx(0.3)
    assert estimate.stderr == pytest.approx(math.sqrt(0.3 * 0.7 / 100))
    with pytest.raises(ValueError):
        McEstimate.from_counts(0, 0, seed=1)


def test_mc_giant_extremes() -> None:
    G = elongated_torus(10, 10).graph
    assert mc_giant(G, 1.0, 0.5, trials=20, seed=0).estimate == 1.0
    assert mc_giant(G, 0.0, 0.5, trials=20, seed=0).estimate == 0.0


def test_mc_giant_rejects_zero_trials() -> None:
    with pytest.raises(ValueError):
        mc_giant(path(5), 0.5, 0.5, trials=0, seed=0)


def test_mc_giant_is_monotone_for_a_fixed_seed() -> None:
    G = elongated_torus(16, 16).graph
    estimates = [mc_giant(G, p, 0.4, trials=100, seed=3).estimate for p in (0.3, 0.45, 0.5, 0.55, 0.7)]
    assert estimates == sorted(estimates)


def test_mc_giant_does_not_depend_on_worker_count() -> None:
    G = elongated_torus(12, 12).graph
    inline = mc_giant(G, 0.5, 0.3, trials=120, seed=8, workers=1)
    threaded = mc_giant(G, 0.5, 0.3, trials=120, seed=8, workers=4)
    assert inline == threaded


def test_two_point_same_vertex() -> None:
    assert two_point(path(4), 0.1, 2, 2, trials=10, seed=0).estimate == 1.0


def test_two_point_single_edge() -> None:
    estimate = two_point(path(2), 0.3, 0, 1, trials=4000, seed=5)
    assert abs(estimate.estimate - 0.3) <= 4 * estimate.stderr


def test_set_to_set_on_a_path() -> None:
    G = path(6)
    assert set_to_set(G, 1.0, [0], [5], trials=10, seed=0).estimate == 1.0
    assert set_to_set(G, 0.0, [0, 1], [1, 5], trials=10, seed=0).estimate == 1.0
    assert set_to_set(G, 0.0, [0], [5], trials=10, seed=0).estimate == 0.0


def test_pc_of_a_long_path() -> None:
    pc = estimate_pc(path(1000), alpha=0.5, q=0.5, tol=0.002, trials=200, seed=1)
    assert pc.estimate >= 0.99
    assert pc.lo <= pc.estimate <= pc.hi
    if pc.resolved:
        assert pc.hi - pc.lo <= 0.002


def test_pc_of_complete_graph_is_small() -> None:
    pc = estimate_pc(complete(50), alpha=0.9, q=0.5, tol=0.01, trials=100, seed=2)
    assert pc.estimate < 0.2


def test_pc_is_monotone_in_alpha() -> None:
    G = elongated_torus(10, 10).graph
    low = estimate_pc(G, alpha=0.3, q=0.5, tol=0.02, trials=200, seed=4)
    high = estimate_pc(G, alpha=0.6, q=0.5, tol=0.02, trials=200, seed=4)
    assert low.estimate <= high.estimate + 0.05


def test_pc_reports_unresolved_step() -> None:
    # P(giant) = p exactly, so the first step sits on q
    G = path(2)
    pc = estimate_pc(G, alpha=0.75, q=0.5, tol=0.01, trials=50, seed=0, max_trials=100)
    assert not pc.resolved
    assert pc.trials_needed is not None and pc.trials_needed > 0
    assert (pc.lo, pc.hi) == (0.0, 1.0)
    with pytest.raises(UnresolvedBracketError) as error:
        estimate_pc(G, alpha=0.75, q=0.5, tol=0.01, trials=50, seed=0, max_trials=100, strict=True)
    assert error.value.trials_needed > 0


def test_pc_rejects_bad_arguments() -> None:
    with pytest.raises(ValueError):
        estimate_pc(path(5), alpha=0.0, q=0.5, tol=0.01, trials=10, seed=0)
    with pytest.raises(ValueError):
        estimate_pc(path(5), alpha=0.5, q=1.0, tol=0.01, trials=10, seed=0)
    with pytest.raises(ValueError):
        estimate_pc(path(5), alpha=0.5, q=0.5, tol=0.0, trials=10, seed=0)


def test_theta_power_with_theta_one_is_equality() -> None:
    G = elongated_torus(10, 10).graph
    report = theta_power_check(G, 0.5, 1.0, GiantEvent(0.5, G.vertex_count), trials=100, seed=2)
    assert report.lhs == pytest.approx(report.rhs)
    assert report.holds


def test_theta_power_on_torus() -> None:
    G = elongated_torus(32, 32).graph
    report = theta_power_check(G, 0.7, 0.5, GiantEvent(0.5, G.vertex_count), trials=200, seed=6)
    assert report.holds


def test_theta_power_at_p_one() -> None:
    G = elongated_torus(6, 6).graph
    report = theta_power_check(G, 1.0, 0.3, GiantEvent(0.5, G.vertex_count), trials=20, seed=0)
    assert report.lhs == report.rhs == 1.0


def test_cluster_tail_markov_bound() -> None:
    G = elongated_torus(12, 12).graph
    for p in (0.4, 0.55, 0.7):
        report = cluster_tail_check(G, p, 0, alpha=0.3, trials=300, seed=12)
        assert report.holds
        assert 0.0 < report.beta <= 1.0


def test_connection_lower_bound() -> None:
    assert connection_lower_bound(0.5, 0.5, 0.9) == pytest.approx(0.125**24)
    assert connection_lower_bound(0.5, 0.5, 0.0) == 0.0
    with pytest.raises(ValueError):
        connection_lower_bound(0.0, 0.5, 0.5)


def test_two_point_dominates_connection_bound_on_torus() -> None:
    G = elongated_torus(10, 10).graph
    p = 0.6
    giant = mc_giant(G, p, 0.5, trials=200, seed=1)
    bound = connection_lower_bound(0.5, giant.estimate, p)
    assert two_point(G, p, 0, 55, trials=200, seed=2).estimate >= bound


@pytest.mark.slow
def test_giant_on_supercritical_torus() -> None:
    G = elongated_torus(64, 64).graph
    assert mc_giant(G, 0.65, 0.5, trials=500, seed=0).estimate >= 0.95


@pytest.mark.slow
def test_corners_of_a_long_box_connect() -> None:
    box = box_graph(2000, 30)
    x, y = box.vertex((-2000, -30)), box.vertex((2000, 30))
    assert two_point(box.graph, 0.95, x, y, trials=100, seed=3).estimate >= 0.99
