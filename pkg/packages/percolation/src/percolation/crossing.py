"""Box crossings, the four-sides event and blocked cycles of elongated tori."""

import logging

import numpy as np
from graphs import BoxGraph, CayleyGraph, box_graph

from percolation.clusters import ClusterForest, clusters
from percolation.models import McEstimate
from percolation.pool import Scratch, map_trials
from percolation.sampling import sample_config

logger = logging.getLogger(__name__)


def _touches(forest: ClusterForest, source: np.ndarray, target: np.ndarray) -> bool:
    return bool(np.intersect1d(forest.roots[source], forest.roots[target]).size)


def crossing_probability(
    n: int, p: float, trials: int, seed: int, box: BoxGraph | None = None
) -> McEstimate:
    """P_p(left side of B(n, n) ↔ right side)."""
    box = box or box_graph(n, n)
    G = box.graph
    left, right = box.side(0, high=False), box.side(0, high=True)

    def trial(t: int, scratch: Scratch) -> float:
        return float(_touches(clusters(G, sample_config(G, p, seed, t), scratch), left, right))

    hits = map_trials(G.vertex_count, trials, trial)
    return McEstimate.from_counts(int(hits.sum()), trials, seed)


def four_sides_probability(
    n: int, p: float, x: int | None, trials: int, seed: int, box: BoxGraph | None = None
) -> McEstimate:
    """P_p(x is connected to all four sides of B(n, n)); x defaults to the origin."""
    box = box or box_graph(n, n)
    G = box.graph
    x = box.origin if x is None else x
    sides = [box.side(axis, high) for axis in (0, 1) for high in (False, True)]

    def trial(t: int, scratch: Scratch) -> float:
        forest = clusters(G, sample_config(G, p, seed, t), scratch)
        root = forest.roots[x]
        return float(all((forest.roots[side] == root).any() for side in sides))

    hits = map_trials(G.vertex_count, trials, trial)
    return McEstimate.from_counts(int(hits.sum()), trials, seed)


def blocked_columns(torus: CayleyGraph, open_mask: np.ndarray) -> np.ndarray:
    """
    Mask over even i < n: every edge incident to the cycle {i} × Z_m is closed.

    These cycles have disjoint closed neighbourhoods of 3m edges each (the m
    cycle edges and the 2m horizontal edges leaving it).
    """
    n, _ = torus.group.moduli
    columns = torus.group.coordinates[:, 0]
    touched = np.zeros(n, dtype=bool)
    touched[columns[torus.graph.edges[np.asarray(open_mask, dtype=bool)]].ravel()] = True
    return ~touched[np.arange(0, n - n % 2, 2)]


def column_neighbourhood_size(torus: CayleyGraph) -> int:
    """Edges incident to the cycle {0} × Z_m; 3m once m ≥ 3 and n ≥ 3."""
    columns = torus.group.coordinates[:, 0]
    return int((columns[torus.graph.edges] == 0).any(axis=1).sum())


def blocked_cycle_count(torus: CayleyGraph, p: float, seed: int, trial: int = 0) -> int:
    """Number of even columns {2i} × Z_m whose incident edges are all closed."""
    sample = sample_config(torus.graph, p, seed, trial)
    return int(blocked_columns(torus, sample.open).sum())


def expected_blocked_cycles(n: int, m: int, p: float) -> float:
    """⌊n/2⌋ (1 − p)^{3m}."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return (n // 2) * (1.0 - p) ** (3 * m)
