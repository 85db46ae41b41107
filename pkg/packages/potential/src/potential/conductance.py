"""
Effective conductance between disjoint vertex sets.

C_eff(A ↔ B) is the current leaving A when the unit potential is held on A
and zero on B; equivalently Σ_{a∈A} deg(a) P_a(τ_B < τ_A^+), or the same
sum taken from B.
"""

import logging
from collections.abc import Iterable
from typing import Literal

import numpy as np
from graphs import Graph, VertexSet, vertex_mask
from numba import njit
from percolation import trial_rng

from potential.dirichlet import DirichletSystem
from potential.models import EscapeEstimate

logger = logging.getLogger(__name__)

WALK_STREAM = 6


def _disjoint_pair(
    G: Graph, A: VertexSet | Iterable[int], B: VertexSet | Iterable[int]
) -> tuple[np.ndarray, np.ndarray]:
    a, b = vertex_mask(G, A), vertex_mask(G, B)
    if not a.any() or not b.any():
        raise ValueError("A and B must be nonempty")
    if (a & b).any():
        raise ValueError("A and B must be disjoint")
    return a, b


def _potential(G: Graph, high: np.ndarray, low: np.ndarray) -> np.ndarray:
    """Harmonic off high ∪ low, 1 on high and 0 on low."""
    system = DirichletSystem(G, VertexSet(high | low))
    rhs = (G.adjacency_matrix @ high.astype(np.float64))[system.interior]
    return system.extend(system.solve(rhs), high[system.boundary.mask].astype(np.float64))


def harmonic_potential(
    G: Graph, A: VertexSet | Iterable[int], B: VertexSet | Iterable[int]
) -> np.ndarray:
    """u = P_·(τ_A < τ_B): 1 on A, 0 on B, harmonic elsewhere."""
    a, b = _disjoint_pair(G, A, B)
    return _potential(G, a, b)


def effective_conductance(
    G: Graph, A: VertexSet | Iterable[int], B: VertexSet | Iterable[int]
) -> float:
    """Total current out of A under the unit potential."""
    a, b = _disjoint_pair(G, A, B)
    u = _potential(G, a, b)
    current = G.degree - G.adjacency_matrix @ u
    return float(current[a].sum())


def escape_probabilities(
    G: Graph, A: VertexSet | Iterable[int], B: VertexSet | Iterable[int]
) -> np.ndarray:
    """t_x = deg(x) P_x(τ_B < τ_A^+) for each x in A, in increasing vertex order."""
    a, b = _disjoint_pair(G, A, B)
    h = _potential(G, b, a)
    return (G.adjacency_matrix @ h)[a]


def hitting_conductance(
    G: Graph,
    A: VertexSet | Iterable[int],
    B: VertexSet | Iterable[int],
    side: Literal["A", "B"] = "A",
) -> float:
    """Σ_{a∈A} deg(a) P_a(τ_B < τ_A^+), or with ``side="B"`` the sum over B."""
    if side == "A":
        return float(escape_probabilities(G, A, B).sum())
    if side == "B":
        return float(escape_probabilities(G, B, A).sum())
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


@njit(cache=True)
def _escape_walks(indptr, indices, starts, target, stop, seed):
    np.random.seed(seed)
    hits = 0
    for s in starts:
        v = s
        while True:
            degree = indptr[v + 1] - indptr[v]
            v = indices[indptr[v] + np.random.randint(degree)]
            if stop[v]:
                break
        if target[v]:
            hits += 1
    return hits


def mc_escape_conductance(
    G: Graph,
    A: VertexSet | Iterable[int],
    B: VertexSet | Iterable[int],
    walks: int,
    seed: int,
) -> EscapeEstimate:
    """
    Random-walk estimate of the A-side hitting formula: starts are drawn
    from A proportionally to degree, so the success frequency times
    Σ_{a∈A} deg(a) estimates C_eff.
    """
    if walks <= 0:
        raise ValueError(f"walks must be positive, got {walks}")
    a, b = _disjoint_pair(G, A, B)
    members = np.flatnonzero(a)
    weights = G.degree[members].astype(np.float64)
    total = float(weights.sum())
    if total == 0:
        return EscapeEstimate(value=0.0, stderr=0.0, walks=walks, seed=seed)
    rng = trial_rng(seed, 0, WALK_STREAM)
    starts = rng.choice(members, size=walks, p=weights / total)
    hits = _escape_walks(
        G.indptr, G.indices, starts.astype(np.int64), b, a | b, int(rng.integers(2**31 - 1))
    )
    f = hits / walks
    return EscapeEstimate(
        value=total * f, stderr=total * np.sqrt(f * (1 - f) / walks), walks=walks, seed=seed
    )
