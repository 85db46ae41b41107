import logging
from collections.abc import Iterable

import numpy as np
from graphs import Graph, VertexSet, bfs_distances, bfs_parents, geodesic, vertex_mask

from isoperimetry.models import BallPacking, DiameterTooSmallError, NetCover

logger = logging.getLogger(__name__)


def net_cover(G: Graph, A: VertexSet | Iterable[int], m: int) -> NetCover:
    """
    Greedy maximal X ⊆ A with pairwise disjoint balls B(x, m), scanning A in
    increasing order. Maximality gives A ⊆ ∪_{x∈X} B(x, 2m); both the
    covering and the disjointness are checked from the BFS distances.
    """
    if m < 0:
        raise ValueError(f"Radius must be nonnegative, got {m}")
    mask = vertex_mask(G, A)
    blocked = np.zeros(G.vertex_count, dtype=bool)
    centres: list[int] = []
    distances: list[np.ndarray] = []
    for a in np.flatnonzero(mask):
        if blocked[a]:
            continue
        dist = bfs_distances(G, int(a))
        centres.append(int(a))
        distances.append(dist)
        blocked |= (dist >= 0) & (dist <= 2 * m)

    covered = bool(np.all(blocked[mask]))
    disjoint = all(
        distances[i][centres[j]] == -1 or distances[i][centres[j]] > 2 * m
        for i in range(len(centres))
        for j in range(i + 1, len(centres))
    )
    logger.debug(f"Net of {len(centres)} centres at radius {m} over {int(mask.sum())} vertices")
    return NetCover(centres=centres, radius=m, covered=covered, disjoint=disjoint)


def disjoint_balls_on_geodesic(G: Graph, v: int, n: int, m: int) -> BallPacking:
    """
    Balls B(x_j, m) for j = m, 3m+1, 5m+2, ... ≤ n − m along a geodesic
    x_0 = v, ..., x_n. The geodesic is the BFS-tree path to the farthest
    vertex from v (smallest index on ties), cut at length n. Consecutive
    centres are 2m+1 apart, so the balls are disjoint and lie in B(v, n);
    there are at least (n−2m)/(4m+2) of them.
    """
    if n < 0 or m < 0:
        raise ValueError(f"Radii must be nonnegative, got n={n}, m={m}")
    if 2 * m > n:
        raise ValueError(f"Need m ≤ n/2, got n={n}, m={m}")
    dist = bfs_distances(G, v)
    far = int(np.argmax(dist))
    if dist[far] < n:
        raise DiameterTooSmallError(f"No geodesic of length {n} from {v}; eccentricity is {dist[far]}")
    path = geodesic(G, v, far, bfs_parents(G, v))[: n + 1]
    centres = [path[j] for j in range(m, n - m + 1, 2 * m + 1)]

    balls = [(d >= 0) & (d <= m) for d in (bfs_distances(G, c) for c in centres)]
    inside = (dist >= 0) & (dist <= n)
    union = np.zeros(G.vertex_count, dtype=np.int64)
    for ball in balls:
        union += ball
    return BallPacking(
        centres=centres,
        radius=m,
        bound=(n - 2 * m) / (4 * m + 2),
        disjoint=bool(union.max(initial=0) <= 1),
        contained=all(bool(np.all(inside[ball])) for ball in balls),
    )
