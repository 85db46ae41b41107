import logging
import math
from collections.abc import Iterable
from typing import Protocol

import numpy as np
from graphs import Graph
from numba import njit

from percolation.models import ConfigMismatchError
from percolation.sampling import PercSample

logger = logging.getLogger(__name__)


@njit(cache=True, nogil=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while x != root:
        next_x = parent[x]
        parent[x] = root
        x = next_x
    return root


@njit(cache=True, nogil=True)
def _union(parent, rank, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return
    if rank[ra] < rank[rb]:
        parent[ra] = rb
    elif rank[ra] > rank[rb]:
        parent[rb] = ra
    else:
        parent[rb] = ra
        rank[ra] += 1


@njit(cache=True, nogil=True)
def _link_open_edges(edges, open_mask, parent, rank):
    """Union-find over the open edges; on return ``parent[v]`` is v's root."""
    for v in range(parent.shape[0]):
        parent[v] = v
        rank[v] = 0
    for e in range(edges.shape[0]):
        if open_mask[e]:
            _union(parent, rank, edges[e, 0], edges[e, 1])
    for v in range(parent.shape[0]):
        parent[v] = _find(parent, v)


class ClusterForest:
    """
    Disjoint-set decomposition of the vertices into open clusters.

    ``roots[v]`` is the representative of v's cluster and doubles as its
    cluster id; ``sizes[r]`` is the size of the cluster rooted at r and
    zero for non-roots.
    """

    def __init__(self, roots: np.ndarray, rank: np.ndarray):
        self.roots = roots
        self.rank = rank
        self.sizes = np.bincount(roots, minlength=len(roots))

    @property
    def vertex_count(self) -> int:
        return len(self.roots)

    @property
    def max_size(self) -> int:
        return int(self.sizes.max()) if self.vertex_count else 0

    @property
    def cluster_count(self) -> int:
        return int(np.count_nonzero(self.sizes))

    def cluster_sizes(self) -> np.ndarray:
        return self.sizes[self.sizes > 0]

    def connected(self, x: int, y: int) -> bool:
        return bool(self.roots[x] == self.roots[y])

    def size_of(self, v: int) -> int:
        return int(self.sizes[self.roots[v]])

    def members(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.roots == self.roots[v])

    def labels(self) -> np.ndarray:
        """Cluster labels 0..count−1, numbered by increasing root."""
        return np.unique(self.roots, return_inverse=True)[1]

    def __repr__(self) -> str:
        return f"ClusterForest(clusters={self.cluster_count}, max_size={self.max_size})"


def clusters(
    G: Graph,
    sample: PercSample | np.ndarray,
    scratch: tuple[np.ndarray, np.ndarray] | None = None,
) -> ClusterForest:
    """
    Open clusters of a configuration.

    ``scratch`` is an optional ``(parent, rank)`` pair of int64 buffers of
    length |V| that is overwritten; the forest then keeps references to it,
    so it is only valid until the buffers are reused.
    """
    open_mask = sample.open if isinstance(sample, PercSample) else np.asarray(sample, dtype=bool)
    if open_mask.shape != (G.edge_count,):
        raise ConfigMismatchError(
            f"Configuration has {open_mask.size} bits, graph has {G.edge_count} edges"
        )
    if scratch is None:
        parent = np.empty(G.vertex_count, dtype=np.int64)
        rank = np.empty(G.vertex_count, dtype=np.int64)
    else:
        parent, rank = scratch
    _link_open_edges(G.edges, open_mask, parent, rank)
    return ClusterForest(parent, rank)


class Event(Protocol):
    """An event of a configuration, read off its cluster forest."""

    def __call__(self, forest: ClusterForest) -> bool: ...


class GiantEvent:
    """Some open cluster has at least ⌈α|V|⌉ vertices."""

    def __init__(self, alpha: float, vertex_count: int):
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        self.alpha = alpha
        self.threshold = math.ceil(alpha * vertex_count)

    def __call__(self, forest: ClusterForest) -> bool:
        return forest.max_size >= self.threshold

    def __repr__(self) -> str:
        return f"GiantEvent(alpha={self.alpha}, threshold={self.threshold})"


class ConnectEvent:
    def __init__(self, x: int, y: int):
        self.x, self.y = int(x), int(y)

    def __call__(self, forest: ClusterForest) -> bool:
        return forest.connected(self.x, self.y)

    def __repr__(self) -> str:
        return f"ConnectEvent({self.x}, {self.y})"


class SetConnectEvent:
    """Some vertex of A shares a cluster with some vertex of B."""

    def __init__(self, A: Iterable[int], B: Iterable[int]):
        self.A = np.fromiter(A, dtype=np.int64)
        self.B = np.fromiter(B, dtype=np.int64)
        if len(self.A) == 0 or len(self.B) == 0:
            raise ValueError("Both vertex sets must be nonempty")

    def __call__(self, forest: ClusterForest) -> bool:
        return bool(np.intersect1d(forest.roots[self.A], forest.roots[self.B]).size)

    def __repr__(self) -> str:
        return f"SetConnectEvent(|A|={len(self.A)}, |B|={len(self.B)})"


def giant_event(alpha: float, vertex_count: int) -> GiantEvent:
    return GiantEvent(alpha, vertex_count)


def connect_event(x: int, y: int) -> ConnectEvent:
    return ConnectEvent(x, y)


def set_connect_event(A: Iterable[int], B: Iterable[int]) -> SetConnectEvent:
    return SetConnectEvent(A, B)
