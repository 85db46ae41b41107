import logging
from collections.abc import Iterable, Iterator
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.sparse
from scipy.sparse import csgraph

from graphs.models import (
    DisconnectedGraphError,
    GraphDocument,
    VertexOutOfRangeError,
)

logger = logging.getLogger(__name__)

UNREACHABLE = -1


class Graph:
    """
    Immutable finite simple undirected graph.

    Edges are stored once as ``(u, v)`` with ``u < v``, sorted
    lexicographically; the position of a pair in ``edges`` is its edge index.
    Adjacency is kept in CSR form (``indptr``/``indices``) with each
    neighbour list sorted, and ``arc_edge`` gives the edge index of every
    CSR entry.
    """

    def __init__(self, vertex_count: int, edges: np.ndarray, collapsed_count: int = 0):
        self.vertex_count = int(vertex_count)
        self.edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
        self.collapsed_count = int(collapsed_count)

        u, v = self.edges[:, 0], self.edges[:, 1]
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        arcs = np.concatenate([np.arange(len(u)), np.arange(len(u))])
        order = np.lexsort((cols, rows))

        self.indices = cols[order]
        self.arc_edge = arcs[order]
        counts = np.bincount(rows, minlength=self.vertex_count)
        self.indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        np.cumsum(counts, out=self.indptr[1:])

        for array in (self.edges, self.indices, self.arc_edge, self.indptr):
            array.flags.writeable = False

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degree(self) -> np.ndarray:
        degree = np.diff(self.indptr)
        degree.flags.writeable = False
        return degree

    @cached_property
    def adjacency_matrix(self) -> scipy.sparse.csr_array:
        """Symmetric 0/1 adjacency matrix in scipy CSR form."""
        data = np.ones(len(self.indices), dtype=np.float64)
        return scipy.sparse.csr_array(
            (data, self.indices, self.indptr),
            shape=(self.vertex_count, self.vertex_count),
        )

    @cached_property
    def _edge_keys(self) -> np.ndarray:
        return self.edges[:, 0] * self.vertex_count + self.edges[:, 1]

    def neighbors(self, v: int) -> np.ndarray:
        _check_vertex(self, v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    @property
    def adjacency(self) -> list[np.ndarray]:
        return [self.neighbors(v) for v in range(self.vertex_count)]

    def edge_index(self, u, v) -> np.ndarray | int:
        """Edge index of ``{u, v}``, or -1 where the pair is not an edge."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        keys = np.minimum(u, v) * self.vertex_count + np.maximum(u, v)
        if self.edge_count == 0:
            result = np.full(keys.shape, -1, dtype=np.int64)
        else:
            pos = np.minimum(np.searchsorted(self._edge_keys, keys), self.edge_count - 1)
            result = np.where(self._edge_keys[pos] == keys, pos, -1)
        return int(result) if result.ndim == 0 else result

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) >= 0

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


class VertexSet:
    """Subset of the vertices of a graph, held as a boolean membership mask."""

    __slots__ = ("mask",)

    def __init__(self, mask: np.ndarray):
        self.mask = np.array(mask, dtype=bool)
        self.mask.flags.writeable = False

    @classmethod
    def from_members(cls, vertex_count: int, members: Iterable[int]) -> "VertexSet":
        members = np.fromiter(members, dtype=np.int64) if not isinstance(
            members, np.ndarray
        ) else members.astype(np.int64)
        if members.size and (members.min() < 0 or members.max() >= vertex_count):
            raise VertexOutOfRangeError(
                f"Set member outside [0, {vertex_count}): {members.min()}..{members.max()}"
            )
        mask = np.zeros(vertex_count, dtype=bool)
        mask[members] = True
        return cls(mask)

    @property
    def vertex_count(self) -> int:
        return len(self.mask)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, v: int) -> bool:
        return 0 <= v < len(self.mask) and bool(self.mask[v])

    def __iter__(self) -> Iterator[int]:
        return iter(self.members().tolist())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSet) and np.array_equal(self.mask, other.mask)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def complement(self) -> "VertexSet":
        return VertexSet(~self.mask)

    def __repr__(self) -> str:
        return f"VertexSet(size={self.size}, vertex_count={self.vertex_count})"


class Walk:
    """Sequence of vertices in which consecutive entries are adjacent."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[int], graph: Graph | None = None):
        self.vertices = np.asarray(list(vertices), dtype=np.int64)
        self.vertices.flags.writeable = False
        if graph is not None and len(self.vertices) > 1:
            steps = graph.edge_index(self.vertices[:-1], self.vertices[1:])
            if np.any(steps < 0):
                bad = int(np.flatnonzero(steps < 0)[0])
                raise ValueError(
                    f"Walk step {bad} joins non-adjacent vertices "
                    f"{self.vertices[bad]} and {self.vertices[bad + 1]}"
                )

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_closed(self) -> bool:
        return len(self.vertices) > 0 and self.vertices[0] == self.vertices[-1]

    def traversal_counts(self, graph: Graph) -> np.ndarray:
        """Multiplicity with which the walk crosses each edge index."""
        steps = graph.edge_index(self.vertices[:-1], self.vertices[1:])
        return np.bincount(np.atleast_1d(steps), minlength=graph.edge_count)

    def visit_counts(self, vertex_count: int) -> np.ndarray:
        return np.bincount(self.vertices, minlength=vertex_count)


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= int(v) < G.vertex_count:
        raise VertexOutOfRangeError(
            f"Vertex {v} out of range for graph with {G.vertex_count} vertices"
        )


def build_graph(vertex_count: int, edges) -> Graph:
    """
    Build a simple graph from an arbitrary edge list.

    Loops are discarded and repeated pairs collapsed; the number of dropped
    entries is kept on ``Graph.collapsed_count``. Edge indices follow the
    lexicographic order of ``(min, max)`` endpoints, so they do not depend
    on input order.
    """
    if vertex_count < 0:
        raise ValueError(f"vertex_count must be nonnegative, got {vertex_count}")

    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if pairs.size and (pairs.min() < 0 or pairs.max() >= vertex_count):
        raise VertexOutOfRangeError(
            f"Edge endpoint outside [0, {vertex_count}): "
            f"min={pairs.min()}, max={pairs.max()}"
        )

    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keep = lo != hi
    keys = np.unique(lo[keep] * vertex_count + hi[keep])
    canonical = np.stack([keys // max(vertex_count, 1), keys % max(vertex_count, 1)], axis=1)

    collapsed = len(pairs) - len(canonical)
    if collapsed:
        logger.debug(f"Collapsed {collapsed} loops/duplicate edges")

    return Graph(vertex_count, canonical, collapsed_count=collapsed)


def bfs_distances(G: Graph, o: int) -> np.ndarray:
    """Graph distances from ``o``; unreachable vertices hold ``UNREACHABLE``."""
    _check_vertex(G, o)
    dist = csgraph.dijkstra(G.adjacency_matrix, indices=int(o), unweighted=True)
    out = np.full(G.vertex_count, UNREACHABLE, dtype=np.int64)
    reachable = np.isfinite(dist)
    out[reachable] = dist[reachable].astype(np.int64)
    return out


def bfs_parents(G: Graph, o: int) -> np.ndarray:
    """BFS-tree parent of every vertex (neighbours visited in sorted order);
    -1 for ``o`` itself and for unreachable vertices.
    """
    _check_vertex(G, o)
    _, predecessors = csgraph.breadth_first_order(
        G.adjacency_matrix, int(o), directed=True, return_predecessors=True
    )
    return np.where(predecessors < 0, -1, predecessors).astype(np.int64)


def geodesic(G: Graph, u: int, v: int, parents: np.ndarray | None = None) -> list[int]:
    """Vertices of the BFS-parent shortest path from ``u`` to ``v``."""
    if parents is None:
        parents = bfs_parents(G, u)
    path = [int(v)]
    while path[-1] != u:
        step = int(parents[path[-1]])
        if step < 0:
            raise DisconnectedGraphError(f"No path between {u} and {v}")
        path.append(step)
    path.reverse()
    return path


def ball(G: Graph, o: int, n: int) -> VertexSet:
    if n < 0:
        raise ValueError(f"Radius must be nonnegative, got {n}")
    dist = bfs_distances(G, o)
    return VertexSet((dist >= 0) & (dist <= n))


def connected_components(G: Graph) -> tuple[int, np.ndarray]:
    """Number of components and the component label of each vertex."""
    count, labels = csgraph.connected_components(G.adjacency_matrix, directed=False)
    return int(count), labels


def is_connected(G: Graph) -> bool:
    return G.vertex_count <= 1 or connected_components(G)[0] == 1


def _require_connected(G: Graph, operation: str) -> None:
    if not is_connected(G):
        raise DisconnectedGraphError(f"{operation} requires a connected graph")


def eccentricity(G: Graph, o: int) -> int:
    dist = bfs_distances(G, o)
    if np.any(dist == UNREACHABLE):
        raise DisconnectedGraphError("eccentricity requires a connected graph")
    return int(dist.max())


def diameter(G: Graph, chunk_cells: int = 20_000_000) -> int:
    """Exact diameter by BFS from every vertex, in source chunks."""
    _require_connected(G, "diameter")
    if G.vertex_count <= 1:
        return 0

    chunk = max(1, chunk_cells // G.vertex_count)
    best = 0
    for start in range(0, G.vertex_count, chunk):
        sources = np.arange(start, min(start + chunk, G.vertex_count))
        dist = csgraph.dijkstra(G.adjacency_matrix, indices=sources, unweighted=True)
        best = max(best, int(dist.max()))
    return best


def metric_diameter(G: Graph, exact_limit: int) -> tuple[int, bool]:
    """
    Diameter for CLI callers: exact below ``exact_limit`` vertices, otherwise
    the eccentricity of vertex 0, which is the diameter on vertex-transitive
    graphs. Returns ``(value, exact)``.
    """
    if G.vertex_count <= exact_limit:
        return diameter(G), True
    logger.warning(
        f"Graph has {G.vertex_count} vertices (> {exact_limit}); "
        "using eccentricity of vertex 0 as the diameter"
    )
    return eccentricity(G, 0), False


def double_cover_walk(G: Graph, start: int = 0) -> Walk:
    """
    Closed walk that crosses every edge exactly twice, once per direction.

    This is an Eulerian circuit of the graph with every edge doubled,
    found by Hierholzer's algorithm over the CSR arcs; neighbours are taken
    in sorted order so the walk is deterministic.
    """
    _check_vertex(G, start)
    _require_connected(G, "double_cover_walk")

    cursor = G.indptr[:-1].copy()
    stack = [int(start)]
    circuit: list[int] = []
    while stack:
        v = stack[-1]
        if cursor[v] < G.indptr[v + 1]:
            stack.append(int(G.indices[cursor[v]]))
            cursor[v] += 1
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return Walk(circuit)


def vertex_mask(G: Graph, A: VertexSet | Iterable[int]) -> np.ndarray:
    if isinstance(A, VertexSet):
        if A.vertex_count != G.vertex_count:
            raise VertexOutOfRangeError(
                f"Set over {A.vertex_count} vertices used with graph of {G.vertex_count}"
            )
        return A.mask
    if isinstance(A, np.ndarray) and A.dtype == bool:
        if A.shape != (G.vertex_count,):
            raise VertexOutOfRangeError(f"Mask of shape {A.shape} used with graph of {G.vertex_count}")
        return A
    return VertexSet.from_members(G.vertex_count, A).mask


def edge_boundary(G: Graph, A: VertexSet | Iterable[int]) -> tuple[int, np.ndarray]:
    """Number and indices of the edges with exactly one endpoint in ``A``."""
    mask = vertex_mask(G, A)
    crossing = mask[G.edges[:, 0]] != mask[G.edges[:, 1]]
    indices = np.flatnonzero(crossing)
    return len(indices), indices


def vertex_boundary(G: Graph, A: VertexSet | Iterable[int]) -> VertexSet:
    """External vertex boundary: vertices outside ``A`` with a neighbour in ``A``."""
    mask = vertex_mask(G, A)
    u, v = G.edges[:, 0], G.edges[:, 1]
    outside = np.zeros(G.vertex_count, dtype=bool)
    outside[v[mask[u] & ~mask[v]]] = True
    outside[u[mask[v] & ~mask[u]]] = True
    return VertexSet(outside)


def induced_subgraph(G: Graph, A: VertexSet | Iterable[int]) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on ``A`` and the original index of each new vertex."""
    mask = vertex_mask(G, A)
    original = np.flatnonzero(mask)
    relabel = np.full(G.vertex_count, -1, dtype=np.int64)
    relabel[original] = np.arange(len(original))
    keep = mask[G.edges[:, 0]] & mask[G.edges[:, 1]]
    return build_graph(len(original), relabel[G.edges[keep]]), original


def orbit_power_graph(G: Graph, orbit: Iterable[int], n: int) -> tuple[Graph, np.ndarray]:
    """
    Graph on the vertices of ``orbit`` joining pairs at distance 1..2n in G.

    For an n-quasitransitive G and an orbit of its automorphism group this
    is transitive, has degree at most (k+1)^(2n), and its diameter does not
    exceed that of G. Returns the graph and the orbit vertices in the order
    used as its vertex labels.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    members = np.unique(np.fromiter(orbit, dtype=np.int64))
    if members.size:
        _check_vertex(G, int(members[0]))
        _check_vertex(G, int(members[-1]))

    dist = csgraph.dijkstra(
        G.adjacency_matrix, indices=members, unweighted=True, limit=2 * n + 0.5
    )[:, members]
    i, j = np.nonzero((dist >= 1) & (dist <= 2 * n))
    upper = i < j
    return build_graph(len(members), np.stack([i[upper], j[upper]], axis=1)), members


def graph_to_json(G: Graph) -> str:
    return GraphDocument(n=G.vertex_count, edges=[tuple(e) for e in G.edges.tolist()]).model_dump_json()


def graph_from_json(text: str) -> Graph:
    document = GraphDocument.model_validate_json(text)
    return build_graph(document.n, document.edges)


def save_graph(G: Graph, path: Path | str) -> None:
    Path(path).write_text(graph_to_json(G))
    logger.info(f"Wrote graph with {G.vertex_count} vertices to {path}")


def load_graph(path: Path | str) -> Graph:
    return graph_from_json(Path(path).read_text())


def is_automorphism(G: Graph, permutation: np.ndarray) -> bool:
    """Whether the vertex permutation maps the edge set onto itself."""
    permutation = np.asarray(permutation, dtype=np.int64)
    if sorted(permutation.tolist()) != list(range(G.vertex_count)):
        return False
    image = permutation[G.edges]
    keys = np.sort(np.minimum(image[:, 0], image[:, 1]) * G.vertex_count + np.maximum(image[:, 0], image[:, 1]))
    return bool(np.array_equal(keys, G._edge_keys))
