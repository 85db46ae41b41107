"""
Isoperimetric profiles: exact minimum edge boundaries by subset enumeration
and a heuristic search for sets with a small boundary ratio.

Sets over a region of k ≤ 62 vertices are encoded as int64 bitmasks, bit i
standing for the i-th region vertex in increasing order. The enumeration is
split into contiguous mask ranges, one per task, and run on a thread pool;
the scan itself releases the GIL.
"""

import logging
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import scipy.linalg
from conf import get_exhaustive_limit, get_worker_count
from graphs import Graph, VertexSet, bfs_distances, edge_boundary, induced_subgraph, vertex_mask
from numba import njit

from isoperimetry.models import BoundaryIsoReport, EnumerationLimitError, IsoProfile, IsoWitness

logger = logging.getLogger(__name__)

NO_SET = np.iinfo(np.int64).max
SPLIT_BITS = 6
SPECTRAL_LIMIT = 2000


@njit(cache=True, nogil=True)
def _popcount(x):
    count = 0
    while x:
        x &= x - 1
        count += 1
    return count


@njit(cache=True, nogil=True)
def _connected(mask, neighbours, k):
    reach = mask & -mask
    frontier = reach
    while frontier:
        grown = 0
        for i in range(k):
            if (frontier >> i) & 1:
                grown |= neighbours[i]
        grown &= mask & ~reach
        reach |= grown
        frontier = grown
    return reach == mask


@njit(cache=True, nogil=True)
def _scan(lo, hi, k, neighbours, degree, max_size, connected_only, best, witness):
    for mask in range(lo, hi):
        size = _popcount(mask)
        if size == 0 or size > max_size:
            continue
        boundary = 0
        for i in range(k):
            if (mask >> i) & 1:
                boundary += degree[i] - _popcount(neighbours[i] & mask)
        if boundary < best[size]:
            if connected_only and not _connected(mask, neighbours, k):
                continue
            best[size] = boundary
            witness[size] = mask


def _region_bits(G: Graph, region: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Region-neighbour bitmask and full degree of each region vertex."""
    position = np.full(G.vertex_count, -1, dtype=np.int64)
    position[region] = np.arange(len(region))
    neighbours = np.zeros(len(region), dtype=np.int64)
    for i, v in enumerate(region):
        inside = position[G.neighbors(int(v))]
        for j in inside[inside >= 0]:
            neighbours[i] |= np.int64(1) << np.int64(j)
    return neighbours, G.degree[region].astype(np.int64)


def _enumerate(
    G: Graph, region: np.ndarray, max_size: int, connected_only: bool
) -> tuple[dict[int, int], dict[int, list[int]]]:
    k = len(region)
    neighbours, degree = _region_bits(G, region)
    total = 1 << k
    tasks = 1 << min(k, SPLIT_BITS)
    step = total // tasks
    ranges = [(max(1, t * step), (t + 1) * step) for t in range(tasks)]

    def run(bounds: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        best = np.full(max_size + 1, NO_SET, dtype=np.int64)
        witness = np.zeros(max_size + 1, dtype=np.int64)
        _scan(bounds[0], bounds[1], k, neighbours, degree, max_size, connected_only, best, witness)
        return best, witness

    logger.debug(f"Enumerating {total} subsets of {k} vertices in {tasks} ranges")
    with ThreadPoolExecutor(max_workers=get_worker_count()) as executor:
        parts = list(executor.map(run, ranges))

    min_boundary: dict[int, int] = {}
    witnesses: dict[int, list[int]] = {}
    for size in range(1, max_size + 1):
        found = [(int(b[size]), int(w[size])) for b, w in parts if b[size] != NO_SET]
        if not found:
            continue
        boundary, mask = min(found)
        min_boundary[size] = boundary
        witnesses[size] = [int(region[i]) for i in range(k) if (mask >> i) & 1]
    return min_boundary, witnesses


def _check_limit(k: int, limit: int | None) -> None:
    limit = get_exhaustive_limit() if limit is None else limit
    if k > min(limit, 62):
        raise EnumerationLimitError(f"Exhaustive enumeration over {k} vertices exceeds the limit {limit}")


def exhaustive_iso_profile(
    G: Graph, limit: int | None = None, connected_only: bool = False
) -> IsoProfile:
    """min |∂_E A| over |A| = s for every 1 ≤ s ≤ |V|/2, by enumerating all subsets."""
    _check_limit(G.vertex_count, limit)
    region = np.arange(G.vertex_count)
    min_boundary, witnesses = _enumerate(G, region, G.vertex_count // 2, connected_only)
    return IsoProfile(
        vertex_count=G.vertex_count,
        min_boundary=min_boundary,
        witnesses=witnesses,
        connected_only=connected_only,
    )


def boundary_iso_check(
    G: Graph,
    B: VertexSet | Iterable[int],
    d: float,
    c: float,
    limit: int | None = None,
) -> BoundaryIsoReport:
    """
    Smallest |∂_E K| / |K|^{(d−1)/d} over nonempty K ⊆ V ∖ B, with the edge
    boundary taken in G, and whether it is at least c.
    """
    if d < 1:
        raise ValueError(f"Dimension must be at least 1, got {d}")
    region = np.flatnonzero(~vertex_mask(G, B))
    if len(region) == 0:
        raise ValueError("B covers every vertex")
    _check_limit(len(region), limit)
    min_boundary, witnesses = _enumerate(G, region, len(region), False)
    exponent = (d - 1) / d
    size = min(min_boundary, key=lambda s: (min_boundary[s] / s**exponent, s))
    ratio = min_boundary[size] / size**exponent
    witness = IsoWitness(members=witnesses[size], boundary=min_boundary[size], ratio=ratio, d=d)
    return BoundaryIsoReport(witness=witness, c=c, holds=ratio >= c)


def iso_ratio(G: Graph, A: VertexSet | Iterable[int], d: float) -> IsoWitness:
    """|∂_E A| / min{|A|, |V ∖ A|}^{(d−1)/d} for a nonempty proper subset A."""
    mask = vertex_mask(G, A)
    size = int(mask.sum())
    if size == 0 or size == G.vertex_count:
        raise ValueError("A must be a nonempty proper subset")
    boundary, _ = edge_boundary(G, mask)
    ratio = boundary / min(size, G.vertex_count - size) ** ((d - 1) / d)
    return IsoWitness(members=np.flatnonzero(mask).tolist(), boundary=boundary, ratio=ratio, d=d)


@njit(cache=True, nogil=True)
def _prefix_best(order, indptr, indices, degree, n, exponent):
    """Best ratio among the prefixes of ``order`` and the prefix length attaining it."""
    inside = np.zeros(n, dtype=np.bool_)
    boundary = 0
    best = np.inf
    best_length = 0
    for t in range(len(order)):
        v = order[t]
        inner = 0
        for j in range(indptr[v], indptr[v + 1]):
            if inside[indices[j]]:
                inner += 1
        boundary += degree[v] - 2 * inner
        inside[v] = True
        size = t + 1
        if size == n:
            break
        ratio = boundary / min(size, n - size) ** exponent
        if ratio < best:
            best = ratio
            best_length = size
    return best, best_length


@njit(cache=True, nogil=True)
def _anneal(indptr, indices, degree, region, inside, steps, t0, seed, exponent):
    np.random.seed(seed)
    n = inside.shape[0]
    inner = np.zeros(n, dtype=np.int64)
    size = 0
    boundary = 0
    for v in range(n):
        if inside[v]:
            size += 1
            boundary += degree[v]
        for j in range(indptr[v], indptr[v + 1]):
            if inside[indices[j]]:
                inner[v] += 1
        if inside[v]:
            boundary -= inner[v]
    ratio = boundary / min(size, n - size) ** exponent
    best = ratio
    best_inside = inside.copy()
    cooling = 1e-3 ** (1.0 / max(steps, 1))
    temperature = t0
    for _ in range(steps):
        v = region[np.random.randint(len(region))]
        change = degree[v] - 2 * inner[v]
        if inside[v]:
            new_size = size - 1
            new_boundary = boundary - change
        else:
            new_size = size + 1
            new_boundary = boundary + change
        if 0 < new_size < n:
            new_ratio = new_boundary / min(new_size, n - new_size) ** exponent
            if new_ratio <= ratio or np.random.random() < np.exp((ratio - new_ratio) / temperature):
                step = -1 if inside[v] else 1
                inside[v] = not inside[v]
                for j in range(indptr[v], indptr[v + 1]):
                    inner[indices[j]] += step
                size = new_size
                boundary = new_boundary
                ratio = new_ratio
                if ratio < best:
                    best = ratio
                    best_inside[:] = inside
        temperature *= cooling
    return best_inside


def _spectral_orders(G: Graph, region: np.ndarray, angles: int = 8) -> list[np.ndarray]:
    """
    Region vertices sorted along directions in the span of the two lowest
    nontrivial Laplacian eigenvectors of the induced subgraph. Sweeping
    several directions covers degenerate eigenspaces, as on square grids.
    """
    if not 3 < len(region) <= SPECTRAL_LIMIT:
        return []
    H, original = induced_subgraph(G, region)
    laplacian = np.diag(H.degree.astype(np.float64)) - H.adjacency_matrix.toarray()
    _, vectors = scipy.linalg.eigh(laplacian, subset_by_index=[1, 2])
    orders = []
    for theta in np.linspace(0, np.pi, angles, endpoint=False):
        direction = np.cos(theta) * vectors[:, 0] + np.sin(theta) * vectors[:, 1]
        orders.append(original[np.argsort(direction, kind="stable")])
    return orders


def local_search_iso(
    G: Graph,
    d: float,
    ball_constraint: VertexSet | Iterable[int] | None = None,
    seed: int = 0,
    steps: int | None = None,
    restarts: int = 4,
) -> IsoWitness:
    """
    Heuristic minimizer of |∂_E A| / min{|A|, |V ∖ A|}^{(d−1)/d} over
    nonempty proper A inside ``ball_constraint`` (all of V when None).

    Candidates are prefixes of BFS orders and of spectral sweep orders, then
    simulated annealing over single-vertex flips from the best candidate
    and from random starts. The result is a real set, so its ratio is an
    upper bound on the true minimum.
    """
    if d < 1:
        raise ValueError(f"Dimension must be at least 1, got {d}")
    n = G.vertex_count
    allowed = np.ones(n, dtype=bool) if ball_constraint is None else vertex_mask(G, ball_constraint)
    region = np.flatnonzero(allowed)
    if len(region) == 0 or n < 2:
        raise ValueError("No nonempty proper subset to search")
    exponent = (d - 1) / d
    rng = np.random.default_rng(seed)
    degree = G.degree.astype(np.int64)

    H, original = induced_subgraph(G, region)
    starts = region if len(region) <= 64 else rng.choice(region, size=64, replace=False)
    orders = []
    for s in starts:
        dist = bfs_distances(H, int(np.searchsorted(original, s)))
        reachable = np.flatnonzero(dist >= 0)
        orders.append(original[reachable[np.lexsort((reachable, dist[reachable]))]])
    orders.extend(_spectral_orders(G, region))

    best_ratio, best_set = np.inf, None
    for order in orders:
        ratio, length = _prefix_best(order.astype(np.int64), G.indptr, G.indices, degree, n, exponent)
        if length and ratio < best_ratio:
            best_ratio, best_set = ratio, order[:length]

    steps = 2000 * len(region) if steps is None else steps
    initial = [np.zeros(n, dtype=np.bool_)]
    if best_set is not None:
        initial[0][best_set] = True
    else:
        initial[0][region[0]] = True
    for _ in range(max(restarts - 1, 0)):
        start = np.zeros(n, dtype=np.bool_)
        start[region[rng.random(len(region)) < 0.5]] = True
        if 0 < start.sum() < n:
            initial.append(start)

    candidates = [] if best_set is None else [iso_ratio(G, best_set, d)]
    for inside in initial:
        found = _anneal(
            G.indptr, G.indices, degree, region.astype(np.int64), inside, steps, 0.5,
            int(rng.integers(2**31 - 1)), exponent,
        )
        candidates.append(iso_ratio(G, found, d))
    witness = min(candidates, key=lambda w: (w.ratio, w.size))
    logger.debug(f"Local search ratio {witness.ratio:.4f} at size {witness.size}")
    return witness
