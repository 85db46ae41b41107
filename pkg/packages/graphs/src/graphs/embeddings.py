import logging
from collections.abc import Iterable, Sequence
from math import log, prod

import numpy as np

from graphs.cayley import coset_partition, is_central, quotient_graph, word_lengths
from graphs.core import build_graph, double_cover_walk, is_connected
from graphs.groups import FiniteGroup, GeneratingSet
from graphs.models import NotCentralError, NotQuasiconnectedError

logger = logging.getLogger(__name__)


def snake_hamiltonian(*radii: int) -> np.ndarray:
    """
    Boustrophedon ordering of the box B(n_1, ..., n_d).

    Returns a ``(|B|, d)`` coordinate array in which consecutive rows are
    adjacent in the box graph. The ordering has odd length and its middle
    row is the origin, so ``snake[a + len(snake) // 2]`` is a path indexed
    by ``a`` in [-M, M] with value 0 at ``a = 0``.
    """
    if not radii:
        raise ValueError("snake_hamiltonian needs at least one radius")
    if any(n < 0 for n in radii):
        raise ValueError(f"Box radii must be nonnegative, got {radii}")

    first = np.arange(-radii[0], radii[0] + 1, dtype=np.int64)
    if len(radii) == 1:
        return first[:, None]

    rest = snake_hamiltonian(*radii[1:])
    blocks = []
    for i, x in enumerate(first):
        tail = rest if i % 2 == 0 else rest[::-1]
        blocks.append(np.column_stack([np.full(len(tail), x), tail]))
    return np.concatenate(blocks)


def box_split(radii: Sequence[int], lam: float) -> tuple[int, int, int] | None:
    """
    Split a box into a long and a wide factor.

    With ``N_i = 2 n_i + 1`` (radii in ascending order) and
    ``t = log|B| / lam``, take the smallest k with ``N_1...N_k >= t`` and
    accept it when also ``N_{k+1}...N_d >= t``. Returns ``(k, m, n)`` where
    ``2m+1 = N_1...N_k`` and ``2n+1 = N_{k+1}...N_d``, or None when no split
    qualifies.
    """
    if list(radii) != sorted(radii):
        raise ValueError(f"Radii must be in ascending order, got {list(radii)}")
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")

    sides = [2 * n + 1 for n in radii]
    threshold = log(prod(sides)) / lam
    for k in range(1, len(sides)):
        head, tail = prod(sides[:k]), prod(sides[k:])
        if head >= threshold:
            if tail >= threshold:
                return k, (head - 1) // 2, (tail - 1) // 2
            return None
    return None


def snake_product_map(radii: Sequence[int], k: int) -> tuple[int, int, np.ndarray]:
    """
    The map φ = (φ1, φ2): B(m, n) -> B(n_1, ..., n_d) built from the
    snakes of the first k and the last d-k factors.

    Returns ``(m, n, coords)`` with ``coords[a + m, b + n]`` the image of
    ``(a, b)``. The map is bijective, adjacency-preserving and sends the
    origin to the origin.
    """
    if not 1 <= k < len(radii):
        raise ValueError(f"Split index must lie in [1, {len(radii) - 1}], got {k}")
    head = snake_hamiltonian(*radii[:k])
    tail = snake_hamiltonian(*radii[k:])
    m, n = (len(head) - 1) // 2, (len(tail) - 1) // 2
    coords = np.concatenate(
        [
            np.broadcast_to(head[:, None, :], (len(head), len(tail), head.shape[1])),
            np.broadcast_to(tail[None, :, :], (len(head), len(tail), tail.shape[1])),
        ],
        axis=2,
    )
    return m, n, coords


class GridEmbedding:
    """Map from the grid {0..n1-1} x {0..n2-1} to vertices (flat group indices)."""

    def __init__(self, images: np.ndarray, bound: int, steps: Sequence[int] = ()):
        self.images = np.asarray(images, dtype=np.int64)
        self.images.flags.writeable = False
        self.bound = bound
        self.steps = tuple(steps)

    @property
    def shape(self) -> tuple[int, int]:
        return self.images.shape  # type: ignore[return-value]

    def preimage_counts(self, vertex_count: int) -> np.ndarray:
        return np.bincount(self.images.ravel(), minlength=vertex_count)

    def grid_edges(self) -> np.ndarray:
        """Image pairs of all horizontal and vertical grid edges, ``(count, 2)``."""
        across = np.stack([self.images[:-1, :].ravel(), self.images[1:, :].ravel()], axis=1)
        along = np.stack([self.images[:, :-1].ravel(), self.images[:, 1:].ravel()], axis=1)
        return np.concatenate([across, along])


def _open_walk(graph, start: int) -> np.ndarray:
    vertices = double_cover_walk(graph, start).vertices
    return vertices[:-1] if len(vertices) > 1 else vertices


def central_box_embedding(
    group: FiniteGroup,
    generators: Iterable[Sequence[int]],
    subgroup: Iterable[Sequence[int]],
    r: int,
) -> GridEmbedding:
    """
    Grid map onto Γ through a central subgroup H.

    φ1 walks the graph on H whose edges are the steps in Ŝ^r ∩ H, φ2 walks
    Cay(Γ/H, Ŝ^r/H); both are double-cover walks started at the identity
    with the closing return dropped. Column j is lifted to an element g_j
    by the smallest-index step of Ŝ^r that realises the next coset, and
    φ(a, j) = φ1(a) g_j. Grid neighbours differ by an element of Ŝ^r, the
    map is onto, and preimages have at most 4(2k+1)^(2r) elements.
    """
    S = generators if isinstance(generators, GeneratingSet) else GeneratingSet(group, generators)
    H = sorted({group.index(h) for h in subgroup})
    H_elements = [group.element(h) for h in H]
    if not is_central(group, H_elements):
        raise NotCentralError(f"Subgroup of size {len(H)} is not central in {group}")

    identity = group.index(group.identity)
    steps = np.flatnonzero(word_lengths(group, S) <= r)
    step_tables = {int(t): group.right_mul_indices(group.element(int(t))) for t in steps}

    in_H = np.zeros(group.order, dtype=bool)
    in_H[H] = True
    local = np.full(group.order, -1, dtype=np.int64)
    local[H] = np.arange(len(H))
    H_array = np.asarray(H, dtype=np.int64)

    pieces = [
        np.stack([local[H_array], local[step_tables[int(t)][H_array]]], axis=1)
        for t in steps
        if in_H[t] and t != identity
    ]
    H_graph = build_graph(len(H), np.concatenate(pieces) if pieces else np.empty((0, 2)))
    if not is_connected(H_graph):
        raise NotQuasiconnectedError(
            f"Elements of word length <= {r} inside the subgroup do not generate it"
        )
    phi1 = H_array[_open_walk(H_graph, int(local[identity]))]

    sources = np.arange(group.order, dtype=np.int64)
    big_edges = np.concatenate(
        [np.stack([sources, step_tables[int(t)]], axis=1) for t in steps if t != identity]
        or [np.empty((0, 2), dtype=np.int64)]
    )
    quotient, projection = quotient_graph(
        build_graph(group.order, big_edges), coset_partition(group, H_elements)
    )
    phi2 = _open_walk(quotient, int(projection[identity]))

    lifts = [identity]
    chosen: list[int] = []
    for target in phi2[1:]:
        current = lifts[-1]
        for t in steps:
            nxt = int(step_tables[int(t)][current])
            if projection[nxt] == target:
                lifts.append(nxt)
                chosen.append(int(t))
                break

    images = np.empty((len(phi1), len(lifts)), dtype=np.int64)
    for a, h in enumerate(phi1):
        h_element = group.element(int(h))
        for j, g in enumerate(lifts):
            images[a, j] = group.index(group.mul(h_element, group.element(g)))

    bound = 4 * (2 * len(S) + 1) ** (2 * r)
    logger.debug(
        f"Central box embedding of {group}: grid {images.shape}, preimage bound {bound}"
    )
    return GridEmbedding(images, bound, chosen)
