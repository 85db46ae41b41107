import logging
from collections.abc import Iterable, Sequence
from math import prod

import numpy as np

from graphs.core import Graph, bfs_distances, build_graph, is_connected
from graphs.groups import (
    AbelianGroup,
    FiniteGroup,
    GeneratingSet,
    GroupElement,
    HeisenbergGroup,
)
from graphs.models import NotGeneratingError

logger = logging.getLogger(__name__)


class CayleyGraph:
    """Cayley graph together with its group; vertex ``i`` is ``group.element(i)``."""

    def __init__(self, graph: Graph, group: FiniteGroup, generators: GeneratingSet):
        self.graph = graph
        self.group = group
        self.generators = generators

    def vertex(self, g: Sequence[int]) -> int:
        return self.group.index(g)

    def element(self, v: int) -> GroupElement:
        return self.group.element(int(v))

    @property
    def identity_vertex(self) -> int:
        return self.group.index(self.group.identity)


class BoxGraph:
    """
    Induced subgraph of Z^d on a rectangular block with its coordinates.

    For the box B(n_1, ..., n_d) coordinates run over [-n_i, n_i]; for a
    plain grid of side lengths they run over [0, side). ``offset`` is what
    is added to a coordinate to get its position in the block.
    """

    def __init__(
        self,
        graph: Graph,
        shape: tuple[int, ...],
        offset: tuple[int, ...],
        coordinates: np.ndarray,
    ):
        self.graph = graph
        self.shape = shape
        self.offset = offset
        self.coordinates = coordinates

    @property
    def radii(self) -> tuple[int, ...]:
        return tuple((side - 1) // 2 for side in self.shape)

    @property
    def origin(self) -> int:
        """The vertex with all coordinates zero."""
        return self.vertex((0,) * len(self.shape))

    def vertex(self, coord: Sequence[int]) -> int:
        shifted = [int(c) + o for c, o in zip(coord, self.offset)]
        return int(np.ravel_multi_index(shifted, self.shape))

    def vertices(self, coords: np.ndarray) -> np.ndarray:
        shifted = np.asarray(coords, dtype=np.int64) + np.asarray(self.offset)
        return np.ravel_multi_index(tuple(shifted.T), self.shape)

    def side(self, axis: int, high: bool) -> np.ndarray:
        """Vertices on the low or high face orthogonal to ``axis``."""
        position = self.coordinates[:, axis] + self.offset[axis]
        target = self.shape[axis] - 1 if high else 0
        return np.flatnonzero(position == target)

    def outer_ring(self) -> np.ndarray:
        """Vertices on any face of the block."""
        position = self.coordinates + np.asarray(self.offset)
        on_face = (position == 0) | (position == np.asarray(self.shape) - 1)
        return np.flatnonzero(on_face.any(axis=1))

    def centre(self) -> int:
        return self.vertex([side // 2 - o for side, o in zip(self.shape, self.offset)])


def _cayley_edges(group: FiniteGroup, generators: GeneratingSet) -> np.ndarray:
    sources = np.arange(group.order, dtype=np.int64)
    pieces = [
        np.stack([sources, group.right_mul_indices(s)], axis=1)
        for s in generators.symmetrized()
        if s != group.identity
    ]
    if not pieces:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(pieces)


def generates(group: FiniteGroup, generators: Iterable[Sequence[int]]) -> bool:
    """Whether the BFS closure of the identity under the generators is the group."""
    S = generators if isinstance(generators, GeneratingSet) else GeneratingSet(group, generators)
    return is_connected(build_graph(group.order, _cayley_edges(group, S)))


def cayley_graph(group: FiniteGroup, generators: Iterable[Sequence[int]]) -> CayleyGraph:
    """
    Cay(Γ, S): ``x ~ y`` iff ``x^{-1} y`` lies in Ŝ minus the identity.

    Raises NotGeneratingError when S does not generate Γ.
    """
    S = generators if isinstance(generators, GeneratingSet) else GeneratingSet(group, generators)
    graph = build_graph(group.order, _cayley_edges(group, S))
    if not is_connected(graph):
        raise NotGeneratingError(f"{S} does not generate {group}")
    logger.debug(f"Built Cayley graph of {group} with {graph.edge_count} edges")
    return CayleyGraph(graph, group, S)


def word_lengths(group: FiniteGroup, generators: Iterable[Sequence[int]]) -> np.ndarray:
    """Word length of every element (by flat index) with respect to Ŝ."""
    cayley = cayley_graph(group, generators)
    return bfs_distances(cayley.graph, cayley.identity_vertex)


def word_ball(group: FiniteGroup, generators: Iterable[Sequence[int]], r: int) -> np.ndarray:
    """Flat indices of Ŝ^r, the elements of word length at most ``r``."""
    return np.flatnonzero(word_lengths(group, generators) <= r)


def grid_graph(*sides: int) -> BoxGraph:
    """Lattice graph on {0..s_1-1} x ... x {0..s_d-1}."""
    if not sides:
        raise ValueError("grid_graph needs at least one side")
    if any(s < 1 for s in sides):
        raise ValueError(f"Grid sides must be positive, got {sides}")
    return _block((int(s) for s in sides), (0,) * len(sides))


def box_graph(*radii: int) -> BoxGraph:
    """B(n_1, ..., n_d) = {x in Z^d : |x_i| <= n_i} with nearest-neighbour edges."""
    if not radii:
        raise ValueError("box_graph needs at least one radius")
    if any(n < 0 for n in radii):
        raise ValueError(f"Box radii must be nonnegative, got {radii}")
    return _block((2 * int(n) + 1 for n in radii), tuple(int(n) for n in radii))


def _block(sides: Iterable[int], offset: tuple[int, ...]) -> BoxGraph:
    shape = tuple(sides)
    flat = np.arange(prod(shape), dtype=np.int64).reshape(shape)

    pieces = []
    for axis, size in enumerate(shape):
        if size < 2:
            continue
        lower = np.take(flat, np.arange(size - 1), axis=axis).ravel()
        upper = np.take(flat, np.arange(1, size), axis=axis).ravel()
        pieces.append(np.stack([lower, upper], axis=1))

    edges = np.concatenate(pieces) if pieces else np.empty((0, 2), dtype=np.int64)
    coordinates = np.indices(shape).reshape(len(shape), -1).T - np.asarray(offset)
    coordinates.flags.writeable = False
    return BoxGraph(build_graph(prod(shape), edges), shape, offset, coordinates)


def elongated_torus(n: int, m: int) -> CayleyGraph:
    """(Z/nZ) x (Z/mZ) with the standard generators."""
    if n < 1 or m < 1:
        raise ValueError(f"Torus sides must be at least 1, got ({n}, {m})")
    return cayley_graph(AbelianGroup((n, m)), [(1, 0), (0, 1)])


def heisenberg_cayley(n: int) -> CayleyGraph:
    """Heisenberg group mod n with S = {(1,0,0), (0,1,0)}."""
    return cayley_graph(HeisenbergGroup(n), [(1, 0, 0), (0, 1, 0)])


def quotient_graph(G: Graph, orbit_map: Sequence[int] | np.ndarray) -> tuple[Graph, np.ndarray]:
    """
    Collapse each block of ``orbit_map`` to a vertex.

    Blocks are numbered by the sorted order of their ids. Two blocks are
    adjacent iff some edge of G joins them; loops and parallel edges are
    dropped. Returns the quotient and the projection of every vertex.
    """
    orbit_map = np.asarray(orbit_map)
    if orbit_map.shape != (G.vertex_count,):
        raise ValueError(
            f"orbit_map must assign a block to each of the {G.vertex_count} vertices"
        )
    blocks, projection = np.unique(orbit_map, return_inverse=True)
    projection = projection.astype(np.int64)
    return build_graph(len(blocks), projection[G.edges]), projection


def coset_partition(group: FiniteGroup, subgroup: Iterable[Sequence[int]]) -> np.ndarray:
    """Left-coset label ``min{index(x h) : h in H}`` of every element x."""
    labels = np.arange(group.order, dtype=np.int64)
    for h in subgroup:
        np.minimum(labels, group.right_mul_indices(h), out=labels)
    return labels


def is_central(group: FiniteGroup, subgroup: Iterable[Sequence[int]]) -> bool:
    return all(
        np.array_equal(group.left_mul_indices(h), group.right_mul_indices(h))
        for h in subgroup
    )


def generator_power_bound(
    group: FiniteGroup,
    S1: Iterable[Sequence[int]],
    S2: Iterable[Sequence[int]],
) -> int:
    """
    Smallest m with S1 ⊆ Ŝ2^m.

    The identity map Cay(Γ, S1) -> Cay(Γ, S2) then sends every edge to a
    pair at distance at most m.
    """
    lengths = word_lengths(group, S2)
    return max((int(lengths[group.index(s)]) for s in S1), default=0)
