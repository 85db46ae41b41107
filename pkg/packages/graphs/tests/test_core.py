from __future__ import annotations

import numpy as np
import pytest

from graphs import (
    UNREACHABLE,
    VertexSet,
    Walk,
    ball,
    bfs_distances,
    box_graph,
    build_graph,
    connected_components,
    diameter,
    double_cover_walk,
    eccentricity,
    edge_boundary,
    elongated_torus,
    induced_subgraph,
    is_automorphism,
    orbit_power_graph,
    vertex_boundary,
)
from graphs.core import graph_from_json, graph_to_json, load_graph, save_graph
from graphs.models import DisconnectedGraphError, VertexOutOfRangeError


def cycle(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_build_graph_collapses_duplicates() -> None:
    G = build_graph(3, [(0, 1), (1, 2), (1, 0)])
    assert G.edge_count == 2
    assert G.collapsed_count == 1
    assert G.edges.tolist() == [[0, 1], [1, 2]]


def test_build_graph_single_isolated_vertex() -> None:
    G = build_graph(1, [])
    assert G.vertex_count == 1
    assert G.edge_count == 0
    assert G.degree.tolist() == [0]


def test_build_graph_discards_loops() -> None:
    G = build_graph(4, [(0, 0), (0, 1)])
    assert G.edge_count == 1
    assert G.collapsed_count == 1


def test_build_graph_rejects_out_of_range_endpoint() -> None:
    with pytest.raises(VertexOutOfRangeError):
        build_graph(3, [(0, 3)])


def test_edge_indexing_is_order_independent() -> None:
    a = build_graph(4, [(2, 3), (0, 1), (1, 2)])
    b = build_graph(4, [(1, 0), (3, 2), (2, 1)])
    assert np.array_equal(a.edges, b.edges)
    assert a.edge_index(3, 2) == 2
    assert a.edge_index(0, 3) == -1


def test_adjacency_matches_edge_list() -> None:
    G = build_graph(5, [(0, 4), (4, 2), (1, 2), (0, 2)])
    for v in range(G.vertex_count):
        neighbours = G.neighbors(v).tolist()
        assert neighbours == sorted(neighbours)
        for w in neighbours:
            assert G.has_edge(v, w)
    assert G.degree.sum() == 2 * G.edge_count


def test_bfs_distances_on_path() -> None:
    assert bfs_distances(path(3), 0).tolist() == [0, 1, 2]


def test_bfs_distances_flags_unreachable() -> None:
    G = build_graph(4, [(0, 1), (2, 3)])
    dist = bfs_distances(G, 0)
    assert dist[2] == UNREACHABLE and dist[3] == UNREACHABLE


def test_bfs_distances_on_four_cycle() -> None:
    assert bfs_distances(cycle(4), 0).tolist() == [0, 1, 2, 1]


def test_bfs_distances_rejects_bad_vertex() -> None:
    with pytest.raises(VertexOutOfRangeError):
        bfs_distances(cycle(4), 4)


def test_ball_on_cycle() -> None:
    B = ball(cycle(10), 0, 2)
    assert sorted(B) == [0, 1, 2, 8, 9]
    assert B.size == 5


def test_ball_radius_zero_and_full() -> None:
    G = cycle(7)
    assert list(ball(G, 3, 0)) == [3]
    assert ball(G, 0, 10).size == 7


def test_ball_in_box_is_cross() -> None:
    box = box_graph(2, 2)
    assert ball(box.graph, box.origin, 1).size == 5


def test_balls_are_nested() -> None:
    G = elongated_torus(6, 4).graph
    previous = ball(G, 0, 0)
    for n in range(1, 6):
        current = ball(G, 0, n)
        assert np.all(current.mask >= previous.mask)
        previous = current
    assert previous.size == G.vertex_count


@pytest.mark.parametrize("k", [2, 3, 5])
def test_diameter_of_even_cycle(k: int) -> None:
    assert diameter(cycle(2 * k)) == k


@pytest.mark.parametrize("radii", [(1,), (2, 1), (1, 1, 2)])
def test_diameter_of_box(radii: tuple[int, ...]) -> None:
    assert diameter(box_graph(*radii).graph) == 2 * sum(radii)


def test_diameter_of_complete_graph() -> None:
    assert diameter(complete(5)) == 1


def test_diameter_rejects_disconnected() -> None:
    with pytest.raises(DisconnectedGraphError):
        diameter(build_graph(4, [(0, 1), (2, 3)]))


def test_diameter_equals_eccentricity_on_cayley_graphs() -> None:
    G = elongated_torus(8, 4).graph
    assert diameter(G) == eccentricity(G, 0) == 6


def test_double_cover_walk_single_edge() -> None:
    assert double_cover_walk(path(2)).vertices.tolist() == [0, 1, 0]


def test_double_cover_walk_path() -> None:
    assert double_cover_walk(path(3)).vertices.tolist() == [0, 1, 2, 1, 0]


@pytest.mark.parametrize(
    "G",
    [complete(3), cycle(7), box_graph(2, 1).graph, elongated_torus(5, 3).graph],
)
def test_double_cover_walk_crosses_each_edge_twice(G) -> None:
    walk = double_cover_walk(G)
    Walk(walk.vertices, graph=G)  # validates adjacency
    assert walk.is_closed
    assert len(walk) == 2 * G.edge_count + 1
    assert np.all(walk.traversal_counts(G) == 2)
    visits = walk.visit_counts(G.vertex_count)
    assert np.all(visits >= 1)
    assert np.all(visits[1:] <= 2 * G.degree[1:])


def test_double_cover_walk_rejects_disconnected() -> None:
    with pytest.raises(DisconnectedGraphError):
        double_cover_walk(build_graph(3, [(0, 1)]))


def test_edge_boundary_examples() -> None:
    G = cycle(4)
    assert edge_boundary(G, range(4))[0] == 0
    assert edge_boundary(G, [2])[0] == 2
    count, indices = edge_boundary(G, [0, 1])
    assert count == 2
    assert sorted(map(tuple, G.edges[indices].tolist())) == [(0, 3), (1, 2)]


def test_vertex_boundary_examples() -> None:
    G = cycle(6)
    assert vertex_boundary(G, range(6)).size == 0

    star = build_graph(5, [(0, i) for i in range(1, 5)])
    assert sorted(vertex_boundary(star, [0])) == [1, 2, 3, 4]


def test_vertex_boundary_of_box_ball() -> None:
    box = box_graph(3, 3)
    A = ball(box.graph, box.origin, 1)
    dist = bfs_distances(box.graph, box.origin)
    assert vertex_boundary(box.graph, A) == VertexSet(dist == 2)


def test_edge_boundary_dominates_vertex_boundary() -> None:
    rng = np.random.default_rng(3)
    G = elongated_torus(7, 5).graph
    for _ in range(50):
        A = VertexSet(rng.random(G.vertex_count) < rng.random())
        assert edge_boundary(G, A)[0] >= vertex_boundary(G, A).size


def test_induced_subgraph_relabels_in_order() -> None:
    H, original = induced_subgraph(cycle(6), [1, 2, 3, 5])
    assert original.tolist() == [1, 2, 3, 5]
    assert H.edges.tolist() == [[0, 1], [1, 2]]


def test_connected_components_labels() -> None:
    count, labels = connected_components(build_graph(5, [(0, 1), (3, 4)]))
    assert count == 3
    assert labels[0] == labels[1] and labels[3] == labels[4] and labels[0] != labels[3]


def test_orbit_power_graph_on_even_vertices() -> None:
    G = cycle(12)
    H, members = orbit_power_graph(G, range(0, 12, 2), 1)
    assert members.tolist() == [0, 2, 4, 6, 8, 10]
    assert H.edge_count == 6
    assert H.degree.max() <= 3**2
    assert diameter(H) <= diameter(G)


def test_translations_are_automorphisms() -> None:
    torus = elongated_torus(6, 5)
    rng = np.random.default_rng(11)
    for g in rng.integers(0, torus.group.order, size=10):
        permutation = torus.group.left_mul_indices(torus.element(int(g)))
        assert is_automorphism(torus.graph, permutation)


def test_json_format(tmp_path) -> None:
    G = build_graph(4, [(0, 1), (1, 2)])
    assert '"n":4' in graph_to_json(G)
    assert graph_from_json('{"n": 3, "edges": [[0, 1], [1, 0], [2, 2]]}').edge_count == 1
    save_graph(G, tmp_path / "g.json")
    assert np.array_equal(load_graph(tmp_path / "g.json").edges, G.edges)
