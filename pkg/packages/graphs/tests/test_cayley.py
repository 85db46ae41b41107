from __future__ import annotations

import numpy as np
import pytest

from graphs import (
    AbelianGroup,
    HeisenbergGroup,
    box_graph,
    build_graph,
    cayley_graph,
    coset_partition,
    diameter,
    elongated_torus,
    generates,
    generator_power_bound,
    grid_graph,
    heisenberg_cayley,
    is_central,
    quotient_graph,
)
from graphs.models import GroupError, NotGeneratingError


def test_abelian_group_arithmetic() -> None:
    G = AbelianGroup((12, 5))
    assert G.order == 60
    assert G.add((11, 4), (3, 3)) == (2, 2)
    assert G.neg((1, 0)) == (11, 0)
    assert G.element(G.index((7, 3))) == (7, 3)
    assert G.index((-1, -1)) == G.index((11, 4))


def test_abelian_group_rejects_bad_moduli() -> None:
    with pytest.raises(GroupError):
        AbelianGroup((3, 0))


def test_cycle_cayley_graph() -> None:
    G = cayley_graph(AbelianGroup((6,)), [(1,)]).graph
    assert G.vertex_count == 6
    assert G.edge_count == 6
    assert set(G.degree.tolist()) == {2}


def test_torus_cayley_graph() -> None:
    G = cayley_graph(AbelianGroup((5, 3)), [(1, 0), (0, 1)]).graph
    assert G.vertex_count == 15
    assert set(G.degree.tolist()) == {4}
    # Z_5 contributes 2 and Z_3 contributes 1
    assert diameter(G) == 3


def test_cayley_graph_with_redundant_generator() -> None:
    G = cayley_graph(AbelianGroup((4,)), [(1,), (2,)]).graph
    assert set(G.degree.tolist()) == {3}
    assert diameter(G) == 1


def test_cayley_graph_rejects_non_generating_set() -> None:
    with pytest.raises(NotGeneratingError):
        cayley_graph(AbelianGroup((6,)), [(2,)])
    assert not generates(AbelianGroup((4, 2)), [(1, 0)])


def test_elongated_torus_shapes() -> None:
    small = elongated_torus(3, 3).graph
    assert (small.vertex_count, small.edge_count) == (9, 18)

    degenerate = elongated_torus(7, 1).graph
    assert (degenerate.vertex_count, degenerate.edge_count) == (7, 7)

    assert diameter(elongated_torus(8, 4).graph) == 6


def test_heisenberg_cayley_graph() -> None:
    assert heisenberg_cayley(2).graph.vertex_count == 8
    G = heisenberg_cayley(3).graph
    assert G.vertex_count == 27
    assert set(G.degree.tolist()) == {4}


def test_heisenberg_group_law() -> None:
    H = HeisenbergGroup(5)
    a, b = (1, 0, 0), (0, 1, 0)
    assert H.commutator(a, b) == (0, 0, 1)
    g = (2, 3, 4)
    assert H.mul(g, H.inv(g)) == H.identity
    assert H.element(H.index(g)) == g
    idx = H.right_mul_indices(b)
    assert H.element(int(idx[H.index(g)])) == H.mul(g, b)
    idx = H.left_mul_indices(b)
    assert H.element(int(idx[H.index(g)])) == H.mul(b, g)


def test_box_graph_shapes() -> None:
    B = box_graph(1, 1).graph
    assert (B.vertex_count, B.edge_count) == (9, 12)

    line = box_graph(4)
    assert line.graph.vertex_count == 9
    assert line.graph.edge_count == 8

    assert diameter(box_graph(2, 1).graph) == 6


def test_box_coordinates() -> None:
    box = box_graph(2, 1)
    assert box.coordinates[box.origin].tolist() == [0, 0]
    assert box.vertex((-2, -1)) == 0
    assert len(box.side(0, high=False)) == 3
    assert len(box.outer_ring()) == 15 - 3


def test_grid_graph_centre_and_ring() -> None:
    grid = grid_graph(8, 8)
    assert grid.graph.vertex_count == 64
    assert len(grid.outer_ring()) == 28
    assert grid.coordinates[grid.centre()].tolist() == [4, 4]


def test_quotient_by_singletons_is_identity() -> None:
    G = elongated_torus(4, 3).graph
    Q, projection = quotient_graph(G, np.arange(G.vertex_count))
    assert np.array_equal(Q.edges, G.edges)
    assert projection.tolist() == list(range(G.vertex_count))


def test_quotient_by_one_block() -> None:
    G = elongated_torus(4, 3).graph
    Q, _ = quotient_graph(G, np.zeros(G.vertex_count, dtype=int))
    assert (Q.vertex_count, Q.edge_count) == (1, 0)


def test_quotient_of_six_cycle_mod_three() -> None:
    G = cayley_graph(AbelianGroup((6,)), [(1,)]).graph
    Q, projection = quotient_graph(G, np.arange(6) % 3)
    assert Q.edges.tolist() == [[0, 1], [0, 2], [1, 2]]
    assert projection.tolist() == [0, 1, 2, 0, 1, 2]


def test_quotient_is_homomorphism() -> None:
    G = elongated_torus(6, 4).graph
    Q, projection = quotient_graph(G, np.arange(G.vertex_count) % 5)
    for u, v in G.edges:
        pu, pv = projection[u], projection[v]
        assert pu == pv or Q.has_edge(pu, pv)


@pytest.mark.parametrize("a,b", [(5, 3), (7, 2), (4, 6)])
def test_coset_quotient_matches_quotient_group(a: int, b: int) -> None:
    group = AbelianGroup((a, b))
    cayley = cayley_graph(group, [(1, 0), (0, 1)])
    subgroup = [(0, j) for j in range(b)]
    Q, _ = quotient_graph(cayley.graph, coset_partition(group, subgroup))
    expected = cayley_graph(AbelianGroup((a,)), [(1,)]).graph
    assert np.array_equal(Q.edges, expected.edges)


def test_is_central() -> None:
    H = HeisenbergGroup(3)
    assert is_central(H, H.center())
    assert not is_central(H, [(1, 0, 0)])


def test_generator_power_bound() -> None:
    group = AbelianGroup((12,))
    assert generator_power_bound(group, [(1,), (5,)], [(1,)]) == 5
    assert generator_power_bound(group, [(1,)], [(1,), (5,)]) == 1


def test_box_is_not_vertex_transitive_but_torus_is() -> None:
    box = box_graph(2, 2).graph
    assert len(set(box.degree.tolist())) > 1
    torus = elongated_torus(5, 5).graph
    assert set(torus.degree.tolist()) == {4}
    assert build_graph(1, []).vertex_count == 1
