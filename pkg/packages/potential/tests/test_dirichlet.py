from __future__ import annotations

import numpy as np
import pytest
from graphs import build_graph, grid_graph

from potential import (
    DirichletSystem,
    SingularSystemError,
    boundary_ring,
    centre_vertex,
    harmonic_extension,
    laplacian,
)


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def test_laplacian_rows_sum_to_zero() -> None:
    G = grid_graph(4, 5).graph
    L = laplacian(G)
    assert np.allclose(L @ np.ones(G.vertex_count), 0.0)
    assert L.diagonal().tolist() == G.degree.tolist()


def test_empty_boundary_is_singular() -> None:
    with pytest.raises(SingularSystemError):
        DirichletSystem(path(4), [])


def test_component_missing_boundary_is_singular() -> None:
    G = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    with pytest.raises(SingularSystemError):
        DirichletSystem(G, [0])


def test_interior_numbering() -> None:
    system = DirichletSystem(path(5), [0, 4])
    assert system.interior.tolist() == [1, 2, 3]
    assert system.position.tolist() == [-1, 0, 1, 2, -1]


def test_harmonic_extension_on_path_is_linear() -> None:
    values = np.zeros(6)
    values[5] = 1.0
    h = harmonic_extension(path(6), values, [0, 5])
    assert np.allclose(h, np.arange(6) / 5)


def test_iterative_solve_matches_dense(monkeypatch) -> None:
    box = grid_graph(9, 9)
    rhs_vertex = box.centre()
    dense = DirichletSystem(box.graph, boundary_ring(box))
    rhs = np.zeros(dense.interior_size)
    rhs[dense.position[rhs_vertex]] = 1.0
    expected = dense.solve(rhs)

    monkeypatch.setattr("potential.dirichlet.get_dense_solver_limit", lambda: 0)
    sparse = DirichletSystem(box.graph, boundary_ring(box))
    assert not sparse.dense
    assert np.allclose(sparse.solve(rhs), expected, atol=1e-8)


def test_ring_and_centre_of_box() -> None:
    box = grid_graph(8, 8)
    assert boundary_ring(box).size == 28
    assert not boundary_ring(box).mask[centre_vertex(box)]
