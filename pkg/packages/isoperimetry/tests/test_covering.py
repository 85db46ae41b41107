from __future__ import annotations

import pytest
from graphs import build_graph, elongated_torus

from isoperimetry import DiameterTooSmallError, disjoint_balls_on_geodesic, net_cover


def cycle(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def test_cycle_net() -> None:
    cover = net_cover(cycle(20), range(20), 2)
    assert cover.centres == [0, 5, 10, 15]
    assert cover.covered
    assert cover.disjoint


def test_zero_radius_keeps_every_vertex() -> None:
    A = [1, 4, 7, 8]
    assert net_cover(cycle(12), A, 0).centres == A


def test_radius_beyond_diameter_gives_one_centre() -> None:
    cover = net_cover(elongated_torus(5, 4).graph, range(20), 10)
    assert cover.centres == [0]
    assert cover.covered


def test_balls_on_path() -> None:
    packing = disjoint_balls_on_geodesic(path(100), 0, 50, 2)
    assert packing.count == 10
    assert packing.count >= packing.bound
    assert packing.disjoint
    assert packing.contained


def test_singletons_along_geodesic() -> None:
    packing = disjoint_balls_on_geodesic(path(100), 0, 20, 0)
    assert packing.centres == list(range(21))
    assert packing.disjoint


def test_balls_on_cycle() -> None:
    packing = disjoint_balls_on_geodesic(cycle(200), 0, 80, 5)
    assert packing.count == 7
    assert packing.count >= 4
    assert packing.disjoint
    assert packing.contained


def test_geodesic_needs_room() -> None:
    with pytest.raises(DiameterTooSmallError):
        disjoint_balls_on_geodesic(cycle(10), 0, 6, 1)
    with pytest.raises(ValueError):
        disjoint_balls_on_geodesic(cycle(10), 0, 4, 3)
