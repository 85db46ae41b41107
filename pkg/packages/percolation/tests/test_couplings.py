from __future__ import annotations

import numpy as np
import pytest
from graphs import AbelianGroup, build_graph, cayley_graph, coset_partition, elongated_torus
from graphs.models import DisconnectedGraphError

from percolation import (
    EdgeMap,
    QuotientMap,
    changing_generators_probability,
    embedding_containment_check,
    geodesic_edge_map,
    quotient_containment_check,
    quotient_coupling,
    quotient_dominance_check,
    rough_embedding_coupling,
    union_containment_check,
)
from percolation.couplings import marginal_bounds_hold
from percolation.models import ConfigMismatchError


def cycle(n: int):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_singleton_orbits_copy_the_configuration() -> None:
    G = elongated_torus(5, 4).graph
    omega, eta = quotient_coupling(G, np.arange(G.vertex_count), 0.5, seed=3)
    assert np.array_equal(omega.open, eta.open)


def test_six_cycle_onto_triangle_contains_clusters() -> None:
    report = quotient_containment_check(cycle(6), np.arange(6) % 3, 0.5, samples=1000, seed=1)
    assert report.violations == 0
    assert report.holds
    assert report.overlap == 2


def test_quotient_open_rate_for_orbits_of_two() -> None:
    G = cycle(6)
    quotient = QuotientMap(G, np.arange(6) % 3)
    assert quotient.preimage_sizes.tolist() == [2, 2, 2]
    p, samples = 0.3, 2000
    opened = sum(
        quotient_coupling(G, None, p, seed=4, trial=t, quotient=quotient)[1].open_count
        for t in range(samples)
    )
    expected = 1 - (1 - p) ** 2
    stderr = np.sqrt(expected * (1 - expected) / (3 * samples))
    assert abs(opened / (3 * samples) - expected) <= 4 * stderr


def test_coset_quotient_of_torus_contains_clusters() -> None:
    torus = elongated_torus(6, 4)
    orbit_map = coset_partition(torus.group, [(0, j) for j in range(4)])
    report = quotient_containment_check(torus.graph, orbit_map, 0.4, samples=300, seed=2)
    assert report.holds


def test_identity_embedding_copies_the_configuration() -> None:
    G = elongated_torus(5, 5).graph
    identity = np.arange(G.vertex_count)
    for t in range(20):
        omega1, omega2 = rough_embedding_coupling(G, G, identity, EdgeMap.identity(G), 0.6, seed=1, trial=t)
        assert np.array_equal(omega1.open, omega2.open)


def test_geodesic_edge_map_of_doubling() -> None:
    Phi = geodesic_edge_map(cycle(4), cycle(8), [0, 2, 4, 6])
    assert Phi.lengths.tolist() == [2, 2, 2, 2]
    assert Phi.overlap == 2
    assert sorted(Phi.indices.tolist()) == list(range(8))


def test_doubling_embedding_contains_clusters() -> None:
    report = embedding_containment_check(cycle(4), cycle(8), [0, 2, 4, 6], 0.9, samples=1000, seed=5)
    assert report.violations == 0
    assert report.overlap == 2


def test_embedding_marginals() -> None:
    G1, G2, phi = cycle(4), cycle(8), np.array([0, 2, 4, 6])
    Phi = geodesic_edge_map(G1, G2, phi)
    q, samples = 0.7, 3000
    first = np.zeros(G1.edge_count)
    second_closed = np.zeros(G2.edge_count)
    for t in range(samples):
        omega1, omega2 = rough_embedding_coupling(G1, G2, phi, Phi, q, seed=9, trial=t)
        first += omega1.open
        second_closed += ~omega2.open
    C = Phi.overlap
    assert marginal_bounds_hold(first / samples, samples, q**C, q)
    assert marginal_bounds_hold(second_closed / samples, samples, (1 - q) ** C, 1 - q)


def test_collapsed_edges_get_a_private_coin() -> None:
    G1, G2 = cycle(4), cycle(2 + 1)
    phi = np.array([0, 0, 1, 2])
    Phi = geodesic_edge_map(G1, G2, phi)
    assert Phi.lengths[G1.edge_index(0, 1)] == 0
    report = embedding_containment_check(G1, G2, phi, 0.5, samples=200, seed=0, Phi=Phi)
    assert report.holds


def test_geodesic_edge_map_rejects_disconnected_target() -> None:
    target = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        geodesic_edge_map(cycle(4), target, [0, 1, 2, 3])


def test_vertex_map_must_cover_every_vertex() -> None:
    with pytest.raises(ConfigMismatchError):
        geodesic_edge_map(cycle(4), cycle(8), [0, 2, 4])
    with pytest.raises(ConfigMismatchError):
        geodesic_edge_map(cycle(4), cycle(8), [0, 2, 4, 9])


def test_changing_generators_probability() -> None:
    assert changing_generators_probability(0.37, 1) == pytest.approx(0.37)
    assert changing_generators_probability(0.5, 2) == pytest.approx(1 - (1 - np.sqrt(0.5)) ** 2)
    assert changing_generators_probability(1.0, 3) == 1.0
    with pytest.raises(ValueError):
        changing_generators_probability(0.5, 0)


def test_union_coupling_contains_clusters() -> None:
    report = union_containment_check(elongated_torus(8, 8).graph, 0.3, 0.2, samples=200, seed=3)
    assert report.holds
    assert report.open_rate_second > report.open_rate_first


def test_quotient_dominates_projected_cluster() -> None:
    group = AbelianGroup((6, 4))
    G = cayley_graph(group, [(1, 0), (0, 1)]).graph
    orbit_map = coset_partition(group, [(0, j) for j in range(4)])
    report = quotient_dominance_check(G, orbit_map, 0.5, trials=400, seed=7)
    assert report.holds
    assert report.sizes == [1, 2, 3, 4, 5, 6]
    assert report.projected_tail[0] == report.quotient_tail[0] == 1.0
