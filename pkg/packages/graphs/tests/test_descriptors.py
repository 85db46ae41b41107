from __future__ import annotations

import json

import pytest

from graphs import diameter, parse_descriptor, write_family
from graphs.core import save_graph
from graphs.models import DescriptorError


def test_torus_descriptor() -> None:
    family = parse_descriptor("torus:n=8,m=4")
    assert family.graph.vertex_count == 32
    assert family.transitive
    assert family.coordinates.shape == (32, 2)


def test_box_and_grid_descriptors() -> None:
    box = parse_descriptor("box:3,3,40")
    assert box.graph.vertex_count == 7 * 7 * 81
    assert not box.transitive
    assert parse_descriptor("grid:n=8").graph.vertex_count == 64
    assert parse_descriptor("grid:8,6").graph.vertex_count == 48


def test_abelian_descriptor() -> None:
    family = parse_descriptor("abelian:mods=12,5;gens=(1,0),(0,1)")
    assert family.graph.vertex_count == 60
    assert set(family.graph.degree.tolist()) == {4}


def test_small_family_descriptors() -> None:
    assert parse_descriptor("heisenberg:n=3").graph.vertex_count == 27
    assert diameter(parse_descriptor("cycle:n=10").graph) == 5
    assert parse_descriptor("path:n=5").graph.edge_count == 4
    assert parse_descriptor("complete:n=5").graph.edge_count == 10


def test_json_descriptor(tmp_path) -> None:
    source = parse_descriptor("cycle:n=6")
    save_graph(source.graph, tmp_path / "c6.json")
    loaded = parse_descriptor(f"json:{tmp_path / 'c6.json'}")
    assert loaded.graph.edge_count == 6


@pytest.mark.parametrize(
    "descriptor",
    [
        "torus",
        "torus:n=8",
        "torus:n=x,m=2",
        "moebius:n=4",
        "abelian:mods=4",
        "json:/no/such/file.json",
    ],
)
def test_bad_descriptors(descriptor: str) -> None:
    with pytest.raises(DescriptorError):
        parse_descriptor(descriptor)


def test_write_family_sidecar(tmp_path) -> None:
    sidecar = write_family(parse_descriptor("torus:n=3,m=2"), tmp_path / "t.json")
    payload = json.loads(sidecar.read_text())
    assert payload["transitive"] is True
    assert len(payload["coordinates"]) == 6
    assert write_family(parse_descriptor("path:n=3"), tmp_path / "p.json") is None
