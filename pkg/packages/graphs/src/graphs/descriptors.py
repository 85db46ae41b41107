import logging
import re
from pathlib import Path

import numpy as np

from graphs.cayley import (
    BoxGraph,
    CayleyGraph,
    box_graph,
    cayley_graph,
    elongated_torus,
    grid_graph,
    heisenberg_cayley,
)
from graphs.core import Graph, build_graph, graph_to_json, load_graph
from graphs.groups import AbelianGroup
from graphs.models import CoordinateSidecar, DescriptorError

logger = logging.getLogger(__name__)

_TUPLE = re.compile(r"\(([^)]*)\)")


class FamilyGraph:
    """A parsed graph family instance: the graph plus what is known about it."""

    def __init__(
        self,
        label: str,
        graph: Graph,
        coordinates: np.ndarray | None = None,
        transitive: bool = False,
        source: CayleyGraph | BoxGraph | None = None,
    ):
        self.label = label
        self.graph = graph
        self.coordinates = coordinates
        self.transitive = transitive
        self.source = source

    def __repr__(self) -> str:
        return f"FamilyGraph({self.label!r}, {self.graph!r})"


def _params(body: str) -> dict[str, str]:
    params = {}
    for item in filter(None, (part.strip() for part in body.split(","))):
        if "=" not in item:
            raise DescriptorError(f"Expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _int(params: dict[str, str], key: str, descriptor: str) -> int:
    try:
        return int(params[key])
    except KeyError:
        raise DescriptorError(f"Descriptor {descriptor!r} is missing {key}=") from None
    except ValueError:
        raise DescriptorError(f"Descriptor {descriptor!r}: {key} must be an integer") from None


def _ints(text: str, descriptor: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DescriptorError(f"Descriptor {descriptor!r}: expected integers, got {text!r}") from None


def _from_cayley(label: str, cayley: CayleyGraph) -> FamilyGraph:
    return FamilyGraph(
        label,
        cayley.graph,
        coordinates=np.asarray(cayley.group.coordinates),
        transitive=True,
        source=cayley,
    )


def _from_block(label: str, block: BoxGraph) -> FamilyGraph:
    return FamilyGraph(label, block.graph, coordinates=block.coordinates, source=block)


def parse_descriptor(descriptor: str) -> FamilyGraph:
    """
    Build a graph from a family descriptor.

    Accepted forms::

        torus:n=100,m=5
        box:3,3,40
        grid:n=8            (or grid:8,8)
        abelian:mods=12,5;gens=(1,0),(0,1)
        heisenberg:n=4
        cycle:n=10
        path:n=1000          (n vertices)
        complete:n=50
        json:/path/to/graph.json
    """
    if ":" not in descriptor:
        raise DescriptorError(f"Descriptor {descriptor!r} has no family prefix")
    family, body = descriptor.split(":", 1)
    family = family.strip().lower()
    logger.debug(f"Parsing descriptor family={family} body={body}")

    match family:
        case "torus":
            params = _params(body)
            n, m = _int(params, "n", descriptor), _int(params, "m", descriptor)
            return _from_cayley(descriptor, elongated_torus(n, m))
        case "box":
            return _from_block(descriptor, box_graph(*_ints(body, descriptor)))
        case "grid":
            if "=" in body:
                n = _int(_params(body), "n", descriptor)
                return _from_block(descriptor, grid_graph(n, n))
            return _from_block(descriptor, grid_graph(*_ints(body, descriptor)))
        case "abelian":
            sections = dict(
                part.split("=", 1) for part in body.split(";") if "=" in part
            )
            if "mods" not in sections or "gens" not in sections:
                raise DescriptorError(f"Descriptor {descriptor!r} needs mods= and gens=")
            group = AbelianGroup(_ints(sections["mods"], descriptor))
            gens = [_ints(g, descriptor) for g in _TUPLE.findall(sections["gens"])]
            if not gens:
                raise DescriptorError(f"Descriptor {descriptor!r} lists no generators")
            return _from_cayley(descriptor, cayley_graph(group, gens))
        case "heisenberg":
            return _from_cayley(
                descriptor, heisenberg_cayley(_int(_params(body), "n", descriptor))
            )
        case "cycle":
            n = _int(_params(body), "n", descriptor)
            return _from_cayley(descriptor, cayley_graph(AbelianGroup((n,)), [(1,)]))
        case "path":
            n = _int(_params(body), "n", descriptor)
            edges = np.stack([np.arange(n - 1), np.arange(1, n)], axis=1)
            return FamilyGraph(descriptor, build_graph(n, edges))
        case "complete":
            n = _int(_params(body), "n", descriptor)
            i, j = np.triu_indices(n, k=1)
            return FamilyGraph(
                descriptor, build_graph(n, np.stack([i, j], axis=1)), transitive=True
            )
        case "json":
            path = Path(body.strip())
            if not path.exists():
                raise DescriptorError(f"Graph file {path} does not exist")
            return FamilyGraph(descriptor, load_graph(path))
        case _:
            raise DescriptorError(f"Unknown graph family {family!r} in {descriptor!r}")


def write_family(family: FamilyGraph, path: Path | str) -> Path | None:
    """
    Write the graph JSON to ``path`` and, when coordinates are known, a
    ``<stem>.coords.json`` sidecar next to it. Returns the sidecar path.
    """
    path = Path(path)
    path.write_text(graph_to_json(family.graph))
    logger.info(f"Wrote {family.label} to {path}")
    if family.coordinates is None:
        return None

    sidecar = path.with_name(f"{path.stem}.coords.json")
    sidecar.write_text(
        CoordinateSidecar(
            family=family.label,
            coordinates=np.asarray(family.coordinates).tolist(),
            transitive=family.transitive,
        ).model_dump_json()
    )
    return sidecar
