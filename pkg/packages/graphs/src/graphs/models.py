from pydantic import BaseModel, Field


class GraphError(Exception):
    """Base class for errors raised while building or querying graphs."""

    pass


class VertexOutOfRangeError(GraphError):
    """Raised when a vertex index or edge endpoint is outside [0, vertex_count)."""

    pass


class DisconnectedGraphError(GraphError):
    """Raised by metric queries (diameter, double-cover walk, growth profiles)
    that are only defined on connected graphs.
    """

    pass


class GroupError(Exception):
    """Base class for errors raised while building groups and Cayley graphs."""

    pass


class NotGeneratingError(GroupError):
    """Raised when a generating set does not generate the whole group."""

    pass


class NotCentralError(GroupError):
    """Raised when a subgroup handed to the central box embedding does not
    commute with every group element.
    """

    pass


class NotQuasiconnectedError(GroupError):
    """Raised when the elements of the radius-r word ball lying in a subgroup
    do not generate that subgroup.
    """

    pass


class DescriptorError(ValueError):
    """Raised when a graph-family descriptor string cannot be parsed."""

    pass


class GraphDocument(BaseModel):
    """On-disk JSON form of a graph: ``{"n": int, "edges": [[u, v], ...]}``."""

    n: int = Field(ge=0)
    edges: list[tuple[int, int]] = []


class CoordinateSidecar(BaseModel):
    """Coordinates of each vertex, written next to a graph document."""

    family: str
    coordinates: list[list[int]]
    transitive: bool
