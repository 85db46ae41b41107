from pydantic import BaseModel, Field, model_validator


class IsoperimetryError(Exception):
    """Base class for errors raised by growth and isoperimetry computations."""

    pass


class EnumerationLimitError(IsoperimetryError):
    """Raised when an exhaustive subset enumeration would exceed the
    configured vertex limit.
    """

    pass


class DiameterTooSmallError(IsoperimetryError):
    """Raised when no geodesic of the requested length leaves a vertex."""

    pass


class GrowthProfile(BaseModel):
    """Ball sizes |B(o, n)| for n = 0..diam around an origin vertex."""

    origin: int
    sizes: list[int]

    @model_validator(mode="after")
    def _check_sizes(self) -> "GrowthProfile":
        if not self.sizes or self.sizes[0] != 1:
            raise ValueError("A growth profile starts with |B(o, 0)| = 1")
        if any(b < a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("Ball sizes must be weakly increasing")
        return self

    @property
    def diameter(self) -> int:
        return len(self.sizes) - 1

    @property
    def vertex_count(self) -> int:
        return self.sizes[-1]

    def ball(self, n: int) -> int:
        return self.sizes[min(n, self.diameter)]


class IsoWitness(BaseModel):
    """
    A vertex set with its edge boundary and isoperimetric ratio
    |∂_E A| / s^{(d−1)/d}, where s is min{|A|, |V ∖ A|} for profiles and
    |A| itself for sets kept away from a boundary set.
    """

    members: list[int]
    boundary: int
    ratio: float
    d: float

    @property
    def size(self) -> int:
        return len(self.members)


class IsoProfile(BaseModel):
    """
    Exact minimum edge boundary for each set size, with the lowest-index
    minimizer as witness. With ``connected_only`` the minimum is over sets
    inducing a connected subgraph, which is an upper bound on the true one.
    """

    vertex_count: int
    min_boundary: dict[int, int]
    witnesses: dict[int, list[int]]
    connected_only: bool = False

    def min_ratio(self, d: float) -> IsoWitness:
        exponent = (d - 1) / d
        best = min(self.min_boundary, key=lambda s: (self.min_boundary[s] / s**exponent, s))
        return IsoWitness(
            members=self.witnesses[best],
            boundary=self.min_boundary[best],
            ratio=self.min_boundary[best] / best**exponent,
            d=d,
        )


class BoundaryIsoReport(BaseModel):
    """Smallest |∂_E K| / |K|^{(d−1)/d} over nonempty K avoiding B, against c."""

    witness: IsoWitness
    c: float
    holds: bool


class SparseBoundaryReport(BaseModel):
    """
    Outer vertex boundary of a set against (1−ρ)|A|/(6r).

    ``hypothesis_ok`` says whether |A ∩ B(x, r)| ≤ ρ|B(x, r)| for every x;
    when it fails ``dense_centre`` is the lowest x where it does.
    """

    outer_boundary: int
    bound: float
    hypothesis_ok: bool
    dense_centre: int | None = None
    conclusion_ok: bool

    @property
    def holds(self) -> bool:
        return not self.hypothesis_ok or self.conclusion_ok


class SparseSweepReport(BaseModel):
    sets_checked: int
    hypothesis_sets: int
    violations: int
    worst_gap: float | None = None


class NetCover(BaseModel):
    """An m-separated subset X of A whose 2m-balls cover A."""

    centres: list[int]
    radius: int = Field(ge=0)
    covered: bool
    disjoint: bool


class BallPacking(BaseModel):
    """Disjoint radius-m balls centred on a geodesic from v, all inside B(v, n)."""

    centres: list[int]
    radius: int = Field(ge=0)
    bound: float
    disjoint: bool
    contained: bool

    @property
    def count(self) -> int:
        return len(self.centres)
