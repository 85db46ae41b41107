from isoperimetry.covering import disjoint_balls_on_geodesic, net_cover
from isoperimetry.growth import (
    csc_bound,
    growth_profile,
    relative_growth_check,
    scale_detect,
    sparse_csc_bound,
    sumset_growth,
    two_definitions_constants,
)
from isoperimetry.models import (
    BallPacking,
    BoundaryIsoReport,
    DiameterTooSmallError,
    EnumerationLimitError,
    GrowthProfile,
    IsoperimetryError,
    IsoProfile,
    IsoWitness,
    NetCover,
    SparseBoundaryReport,
    SparseSweepReport,
)
from isoperimetry.profile import (
    boundary_iso_check,
    exhaustive_iso_profile,
    iso_ratio,
    local_search_iso,
)
from isoperimetry.sparse import check_sparse_boundary, dense_centres, sparse_iso_sweep

__all__ = [
    "BallPacking",
    "BoundaryIsoReport",
    "DiameterTooSmallError",
    "EnumerationLimitError",
    "GrowthProfile",
    "IsoProfile",
    "IsoWitness",
    "IsoperimetryError",
    "NetCover",
    "SparseBoundaryReport",
    "SparseSweepReport",
    "boundary_iso_check",
    "check_sparse_boundary",
    "csc_bound",
    "dense_centres",
    "disjoint_balls_on_geodesic",
    "exhaustive_iso_profile",
    "growth_profile",
    "iso_ratio",
    "local_search_iso",
    "net_cover",
    "relative_growth_check",
    "scale_detect",
    "sparse_csc_bound",
    "sparse_iso_sweep",
    "sumset_growth",
    "two_definitions_constants",
]
