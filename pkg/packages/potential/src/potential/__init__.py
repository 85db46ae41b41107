from potential.conductance import (
    WALK_STREAM,
    effective_conductance,
    escape_probabilities,
    harmonic_potential,
    hitting_conductance,
    mc_escape_conductance,
)
from potential.dirichlet import (
    DirichletSystem,
    boundary_ring,
    centre_vertex,
    harmonic_extension,
    laplacian,
)
from potential.gff import (
    GFF_STREAM,
    GFFSample,
    RandomEnvironment,
    compare_bernoulli_gff,
    gff_density_check,
    gff_hamiltonian,
    gff_laplace_check,
    random_environment,
    sample_gff,
    sample_gff_batch,
    verify_gff_bound,
    witness_identity_check,
)
from potential.green import GreenOperator, green_matrix, green_series, heat_kernel
from potential.models import (
    ComparisonReport,
    EscapeEstimate,
    FactorizationError,
    GffBoundReport,
    LaplaceCheck,
    PotentialError,
    SingularSystemError,
)

__all__ = [
    "GFF_STREAM",
    "WALK_STREAM",
    "ComparisonReport",
    "DirichletSystem",
    "EscapeEstimate",
    "FactorizationError",
    "GFFSample",
    "GffBoundReport",
    "GreenOperator",
    "LaplaceCheck",
    "PotentialError",
    "RandomEnvironment",
    "SingularSystemError",
    "boundary_ring",
    "centre_vertex",
    "compare_bernoulli_gff",
    "effective_conductance",
    "escape_probabilities",
    "gff_density_check",
    "gff_hamiltonian",
    "gff_laplace_check",
    "green_matrix",
    "green_series",
    "harmonic_extension",
    "harmonic_potential",
    "heat_kernel",
    "hitting_conductance",
    "laplacian",
    "mc_escape_conductance",
    "random_environment",
    "sample_gff",
    "sample_gff_batch",
    "verify_gff_bound",
    "witness_identity_check",
]
