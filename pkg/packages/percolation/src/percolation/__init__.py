from percolation.clusters import (
    ClusterForest,
    ConnectEvent,
    Event,
    GiantEvent,
    SetConnectEvent,
    clusters,
    connect_event,
    giant_event,
    set_connect_event,
)
from percolation.couplings import (
    EdgeMap,
    QuotientMap,
    changing_generators_probability,
    containment_violations,
    embedding_containment_check,
    geodesic_edge_map,
    quotient_containment_check,
    quotient_coupling,
    quotient_dominance_check,
    rough_embedding_coupling,
    union_containment_check,
)
from percolation.crossing import (
    blocked_columns,
    blocked_cycle_count,
    column_neighbourhood_size,
    crossing_probability,
    expected_blocked_cycles,
    four_sides_probability,
)
from percolation.estimators import (
    chi_square_pvalue,
    cluster_tail_check,
    connection_lower_bound,
    estimate_pc,
    event_counts,
    mc_event,
    mc_giant,
    set_to_set,
    theta_power_check,
    two_point,
)
from percolation.ghost import (
    GHOST_TAIL_RATE,
    GhostField,
    ghost_avoidance,
    ghost_connect,
    ghost_field,
    ghost_identity_check,
    ghost_lower_tail,
)
from percolation.models import McEstimate, PcEstimate
from percolation.pool import ScratchPool, create_scratch_pool, map_trials
from percolation.sampling import (
    PercSample,
    sample_config,
    sample_inhomogeneous,
    trial_rng,
    union_coupling,
)

__all__ = [
    "GHOST_TAIL_RATE",
    "ClusterForest",
    "ConnectEvent",
    "EdgeMap",
    "Event",
    "GhostField",
    "GiantEvent",
    "McEstimate",
    "PcEstimate",
    "PercSample",
    "QuotientMap",
    "ScratchPool",
    "SetConnectEvent",
    "blocked_columns",
    "blocked_cycle_count",
    "changing_generators_probability",
    "chi_square_pvalue",
    "cluster_tail_check",
    "clusters",
    "column_neighbourhood_size",
    "connect_event",
    "connection_lower_bound",
    "containment_violations",
    "create_scratch_pool",
    "crossing_probability",
    "embedding_containment_check",
    "estimate_pc",
    "event_counts",
    "expected_blocked_cycles",
    "four_sides_probability",
    "geodesic_edge_map",
    "ghost_avoidance",
    "ghost_connect",
    "ghost_field",
    "ghost_identity_check",
    "ghost_lower_tail",
    "giant_event",
    "map_trials",
    "mc_event",
    "mc_giant",
    "quotient_containment_check",
    "quotient_coupling",
    "quotient_dominance_check",
    "rough_embedding_coupling",
    "sample_config",
    "sample_inhomogeneous",
    "set_connect_event",
    "set_to_set",
    "theta_power_check",
    "trial_rng",
    "two_point",
    "union_containment_check",
    "union_coupling",
]
