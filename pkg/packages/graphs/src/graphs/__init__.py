from graphs.cayley import (
    BoxGraph,
    CayleyGraph,
    box_graph,
    cayley_graph,
    coset_partition,
    elongated_torus,
    generates,
    generator_power_bound,
    grid_graph,
    heisenberg_cayley,
    is_central,
    quotient_graph,
    word_ball,
    word_lengths,
)
from graphs.core import (
    UNREACHABLE,
    Graph,
    VertexSet,
    Walk,
    ball,
    bfs_distances,
    bfs_parents,
    build_graph,
    connected_components,
    diameter,
    double_cover_walk,
    eccentricity,
    edge_boundary,
    geodesic,
    induced_subgraph,
    is_automorphism,
    is_connected,
    metric_diameter,
    orbit_power_graph,
    vertex_boundary,
    vertex_mask,
)
from graphs.descriptors import FamilyGraph, parse_descriptor, write_family
from graphs.embeddings import (
    GridEmbedding,
    central_box_embedding,
    box_split,
    snake_hamiltonian,
    snake_product_map,
)
from graphs.groups import AbelianGroup, GeneratingSet, GroupElement, HeisenbergGroup

__all__ = [
    "UNREACHABLE",
    "AbelianGroup",
    "BoxGraph",
    "CayleyGraph",
    "FamilyGraph",
    "GeneratingSet",
    "Graph",
    "GridEmbedding",
    "GroupElement",
    "HeisenbergGroup",
    "VertexSet",
    "Walk",
    "ball",
    "bfs_distances",
    "bfs_parents",
    "box_graph",
    "build_graph",
    "cayley_graph",
    "central_box_embedding",
    "connected_components",
    "coset_partition",
    "diameter",
    "double_cover_walk",
    "eccentricity",
    "edge_boundary",
    "elongated_torus",
    "generates",
    "generator_power_bound",
    "geodesic",
    "grid_graph",
    "heisenberg_cayley",
    "induced_subgraph",
    "is_automorphism",
    "is_central",
    "is_connected",
    "box_split",
    "metric_diameter",
    "orbit_power_graph",
    "parse_descriptor",
    "quotient_graph",
    "snake_hamiltonian",
    "snake_product_map",
    "vertex_boundary",
    "vertex_mask",
    "word_ball",
    "word_lengths",
    "write_family",
]
