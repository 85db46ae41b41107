"""
The Dirichlet problem on a graph with boundary B.

The interior block L_II of the graph Laplacian L = D − A (degrees taken in
the whole graph) is symmetric positive definite as soon as every interior
component touches B. Solves use a dense Cholesky factorization up to
``get_dense_solver_limit()`` interior vertices and conjugate gradients
above it.
"""

import logging
from collections.abc import Iterable
from functools import cached_property

import numpy as np
import scipy.linalg
import scipy.sparse
from conf import get_dense_solver_limit, get_solver_tolerance
from graphs import BoxGraph, Graph, VertexSet, connected_components, vertex_mask
from scipy.sparse.linalg import cg

from potential.models import FactorizationError, SingularSystemError

logger = logging.getLogger(__name__)


def laplacian(G: Graph) -> scipy.sparse.csr_array:
    """D − A in CSR form."""
    return (scipy.sparse.diags_array(G.degree.astype(np.float64)) - G.adjacency_matrix).tocsr()


class DirichletSystem:
    """A graph, a nonempty boundary B, and the dense numbering of V ∖ B."""

    def __init__(self, G: Graph, boundary: VertexSet | Iterable[int]):
        mask = vertex_mask(G, boundary)
        if not mask.any():
            raise SingularSystemError("The boundary set is empty")
        _, labels = connected_components(G)
        grounded = np.isin(labels, labels[mask])
        if not grounded.all():
            raise SingularSystemError(
                f"{int((~grounded).sum())} vertices lie in components that miss the boundary"
            )
        self.graph = G
        self.boundary = VertexSet(mask)
        self.interior = np.flatnonzero(~mask)
        self.position = np.full(G.vertex_count, -1, dtype=np.int64)
        self.position[self.interior] = np.arange(len(self.interior))

    @property
    def interior_size(self) -> int:
        return len(self.interior)

    @property
    def dense(self) -> bool:
        return self.interior_size <= get_dense_solver_limit()

    @cached_property
    def interior_laplacian(self) -> scipy.sparse.csr_array:
        L = laplacian(self.graph)
        return L[self.interior][:, self.interior].tocsr()

    @cached_property
    def _cholesky(self) -> tuple[np.ndarray, bool]:
        try:
            return scipy.linalg.cho_factor(self.interior_laplacian.toarray(), lower=True)
        except scipy.linalg.LinAlgError as e:
            raise FactorizationError(f"Cholesky factorization of L_II failed: {e}") from e

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """L_II x = rhs for a vector or a matrix of right-hand sides."""
        rhs = np.asarray(rhs, dtype=np.float64)
        if rhs.shape[0] != self.interior_size:
            raise ValueError(f"Right-hand side has {rhs.shape[0]} rows, interior has {self.interior_size}")
        if self.interior_size == 0:
            return np.zeros_like(rhs)
        if self.dense:
            return scipy.linalg.cho_solve(self._cholesky, rhs)
        if rhs.ndim == 1:
            return self._iterate(rhs)
        return np.stack([self._iterate(column) for column in rhs.T], axis=1)

    def _iterate(self, rhs: np.ndarray) -> np.ndarray:
        tolerance = get_solver_tolerance()
        x, info = cg(self.interior_laplacian, rhs, rtol=tolerance, atol=0.0, maxiter=10 * self.interior_size)
        if info != 0:
            raise FactorizationError(f"Conjugate gradients stopped with info={info}")
        return x

    def extend(self, interior_values: np.ndarray, boundary_values: float | np.ndarray = 0.0) -> np.ndarray:
        """A vector over V from its interior part and the values on B."""
        full = np.zeros(self.graph.vertex_count, dtype=np.float64)
        full[self.boundary.mask] = boundary_values
        full[self.interior] = interior_values
        return full

    def __repr__(self) -> str:
        return f"DirichletSystem({self.graph}, boundary={self.boundary.size})"


def harmonic_extension(G: Graph, values: np.ndarray, boundary: VertexSet | Iterable[int]) -> np.ndarray:
    """The function equal to ``values`` on B and harmonic on V ∖ B."""
    system = DirichletSystem(G, boundary)
    values = np.asarray(values, dtype=np.float64)
    fixed = np.where(system.boundary.mask, values, 0.0)
    rhs = (G.adjacency_matrix @ fixed)[system.interior]
    return system.extend(system.solve(rhs), values[system.boundary.mask])


def boundary_ring(box: BoxGraph) -> VertexSet:
    """The vertices on the faces of a box."""
    return VertexSet.from_members(box.graph.vertex_count, box.outer_ring())


def centre_vertex(box: BoxGraph) -> int:
    return box.centre()
