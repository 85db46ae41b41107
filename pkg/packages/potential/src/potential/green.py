import logging
from functools import cached_property

import numpy as np
import scipy.linalg
from conf import get_dense_solver_limit

from potential.dirichlet import DirichletSystem
from potential.models import FactorizationError

logger = logging.getLogger(__name__)


class GreenOperator:
    """
    The Green function 𝐆_B(u, v) = 1(u, v ∉ B)/deg(v) Σ_n P_B^n(u, v).

    On the interior it is the inverse of L_II, so it is symmetric and
    positive definite. ``matrix`` is indexed by the interior numbering of
    the system; ``__call__`` takes vertices and returns 0 on B.
    """

    def __init__(self, system: DirichletSystem):
        self.system = system

    @cached_property
    def matrix(self) -> np.ndarray:
        n = self.system.interior_size
        if n > get_dense_solver_limit():
            logger.warning(f"Building a dense {n}x{n} Green matrix above the dense solver limit")
        matrix = self.system.solve(np.eye(n))
        matrix = (matrix + matrix.T) / 2
        matrix.flags.writeable = False
        return matrix

    @cached_property
    def factor(self) -> np.ndarray:
        """Lower-triangular L with L Lᵀ = 𝐆_B on the interior."""
        if self.system.interior_size == 0:
            return np.zeros((0, 0))
        try:
            factor = scipy.linalg.cholesky(self.matrix, lower=True)
        except scipy.linalg.LinAlgError as e:
            raise FactorizationError(f"Green matrix is not positive definite: {e}") from e
        factor.flags.writeable = False
        return factor

    def __call__(self, u: int, v: int) -> float:
        i, j = self.system.position[u], self.system.position[v]
        if i < 0 or j < 0:
            return 0.0
        return float(self.matrix[i, j])

    def full(self) -> np.ndarray:
        """𝐆_B as a |V|×|V| matrix, zero on rows and columns of B."""
        n = self.system.graph.vertex_count
        out = np.zeros((n, n))
        interior = self.system.interior
        out[np.ix_(interior, interior)] = self.matrix
        return out

    def apply(self, f: np.ndarray) -> np.ndarray:
        """(𝐆_B f)(u) = Σ_v 𝐆_B(u, v) f(v), as a vector over V."""
        f = np.asarray(f, dtype=np.float64)
        return self.system.extend(self.system.solve(f[self.system.interior]))

    def __repr__(self) -> str:
        return f"GreenOperator(interior={self.system.interior_size})"


def green_matrix(system: DirichletSystem) -> GreenOperator:
    """Green operator of the system, with the dense matrix built up front
    when the interior is within the dense solver limit.
    """
    green = GreenOperator(system)
    if system.dense:
        _ = green.matrix
    return green


def _killed_walk(system: DirichletSystem) -> np.ndarray:
    """P_B restricted to the interior, dense."""
    G = system.graph
    degree = G.degree[system.interior].astype(np.float64)
    block = G.adjacency_matrix[system.interior][:, system.interior].toarray()
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(degree[:, None] > 0, block / degree[:, None], 0.0)


def green_series(system: DirichletSystem, steps: int) -> np.ndarray:
    """Σ_{n ≤ steps} P_B^n D^{-1} on the interior: the truncated series for 𝐆_B."""
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    P = _killed_walk(system)
    term = np.eye(system.interior_size)
    total = term.copy()
    for _ in range(steps):
        term = term @ P
        total += term
    return total / system.graph.degree[system.interior][None, :]


def heat_kernel(system: DirichletSystem, u: int, v: int, steps: int) -> np.ndarray:
    """P_B^n(u, v) for n = 0..steps; identically zero if u or v is on B."""
    out = np.zeros(steps + 1)
    i, j = system.position[u], system.position[v]
    if i < 0 or j < 0:
        return out
    P = _killed_walk(system)
    row = np.zeros(system.interior_size)
    row[i] = 1.0
    for n in range(steps + 1):
        out[n] = row[j]
        row = row @ P
    return out
