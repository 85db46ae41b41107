"""
Gaussian free field with Dirichlet boundary conditions and the percolation
environment it induces.

The field is the centred Gaussian vector on V ∖ B with covariance 𝐆_B,
extended by zero on B. Its density on R^{V∖B} is proportional to
exp(−½ Σ_{xy ∈ E} (φ_x − φ_y)²), each edge counted once; this is the
energy ``gff_hamiltonian`` returns.
"""

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
from conf import get_mc_sigma
from graphs import Graph, VertexSet, vertex_mask
from percolation import (
    clusters,
    map_trials,
    sample_inhomogeneous,
    set_connect_event,
    set_to_set,
    trial_rng,
)
from percolation.pool import Scratch
from percolation.sampling import ENVIRONMENT_STREAM
from scipy import stats

from potential.conductance import effective_conductance, escape_probabilities
from potential.dirichlet import DirichletSystem
from potential.green import GreenOperator, green_matrix
from potential.models import ComparisonReport, GffBoundReport, LaplaceCheck

logger = logging.getLogger(__name__)

GFF_STREAM = 5


class GFFSample:
    """One field φ over V, zero on the boundary."""

    __slots__ = ("values", "seed", "trial", "graph")

    def __init__(self, values: np.ndarray, graph: Graph, seed: int, trial: int = 0):
        self.values = np.array(values, dtype=np.float64)
        self.values.flags.writeable = False
        self.graph = graph
        self.seed = int(seed)
        self.trial = int(trial)

    def __repr__(self) -> str:
        return f"GFFSample(max={self.values.max():.3f}, min={self.values.min():.3f}, seed={self.seed})"


class RandomEnvironment:
    """Edge retention probabilities p(φ)_e = 1 − exp(−2 (φ_x+1)_+ (φ_y+1)_+)."""

    __slots__ = ("probabilities",)

    def __init__(self, probabilities: np.ndarray):
        self.probabilities = np.array(probabilities, dtype=np.float64)
        self.probabilities.flags.writeable = False

    def __len__(self) -> int:
        return len(self.probabilities)


def _incidence_sum(system: DirichletSystem, weights: np.ndarray) -> np.ndarray:
    """Mᵀ w for the edge-by-interior incidence matrix M, so that MᵀM = L_II."""
    G = system.graph
    n = system.interior_size
    pu = system.position[G.edges[:, 0]]
    pv = system.position[G.edges[:, 1]]
    out = np.bincount(pu[pu >= 0], weights=weights[pu >= 0], minlength=n)
    out -= np.bincount(pv[pv >= 0], weights=weights[pv >= 0], minlength=n)
    return out


def sample_gff(green: GreenOperator, seed: int, trial: int = 0) -> GFFSample:
    """
    φ = L z with L Lᵀ = 𝐆_B and z standard normal. Above the dense solver
    limit φ = L_II^{-1} Mᵀ ξ with ξ one standard normal per edge, which has
    the same covariance.
    """
    system = green.system
    values = np.zeros(system.graph.vertex_count)
    if system.interior_size:
        rng = trial_rng(seed, trial, GFF_STREAM)
        if system.dense:
            values[system.interior] = green.factor @ rng.standard_normal(system.interior_size)
        else:
            xi = rng.standard_normal(system.graph.edge_count)
            values[system.interior] = system.solve(_incidence_sum(system, xi))
    return GFFSample(values, system.graph, seed, trial)


def sample_gff_batch(green: GreenOperator, count: int, seed: int) -> np.ndarray:
    """``count`` fields as rows; row i equals ``sample_gff(green, seed, i)``."""
    return np.stack([sample_gff(green, seed, i).values for i in range(count)])


def random_environment(phi: GFFSample) -> RandomEnvironment:
    shifted = np.maximum(phi.values + 1.0, 0.0)
    edges = phi.graph.edges
    return RandomEnvironment(-np.expm1(-2.0 * shifted[edges[:, 0]] * shifted[edges[:, 1]]))


def gff_hamiltonian(G: Graph, phi: np.ndarray | GFFSample) -> float:
    """−½ Σ_{xy ∈ E} (φ_x − φ_y)², each edge once."""
    values = phi.values if isinstance(phi, GFFSample) else np.asarray(phi, dtype=np.float64)
    differences = values[G.edges[:, 0]] - values[G.edges[:, 1]]
    return float(-0.5 * np.dot(differences, differences))


def gff_density_check(green: GreenOperator, samples: int, seed: int) -> float:
    """
    Largest deviation between log-density ratios of 𝒩(0, 𝐆_B) and
    Hamiltonian differences, over sampled fields taken against the first.
    """
    system = green.system
    if system.interior_size == 0:
        return 0.0
    fields = sample_gff_batch(green, samples, seed)
    law = stats.multivariate_normal(mean=np.zeros(system.interior_size), cov=green.matrix)
    log_density = np.atleast_1d(law.logpdf(fields[:, system.interior]))
    energy = np.array([gff_hamiltonian(system.graph, f) for f in fields])
    return float(np.abs((log_density - log_density[0]) - (energy - energy[0])).max())


def gff_laplace_check(
    green: GreenOperator, t: np.ndarray, samples: int, seed: int
) -> LaplaceCheck:
    """E[exp(−Σ_x t_x (1+φ_x))] = exp(−Σ t + ½ tᵀ 𝐆_B t) for t supported off B."""
    system = green.system
    t = np.asarray(t, dtype=np.float64)
    if t.shape != (system.graph.vertex_count,):
        raise ValueError("t must have one entry per vertex")
    if (t[system.boundary.mask] != 0).any():
        raise ValueError("t must vanish on the boundary")
    ti = t[system.interior]
    closed = math.exp(-t.sum() + 0.5 * ti @ green.matrix @ ti)
    fields = sample_gff_batch(green, samples, seed)
    values = np.exp(-(fields + 1.0) @ t)
    empirical = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    holds = abs(empirical - closed) <= get_mc_sigma() * stderr + 1e-12
    return LaplaceCheck(closed_form=closed, empirical=empirical, stderr=stderr, holds=holds)


def _environment_connections(
    G: Graph,
    green: GreenOperator,
    A: np.ndarray,
    B: np.ndarray,
    gff_samples: int,
    perc_trials: int,
    seed: int,
) -> np.ndarray:
    """Per-field frequency of A ↔ B under P_{p(φ)}."""
    event = set_connect_event(A, B)

    def outer(i: int, scratch: Scratch) -> float:
        environment = random_environment(sample_gff(green, seed, i))
        hits = 0
        for j in range(perc_trials):
            sample = sample_inhomogeneous(
                G, environment.probabilities, seed, i * perc_trials + j, ENVIRONMENT_STREAM
            )
            hits += event(clusters(G, sample, scratch))
        return hits / perc_trials

    return map_trials(G.vertex_count, gff_samples, outer)


def verify_gff_bound(
    G: Graph,
    B_boundary: VertexSet | Iterable[int],
    A: VertexSet | Iterable[int],
    gff_samples: int,
    perc_trials: int,
    seed: int,
) -> GffBoundReport:
    """
    Nested Monte Carlo for E^GFF_B[P_{p(φ)}(A ↔ B)] ≥ 1 − exp(−C_eff(A ↔ B)/2).
    """
    if gff_samples < 2 or perc_trials < 1:
        raise ValueError("Need at least two GFF samples and one percolation trial")
    b = vertex_mask(G, B_boundary)
    a = vertex_mask(G, A)
    conductance = effective_conductance(G, a, b)
    bound = -math.expm1(-conductance / 2)
    green = green_matrix(DirichletSystem(G, VertexSet(b)))
    means = _environment_connections(
        G, green, np.flatnonzero(a), np.flatnonzero(b), gff_samples, perc_trials, seed
    )
    estimate = float(means.mean())
    stderr_outer = float(means.std(ddof=1) / math.sqrt(gff_samples))
    stderr_inner = float(math.sqrt((means * (1 - means)).mean() / perc_trials / gff_samples))
    total = math.hypot(stderr_outer, stderr_inner)
    holds = estimate >= bound - 2 * total
    if not holds:
        logger.warning(f"GFF bound failed: estimate {estimate:.4f} < bound {bound:.4f} − 2·{total:.4f}")
    return GffBoundReport(
        conductance=conductance,
        bound=bound,
        estimate=estimate,
        stderr_outer=stderr_outer,
        stderr_inner=stderr_inner,
        total_stderr=total,
        gff_samples=gff_samples,
        perc_trials=perc_trials,
        holds=holds,
    )


def compare_bernoulli_gff(
    G: Graph,
    A: Sequence[int],
    B: Sequence[int],
    p: float,
    gff_samples: int,
    trials: int,
    seed: int,
) -> ComparisonReport:
    """Bernoulli(p) connection probability of A and B next to the GFF-environment one,
    with the field pinned to zero on B.
    """
    a = np.flatnonzero(vertex_mask(G, A))
    b = np.flatnonzero(vertex_mask(G, B))
    bernoulli = set_to_set(G, p, a, b, trials, seed)
    green = green_matrix(DirichletSystem(G, b))
    means = _environment_connections(G, green, a, b, gff_samples, trials, seed)
    stderr = float(means.std(ddof=1) / math.sqrt(gff_samples)) if gff_samples > 1 else 0.0
    return ComparisonReport(p=p, bernoulli=bernoulli, gff=float(means.mean()), gff_stderr=stderr)


def witness_identity_check(
    green: GreenOperator,
    A: VertexSet | Iterable[int],
    B: VertexSet | Iterable[int] | None = None,
) -> float:
    """
    With t_x = deg(x) P_x(τ_B < τ_A^+), check Σ_{y∈A} t_y 𝐆_B(x, y) = 1 for
    every x in A and Σ_x t_x = C_eff(A ↔ B). Returns the largest deviation.
    """
    system = green.system
    G = system.graph
    a = vertex_mask(G, A)
    if B is not None and not np.array_equal(vertex_mask(G, B), system.boundary.mask):
        raise ValueError("B must be the boundary of the Green operator")
    b = system.boundary.mask
    t = escape_probabilities(G, a, b)
    rows = system.position[np.flatnonzero(a)]
    if (rows < 0).any():
        raise ValueError("A must lie off the boundary")
    G_AA = green.matrix[np.ix_(rows, rows)]
    deviation = float(np.abs(G_AA @ t - 1.0).max())
    conductance = effective_conductance(G, a, b)
    return max(deviation, abs(float(t.sum()) - conductance))
