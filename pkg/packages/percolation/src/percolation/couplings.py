"""
Explicit couplings between percolation on two graphs.

Each coupling produces a pair of configurations together with a vertex map
φ such that every open cluster of the first is sent into a single open
cluster of the second. Containment is checked edge by edge: it holds for
the whole sample iff no open edge of the first configuration has endpoints
whose images lie in different clusters of the second.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from conf import get_mc_sigma
from graphs import Graph, bfs_parents, geodesic, quotient_graph

from percolation.clusters import clusters
from percolation.models import ConfigMismatchError, ContainmentReport, DominanceReport
from percolation.pool import Scratch, map_trials
from percolation.sampling import (
    COUPLING_STREAM,
    UNION_STREAM,
    PercSample,
    sample_config,
    trial_rng,
    union_coupling,
)

logger = logging.getLogger(__name__)


def _vertex_map(G1: Graph, G2: Graph, phi: Sequence[int] | np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (G1.vertex_count,):
        raise ConfigMismatchError(
            f"Vertex map must send each of the {G1.vertex_count} vertices somewhere"
        )
    if phi.size and (phi.min() < 0 or phi.max() >= G2.vertex_count):
        raise ConfigMismatchError(f"Vertex map leaves [0, {G2.vertex_count})")
    return phi


def containment_violations(
    G1: Graph, omega1: PercSample, G2: Graph, omega2: PercSample, phi: np.ndarray
) -> int:
    """Open edges of ω1 whose φ-images are in different ω2-clusters."""
    forest = clusters(G2, omega2)
    open_edges = G1.edges[omega1.open]
    ru = forest.roots[phi[open_edges[:, 0]]]
    rv = forest.roots[phi[open_edges[:, 1]]]
    return int(np.count_nonzero(ru != rv))


class QuotientMap:
    """
    The projection G → G/H and, for each edge of G, the quotient edge it
    lands on (−1 when both endpoints share a block).
    """

    def __init__(self, G: Graph, orbit_map: Sequence[int] | np.ndarray):
        self.graph = G
        self.quotient, self.projection = quotient_graph(G, orbit_map)
        pu = self.projection[G.edges[:, 0]]
        pv = self.projection[G.edges[:, 1]]
        self.image = np.asarray(self.quotient.edge_index(pu, pv), dtype=np.int64).reshape(-1)
        crossing = self.image >= 0
        self.preimage_sizes = np.bincount(
            self.image[crossing], minlength=self.quotient.edge_count
        )

    @property
    def max_preimage(self) -> int:
        """Largest number of G-edges over one quotient edge."""
        return int(self.preimage_sizes.max()) if self.quotient.edge_count else 0

    def push(self, sample: PercSample) -> PercSample:
        """η(ē) = 1 iff some preimage edge of ē is open."""
        if sample.edge_count != self.graph.edge_count:
            raise ConfigMismatchError("Sample does not match the covering graph")
        eta = np.zeros(self.quotient.edge_count, dtype=bool)
        eta[self.image[sample.open & (self.image >= 0)]] = True
        bound = 1.0 - (1.0 - sample.p) ** self.max_preimage
        return PercSample(eta, bound, sample.seed, sample.trial)


def quotient_coupling(
    G: Graph,
    orbit_map: Sequence[int] | np.ndarray,
    p: float,
    seed: int,
    trial: int = 0,
    quotient: QuotientMap | None = None,
) -> tuple[PercSample, PercSample]:
    """
    (ω on G, η on G/H). η is edgewise independent, open with probability
    at most 1 − (1−p)^k when each quotient edge has at most k preimages.
    """
    quotient = quotient or QuotientMap(G, orbit_map)
    omega = sample_config(G, p, seed, trial)
    return omega, quotient.push(omega)


class EdgeMap:
    """
    Φ: for each edge of G1 the edge indices of a path in G2, stored in CSR
    form (``indices[indptr[e]:indptr[e+1]]``).
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, target_edge_count: int):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.target_edge_count = target_edge_count
        self.lengths = np.diff(self.indptr)
        self.owner = np.repeat(np.arange(len(self.lengths)), self.lengths)
        self.multiplicity = np.bincount(self.indices, minlength=target_edge_count)

    @classmethod
    def identity(cls, G: Graph) -> "EdgeMap":
        return cls(np.arange(G.edge_count + 1), np.arange(G.edge_count), G.edge_count)

    @property
    def overlap(self) -> int:
        """C = max(max |Φ(e1)|, max number of e1 with e2 ∈ Φ(e1))."""
        longest = int(self.lengths.max()) if len(self.lengths) else 0
        shared = int(self.multiplicity.max()) if len(self.multiplicity) else 0
        return max(longest, shared, 1)

    def __getitem__(self, e: int) -> np.ndarray:
        return self.indices[self.indptr[e] : self.indptr[e + 1]]

    def __len__(self) -> int:
        return len(self.lengths)


def geodesic_edge_map(G1: Graph, G2: Graph, phi: Sequence[int] | np.ndarray) -> EdgeMap:
    """
    Φ(e) for e = {u, v} is the edge set of the BFS-parent geodesic from
    φ(u) to φ(v) in G2, empty when φ(u) = φ(v).

    Raises DisconnectedGraphError when some φ(u), φ(v) are not connected.
    """
    phi = _vertex_map(G1, G2, phi)
    parents: dict[int, np.ndarray] = {}
    pieces: list[np.ndarray] = []
    indptr = np.zeros(G1.edge_count + 1, dtype=np.int64)
    for e, (u, v) in enumerate(G1.edges):
        a, b = int(phi[u]), int(phi[v])
        if a == b:
            path_edges = np.empty(0, dtype=np.int64)
        else:
            if a not in parents:
                parents[a] = bfs_parents(G2, a)
            path = np.asarray(geodesic(G2, a, b, parents[a]), dtype=np.int64)
            path_edges = np.asarray(G2.edge_index(path[:-1], path[1:]), dtype=np.int64)
        pieces.append(path_edges)
        indptr[e + 1] = indptr[e] + len(path_edges)
    indices = np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int64)
    edge_map = EdgeMap(indptr, indices, G2.edge_count)
    logger.debug(f"Geodesic edge map from {G1} into {G2}: overlap {edge_map.overlap}")
    return edge_map


def rough_embedding_coupling(
    G1: Graph,
    G2: Graph,
    phi: Sequence[int] | np.ndarray,
    Phi: EdgeMap,
    q: float,
    seed: int,
    trial: int = 0,
) -> tuple[PercSample, PercSample]:
    """
    Couple (ω1, ω2) through independent Bernoulli(q) bits η(e1, e2) for
    e2 ∈ Φ(e1): ω1(e1) = min over Φ(e1), ω2(e2) = max over the e1 with
    e2 ∈ Φ(e1). An edge with Φ(e1) = ∅ draws its own Bernoulli(q) bit.

    ω1 dominates Bernoulli(q^C) and ω2 is dominated by
    Bernoulli(1 − (1−q)^C), C = ``Phi.overlap``.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    _vertex_map(G1, G2, phi)
    if len(Phi) != G1.edge_count or Phi.target_edge_count != G2.edge_count:
        raise ConfigMismatchError("Edge map does not match the two graphs")

    uniforms = trial_rng(seed, trial, COUPLING_STREAM).random(len(Phi.indices) + G1.edge_count)
    eta = uniforms[: len(Phi.indices)] < q
    private = uniforms[len(Phi.indices) :] < q

    closed = np.bincount(Phi.owner[~eta], minlength=G1.edge_count)
    omega1 = np.where(Phi.lengths == 0, private, closed == 0)
    omega2 = np.zeros(G2.edge_count, dtype=bool)
    omega2[Phi.indices[eta]] = True
    upper = 1.0 - (1.0 - q) ** Phi.overlap
    return PercSample(omega1, q, seed, trial), PercSample(omega2, upper, seed, trial)


def changing_generators_probability(p: float, C: int) -> float:
    """1 − (1 − p^{1/C})^C, the retention probability on the target graph
    obtained by coupling through a rough embedding of overlap C.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if C < 1:
        raise ValueError(f"C must be at least 1, got {C}")
    return 1.0 - (1.0 - p ** (1.0 / C)) ** C


def union_containment_check(
    G: Graph, p1: float, p2: float, samples: int, seed: int
) -> ContainmentReport:
    identity = np.arange(G.vertex_count)
    violations = 0
    first_rate = second_rate = 0.0
    for t in range(samples):
        first, union = union_coupling(G, p1, p2, seed, t)
        violations += int(np.count_nonzero(first.open & ~union.open))
        violations += containment_violations(G, first, G, union, identity)
        first_rate += first.open.mean() if G.edge_count else 0.0
        second_rate += union.open.mean() if G.edge_count else 0.0
    return ContainmentReport(
        kind="union",
        samples=samples,
        violations=violations,
        open_rate_first=first_rate / samples,
        open_rate_second=second_rate / samples,
    )


def quotient_containment_check(
    G: Graph, orbit_map: Sequence[int] | np.ndarray, p: float, samples: int, seed: int
) -> ContainmentReport:
    """π(K_v) ⊆ K_{π(v)}(η) for every v, on every sample."""
    quotient = QuotientMap(G, orbit_map)
    violations = 0
    first_rate = second_rate = 0.0
    for t in range(samples):
        omega, eta = quotient_coupling(G, orbit_map, p, seed, t, quotient=quotient)
        violations += containment_violations(G, omega, quotient.quotient, eta, quotient.projection)
        first_rate += omega.open.mean() if G.edge_count else 0.0
        second_rate += eta.open.mean() if quotient.quotient.edge_count else 0.0
    if violations:
        logger.warning(f"Quotient coupling broke containment {violations} times")
    return ContainmentReport(
        kind="quotient",
        samples=samples,
        violations=violations,
        overlap=max(quotient.max_preimage, 1),
        open_rate_first=first_rate / samples,
        open_rate_second=second_rate / samples,
    )


def embedding_containment_check(
    G1: Graph,
    G2: Graph,
    phi: Sequence[int] | np.ndarray,
    q: float,
    samples: int,
    seed: int,
    Phi: EdgeMap | None = None,
) -> ContainmentReport:
    """φ(K_v(ω1)) ⊆ K_{φ(v)}(ω2) for every v, on every sample."""
    phi = _vertex_map(G1, G2, phi)
    Phi = Phi or geodesic_edge_map(G1, G2, phi)
    violations = 0
    first_rate = second_rate = 0.0
    for t in range(samples):
        omega1, omega2 = rough_embedding_coupling(G1, G2, phi, Phi, q, seed, t)
        violations += containment_violations(G1, omega1, G2, omega2, phi)
        first_rate += omega1.open.mean() if G1.edge_count else 0.0
        second_rate += omega2.open.mean() if G2.edge_count else 0.0
    if violations:
        logger.warning(f"Rough-embedding coupling broke containment {violations} times")
    return ContainmentReport(
        kind="embed",
        samples=samples,
        violations=violations,
        overlap=Phi.overlap,
        open_rate_first=first_rate / samples,
        open_rate_second=second_rate / samples,
    )


def quotient_dominance_check(
    G: Graph,
    orbit_map: Sequence[int] | np.ndarray,
    p: float,
    trials: int,
    seed: int,
    vertex: int = 0,
) -> DominanceReport:
    """
    Compare P(|π(K_v)| ≥ s) under Bernoulli(p) on G with
    P(|K_{π(v)}| ≥ s) under Bernoulli(p) on G/H for every s. The second
    should dominate; the check passes when no projected tail exceeds the
    quotient tail by more than ``get_mc_sigma()`` standard errors.
    """
    quotient = QuotientMap(G, orbit_map)
    Q, projection = quotient.quotient, quotient.projection
    image = int(projection[vertex])

    def projected(t: int, scratch: Scratch) -> float:
        forest = clusters(G, sample_config(G, p, seed, t), scratch)
        return float(len(np.unique(projection[forest.members(vertex)])))

    def direct(t: int, scratch: Scratch) -> float:
        forest = clusters(Q, sample_config(Q, p, seed, t, UNION_STREAM), scratch)
        return float(forest.size_of(image))

    first = map_trials(G.vertex_count, trials, projected)
    second = map_trials(Q.vertex_count, trials, direct)
    sizes = np.arange(1, Q.vertex_count + 1)
    projected_tail = (first[None, :] >= sizes[:, None]).mean(axis=1)
    quotient_tail = (second[None, :] >= sizes[:, None]).mean(axis=1)
    spread = np.sqrt(
        (projected_tail * (1 - projected_tail) + quotient_tail * (1 - quotient_tail)) / trials
    )
    sigma = get_mc_sigma()
    gaps = projected_tail - quotient_tail
    worst = int(np.argmax(gaps - sigma * spread))
    return DominanceReport(
        sizes=sizes.tolist(),
        projected_tail=projected_tail.tolist(),
        quotient_tail=quotient_tail.tolist(),
        worst_gap=float(gaps.max()),
        margin=float(sigma * spread[worst]),
        holds=bool(np.all(gaps <= sigma * spread + 1e-12)),
        trials=trials,
    )


def marginal_bounds_hold(
    rates: np.ndarray, trials: int, lower: float, upper: float, sigma: float | None = None
) -> bool:
    """Whether empirical rates from ``trials`` samples sit in [lower, upper] up to sigma stderrs."""
    sigma = get_mc_sigma() if sigma is None else sigma
    slack = sigma * math.sqrt(0.25 / trials)
    rates = np.asarray(rates, dtype=np.float64)
    return bool(np.all(rates >= lower - slack) and np.all(rates <= upper + slack))
