"""
The ghost field: a random vertex set 𝒢 containing each vertex
independently with probability 1 − e^{−h}, drawn independently of the
percolation configuration. Conditionally on K_A,
P(A ↮ 𝒢 | K_A) = e^{−h|K_A|}.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np
from conf import get_mc_sigma
from graphs import Graph

from percolation.clusters import clusters
from percolation.models import GhostIdentityReport, GhostTailReport, McEstimate
from percolation.pool import Scratch, map_trials
from percolation.sampling import GHOST_STREAM, sample_config, trial_rng

logger = logging.getLogger(__name__)

# Lower-tail rate: P(|𝒢| ≤ h|V|/2) ≤ exp(−GHOST_TAIL_RATE · h|V|) for h ≤ 1.
GHOST_TAIL_RATE = (math.e - 2) ** 2 / (8 * (math.e - 1) ** 2)


class GhostField:
    __slots__ = ("mask", "h", "seed", "trial")

    def __init__(self, mask: np.ndarray, h: float, seed: int, trial: int = 0):
        self.mask = np.array(mask, dtype=bool)
        self.mask.flags.writeable = False
        self.h = float(h)
        self.seed = int(seed)
        self.trial = int(trial)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __repr__(self) -> str:
        return f"GhostField(h={self.h}, size={self.size})"


def _check_intensity(h: float) -> None:
    if h < 0:
        raise ValueError(f"Ghost intensity must be nonnegative, got {h}")


def ghost_field(G: Graph, h: float, seed: int, trial: int = 0) -> GhostField:
    _check_intensity(h)
    uniforms = trial_rng(seed, trial, GHOST_STREAM).random(G.vertex_count)
    return GhostField(uniforms < -math.expm1(-h), h, seed, trial)


def _cluster_hull(roots: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Membership mask of K_A, the union of the clusters meeting A."""
    return np.isin(roots, roots[A])


def ghost_connect(
    G: Graph, p: float, h: float, A: Iterable[int], trials: int, seed: int
) -> McEstimate:
    """P_{p,h}(A ↔ 𝒢)."""
    _check_intensity(h)
    A = np.fromiter(A, dtype=np.int64)

    def trial(t: int, scratch: Scratch) -> float:
        forest = clusters(G, sample_config(G, p, seed, t), scratch)
        ghost = ghost_field(G, h, seed, t)
        return float((_cluster_hull(forest.roots, A) & ghost.mask).any())

    hits = map_trials(G.vertex_count, trials, trial)
    return McEstimate.from_counts(int(hits.sum()), trials, seed)


def ghost_avoidance(G: Graph, h: float, A: Iterable[int], trials: int, seed: int) -> McEstimate:
    """P(A ∩ 𝒢 = ∅), which equals e^{−h|A|}."""
    _check_intensity(h)
    A = np.fromiter(A, dtype=np.int64)
    misses = sum(not ghost_field(G, h, seed, t).mask[A].any() for t in range(trials))
    return McEstimate.from_counts(misses, trials, seed)


def ghost_lower_tail(G: Graph, h: float, trials: int, seed: int) -> GhostTailReport:
    """P(|𝒢| ≤ h|V|/2) against exp(−a h|V|)."""
    _check_intensity(h)
    if h > 1:
        logger.warning(f"Lower-tail bound is stated for h <= 1, got h={h}")
    n = G.vertex_count
    small = sum(ghost_field(G, h, seed, t).size <= h * n / 2 for t in range(trials))
    empirical = McEstimate.from_counts(small, trials, seed)
    bound = math.exp(-GHOST_TAIL_RATE * h * n)
    holds = empirical.estimate <= bound + get_mc_sigma() * math.sqrt(max(bound * (1 - bound), 1 / trials) / trials)
    return GhostTailReport(h=h, vertex_count=n, empirical=empirical, bound=bound, holds=holds)


def ghost_identity_check(
    G: Graph, p: float, h: float, A: Iterable[int], trials: int, seed: int
) -> GhostIdentityReport:
    """E[e^{−h|K_A|}] against P(A ↮ 𝒢) on the same configurations."""
    _check_intensity(h)
    A = np.fromiter(A, dtype=np.int64)

    def trial(t: int, scratch: Scratch) -> float:
        forest = clusters(G, sample_config(G, p, seed, t), scratch)
        hull = _cluster_hull(forest.roots, A)
        ghost = ghost_field(G, h, seed, t)
        # sign carries the avoidance indicator, magnitude the Laplace term
        weight = math.exp(-h * int(hull.sum()))
        return weight if not (hull & ghost.mask).any() else -weight

    values = map_trials(G.vertex_count, trials, trial)
    laplace = np.abs(values)
    avoid = McEstimate.from_counts(int((values > 0).sum()), trials, seed)
    laplace_mean = float(laplace.mean())
    laplace_stderr = float(laplace.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    margin = get_mc_sigma() * math.hypot(laplace_stderr, avoid.stderr)
    return GhostIdentityReport(
        laplace=laplace_mean,
        laplace_stderr=laplace_stderr,
        avoid=avoid,
        holds=abs(laplace_mean - avoid.estimate) <= margin + 1e-12,
    )
