"""
Bernoulli bond configurations.

Every random draw comes from a Philox generator keyed by ``(seed, stream,
trial)``, so a trial is reproducible on its own and the result of a run
does not depend on how trials are split between workers. Trial ``t`` at
probability p opens edge e iff ``U_e < p`` for the same uniforms U, hence
configurations at different p with the same key are monotonically coupled.
"""

import logging

import numpy as np
from graphs import Graph

logger = logging.getLogger(__name__)

# Independent streams drawn from one seed.
CONFIG_STREAM = 0
UNION_STREAM = 1
COUPLING_STREAM = 2
GHOST_STREAM = 3
ENVIRONMENT_STREAM = 4


def trial_rng(seed: int, trial: int = 0, stream: int = CONFIG_STREAM) -> np.random.Generator:
    """Philox generator keyed by ``(seed, stream·2^32 + trial)``."""
    if seed < 0 or trial < 0 or stream < 0:
        raise ValueError(f"seed, trial and stream must be nonnegative: {seed}, {trial}, {stream}")
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, (stream << 32) | trial], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _check_probability(p: float, name: str = "p") -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


class PercSample:
    """One configuration: ``open[e]`` is the state of edge ``G.edges[e]``."""

    __slots__ = ("open", "p", "seed", "trial")

    def __init__(self, open_mask: np.ndarray, p: float, seed: int, trial: int = 0):
        self.open = np.array(open_mask, dtype=bool)
        self.open.flags.writeable = False
        self.p = float(p)
        self.seed = int(seed)
        self.trial = int(trial)

    @property
    def edge_count(self) -> int:
        return len(self.open)

    @property
    def open_count(self) -> int:
        return int(self.open.sum())

    def __repr__(self) -> str:
        return f"PercSample(p={self.p}, open={self.open_count}/{self.edge_count}, seed={self.seed})"


def edge_uniforms(edge_count: int, seed: int, trial: int = 0, stream: int = CONFIG_STREAM) -> np.ndarray:
    return trial_rng(seed, trial, stream).random(edge_count)


def sample_config(
    G: Graph, p: float, seed: int, trial: int = 0, stream: int = CONFIG_STREAM
) -> PercSample:
    """Bernoulli(p) bond percolation on G."""
    _check_probability(p)
    uniforms = edge_uniforms(G.edge_count, seed, trial, stream)
    return PercSample(uniforms < p, p, seed, trial)


def sample_inhomogeneous(
    G: Graph, probabilities: np.ndarray, seed: int, trial: int = 0, stream: int = CONFIG_STREAM
) -> PercSample:
    """Edge e open independently with probability ``probabilities[e]``."""
    probabilities = np.asarray(probabilities, dtype=np.float64)
    if probabilities.shape != (G.edge_count,):
        raise ValueError(f"Need {G.edge_count} edge probabilities, got {probabilities.shape}")
    if probabilities.size and (probabilities.min() < 0 or probabilities.max() > 1):
        raise ValueError("Edge probabilities must lie in [0, 1]")
    uniforms = edge_uniforms(G.edge_count, seed, trial, stream)
    mean = float(probabilities.mean()) if probabilities.size else 0.0
    return PercSample(uniforms < probabilities, mean, seed, trial)


def union_coupling(
    G: Graph, p1: float, p2: float, seed: int, trial: int = 0
) -> tuple[PercSample, PercSample]:
    """
    (ω1, ω1 ∨ ω2) with ω1 ~ Bernoulli(p1) and ω2 ~ Bernoulli(p2) independent.

    The union is Bernoulli(1 − (1−p1)(1−p2)) and contains ω1 edgewise.
    """
    _check_probability(p1, "p1")
    _check_probability(p2, "p2")
    first = sample_config(G, p1, seed, trial, CONFIG_STREAM)
    second = sample_config(G, p2, seed, trial, UNION_STREAM)
    union_p = 1.0 - (1.0 - p1) * (1.0 - p2)
    return first, PercSample(first.open | second.open, union_p, seed, trial)
