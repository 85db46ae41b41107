"""
Volume growth of balls and the growth-based isoperimetric bounds.

The bound evaluators take the constant c(d) from ``get_csc_constant()``.
It is a display normalization for plotting predicted against observed
profiles, not a proven constant.
"""

import logging
import math

import numpy as np
from conf import get_csc_constant
from graphs import UNREACHABLE, AbelianGroup, CayleyGraph, Graph, bfs_distances
from graphs.models import DisconnectedGraphError
from progressions import sumset_power

from isoperimetry.models import GrowthProfile

logger = logging.getLogger(__name__)


def growth_profile(G: Graph, o: int) -> GrowthProfile:
    """|B(o, n)| for n = 0..ecc(o), from one BFS."""
    dist = bfs_distances(G, o)
    if np.any(dist == UNREACHABLE):
        raise DisconnectedGraphError("Growth profiles need a connected graph")
    sizes = np.cumsum(np.bincount(dist))
    return GrowthProfile(origin=int(o), sizes=sizes.tolist())


def sumset_growth(cayley: CayleyGraph, radius: int) -> list[int]:
    """|Ŝ^n| for n = 0..radius by repeated Minkowski sums in an Abelian group."""
    group = cayley.group
    if not isinstance(group, AbelianGroup):
        raise TypeError("Sumset growth needs an Abelian group")
    hat = np.zeros(group.order, dtype=bool)
    hat[cayley.generators.symmetrized_indices()] = True
    return [int(sumset_power(group, hat, n).sum()) for n in range(radius + 1)]


def scale_detect(profile: GrowthProfile, d: float, c: float) -> int:
    """max{1 ≤ n ≤ diam : |B(o, n)| ≥ c·n^d}, or 0 when no radius qualifies."""
    if d < 1 or c <= 0:
        raise ValueError(f"Need d ≥ 1 and c > 0, got d={d}, c={c}")
    n = np.arange(1, profile.diameter + 1, dtype=np.float64)
    sizes = np.asarray(profile.sizes[1:], dtype=np.float64)
    qualifying = np.flatnonzero(sizes >= c * n**d)
    return int(n[qualifying[-1]]) if len(qualifying) else 0


def _check_scale(profile: GrowthProfile, d: float, n: int) -> None:
    if d < 1:
        raise ValueError(f"Dimension must be at least 1, got {d}")
    if not 1 <= n <= profile.diameter:
        raise ValueError(f"Radius {n} outside [1, {profile.diameter}]")


def csc_bound(
    profile: GrowthProfile, d: float, n: int, setsize: int, constant: float | None = None
) -> float:
    """c(d)·min{1, |B(o,n)|^{1/d}/n}·|A|^{(d−1)/d} for |A| ≤ |B(o,n)|/2."""
    _check_scale(profile, d, n)
    ball = profile.sizes[n]
    if not 0 <= setsize <= ball / 2:
        raise ValueError(f"Set size {setsize} outside [0, |B(o,{n})|/2 = {ball / 2}]")
    c = get_csc_constant() if constant is None else constant
    return c * min(1.0, ball ** (1 / d) / n) * setsize ** ((d - 1) / d)


def sparse_csc_bound(
    profile: GrowthProfile,
    d: float,
    n: int,
    rho: float,
    setsize: int,
    constant: float | None = None,
) -> float:
    """
    Lower bound on |∂_V^+ A| for A that is ρ-sparse at scale n: the growth
    bound scaled by (1−ρ) for small sets, and
    (1−ρ)/(12n)·|A|^{(d−1)/d}·|B(o,n)|^{1/d} once |A| exceeds half a ball.
    """
    if not 0 <= rho < 1:
        raise ValueError(f"Sparsity must lie in [0, 1), got {rho}")
    _check_scale(profile, d, n)
    if setsize < 0:
        raise ValueError(f"Set size must be nonnegative, got {setsize}")
    ball = profile.sizes[n]
    if setsize <= ball / 2:
        return (1 - rho) * csc_bound(profile, d, n, setsize, constant)
    c = get_csc_constant() if constant is None else constant
    return c * (1 - rho) / (12 * n) * setsize ** ((d - 1) / d) * ball ** (1 / d)


def relative_growth_check(profile: GrowthProfile) -> list[tuple[int, int]]:
    """Pairs 1 ≤ m1 ≤ m2 ≤ diam with |B(m2)|/|B(m1)| < m2/(8·m1)."""
    m = np.arange(1, profile.diameter + 1)
    if len(m) == 0:
        return []
    sizes = np.asarray(profile.sizes, dtype=np.float64)
    m1, m2 = np.meshgrid(m, m, indexing="ij")
    bad = (m1 <= m2) & (8 * m1 * sizes[m2] < m2 * sizes[m1])
    violations = [(int(a), int(b)) for a, b in zip(m1[bad], m2[bad])]
    if violations:
        logger.warning(f"Relative growth fails at {len(violations)} radius pairs")
    return violations


def two_definitions_constants(d: float, c: float, delta: float, eps: float) -> tuple[float, float]:
    """
    Convert an isoperimetric inequality of dimension d and constant c into
    the weaker pair (d/(1+δ(d−1)), c·ε^{(d−1)/d}).
    """
    if d < 1 or c <= 0:
        raise ValueError(f"Need d ≥ 1 and c > 0, got d={d}, c={c}")
    if delta < 0 or not 0 < eps <= 1:
        raise ValueError(f"Need δ ≥ 0 and ε in (0, 1], got δ={delta}, ε={eps}")
    return d / (1 + delta * (d - 1)), c * math.pow(eps, (d - 1) / d)
