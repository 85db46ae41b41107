"""
Monte Carlo estimators over Bernoulli bond percolation.

Trial t of a run with seed s always sees the same uniforms, so estimates at
different p with the same seed are computed on coupled configurations and
are monotone in p for increasing events.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np
from conf import get_bisection_max_trials, get_mc_sigma
from graphs import Graph
from scipy import stats

from percolation.clusters import (
    ClusterForest,
    Event,
    GiantEvent,
    clusters,
    connect_event,
    set_connect_event,
)
from percolation.models import (
    CheckReport,
    ClusterTailReport,
    McEstimate,
    PcEstimate,
    UnresolvedBracketError,
)
from percolation.pool import Scratch, map_trials
from percolation.sampling import CONFIG_STREAM, sample_config

logger = logging.getLogger(__name__)


def _check_trials(trials: int) -> None:
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")


def event_counts(
    G: Graph,
    p: float,
    event: Event,
    trials: int,
    seed: int,
    first_trial: int = 0,
    workers: int | None = None,
) -> np.ndarray:
    """Indicator of ``event`` on each trial."""
    _check_trials(trials)

    def trial(t: int, scratch: Scratch) -> float:
        forest = clusters(G, sample_config(G, p, seed, t, CONFIG_STREAM), scratch)
        return float(event(forest))

    return map_trials(G.vertex_count, trials, trial, first_trial=first_trial, workers=workers)


def mc_event(
    G: Graph, p: float, event: Event, trials: int, seed: int, workers: int | None = None
) -> McEstimate:
    hits = event_counts(G, p, event, trials, seed, workers=workers)
    return McEstimate.from_counts(int(hits.sum()), trials, seed)


def mc_giant(
    G: Graph, p: float, alpha: float, trials: int, seed: int, workers: int | None = None
) -> McEstimate:
    """P_p(some cluster has at least ⌈α|V|⌉ vertices)."""
    _check_trials(trials)
    return mc_event(G, p, GiantEvent(alpha, G.vertex_count), trials, seed, workers)


def two_point(
    G: Graph, p: float, x: int, y: int, trials: int, seed: int, workers: int | None = None
) -> McEstimate:
    """P_p(x ↔ y)."""
    for v in (x, y):
        if not 0 <= v < G.vertex_count:
            raise ValueError(f"Vertex {v} out of range for {G}")
    return mc_event(G, p, connect_event(x, y), trials, seed, workers)


def set_to_set(
    G: Graph,
    p: float,
    A: Iterable[int],
    B: Iterable[int],
    trials: int,
    seed: int,
    workers: int | None = None,
) -> McEstimate:
    """P_p(A ↔ B)."""
    return mc_event(G, p, set_connect_event(A, B), trials, seed, workers)


def _trials_needed(estimate: float, q: float, sigma: float) -> int:
    """Trials for a sigma-wide interval around ``estimate`` to exclude q."""
    gap = abs(estimate - q)
    variance = max(estimate * (1 - estimate), 1e-4)
    if gap == 0:
        return get_bisection_max_trials() * 100
    return math.ceil(variance * (sigma / gap) ** 2)


def _bisection_step(
    G: Graph,
    p: float,
    event: GiantEvent,
    q: float,
    batch: int,
    cap: int,
    sigma: float,
    seed: int,
) -> tuple[McEstimate, int | None]:
    """
    Run batches of trials at p until the interval excludes q or ``cap`` is hit.

    Returns the estimate and +1 (above q), −1 (below q) or None (unresolved).
    """
    hits = np.empty(0, dtype=np.float64)
    while len(hits) < cap:
        size = min(batch, cap - len(hits))
        hits = np.concatenate([hits, event_counts(G, p, event, size, seed, first_trial=len(hits))])
        estimate = McEstimate.from_counts(int(hits.sum()), len(hits), seed)
        lo, hi = estimate.interval(sigma)
        if lo > q:
            return estimate, 1
        if hi < q:
            return estimate, -1
    return estimate, None


def estimate_pc(
    G: Graph,
    alpha: float,
    q: float,
    tol: float,
    trials: int,
    seed: int,
    max_trials: int | None = None,
    strict: bool = False,
) -> PcEstimate:
    """
    Stochastic bisection for p_c(G, α, q) = inf{p : P_p(giant) ≥ q}.

    Each step runs batches of ``trials`` until its ``get_mc_sigma()``-wide
    interval excludes q, capped at ``max_trials``. Bisection stops once
    hi − lo ≤ tol. If a step hits the cap, the search stops with the
    current bracket and ``resolved=False``; with ``strict`` it raises
    ``UnresolvedBracketError`` instead.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    _check_trials(trials)
    cap = max(trials, max_trials or get_bisection_max_trials())
    sigma = get_mc_sigma()
    event = GiantEvent(alpha, G.vertex_count)

    lo, hi = 0.0, 1.0
    lo_est = hi_est = None
    steps = used = 0
    needed = None
    resolved = True
    while hi - lo > tol:
        mid = (lo + hi) / 2
        estimate, side = _bisection_step(G, mid, event, q, trials, cap, sigma, seed)
        steps += 1
        used += estimate.trials
        logger.debug(f"p={mid:.6f}: {estimate.estimate:.4f} ± {estimate.stderr:.4f} ({side})")
        if side is None:
            resolved = False
            needed = _trials_needed(estimate.estimate, q, sigma)
            message = (
                f"Step at p={mid:.6f} is within {sigma}σ of q={q} after {estimate.trials} trials; "
                f"about {needed} trials needed"
            )
            if strict:
                raise UnresolvedBracketError(message, needed)
            logger.warning(message)
            break
        if side > 0:
            hi, hi_est = mid, estimate
        else:
            lo, lo_est = mid, estimate

    logger.info(f"p_c bracket [{lo:.6f}, {hi:.6f}] after {steps} steps, {used} trials")
    return PcEstimate(
        estimate=(lo + hi) / 2,
        lo=lo,
        hi=hi,
        lo_estimate=lo_est,
        hi_estimate=hi_est,
        alpha=alpha,
        q=q,
        tol=tol,
        resolved=resolved,
        steps=steps,
        trials_used=used,
        trials_needed=needed,
    )


def theta_power_check(
    G: Graph,
    p: float,
    theta: float,
    event: Event,
    trials: int,
    seed: int,
    sigma: float | None = None,
) -> CheckReport:
    """
    One-sided check of P_{p^θ}(A) ≥ P_p(A)^θ for an increasing event A and
    θ in (0, 1]. The right side's error is carried by the delta method.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    sigma = 2.0 if sigma is None else sigma
    lhs = mc_event(G, p**theta, event, trials, seed)
    base = mc_event(G, p, event, trials, seed)
    rhs = base.estimate**theta
    rhs_stderr = theta * base.estimate ** (theta - 1) * base.stderr if base.estimate > 0 else 0.0
    margin = sigma * math.hypot(lhs.stderr, rhs_stderr)
    return CheckReport(
        lhs=lhs.estimate, rhs=rhs, margin=margin, holds=lhs.estimate >= rhs - margin, trials=trials
    )


def cluster_tail_check(
    G: Graph, p: float, u: int, alpha: float, trials: int, seed: int
) -> ClusterTailReport:
    """
    Markov's inequality for |V| − |K_u|: with β the mean of |K_u|/|V|,
    P(|K_u| ≥ α|V|) ≥ (β − α)/(1 − α).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    n = G.vertex_count

    def fraction(t: int, scratch: Scratch) -> float:
        forest: ClusterForest = clusters(G, sample_config(G, p, seed, t), scratch)
        return forest.size_of(u) / n

    fractions = map_trials(n, trials, fraction)
    beta = float(fractions.mean())
    threshold = math.ceil(alpha * n) / n
    tail = McEstimate.from_counts(int((fractions >= threshold).sum()), trials, seed)
    bound = (beta - alpha) / (1 - alpha)
    holds = tail.estimate >= bound - get_mc_sigma() * tail.stderr
    return ClusterTailReport(alpha=alpha, beta=beta, tail=tail, bound=bound, holds=holds)


def connection_lower_bound(alpha: float, q: float, p: float) -> float:
    """
    η^{3/η} with η = min(αq/2, p): once P_p(some cluster ≥ α|V|) ≥ q on a
    transitive graph, every two-point function is at least this large.
    """
    if not (0 < alpha <= 1 and 0 < q <= 1 and 0 <= p <= 1):
        raise ValueError(f"Invalid arguments alpha={alpha}, q={q}, p={p}")
    eta = min(alpha * q / 2, p)
    if eta == 0:
        return 0.0
    return eta ** (3 / eta)


def binomial_consistent(successes: int, trials: int, p: float, sigma: float) -> bool:
    """Whether ``successes`` out of ``trials`` is within sigma standard errors of p."""
    mean = trials * p
    sd = math.sqrt(trials * p * (1 - p))
    if sd == 0:
        return successes == mean
    return abs(successes - mean) <= sigma * sd


def chi_square_pvalue(first: np.ndarray, second: np.ndarray) -> float:
    """Two-sample chi-square homogeneity p-value for integer count samples."""
    first = np.asarray(first, dtype=np.int64)
    second = np.asarray(second, dtype=np.int64)
    lo = int(min(first.min(), second.min()))
    hi = int(max(first.max(), second.max()))
    table = np.stack(
        [np.bincount(first - lo, minlength=hi - lo + 1), np.bincount(second - lo, minlength=hi - lo + 1)]
    )
    # pool sparse tail bins so every expected count is reasonable
    columns = []
    running = np.zeros(2, dtype=np.int64)
    for column in table.T:
        running += column
        if running.sum() >= 10:
            columns.append(running.copy())
            running[:] = 0
    if running.sum():
        if columns:
            columns[-1] += running
        else:
            columns.append(running.copy())
    if len(columns) < 2:
        return 1.0
    _, pvalue, _, _ = stats.chi2_contingency(np.array(columns).T)
    return float(pvalue)
