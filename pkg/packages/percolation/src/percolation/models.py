import math

from pydantic import BaseModel, Field


class PercolationError(Exception):
    """Base class for errors raised by sampling, clustering and estimation."""

    pass


class ConfigMismatchError(PercolationError):
    """Raised when a configuration or vertex map does not match the graph it
    is applied to.
    """

    pass


class UnresolvedBracketError(PercolationError):
    """Raised by a strict critical-probability search when a step hits its
    trial cap before its confidence interval excludes the target level.
    """

    def __init__(self, message: str, trials_needed: int):
        super().__init__(message)
        self.trials_needed = trials_needed


class McEstimate(BaseModel):
    """A Monte Carlo frequency with its binomial standard error."""

    estimate: float = Field(ge=0.0, le=1.0)
    stderr: float = Field(ge=0.0)
    trials: int = Field(gt=0)
    seed: int

    @classmethod
    def from_counts(cls, successes: int, trials: int, seed: int) -> "McEstimate":
        if trials <= 0:
            raise ValueError(f"trials must be positive, got {trials}")
        p = successes / trials
        return cls(estimate=p, stderr=math.sqrt(p * (1 - p) / trials), trials=trials, seed=seed)

    def interval(self, sigma: float) -> tuple[float, float]:
        return self.estimate - sigma * self.stderr, self.estimate + sigma * self.stderr


class PcEstimate(BaseModel):
    """
    Result of the stochastic bisection for p_c(G, α, q).

    ``lo``/``hi`` bracket the crossing. When ``resolved`` is false some step
    ran out of trials before its interval excluded q; the bracket is then
    the widest one consistent with the steps and ``trials_needed`` is a
    normal-approximation estimate of the trials that step would need.
    """

    estimate: float
    lo: float
    hi: float
    lo_estimate: McEstimate | None = None
    hi_estimate: McEstimate | None = None
    alpha: float
    q: float
    tol: float
    resolved: bool
    steps: int
    trials_used: int
    trials_needed: int | None = None


class CheckReport(BaseModel):
    """Two sides of an inequality compared within a confidence margin."""

    lhs: float
    rhs: float
    margin: float
    holds: bool
    trials: int


class ContainmentReport(BaseModel):
    """Sample-wise containment of a coupling, counted over many samples."""

    kind: str
    samples: int
    violations: int
    overlap: int = 1
    open_rate_first: float
    open_rate_second: float

    @property
    def holds(self) -> bool:
        return self.violations == 0


class ClusterTailReport(BaseModel):
    """Markov bound P(|K_u| ≥ α|V|) ≥ (β−α)/(1−α) against its empirical side."""

    alpha: float
    beta: float
    tail: McEstimate
    bound: float
    holds: bool


class DominanceReport(BaseModel):
    """
    One-sided comparison of the projected cluster |π(K_v)| against the
    quotient cluster |K_{π(v)}|. ``worst_gap`` is the largest excess of the
    projected tail over the quotient tail across sizes.
    """

    sizes: list[int]
    projected_tail: list[float]
    quotient_tail: list[float]
    worst_gap: float
    margin: float
    holds: bool
    trials: int


class GhostTailReport(BaseModel):
    h: float
    vertex_count: int
    empirical: McEstimate
    bound: float
    holds: bool


class GhostIdentityReport(BaseModel):
    """E[e^{−h|K_A|}] and P(A ↮ 𝒢) estimated from the same trials."""

    laplace: float
    laplace_stderr: float
    avoid: McEstimate
    holds: bool
