from percolation import McEstimate
from pydantic import BaseModel


class PotentialError(Exception):
    """Base class for errors raised by Dirichlet solves and GFF sampling."""

    pass


class SingularSystemError(PotentialError):
    """Raised when the Dirichlet Laplacian is singular: the boundary is empty
    or some interior component never reaches it.
    """

    pass


class FactorizationError(PotentialError):
    """Raised when a Cholesky factorization fails or the iterative solver
    does not reach its tolerance.
    """

    pass


class EscapeEstimate(BaseModel):
    """Random-walk estimate of Σ_{a∈A} deg(a) P_a(τ_B < τ_A^+)."""

    value: float
    stderr: float
    walks: int
    seed: int


class GffBoundReport(BaseModel):
    """
    E^GFF[P_{p(φ)}(A ↔ B)] against 1 − exp(−C_eff(A ↔ B)/2).

    ``stderr_outer`` is the spread of the per-field means over the GFF
    samples; ``stderr_inner`` is the percolation noise inside one field,
    averaged. The check passes when the estimate is at least
    ``bound − 2·total_stderr``.
    """

    conductance: float
    bound: float
    estimate: float
    stderr_outer: float
    stderr_inner: float
    total_stderr: float
    gff_samples: int
    perc_trials: int
    holds: bool


class LaplaceCheck(BaseModel):
    """E[exp(−Σ_x t_x(1+φ_x))] in closed form and by sampling."""

    closed_form: float
    empirical: float
    stderr: float
    holds: bool


class ComparisonReport(BaseModel):
    """Bernoulli(p) connection probability next to the GFF-environment one."""

    p: float
    bernoulli: McEstimate
    gff: float
    gff_stderr: float
