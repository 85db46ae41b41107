from pydantic import BaseModel


class ProgressionError(Exception):
    """Base class for errors raised by progression arithmetic and extraction."""

    pass


class NotDivisibleError(ProgressionError):
    """Raised when the word ball r·Â is not divisible by the set Q handed to
    the extraction.
    """

    pass


class CertificationError(ProgressionError):
    """Raised when an extracted progression fails one of its certificates."""

    pass


class BudgetExceededError(ProgressionError):
    """Raised when an exact enumeration would exceed its configured budget."""

    pass


class ExtractionResult(BaseModel):
    """
    Outcome of a progression extraction.

    ``generators`` is the input generator list after the permutation applied
    during the recursion (``generators[i] == input[permutation[i]]``) and
    ``lengths[i]`` is the length attached to ``generators[i]``.
    """

    generators: list[list[int]]
    lengths: list[int]
    permutation: list[int]
    radius: int
    effective_radius: int
    proper_mod_q: bool
    subset_of_ball: bool
    cover_constant_used: int
    cover_certified: bool = True

    @property
    def volume(self) -> int:
        volume = 1
        for length in self.lengths:
            volume *= 2 * length + 1
        return volume


class CoverReport(BaseModel):
    """Certificates for a progression P against a word ball r·Â."""

    proper_mod_q: bool
    subset_of_ball: bool
    cover_ok: bool
    constant: int
    witness: list[int] | None = None

    @property
    def ok(self) -> bool:
        return self.proper_mod_q and self.subset_of_ball and self.cover_ok


class CorpusRecord(BaseModel):
    """One certified (or failed) extraction from a random corpus."""

    index: int
    moduli: list[int]
    generators: list[list[int]]
    q_size: int
    radius: int
    lengths: list[int] = []
    permutation: list[int] = []
    volume: int = 0
    certified: bool = False
    error: str | None = None
