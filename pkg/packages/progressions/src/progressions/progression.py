import logging
from collections.abc import Sequence
from math import prod

import numpy as np
from graphs import AbelianGroup, GroupElement, build_graph, connected_components

from progressions.models import BudgetExceededError
from progressions.sets import (
    SetLike,
    SymmetricSet,
    as_mask,
    difference_set,
    minkowski_sum,
    negation_indices,
    sumset_power,
)

logger = logging.getLogger(__name__)

# Coefficient grids larger than this are refused.
GRID_LIMIT = 50_000_000


class Progression:
    """
    P_{a_1..a_k}(L_1..L_k) = {ℓ_1 a_1 + ... + ℓ_k a_k : |ℓ_i| <= L_i}.

    Lengths are nonnegative integers; a half-integer length L is the same
    progression as floor(L).
    """

    def __init__(
        self,
        group: AbelianGroup,
        generators: Sequence[Sequence[int]],
        lengths: Sequence[int],
    ):
        if len(generators) != len(lengths):
            raise ValueError(
                f"{len(generators)} generators but {len(lengths)} lengths"
            )
        if any(L < 0 for L in lengths):
            raise ValueError(f"Lengths must be nonnegative, got {list(lengths)}")
        self.group = group
        self.generators: tuple[GroupElement, ...] = tuple(group.reduce(a) for a in generators)
        self.lengths: tuple[int, ...] = tuple(int(L) for L in lengths)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def volume(self) -> int:
        """∏(2L_i + 1), the size of the coefficient box."""
        return prod(2 * L + 1 for L in self.lengths)

    def coefficient_grid(self) -> np.ndarray:
        """Every coefficient vector (ℓ_1..ℓ_k), in lexicographic order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        if self.volume > GRID_LIMIT:
            raise BudgetExceededError(
                f"Coefficient box of {self.volume} vectors exceeds {GRID_LIMIT}"
            )
        sides = [2 * L + 1 for L in self.lengths]
        return np.indices(sides).reshape(self.rank, -1).T - np.asarray(self.lengths)

    def element_indices(self) -> np.ndarray:
        """Flat index of Σ ℓ_i a_i for every row of ``coefficient_grid``."""
        grid = self.coefficient_grid()
        if self.rank == 0:
            return np.zeros(1, dtype=np.int64)
        basis = np.asarray(self.generators, dtype=np.int64)
        return self.group.indices(grid @ basis)

    def scaled(self, factor: int) -> "Progression":
        return Progression(self.group, self.generators, [factor * L for L in self.lengths])

    def __repr__(self) -> str:
        return f"Progression({list(self.generators)}, {list(self.lengths)})"


def progression_elements(P: Progression) -> SymmetricSet:
    """The element set of P, each element once."""
    mask = np.zeros(P.group.order, dtype=bool)
    mask[P.element_indices()] = True
    return SymmetricSet(P.group, mask)


def is_proper(P: Progression) -> bool:
    """Whether the ∏(2L_i+1) coefficient vectors give distinct elements."""
    return len(np.unique(P.element_indices())) == P.volume


def is_proper_mod(P: Progression, Q: SetLike) -> bool:
    """
    Whether P is proper and x − y ∉ Q for all distinct x, y in P.

    Differences of coefficient vectors range over the box of lengths 2L_i,
    so this holds iff Σ d_i a_i ∉ Q for every nonzero d in that box.
    """
    q = as_mask(P.group, Q)
    differences = P.scaled(2).element_indices()
    centre = len(differences) // 2
    hits = q[differences] | (differences == 0)
    hits[centre] = False
    return not hits.any()


def concatenate(P1: Progression, P2: Progression) -> Progression:
    if P1.group != P2.group:
        raise ValueError("Progressions live in different groups")
    return Progression(
        P1.group, P1.generators + P2.generators, P1.lengths + P2.lengths
    )


def is_divisible(group: AbelianGroup, A: SetLike, Q: SetLike) -> bool:
    """
    Whether A is divisible by Q.

    The relation x ≡ y iff x − y ∈ Q must be transitive on A, and sums of
    congruent pairs must stay congruent. With D = Q ∩ (A − A) the second
    condition is D + D ⊆ Q; the first holds iff every connected component
    of the relation graph on A is a clique.
    """
    a, q = as_mask(group, A), as_mask(group, Q)
    members = np.flatnonzero(a)
    if len(members) == 0:
        return True

    D = q & difference_set(group, a)
    local = np.full(group.order, -1, dtype=np.int64)
    local[members] = np.arange(len(members))
    base = group.coordinates[members]
    pieces = []
    for u in np.flatnonzero(D):
        if u == 0:
            continue
        targets = group.indices(base + group.coordinates[u])
        inside = a[targets]
        pieces.append(np.stack([local[members[inside]], local[targets[inside]]], axis=1))
    relation = build_graph(
        len(members), np.concatenate(pieces) if pieces else np.empty((0, 2), dtype=np.int64)
    )
    count, labels = connected_components(relation)
    sizes = np.bincount(labels, minlength=count)
    edges = np.bincount(labels[relation.edges[:, 0]], minlength=count)
    if not np.array_equal(edges, sizes * (sizes - 1) // 2):
        logger.debug("Congruence mod Q is not transitive on the set")
        return False

    return not (minkowski_sum(group, D, D) & ~q).any()


def sum_proper_check(
    P1: Progression, P2: Progression, Q: SetLike
) -> tuple[bool, bool]:
    """
    Evaluate the concatenation rule for properness.

    Returns ``(hypothesis, conclusion)``: the hypothesis is that P1 is proper
    mod Q and P2 is proper mod P1(2K) + Q; the conclusion is that the
    concatenated progression is proper mod Q. The rule says the first
    implies the second.
    """
    group = P1.group
    widened = minkowski_sum(group, progression_elements(P1.scaled(2)).mask, as_mask(group, Q))
    hypothesis = is_proper_mod(P1, Q) and is_proper_mod(P2, widened)
    conclusion = is_proper_mod(concatenate(P1, P2), Q)
    return hypothesis, conclusion


def large_set_power_check(group: AbelianGroup, A: SetLike, m: int) -> tuple[bool, bool]:
    """
    Evaluate the large-set rule: a symmetric A containing 0 with
    |A| > |Γ|/(m+1) satisfies 3m·A = ⟨A⟩. Returns ``(hypothesis, conclusion)``.
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    a = as_mask(group, A)
    symmetric = bool(a[0]) and np.array_equal(a, a[negation_indices(group)])
    hypothesis = symmetric and a.sum() * (m + 1) > group.order
    generated = sumset_power(group, a, group.order)
    conclusion = np.array_equal(sumset_power(group, a, 3 * m), generated)
    return hypothesis, conclusion
