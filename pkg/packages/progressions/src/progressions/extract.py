"""
Extraction of progressions that are proper modulo a set.

Given generators a_1..a_k of a finite Abelian group, a symmetric Q containing
0 and a radius r with r·Â divisible by Q, ``extract_progression`` finds
lengths L_i <= r such that P = P_{a}(L) is proper mod Q and

    P ⊆ r·Â ⊆ C_k·(P + Q + Â),    C_k = 2^{6k} (k!)^3.

It follows the induction on k: the base case takes the longest
P_a(L) proper mod Q; the step picks a witness at the effective radius,
fixes the length of its dominant generator, widens Q by that generator and
recurses on the remaining ones.
"""

import itertools
import logging
from collections.abc import Sequence
from math import factorial

import numpy as np
from conf import get_brute_force_budget, get_certify_budget
from graphs import AbelianGroup, GroupElement

from progressions.models import (
    BudgetExceededError,
    CertificationError,
    CoverReport,
    ExtractionResult,
    NotDivisibleError,
)
from progressions.progression import (
    Progression,
    is_divisible,
    is_proper_mod,
    progression_elements,
)
from progressions.sets import (
    SetLike,
    SymmetricSet,
    as_mask,
    minkowski_sum,
    word_ball,
    word_length,
)

logger = logging.getLogger(__name__)


def cover_constant(k: int) -> int:
    """C_k = 2^{6k} (k!)^3."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return 2 ** (6 * k) * factorial(k) ** 3


def extract_progression(
    group: AbelianGroup,
    generators: Sequence[Sequence[int]],
    Q: SetLike,
    r: int,
) -> ExtractionResult:
    """
    Extract and certify a progression proper mod Q inside r·Â.

    Raises NotDivisibleError when r·Â is not divisible by Q and
    CertificationError if the result fails any certificate.
    """
    gens = [group.reduce(a) for a in generators]
    if not gens:
        raise ValueError("At least one generator is required")
    if r < 0:
        raise ValueError(f"Radius must be nonnegative, got {r}")
    q = as_mask(group, Q)

    ball = word_ball(word_length(group, gens), r)
    if not is_divisible(group, ball, q):
        raise NotDivisibleError(f"{r}·Â is not divisible by Q in {group}")

    order, lengths, effective = _extract(group, gens, q, r)
    progression = Progression(group, [gens[i] for i in order], lengths)
    constant = cover_constant(len(gens))
    proper = is_proper_mod(progression, q)
    subset = not (progression_elements(progression).mask & ~ball).any()
    if not (proper and subset):
        raise CertificationError(
            f"Extraction over {group} with r={r}: proper={proper}, subset={subset}"
        )
    certified = group.order <= get_certify_budget()
    if certified:
        report = verify_cover(group, progression, q, gens, r, constant)
        if not report.cover_ok:
            raise CertificationError(
                f"Extraction over {group} with r={r} failed the cover check at {report.witness}"
            )
    else:
        logger.warning(f"{group} is above the certify budget; cover containment not checked")

    logger.debug(f"Extracted lengths {lengths} (order {order}) from {group}, r={r}")
    return ExtractionResult(
        generators=[list(g) for g in progression.generators],
        lengths=list(lengths),
        permutation=list(order),
        radius=r,
        effective_radius=effective,
        proper_mod_q=proper,
        subset_of_ball=subset,
        cover_constant_used=constant,
        cover_certified=certified,
    )


def result_progression(group: AbelianGroup, result: ExtractionResult) -> Progression:
    return Progression(group, result.generators, result.lengths)


def _extract(
    group: AbelianGroup, gens: list[GroupElement], q: np.ndarray, r: int
) -> tuple[list[int], list[int], int]:
    """Returns (order of the generators, their lengths, effective radius)."""
    k = len(gens)
    if k == 1:
        return [0], [_base_length(group, gens[0], q, r)], r

    lengths = word_length(group, gens)
    if not (word_ball(lengths, r) & ~q).any():
        return list(range(k)), [0] * k, 0

    effective, witness = _effective_radius(group, lengths, q, r)
    m = _representation(group, gens, witness, effective)
    magnitudes = np.abs(m)
    j = k - 1 - int(np.argmax(magnitudes[::-1]))
    M = int(magnitudes[j])
    L_j = M // (4 * k)

    widened = minkowski_sum(
        group, progression_elements(Progression(group, [gens[j]], [M // 2])).mask, q
    )
    rest = [i for i in range(k) if i != j]
    rest_gens = [gens[i] for i in rest]
    rest_lengths = word_length(group, rest_gens)
    n = _minimal_radius(group, rest_lengths, widened, L_j)
    logger.debug(
        f"k={k}: r'={effective}, witness {group.element(witness)} = {m.tolist()}, "
        f"L_{j}={L_j}, recursing with n={n}"
    )

    sub_order, sub_lengths, _ = _extract(group, rest_gens, widened, n)
    return [rest[i] for i in sub_order] + [j], sub_lengths + [L_j], effective


def _base_length(group: AbelianGroup, a: GroupElement, q: np.ndarray, r: int) -> int:
    """Largest L <= r with P_a(L) proper mod Q: 2L must stay below the first j with j·a ∈ Q."""
    if r == 0:
        return 0
    multiples = np.arange(1, 2 * r + 1, dtype=np.int64)[:, None] * np.asarray(a)
    hits = np.flatnonzero(q[group.indices(multiples)])
    if len(hits) == 0:
        return r
    return min(r, int(hits[0]) // 2)


def _effective_radius(
    group: AbelianGroup, lengths: np.ndarray, q: np.ndarray, r: int
) -> tuple[int, int]:
    """Largest t <= r with t·Â ⊄ (t−1)·Â + Q, and the smallest-index witness."""
    for t in range(r, 0, -1):
        outside = word_ball(lengths, t) & ~minkowski_sum(group, word_ball(lengths, t - 1), q)
        if outside.any():
            return t, int(np.flatnonzero(outside)[0])
    raise CertificationError("No radius separates the word balls modulo Q")


def _representation(
    group: AbelianGroup, gens: list[GroupElement], witness: int, t: int
) -> np.ndarray:
    """Lexicographically smallest m with Σ|m_i| = t and Σ m_i a_i = witness."""
    target = group.element(witness)
    moduli = group.moduli

    def matches(coords: Sequence[int]) -> bool:
        return all(c % n == x for c, n, x in zip(coords, moduli, target))

    def search(i: int, remaining: int, partial: tuple[int, ...]) -> list[int] | None:
        a = gens[i]
        if i == len(gens) - 1:
            for last in sorted({-remaining, remaining}):
                if matches([p + last * c for p, c in zip(partial, a)]):
                    return [last]
            return None
        for mi in range(-remaining, remaining + 1):
            found = search(
                i + 1, remaining - abs(mi), tuple(p + mi * c for p, c in zip(partial, a))
            )
            if found is not None:
                return [mi, *found]
        return None

    found = search(0, t, group.identity)
    if found is None:
        raise CertificationError(f"No word of length {t} reaches {target}")
    return np.asarray(found, dtype=np.int64)


def _minimal_radius(
    group: AbelianGroup, lengths: np.ndarray, widened: np.ndarray, s: int
) -> int:
    """Smallest n with s·Â' ⊆ n·Â' + Q'."""
    target = word_ball(lengths, s)
    for n in range(s):
        covered = minkowski_sum(group, word_ball(lengths, n), widened)
        if not (target & ~covered).any():
            return n
    return s


def verify_cover(
    group: AbelianGroup,
    P: Progression,
    Q: SetLike,
    generators: Sequence[Sequence[int]],
    r: int,
    C: int,
) -> CoverReport:
    """
    Check P ⊆ r·Â and r·Â ⊆ C·(P + Q + Â) by exact sumsets.

    The witness is the smallest-index element breaking the first failed
    containment. Raises BudgetExceededError above the configured group order.
    """
    budget = get_certify_budget()
    if group.order > budget:
        raise BudgetExceededError(f"{group} has more than {budget} elements to certify")
    if C < 0:
        raise ValueError(f"Cover constant must be nonnegative, got {C}")

    q = as_mask(group, Q)
    ball = word_ball(word_length(group, generators), r)
    p = progression_elements(P).mask
    proper = is_proper_mod(P, q)

    stray = np.flatnonzero(p & ~ball)
    subset = len(stray) == 0

    a_hat = SymmetricSet.symmetrize(group, generators).mask
    base = minkowski_sum(group, minkowski_sum(group, p, q), a_hat)
    covered = np.zeros(group.order, dtype=bool)
    covered[0] = True
    for _ in range(C):
        if not (ball & ~covered).any():
            break
        grown = minkowski_sum(group, covered, base)
        if np.array_equal(grown, covered):
            break
        covered = grown
    missing = np.flatnonzero(ball & ~covered)
    cover = len(missing) == 0

    witness = None
    if not subset:
        witness = list(group.element(int(stray[0])))
    elif not cover:
        witness = list(group.element(int(missing[0])))
    if not (proper and subset and cover):
        logger.warning(
            f"Cover check over {group} failed: proper={proper}, subset={subset}, "
            f"cover={cover}, witness={witness}"
        )
    return CoverReport(
        proper_mod_q=proper,
        subset_of_ball=subset,
        cover_ok=cover,
        constant=C,
        witness=witness,
    )


def certify(
    group: AbelianGroup,
    result: ExtractionResult,
    generators: Sequence[Sequence[int]],
    Q: SetLike,
    r: int,
) -> CoverReport:
    """Re-run the certificates of an extraction result from scratch."""
    return verify_cover(
        group, result_progression(group, result), Q, generators, r, result.cover_constant_used
    )


def brute_force_max_proper(
    group: AbelianGroup,
    generators: Sequence[Sequence[int]],
    Q: SetLike,
    r: int,
    budget: int | None = None,
) -> list[int]:
    """
    Lengths L in [0, r]^k of a largest-volume progression proper mod Q.

    Candidates are tried by decreasing volume, ties in lexicographic order.
    """
    budget = get_brute_force_budget() if budget is None else budget
    k = len(generators)
    if (r + 1) ** k > budget:
        raise BudgetExceededError(f"(r+1)^k = {(r + 1) ** k} exceeds budget {budget}")
    q = as_mask(group, Q)

    def volume(lengths: tuple[int, ...]) -> int:
        out = 1
        for L in lengths:
            out *= 2 * L + 1
        return out

    failures: list[tuple[int, ...]] = []
    candidates = sorted(itertools.product(range(r + 1), repeat=k), key=lambda L: (-volume(L), L))
    for lengths in candidates:
        if any(all(x >= f for x, f in zip(lengths, fail)) for fail in failures):
            continue
        if is_proper_mod(Progression(group, generators, lengths), q):
            return list(lengths)
        failures.append(lengths)
    return [0] * k
