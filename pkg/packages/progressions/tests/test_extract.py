from __future__ import annotations

import numpy as np
import pytest
from graphs import AbelianGroup

from progressions import (
    BudgetExceededError,
    NotDivisibleError,
    Progression,
    SymmetricSet,
    brute_force_max_proper,
    certify,
    certify_corpus,
    cover_constant,
    extract_progression,
    random_corpus,
    verify_cover,
)


def test_cover_constant() -> None:
    assert cover_constant(1) == 64
    assert cover_constant(2) == 2**12 * 8


def test_free_cycle_extraction_takes_full_radius() -> None:
    group = AbelianGroup((20,))
    result = extract_progression(group, [(1,)], SymmetricSet.zero(group), 7)
    assert result.lengths == [7]
    assert result.proper_mod_q and result.subset_of_ball


def test_wrapped_cycle_extraction() -> None:
    group = AbelianGroup((6,))
    result = extract_progression(group, [(1,)], SymmetricSet.zero(group), 10)
    assert result.lengths == [2]
    assert result.cover_constant_used == 64
    assert result.cover_certified


def test_extraction_modulo_subgroup() -> None:
    group = AbelianGroup((12,))
    Q = SymmetricSet.subgroup(group, [(4,)])
    result = extract_progression(group, [(1,)], Q, 6)
    assert result.lengths == [1]


def test_two_generator_extraction_against_oracle() -> None:
    group = AbelianGroup((12, 2))
    generators = [(1, 0), (0, 1)]
    Q = SymmetricSet.zero(group)
    result = extract_progression(group, generators, Q, 4)
    assert sorted(result.permutation) == [0, 1]
    assert all(L <= 4 for L in result.lengths)
    assert certify(group, result, generators, Q, 4).ok

    oracle = brute_force_max_proper(group, generators, Q, 4)
    oracle_volume = int(np.prod([2 * L + 1 for L in oracle]))
    assert oracle_volume >= result.volume


def test_extraction_rejects_non_divisible_ball() -> None:
    group = AbelianGroup((10,))
    with pytest.raises(NotDivisibleError):
        extract_progression(group, [(1,)], SymmetricSet.symmetrize(group, [(1,)]), 2)


def test_relabelled_generators_still_certify() -> None:
    group = AbelianGroup((15, 4))
    generators = [(1, 0), (0, 1), (2, 1)]
    Q = SymmetricSet.zero(group)
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        gens = [generators[i] for i in order]
        result = extract_progression(group, gens, Q, 5)
        assert certify(group, result, gens, Q, 5).ok
        assert [gens[i] for i in result.permutation] == [tuple(g) for g in result.generators]


def test_verify_cover_trivial_cases() -> None:
    group = AbelianGroup((20,))
    Q = SymmetricSet.zero(group)
    ball = Progression(group, [(1,)], [3])
    assert verify_cover(group, ball, Q, [(1,)], 3, 1).ok

    report = verify_cover(group, Progression(group, [(1,)], [0]), Q, [(1,)], 2, 0)
    assert not report.cover_ok
    assert report.witness == [1]


def test_verify_cover_flags_progression_outside_ball() -> None:
    group = AbelianGroup((20,))
    report = verify_cover(
        group, Progression(group, [(1,)], [4]), SymmetricSet.zero(group), [(1,)], 2, 64
    )
    assert not report.subset_of_ball
    assert report.witness == [3]


def test_brute_force_oracle() -> None:
    Z6 = AbelianGroup((6,))
    assert brute_force_max_proper(Z6, [(1,)], SymmetricSet.zero(Z6), 5) == [2]
    Z55 = AbelianGroup((5, 5))
    assert brute_force_max_proper(Z55, [(1, 0), (0, 1)], SymmetricSet.zero(Z55), 2) == [2, 2]
    with pytest.raises(BudgetExceededError):
        brute_force_max_proper(Z55, [(1, 0), (0, 1)], SymmetricSet.zero(Z55), 9, budget=10)


def test_small_corpus_certifies() -> None:
    records = certify_corpus(random_corpus(seed=3, count=25), workers=1)
    assert all(record.certified for record in records)
    assert all(record.error is None for record in records)


@pytest.mark.slow
def test_acceptance_corpus_certifies() -> None:
    records = certify_corpus(random_corpus(seed=7, count=200))
    assert len(records) == 200
    assert [r.index for r in records if not r.certified] == []
