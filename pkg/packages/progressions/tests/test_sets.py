from __future__ import annotations

import itertools

import numpy as np
import pytest
from graphs import AbelianGroup

from progressions import (
    SymmetricSet,
    difference_set,
    element_mask,
    mask_elements,
    minkowski_sum,
    sumset_power,
    word_ball,
    word_length,
)


def as_set(group: AbelianGroup, mask: np.ndarray) -> set[tuple[int, ...]]:
    return set(mask_elements(group, mask))


def test_sumset_power_of_cycle_generators() -> None:
    group = AbelianGroup((20,))
    a_hat = SymmetricSet.symmetrize(group, [(1,)])
    assert as_set(group, sumset_power(group, a_hat, 3)) == {
        (x % 20,) for x in range(-3, 4)
    }


def test_sumset_power_zero_is_identity() -> None:
    group = AbelianGroup((7, 3))
    A = element_mask(group, [(1, 1), (2, 0)])
    assert as_set(group, sumset_power(group, A, 0)) == {(0, 0)}


def test_doubling_of_mixed_set() -> None:
    group = AbelianGroup((20,))
    A = SymmetricSet.from_elements(group, [(0,), (1,), (19,), (5,), (15,)])
    expected = {(x % 20,) for x in (0, 1, -1, 2, -2, 4, -4, 5, -5, 6, -6, 10)}
    assert as_set(group, sumset_power(group, A, 2)) == expected


def test_sumset_power_is_monotone() -> None:
    group = AbelianGroup((9, 4))
    A = SymmetricSet.symmetrize(group, [(1, 0)])
    B = SymmetricSet.symmetrize(group, [(1, 0), (0, 1)])
    for m in range(4):
        small, big = sumset_power(group, A, m), sumset_power(group, B, m)
        assert not (small & ~big).any()


def test_fft_and_shift_sums_agree_with_enumeration() -> None:
    group = AbelianGroup((30, 10))
    rng = np.random.default_rng(5)
    for density in (0.05, 0.4):
        a = rng.random(group.order) < density
        b = rng.random(group.order) < 0.3
        expected = {
            group.reduce([x + y for x, y in zip(g, h)])
            for g, h in itertools.product(mask_elements(group, a), mask_elements(group, b))
        }
        assert as_set(group, minkowski_sum(group, a, b)) == expected


def test_difference_set() -> None:
    group = AbelianGroup((10,))
    A = element_mask(group, [(0,), (3,)])
    assert as_set(group, difference_set(group, A)) == {(0,), (3,), (7,)}


def test_symmetric_set_validation() -> None:
    group = AbelianGroup((6,))
    with pytest.raises(ValueError):
        SymmetricSet.from_elements(group, [(1,), (5,)])
    with pytest.raises(ValueError):
        SymmetricSet.from_elements(group, [(0,), (1,)])
    Q = SymmetricSet.subgroup(group, [(2,)])
    assert sorted(Q.elements()) == [(0,), (2,), (4,)]
    assert (4,) in Q


def test_word_length_outside_generated_subgroup() -> None:
    group = AbelianGroup((12,))
    lengths = word_length(group, [(3,)])
    assert lengths[3] == 1 and lengths[6] == 2
    assert lengths[1] == -1
    assert np.flatnonzero(word_ball(lengths, 1)).tolist() == [0, 3, 9]
