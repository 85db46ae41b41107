"""Element sets of a finite Abelian group, stored as boolean masks over flat indices.

The flat index of an element is ``AbelianGroup.index``; the identity has
index 0. All arithmetic is exact.
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np
from graphs import AbelianGroup, GroupElement, bfs_distances, build_graph
from scipy import fft

logger = logging.getLogger(__name__)

# Summands up to this size are added by shifting; larger ones go through the FFT.
SHIFT_SUM_LIMIT = 64


class SymmetricSet:
    """A subset Q of the group with 0 ∈ Q and Q = −Q."""

    def __init__(self, group: AbelianGroup, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (group.order,):
            raise ValueError(f"Mask must have one entry per element of {group}")
        if not mask[0]:
            raise ValueError("A symmetric set must contain the identity")
        if not np.array_equal(mask, mask[negation_indices(group)]):
            raise ValueError("Set is not closed under negation")
        self.group = group
        self.mask = mask
        self.mask.flags.writeable = False

    @classmethod
    def zero(cls, group: AbelianGroup) -> "SymmetricSet":
        return cls.from_elements(group, [group.identity])

    @classmethod
    def from_elements(
        cls, group: AbelianGroup, elements: Iterable[Sequence[int]]
    ) -> "SymmetricSet":
        return cls(group, element_mask(group, elements))

    @classmethod
    def symmetrize(
        cls, group: AbelianGroup, elements: Iterable[Sequence[int]]
    ) -> "SymmetricSet":
        """{0} ∪ A ∪ −A."""
        mask = element_mask(group, elements)
        mask |= mask[negation_indices(group)]
        mask[0] = True
        return cls(group, mask)

    @classmethod
    def subgroup(
        cls, group: AbelianGroup, generators: Iterable[Sequence[int]]
    ) -> "SymmetricSet":
        """The subgroup generated by ``generators``."""
        lengths = word_length(group, list(generators))
        return cls(group, lengths >= 0)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def __len__(self) -> int:
        return self.size

    def __contains__(self, element: Sequence[int]) -> bool:
        return bool(self.mask[self.group.index(element)])

    def __add__(self, other: "SymmetricSet") -> "SymmetricSet":
        return SymmetricSet(self.group, minkowski_sum(self.group, self.mask, other.mask))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SymmetricSet)
            and self.group == other.group
            and np.array_equal(self.mask, other.mask)
        )

    def elements(self) -> list[GroupElement]:
        return mask_elements(self.group, self.mask)

    def __repr__(self) -> str:
        return f"SymmetricSet({self.group}, size={self.size})"


type SetLike = np.ndarray | SymmetricSet


def as_mask(group: AbelianGroup, A: SetLike) -> np.ndarray:
    mask = A.mask if isinstance(A, SymmetricSet) else np.asarray(A, dtype=bool)
    if mask.shape != (group.order,):
        raise ValueError(f"Mask must have one entry per element of {group}")
    return mask


def negation_indices(group: AbelianGroup) -> np.ndarray:
    """Flat index of −x for every x."""
    return group.indices(-group.coordinates)


def element_mask(group: AbelianGroup, elements: Iterable[Sequence[int]]) -> np.ndarray:
    mask = np.zeros(group.order, dtype=bool)
    rows = [list(e) for e in elements]
    if rows:
        mask[group.indices(np.asarray(rows, dtype=np.int64))] = True
    return mask


def mask_elements(group: AbelianGroup, mask: SetLike) -> list[GroupElement]:
    return [group.element(int(i)) for i in np.flatnonzero(as_mask(group, mask))]


def minkowski_sum(group: AbelianGroup, A: SetLike, B: SetLike) -> np.ndarray:
    """A + B as a mask."""
    a, b = as_mask(group, A), as_mask(group, B)
    small, big = (a, b) if a.sum() <= b.sum() else (b, a)
    shifts = np.flatnonzero(small)
    if len(shifts) == 0:
        return np.zeros(group.order, dtype=bool)

    if len(shifts) <= SHIFT_SUM_LIMIT:
        base = group.coordinates[np.flatnonzero(big)]
        out = np.zeros(group.order, dtype=bool)
        for s in shifts:
            out[group.indices(base + group.coordinates[s])] = True
        return out

    shape = group.moduli
    spectrum = fft.rfftn(a.reshape(shape).astype(np.float64)) * fft.rfftn(
        b.reshape(shape).astype(np.float64)
    )
    counts = fft.irfftn(spectrum, s=shape)
    return (counts > 0.5).ravel()


def difference_set(group: AbelianGroup, A: SetLike) -> np.ndarray:
    """A − A as a mask."""
    mask = as_mask(group, A)
    return minkowski_sum(group, mask, mask[negation_indices(group)])


def sumset_power(group: AbelianGroup, A: SetLike, m: int) -> np.ndarray:
    """The m-fold sumset mA, with 0·A = {0}."""
    if m < 0:
        raise ValueError(f"Sumset power must be nonnegative, got {m}")
    mask = as_mask(group, A)
    result = np.zeros(group.order, dtype=bool)
    result[0] = True
    for step in range(m):
        grown = minkowski_sum(group, result, mask)
        if np.array_equal(grown, result):
            logger.debug(f"Sumset power stabilised after {step} of {m} steps")
            break
        result = grown
    return result


def word_length(group: AbelianGroup, generators: Sequence[Sequence[int]]) -> np.ndarray:
    """
    Distance from 0 of every element in the Cayley graph of ``generators``.

    Elements outside the generated subgroup get -1, so the word ball r·Â is
    ``(length >= 0) & (length <= r)``. The generators need not generate.
    """
    sources = np.arange(group.order, dtype=np.int64)
    pieces = [
        np.stack([sources, group.right_mul_indices(a)], axis=1) for a in generators
    ]
    edges = np.concatenate(pieces) if pieces else np.empty((0, 2), dtype=np.int64)
    return bfs_distances(build_graph(group.order, edges), 0)


def word_ball(lengths: np.ndarray, r: int) -> np.ndarray:
    """r·Â from a ``word_length`` array."""
    return (lengths >= 0) & (lengths <= r)
