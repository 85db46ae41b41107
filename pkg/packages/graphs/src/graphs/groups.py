"""Concrete finite groups: mixed-radix Abelian groups and Heisenberg groups mod n.

Elements are plain tuples of integers in canonical range. Every group also
numbers its elements 0..order-1; that flat index is the vertex index of the
Cayley graphs built in ``graphs.cayley``.
"""

from collections.abc import Iterable, Sequence
from functools import cached_property
from math import prod
from typing import Protocol

import numpy as np

from graphs.models import GroupError

type GroupElement = tuple[int, ...]


class FiniteGroup(Protocol):
    @property
    def order(self) -> int: ...

    @property
    def identity(self) -> GroupElement: ...

    @property
    def coordinates(self) -> np.ndarray: ...

    def reduce(self, g: Sequence[int]) -> GroupElement: ...

    def element(self, index: int) -> GroupElement: ...

    def index(self, g: Sequence[int]) -> int: ...

    def mul(self, g: Sequence[int], h: Sequence[int]) -> GroupElement: ...

    def inv(self, g: Sequence[int]) -> GroupElement: ...

    def right_mul_indices(self, s: Sequence[int]) -> np.ndarray: ...

    def left_mul_indices(self, s: Sequence[int]) -> np.ndarray: ...


class AbelianGroup:
    """Z_{n1} x ... x Z_{nd} with coordinatewise addition."""

    def __init__(self, moduli: Iterable[int]):
        self.moduli = tuple(int(n) for n in moduli)
        if not self.moduli:
            raise GroupError("An Abelian group needs at least one factor")
        if any(n < 1 for n in self.moduli):
            raise GroupError(f"Moduli must be at least 1, got {self.moduli}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def reduce(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != self.rank:
            raise GroupError(f"Expected {self.rank} coordinates, got {len(coords)}")
        return tuple(int(c) % n for c, n in zip(coords, self.moduli))

    def element(self, index: int) -> GroupElement:
        return tuple(int(c) for c in np.unravel_index(int(index), self.moduli))

    def index(self, g: Sequence[int]) -> int:
        return int(np.ravel_multi_index(self.reduce(g), self.moduli))

    def indices(self, coords: np.ndarray) -> np.ndarray:
        """Flat indices of a ``(count, rank)`` array of (unreduced) coordinates."""
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, self.rank)
        return np.ravel_multi_index(
            tuple((coords % np.asarray(self.moduli)).T), self.moduli
        )

    @cached_property
    def coordinates(self) -> np.ndarray:
        """``(order, rank)`` array of every element, in flat-index order."""
        grids = np.indices(self.moduli).reshape(self.rank, -1).T
        grids.flags.writeable = False
        return grids

    def elements(self) -> list[GroupElement]:
        return [tuple(row) for row in self.coordinates.tolist()]

    def add(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        return self.reduce([a + b for a, b in zip(g, h)])

    def neg(self, g: Sequence[int]) -> GroupElement:
        return self.reduce([-a for a in g])

    def sub(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        return self.reduce([a - b for a, b in zip(g, h)])

    def scale(self, k: int, g: Sequence[int]) -> GroupElement:
        return self.reduce([k * a for a in g])

    mul = add
    inv = neg

    def right_mul_indices(self, s: Sequence[int]) -> np.ndarray:
        """Index permutation ``x -> x + s``."""
        return self.indices(self.coordinates + np.asarray(self.reduce(s)))

    left_mul_indices = right_mul_indices

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(self.moduli)

    def __repr__(self) -> str:
        return "AbelianGroup(" + " x ".join(f"Z_{n}" for n in self.moduli) + ")"


class HeisenbergGroup:
    """Integer Heisenberg group mod n: triples with
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y').
    """

    def __init__(self, n: int):
        if n < 2:
            raise GroupError(f"Heisenberg modulus must be at least 2, got {n}")
        self.n = int(n)

    @property
    def order(self) -> int:
        return self.n**3

    @property
    def identity(self) -> GroupElement:
        return (0, 0, 0)

    def reduce(self, g: Sequence[int]) -> GroupElement:
        if len(g) != 3:
            raise GroupError(f"Heisenberg elements are triples, got {g}")
        return tuple(int(c) % self.n for c in g)

    def element(self, index: int) -> GroupElement:
        n = self.n
        return (index // (n * n), (index // n) % n, index % n)

    def index(self, g: Sequence[int]) -> int:
        x, y, z = self.reduce(g)
        return (x * self.n + y) * self.n + z

    @cached_property
    def coordinates(self) -> np.ndarray:
        grids = np.indices((self.n,) * 3).reshape(3, -1).T
        grids.flags.writeable = False
        return grids

    def elements(self) -> list[GroupElement]:
        return [tuple(row) for row in self.coordinates.tolist()]

    def mul(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        x, y, z = g
        a, b, c = h
        return self.reduce((x + a, y + b, z + c + x * b))

    def inv(self, g: Sequence[int]) -> GroupElement:
        x, y, z = g
        return self.reduce((-x, -y, -z + x * y))

    def commutator(self, g: Sequence[int], h: Sequence[int]) -> GroupElement:
        return self.mul(self.mul(self.mul(g, h), self.inv(g)), self.inv(h))

    def center(self) -> list[GroupElement]:
        return [(0, 0, z) for z in range(self.n)]

    def _flat(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        n = self.n
        return ((x % n) * n + (y % n)) * n + (z % n)

    def right_mul_indices(self, s: Sequence[int]) -> np.ndarray:
        """Index permutation ``g -> g s``."""
        a, b, c = self.reduce(s)
        x, y, z = self.coordinates.T
        return self._flat(x + a, y + b, z + c + x * b)

    def left_mul_indices(self, s: Sequence[int]) -> np.ndarray:
        """Index permutation ``g -> s g``."""
        a, b, c = self.reduce(s)
        x, y, z = self.coordinates.T
        return self._flat(a + x, b + y, c + z + a * y)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeisenbergGroup) and self.n == other.n

    def __hash__(self) -> int:
        return hash(("heisenberg", self.n))

    def __repr__(self) -> str:
        return f"HeisenbergGroup(n={self.n})"


class GeneratingSet:
    """
    A list S of group elements together with its symmetrization
    Ŝ = S ∪ {id} ∪ S^{-1}.
    """

    def __init__(self, group: FiniteGroup, generators: Iterable[Sequence[int]]):
        self.group = group
        self.generators: tuple[GroupElement, ...] = tuple(
            group.reduce(g) for g in generators
        )

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def symmetrized(self) -> list[GroupElement]:
        """Ŝ as a sorted duplicate-free list (sorted by flat index)."""
        items = {self.group.identity}
        for g in self.generators:
            items.add(g)
            items.add(self.group.inv(g))
        return sorted(items, key=self.group.index)

    def symmetrized_indices(self) -> np.ndarray:
        return np.array([self.group.index(g) for g in self.symmetrized()], dtype=np.int64)

    def __repr__(self) -> str:
        return f"GeneratingSet({list(self.generators)})"
