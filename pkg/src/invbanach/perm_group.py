"""Finite permutation groups acting on coordinates of R^n.

Convention (fixed once, used everywhere): a permutation ``g`` acts on a vector
by ``apply(g, x)[i] = x[g(i)]``.  Products are defined so that
``apply(g * h, x) == apply(g, apply(h, x))``, i.e. ``(g * h)(i) = h(g(i))``.

Internally images are 0-based; JSON and the human-facing constructors use
1-based indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, InvalidPermutation

DEFAULT_CAP = 10_000


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]  # 0-based: images[i] = g(i)

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise InvalidPermutation(f"images {self.images} are not a bijection of 0..{n - 1}")

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(int(i) - 1 for i in images))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DimensionMismatch("permutations of different degree")
        return Permutation(tuple(other.images[j] for j in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def matrix(self) -> np.ndarray:
        """Matrix M with M @ x == apply(self, x)."""
        n = self.degree
        m = np.zeros((n, n))
        m[np.arange(n), self.images] = 1.0
        return m

    def to_json(self) -> list[int]:
        return [i + 1 for i in self.images]


def transposition(n: int, i: int, j: int) -> Permutation:
    """Swap of the 1-based indices i and j."""
    images = list(range(n))
    images[i - 1], images[j - 1] = j - 1, i - 1
    return Permutation(tuple(images))


def cycle(n: int, indices: Sequence[int]) -> Permutation:
    """Cycle i1 -> i2 -> ... -> ik -> i1 on 1-based indices."""
    images = list(range(n))
    k = len(indices)
    for a in range(k):
        images[indices[a] - 1] = indices[(a + 1) % k] - 1
    return Permutation(tuple(images))


def apply(g: Permutation, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != g.degree:
        raise DimensionMismatch(f"vector of length {x.shape[-1]} vs degree {g.degree}")
    return x[..., list(g.images)]


@dataclass(frozen=True)
class OrbitPartition:
    blocks: tuple[tuple[int, ...], ...]  # 0-based, each sorted, blocks ordered by minimum

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise IndexError(i)

    def labels(self) -> np.ndarray:
        n = sum(self.sizes)
        lab = np.empty(n, dtype=int)
        for k, b in enumerate(self.blocks):
            lab[list(b)] = k
        return lab

    def to_json(self) -> list[list[int]]:
        return [[i + 1 for i in b] for b in self.blocks]


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._element_set

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def haar_weight(self) -> float:
        return 1.0 / len(self.elements)

    @cached_property
    def index_array(self) -> np.ndarray:
        """|G| x n integer array of images, row k = elements[k]."""
        return np.array([g.images for g in self.elements], dtype=int).reshape(len(self.elements), self.degree)

    @cached_property
    def matrices(self) -> np.ndarray:
        return np.stack([g.matrix() for g in self.elements])

    @cached_property
    def orbit_partition(self) -> OrbitPartition:
        return orbits(self)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_json() for g in self.generators]}


def generate_group(degree: int, generators: Iterable[Permutation], cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Smallest group containing ``generators`` (breadth-first closure)."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = tuple(generators)
    for g in gens:
        if g.degree != degree:
            raise InvalidPermutation(f"generator {g.to_json()} has degree {g.degree}, expected {degree}")
    e = Permutation.identity(degree)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = h * g
            if k not in seen:
                seen.add(k)
                order.append(k)
                if len(order) > cap:
                    raise CapExceeded(f"group closure exceeds cap={cap}")
                queue.append(k)
    # Finite closure under products is automatically closed under inverses.
    return PermutationGroup(degree, tuple(sorted(order)), gens)


def orbits(G: PermutationGroup) -> OrbitPartition:
    n = G.degree
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    gens = G.generators or G.elements
    for g in gens:
        for i in range(n):
            a, b = find(i), find(g(i))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    blocks = sorted(tuple(sorted(b)) for b in groups.values())
    return OrbitPartition(tuple(blocks))


def orbit_sizes_bounded(G: PermutationGroup, C: int) -> bool:
    return all(s < C for s in G.orbit_partition.sizes)


# -- named groups ---------------------------------------------------------------

def trivial_group(n: int) -> PermutationGroup:
    return generate_group(n, [])


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermutationGroup:
    if n < 2:
        return trivial_group(n)
    return generate_group(n, [transposition(n, 1, 2), cycle(n, range(1, n + 1))], cap)


def cyclic_group(n: int) -> PermutationGroup:
    if n < 2:
        return trivial_group(n)
    return generate_group(n, [cycle(n, range(1, n + 1))])


def block_group(n: int, blocks: Sequence[Sequence[int]], kind: str = "symmetric",
                cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Direct product of symmetric (or cyclic) groups on the given 1-based blocks."""
    gens = []
    for b in blocks:
        b = list(b)
        if len(b) < 2:
            continue
        if kind == "symmetric":
            gens.append(transposition(n, b[0], b[1]))
            if len(b) > 2:
                gens.append(cycle(n, b))
        elif kind == "cyclic":
            gens.append(cycle(n, b))
        else:
            raise ValueError(f"unknown block group kind {kind!r}")
    return generate_group(n, gens, cap)


def group_from_json(obj: dict, cap: int = DEFAULT_CAP) -> PermutationGroup:
    n = int(obj["degree"])
    gens = [Permutation.from_one_based(g) for g in obj.get("generators", [])]
    return generate_group(n, gens, cap)
