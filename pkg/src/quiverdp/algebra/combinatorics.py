"""Permutations, distributions, multipartitions and Young-subgroup cosets

Everything here is 1-based: a permutation of [1, n] is stored by its images, a
distribution is an ordered partition of [1, n] into blocks. Values are immutable;
enumeration helpers are generators and can be restarted freely.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

import msgspec


# ============================================================================
# Permutations
# ============================================================================


class Permutation(msgspec.Struct, frozen=True):
    """A bijection of [1, n] given by its images"""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"Not a permutation of [1,{n}]: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, l: int) -> int:
        return self.images[l - 1]

    def compose(self, other: Permutation) -> Permutation:
        """(self ∘ other)(l) = self(other(l))"""
        if other.n != self.n:
            raise ValueError(f"Size mismatch: {self.n} vs {other.n}")
        return Permutation(tuple(self.images[i - 1] for i in other.images))

    __mul__ = compose

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for pos, img in enumerate(self.images, start=1):
            inv[img - 1] = pos
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return parity_sign(self.images)

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"


def parity_sign(images: Sequence[int]) -> int:
    """Sign of a permutation given by 0- or 1-based images (cycle count)"""
    n = len(images)
    base = min(images) if n else 0
    seen = [False] * n
    transpositions = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j] - base
            length += 1
        transpositions += length - 1
    return -1 if transpositions % 2 else 1


def product_permutation(*factors: Permutation) -> Permutation:
    """σ1×σ2×…: each factor acts on the next consecutive interval"""
    images: list[int] = []
    offset = 0
    for f in factors:
        images.extend(offset + i for i in f.images)
        offset += f.n
    return Permutation(tuple(images))


# ============================================================================
# Distributions
# ============================================================================


class Distribution(msgspec.Struct, frozen=True):
    """Ordered partition of [1, ground] into non-empty blocks

    ``slots`` maps every block back to a position in the vector it was built from
    (1-based); it is the identity unless zero-length entries were dropped.
    """

    blocks: tuple[tuple[int, ...], ...]
    ground: int
    slots: tuple[int, ...] = ()

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("Distribution blocks must be non-empty")
            if list(block) != sorted(block):
                raise ValueError(f"Block not sorted: {block}")
            if seen.intersection(block):
                raise ValueError(f"Blocks overlap: {self.blocks}")
            seen.update(block)
        if seen != set(range(1, self.ground + 1)):
            raise ValueError(f"Blocks {self.blocks} do not cover [1,{self.ground}]")
        if self.slots and len(self.slots) != len(self.blocks):
            raise ValueError("slots must have one entry per block")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], ground: int | None = None) -> Distribution:
        """Build from unsorted blocks; ground defaults to the size of the union"""
        sorted_blocks = tuple(tuple(sorted(b)) for b in blocks)
        if ground is None:
            ground = sum(len(b) for b in sorted_blocks)
        return cls(blocks=sorted_blocks, ground=ground)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def slot(self, block_index: int) -> int:
        """Original vector slot of a block (1-based)"""
        return self.slots[block_index - 1] if self.slots else block_index

    def block_of(self, l: int) -> int:
        """B|l|: index of the block containing l"""
        return _lookup(self)[0][_check_ground(self, l)]

    def pos_in_block(self, l: int) -> int:
        """B⟨l⟩: number of elements of l's block that are ≤ l"""
        return _lookup(self)[1][_check_ground(self, l)]

    def slot_of(self, l: int) -> int:
        """Vector slot of the block containing l (T|l| for a determined distribution)"""
        return self.slot(self.block_of(l))

    def young_order(self) -> int:
        """|S_D| = ∏ |D_i|!"""
        return prod(factorial(len(b)) for b in self.blocks)


def _check_ground(d: Distribution, l: int) -> int:
    if not 1 <= l <= d.ground:
        raise ValueError(f"{l} outside ground [1,{d.ground}]")
    return l - 1


@lru_cache(maxsize=4096)
def _lookup(d: Distribution) -> tuple[tuple[int, ...], tuple[int, ...]]:
    block = [0] * d.ground
    pos = [0] * d.ground
    for bi, b in enumerate(d.blocks, start=1):
        for rank, l in enumerate(b, start=1):
            block[l - 1] = bi
            pos[l - 1] = rank
    return tuple(block), tuple(pos)


def determined_distribution(vector: Sequence[int]) -> Distribution:
    """Consecutive intervals of lengths vector[0], vector[1], … (zeros give no block)"""
    blocks = []
    slots = []
    start = 1
    for slot, length in enumerate(vector, start=1):
        if length < 0:
            raise ValueError(f"Negative entry in {tuple(vector)}")
        if length == 0:
            continue
        blocks.append(tuple(range(start, start + length)))
        slots.append(slot)
        start += length
    return Distribution(blocks=tuple(blocks), ground=start - 1, slots=tuple(slots))


def block_of(d: Distribution, l: int) -> int:
    return d.block_of(l)


def pos_in_block(d: Distribution, l: int) -> int:
    return d.pos_in_block(l)


def intersect(a: Distribution, b: Distribution) -> Distribution:
    """All non-empty A_i ∩ B_j, ordered by their minima"""
    if a.ground != b.ground:
        raise ValueError(f"Ground mismatch: {a.ground} vs {b.ground}")
    parts = []
    for x in a.blocks:
        xs = set(x)
        for y in b.blocks:
            common = xs.intersection(y)
            if common:
                parts.append(tuple(sorted(common)))
    parts.sort(key=lambda c: c[0])
    return Distribution(blocks=tuple(parts), ground=a.ground)


def refines(a: Distribution, b: Distribution) -> bool:
    """A ≤ B: every block of A lies inside a single block of B"""
    if a.ground != b.ground:
        return False
    return all(len({b.block_of(l) for l in block}) == 1 for block in a.blocks)


def apply_permutation(d: Distribution, sigma: Permutation) -> Distribution:
    """D^σ with blocks σ⁻¹(D_i)"""
    if sigma.n != d.ground:
        raise ValueError(f"Permutation of size {sigma.n} cannot act on [1,{d.ground}]")
    inv = sigma.inverse()
    blocks = tuple(tuple(sorted(inv(l) for l in block)) for block in d.blocks)
    return Distribution(blocks=blocks, ground=d.ground, slots=d.slots)


def window(d: Distribution, offset: int, length: int) -> Distribution:
    """[1, length] ∩ (D_i − offset), empty pieces dropped, block order kept

    ``slots`` records the index of the originating block of d.
    """
    blocks = []
    slots = []
    for bi, block in enumerate(d.blocks, start=1):
        piece = tuple(l - offset for l in block if offset < l <= offset + length)
        if piece:
            blocks.append(piece)
            slots.append(bi)
    return Distribution(blocks=tuple(blocks), ground=length, slots=tuple(slots))


# ============================================================================
# Young subgroups and coset representatives
# ============================================================================


def young_subgroup(d: Distribution) -> Iterator[Permutation]:
    """All permutations preserving every block of d"""
    for choice in product(*(permutations(b) for b in d.blocks)):
        images = [0] * d.ground
        for block, imgs in zip(d.blocks, choice):
            for l, img in zip(block, imgs):
                images[l - 1] = img
        yield Permutation(tuple(images))


def block_increasing_images(n: int, chains: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """All 1-based image tuples of S_n that increase along each chain of positions

    Each chain is a sorted sequence of positions whose images must increase; the
    yielded tuples are one representative per left coset of ∏ S_chain.
    """
    follows = [0] * (n + 1)
    for chain in chains:
        for prev, cur in zip(chain, chain[1:]):
            follows[cur] = prev
    images = [0] * (n + 1)
    used = [False] * (n + 1)

    def assign(pos: int) -> Iterator[tuple[int, ...]]:
        if pos > n:
            yield tuple(images[1:])
            return
        lo = images[follows[pos]] + 1 if follows[pos] else 1
        for v in range(lo, n + 1):
            if used[v]:
                continue
            used[v] = True
            images[pos] = v
            yield from assign(pos + 1)
            used[v] = False
        images[pos] = 0

    yield from assign(1)


def young_coset_reps(t: int, d: Distribution) -> Iterator[Permutation]:
    """One representative per left coset σS_D of S_t

    The representative is the coset member increasing on every block of D; its
    inverse ρ is the member of the right coset with D^ρ⟨l⟩ = D⟨ρ(l)⟩.
    """
    if d.ground != t:
        raise ValueError(f"Distribution covers [1,{d.ground}], expected [1,{t}]")
    for images in block_increasing_images(t, d.blocks):
        yield Permutation(images)


def count_coset_reps(t: int, d: Distribution) -> int:
    return factorial(t) // d.young_order()


def dp_coset_reps(
    t: int,
    r: int,
    s: int,
    gamma: Distribution,
    delta: Distribution,
    lam: Distribution,
) -> Iterator[tuple[Permutation, Permutation]]:
    """Representatives of S_{t+2r}×S_{t+2s} modulo {(ν1×ν2×ν2, ν1×ν3×ν3)}

    τ increases on the Γ-blocks of [1,t] and on the Λ-blocks shifted into
    [t+1,t+s]; σ increases on the Δ-blocks shifted into [t+1,t+r].
    """
    if (gamma.ground, delta.ground, lam.ground) != (t, r, s):
        raise ValueError("Γ, Δ, Λ must distribute [1,t], [1,r], [1,s]")
    sigma_chains = [tuple(t + j for j in block) for block in delta.blocks]
    tau_chains = [*gamma.blocks, *(tuple(t + k for k in block) for block in lam.blocks)]
    for tau in block_increasing_images(t + 2 * s, tau_chains):
        tau_perm = Permutation(tau)
        for sigma in block_increasing_images(t + 2 * r, sigma_chains):
            yield Permutation(sigma), tau_perm


# ============================================================================
# Partitions, multipartitions, set partitions
# ============================================================================


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, lexicographically descending"""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first, *rest)


class Multipartition(msgspec.Struct, frozen=True):
    """A tuple of partitions, one per multidegree entry

    Parts are weakly decreasing for partitions proper; partitions read off an
    intersection keep the order of component minima (``ordered=False``).
    """

    parts_per_group: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for group in self.parts_per_group:
            if any(p <= 0 for p in group):
                raise ValueError(f"Parts must be positive: {self.parts_per_group}")

    @classmethod
    def of(cls, groups: Iterable[Iterable[int]], ordered: bool = True) -> Multipartition:
        mp = cls(tuple(tuple(g) for g in groups))
        if ordered and not mp.is_ordered():
            raise ValueError(f"Parts must be weakly decreasing: {mp.parts_per_group}")
        return mp

    def is_ordered(self) -> bool:
        return all(list(g) == sorted(g, reverse=True) for g in self.parts_per_group)

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(p for g in self.parts_per_group for p in g)

    @property
    def height(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.parts_per_group)

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(g) for g in self.parts_per_group)

    @property
    def group_of_part(self) -> tuple[int, ...]:
        """1-based group (arrow) index of every flattened part"""
        return tuple(gi for gi, g in enumerate(self.parts_per_group, start=1) for _ in g)

    def distribution(self) -> Distribution:
        return determined_distribution(self.flat)

    def young_order(self) -> int:
        return prod(factorial(p) for p in self.flat)


def multipartitions(vector: Sequence[int]) -> Iterator[Multipartition]:
    """All γ ⊢ vector"""
    for groups in product(*(tuple(integer_partitions(v)) for v in vector)):
        yield Multipartition(tuple(groups))


def set_partitions_fixed(pool: Iterable[int], block_size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of pool into blocks of equal size, blocks ordered by minima"""
    items = sorted(pool)
    if block_size <= 0:
        raise ValueError("block_size must be positive")
    if len(items) % block_size:
        raise ValueError(f"{len(items)} elements do not split into blocks of {block_size}")

    def split(rest: list[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if not rest:
            yield ()
            return
        head, tail = rest[0], rest[1:]
        for others in combinations(tail, block_size - 1):
            block = (head, *others)
            remaining = [x for x in tail if x not in others]
            for blocks in split(remaining):
                yield (block, *blocks)

    yield from split(items)
