"""Exact enumeration and dynamic programming over subsets and partitions.

Subsets of the user set are plain ints used as bit-masks: bit i set means
user index i is in the subset. The ground set may have holes (it is itself
just a mask), so everything below works on sub-masks of an arbitrary ground.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    """Bit-mask with the given indices set."""
    m = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"negative index {i}")
        m |= 1 << i
    return m


def subsets(ground: int, *, nonempty: bool = False, proper: bool = False) -> Iterator[int]:
    """Enumerate sub-masks of ``ground`` exactly once, ascending.

    ``nonempty`` skips the empty set, ``proper`` skips ``ground`` itself.
    """
    positions = list(bits(ground))
    m = len(positions)
    start = 1 if nonempty else 0
    stop = (1 << m) - (1 if proper else 0)
    for k in range(start, stop):
        sub = 0
        for j in bits(k):
            sub |= 1 << positions[j]
        yield sub


@dataclass(frozen=True)
class Partition:
    """A partition of ``ground`` into disjoint nonempty blocks.

    ``blocks`` is canonical: ordered by each block's smallest element, so
    structurally equal partitions compare equal. Instances produced by this
    module are canonical by construction; use :meth:`from_blocks` to build
    (and validate) one from arbitrary input.
    """

    ground: int
    blocks: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[int], ground: int | None = None) -> "Partition":
        blocks = tuple(blocks)
        union = 0
        for b in blocks:
            if b == 0:
                raise ValueError("empty block")
            if union & b:
                raise ValueError("blocks overlap")
            union |= b
        if ground is None:
            ground = union
        elif union != ground:
            raise ValueError("blocks do not cover the ground set")
        ordered = tuple(sorted(blocks, key=lambda b: b & -b))
        return cls(ground, ordered)

    def __iter__(self) -> Iterator[int]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Sort key: blocks as tuples of ascending indices (lexicographic)."""
        return tuple(tuple(bits(b)) for b in self.blocks)


def partitions(ground: int, *, proper: bool = False) -> Iterator[Partition]:
    """Enumerate all partitions of ``ground`` (count = Bell(|ground|)).

    With ``proper`` the single-block partition {ground} is skipped, which
    realizes the proper-partition family used by the sum-rate scans.
    """
    for blocks in _block_lists(ground):
        if proper and len(blocks) == 1:
            continue
        yield Partition(ground, blocks)


def _block_lists(mask: int) -> Iterator[tuple[int, ...]]:
    # The first block always contains the lowest remaining element, so the
    # emitted block tuples are canonical without sorting.
    if mask == 0:
        yield ()
        return
    low = mask & -mask
    rest = mask ^ low
    positions = list(bits(rest))
    for k in range(1 << len(positions)):
        first = low
        for j in bits(k):
            first |= 1 << positions[j]
        for tail in _block_lists(mask ^ first):
            yield (first,) + tail


CostFn = Callable[[int], Fraction]

_TableEntry = tuple[Fraction, tuple[int, ...]]


def _candidate_key(entry: _TableEntry):
    value, blocks = entry
    # Ties: fewer blocks first, then lexicographically smallest block list.
    return (value, len(blocks), tuple(tuple(bits(b)) for b in blocks))


def partition_min_table(ground: int, cost: CostFn) -> dict[int, tuple[Fraction, Partition]]:
    """Minimum partition cost-sum for every sub-mask of ``ground``.

    g(empty) = 0; g(X) = min over blocks S containing the lowest element of X
    of cost(S) + g(X minus S). Fixing the lowest element keeps each partition
    counted once, so g(X) is the exact minimum over all partitions of X.
    Returns {X: (g(X), argmin partition)} with deterministic tie-breaking.
    """
    table: dict[int, _TableEntry] = {0: (Fraction(0), ())}
    for x in subsets(ground, nonempty=True):
        low = x & -x
        rest = x ^ low
        best: _TableEntry | None = None
        positions = list(bits(rest))
        for k in range(1 << len(positions)):
            first = low
            for j in bits(k):
                first |= 1 << positions[j]
            tail_value, tail_blocks = table[x ^ first]
            cand = (cost(first) + tail_value, (first,) + tail_blocks)
            if best is None or _candidate_key(cand) < _candidate_key(best):
                best = cand
        table[x] = best  # type: ignore[assignment]  # ground nonempty => best set
    return {
        x: (value, Partition(x, blocks))
        for x, (value, blocks) in table.items()
    }


def min_partition_sum(ground: int, cost: CostFn) -> tuple[Fraction, Partition]:
    """Minimum of sum(cost(C) for C in P) over partitions P of ``ground``.

    Exact DP over sub-masks (roughly 3^n transitions); never approximates.
    """
    if ground == 0:
        return Fraction(0), Partition(0, ())
    return partition_min_table(ground, cost)[ground]
