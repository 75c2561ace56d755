"""Rank-based representative subsets of partition families.

For a family of partitions of X, build the 0/1 matrix whose rows are the
partitions and whose columns are the cuts (S, X - S) with a fixed anchor
element in S; an entry is 1 when every block of the partition lies on one
side of the cut. Two partitions join to the single block {X} exactly when
the GF(2) inner product of their rows is 1, so any row basis of this matrix
is a representative subset, of size at most 2^(|X|-1).

Rows are Python ints used as bitsets; elimination keeps the first-seen
independent rows, which makes the result deterministic.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Sequence

from .graph import BudgetExceeded
from .partitions import RGS, Partition, PartitionError, enumerate_rgs, rgs_block_masks, rgs_join

WIDTH_CAP = 30
REPRESENTS_CAP = 8


class PartitionSet:
    """A deduplicated family of partitions over one ground set."""

    __slots__ = ("ground", "members")

    def __init__(self, ground: Sequence[int], members: Iterable[Partition] = ()):
        self.ground = tuple(ground)
        seen = {}
        for p in members:
            if p.ground != self.ground:
                raise PartitionError(f"partition {p} is not over ground {self.ground}")
            seen.setdefault(p.rgs, p)
        self.members = tuple(seen.values())

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionSet):
            return NotImplemented
        return self.ground == other.ground and set(self.members) == set(other.members)

    def __repr__(self) -> str:
        return f"PartitionSet({list(self.members)})"

    def rgs_list(self) -> List[RGS]:
        return [p.rgs for p in self.members]


def cut_row(p: RGS) -> int:
    """Bitset of consistent anchored cuts; bit ``S >> 1`` for cut side ``S``."""
    masks = rgs_block_masks(p)
    anchor, others = masks[0], masks[1:]
    row = 0
    # every union of the non-anchor blocks, added to the anchor block
    unions = [0]
    for b in others:
        unions += [u | b for u in unions]
    for u in unions:
        row |= 1 << ((anchor | u) >> 1)
    return row


def reduce_rgs(k: int, family: Sequence[RGS], width_cap: int = WIDTH_CAP) -> List[RGS]:
    """Representative subset of ``family`` (partitions of a k-element set)."""
    if k > width_cap:
        raise BudgetExceeded(f"ground set size {k} exceeds representative-set cap {width_cap}")
    if len(family) <= 1 or k <= 1:
        # at most one partition exists when k <= 1
        return list(family[:1])
    basis: Dict[int, int] = {}
    kept: List[RGS] = []
    limit = 1 << (k - 1)
    for p in family:
        r = cut_row(p)
        while r:
            piv = r.bit_length() - 1
            b = basis.get(piv)
            if b is None:
                basis[piv] = r
                kept.append(p)
                break
            r ^= b
        if len(kept) == limit:
            break
    return kept


def reduce(a: PartitionSet, width_cap: int = WIDTH_CAP) -> PartitionSet:
    """Representative subset of ``a`` with at most max(1, 2^(|X|-1)) members."""
    kept = reduce_rgs(len(a.ground), a.rgs_list(), width_cap)
    return PartitionSet(a.ground, (Partition(a.ground, r) for r in kept))


def gf2_rank(rows: Iterable[int]) -> int:
    basis: Dict[int, int] = {}
    for r in rows:
        while r:
            piv = r.bit_length() - 1
            if piv not in basis:
                basis[piv] = r
                break
            r ^= basis[piv]
    return len(basis)


def cut_rank(a: PartitionSet) -> int:
    if not a.ground:
        return min(len(a), 1)
    return gf2_rank(cut_row(p.rgs) for p in a)


def represents(b: PartitionSet, a: PartitionSet, cap: int = REPRESENTS_CAP) -> bool:
    """Exhaustive check that ``b`` is a representative subset of ``a``."""
    if b.ground != a.ground:
        raise PartitionError("ground sets differ")
    k = len(a.ground)
    if k > cap:
        raise PartitionError(f"ground set of size {k} too large for exhaustive check (cap {cap})")
    if not set(b.members) <= set(a.members):
        return False
    if k == 0:
        # the only partition of the empty set; "{X}" is the empty partition too
        return bool(b.members) or not a.members
    top = (0,) * k
    a_rows = a.rgs_list()
    b_rows = b.rgs_list()
    for r in enumerate_rgs(k):
        if any(rgs_join(p, r) == top for p in a_rows):
            if not any(rgs_join(q, r) == top for q in b_rows):
                return False
    return True
