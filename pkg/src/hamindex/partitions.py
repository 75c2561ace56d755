"""Set partitions of a small ordered ground set.

A partition of the sorted ground tuple ``(x_0, ..., x_{k-1})`` is stored as a
restricted-growth string (RGS): ``rgs[i]`` is the block index of ``x_i``,
blocks numbered in order of their smallest element. The RGS is unique per
mathematical partition, so tuples can be compared and hashed directly.

The ``rgs_*`` functions work on bare RGS tuples and are what the dynamic
programs call in their inner loops; :class:`Partition` wraps them with the
ground set attached.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .graph import Graph, GraphError

RGS = Tuple[int, ...]

ENUMERATE_CAP = 8


class PartitionError(ValueError):
    pass


# -- kernels on restricted-growth strings ----------------------------------


def canonical(labels: Sequence[int]) -> RGS:
    """Renumber arbitrary block labels into restricted-growth form."""
    seen: Dict[int, int] = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def rgs_join(p: RGS, q: RGS) -> RGS:
    """Least common coarsening of two partitions of the same ground set."""
    k = len(p)
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for labels in (p, q):
        first: Dict[int, int] = {}
        for i, b in enumerate(labels):
            j = first.setdefault(b, i)
            if j != i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return canonical([find(i) for i in range(k)])


def rgs_merge(p: RGS, i: int, j: int) -> RGS:
    """Merge the blocks holding positions ``i`` and ``j``."""
    a, b = p[i], p[j]
    if a == b:
        return p
    return canonical([a if x == b else x for x in p])


def rgs_insert_singleton(p: RGS, pos: int) -> RGS:
    """Insert a new element at position ``pos`` as its own block."""
    lst = list(p)
    lst.insert(pos, len(p) + 1)
    return canonical(lst)


def rgs_elide(p: RGS, pos: int) -> RGS:
    """Remove the element at ``pos``; its block disappears if it was a singleton."""
    return canonical(p[:pos] + p[pos + 1:])


def rgs_block_size(p: RGS, pos: int) -> int:
    return p.count(p[pos])


def rgs_block_masks(p: RGS) -> List[int]:
    """Blocks as bitmasks over positions, in block-index order."""
    masks = [0] * (max(p) + 1 if p else 0)
    for i, b in enumerate(p):
        masks[b] |= 1 << i
    return masks


def rgs_refines(q: RGS, p: RGS) -> bool:
    """True iff every block of ``q`` lies inside a block of ``p``."""
    image: Dict[int, int] = {}
    for bq, bp in zip(q, p):
        if image.setdefault(bq, bp) != bp:
            return False
    return True


# -- the public value type --------------------------------------------------


class Partition:
    """A partition of a sorted ground tuple of vertex ids."""

    __slots__ = ("ground", "rgs", "_index")

    def __init__(self, ground: Sequence[int], rgs: Sequence[int]):
        ground = tuple(ground)
        if list(ground) != sorted(set(ground)):
            raise PartitionError(f"ground set must be sorted and duplicate-free: {ground}")
        if len(rgs) != len(ground):
            raise PartitionError("label vector length differs from ground set size")
        self.ground = ground
        self.rgs = canonical(rgs)
        self._index = None

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = [set(b) for b in blocks]
        if any(not b for b in blocks):
            raise PartitionError("blocks must be nonempty")
        ground = sorted(x for b in blocks for x in b)
        if len(ground) != len(set(ground)):
            raise PartitionError("blocks overlap")
        owner = {x: i for i, b in enumerate(blocks) for x in b}
        return cls(ground, [owner[x] for x in ground])

    def index(self, v: int) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.ground)}
        try:
            return self._index[v]
        except KeyError:
            raise PartitionError(f"{v} is not in the ground set") from None

    @property
    def blocks(self) -> List[Tuple[int, ...]]:
        out: List[List[int]] = [[] for _ in range(max(self.rgs) + 1 if self.rgs else 0)]
        for x, b in zip(self.ground, self.rgs):
            out[b].append(x)
        return [tuple(b) for b in out]

    def block_of(self, v: int) -> Tuple[int, ...]:
        b = self.rgs[self.index(v)]
        return tuple(x for x, c in zip(self.ground, self.rgs) if c == b)

    def __len__(self) -> int:
        """Number of blocks."""
        return max(self.rgs) + 1 if self.rgs else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.ground == other.ground and self.rgs == other.rgs

    def __hash__(self) -> int:
        return hash((self.ground, self.rgs))

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"

    def _same_ground(self, other: "Partition") -> None:
        if self.ground != other.ground:
            raise PartitionError(f"ground sets differ: {self.ground} vs {other.ground}")

    def join(self, other: "Partition") -> "Partition":
        self._same_ground(other)
        return Partition(self.ground, rgs_join(self.rgs, other.rgs))

    def refines(self, other: "Partition") -> bool:
        """``self ⊑ other``."""
        self._same_ground(other)
        return rgs_refines(self.rgs, other.rgs)

    def elide(self, v: int) -> "Partition":
        i = self.index(v)
        return Partition(self.ground[:i] + self.ground[i + 1:], rgs_elide(self.rgs, i))

    def insert_singleton(self, v: int) -> "Partition":
        if v in self.ground:
            raise PartitionError(f"{v} is already in the ground set")
        pos = sum(1 for x in self.ground if x < v)
        ground = self.ground[:pos] + (v,) + self.ground[pos:]
        return Partition(ground, rgs_insert_singleton(self.rgs, pos))

    def merge_blocks(self, u: int, v: int) -> "Partition":
        return Partition(self.ground, rgs_merge(self.rgs, self.index(u), self.index(v)))

    def is_top(self) -> bool:
        return bool(self.rgs) and max(self.rgs) == 0


def _ground(x: Iterable[int]) -> Tuple[int, ...]:
    g = tuple(sorted(x))
    if len(set(g)) != len(g):
        raise PartitionError("ground set has duplicates")
    return g


def bottom(x: Iterable[int]) -> Partition:
    g = _ground(x)
    return Partition(g, range(len(g)))


def top(x: Iterable[int]) -> Partition:
    g = _ground(x)
    return Partition(g, [0] * len(g))


def join(p: Partition, q: Partition) -> Partition:
    return p.join(q)


def refines(q: Partition, p: Partition) -> bool:
    return q.refines(p)


def elide(p: Partition, v: int) -> Partition:
    return p.elide(v)


def insert_singleton(p: Partition, v: int) -> Partition:
    return p.insert_singleton(v)


def merge_blocks(p: Partition, u: int, v: int) -> Partition:
    return p.merge_blocks(u, v)


def block_of(p: Partition, v: int) -> Tuple[int, ...]:
    return p.block_of(v)


def partition_of(g: Graph, x: Iterable[int]) -> Partition:
    """Partition of ``x`` induced by the connected components of ``g``."""
    gx = _ground(x)
    bad = [v for v in gx if v not in g]
    if bad:
        raise GraphError(f"vertices {bad} are not in the graph")
    comp_of = {}
    for i, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = i
    return Partition(gx, [comp_of[v] for v in gx])


def enumerate_rgs(k: int) -> Iterator[RGS]:
    """All restricted-growth strings of length ``k`` (Bell(k) of them)."""
    if k == 0:
        yield ()
        return

    def rec(prefix: List[int], mx: int) -> Iterator[RGS]:
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for b in range(mx + 2):
            prefix.append(b)
            yield from rec(prefix, max(mx, b))
            prefix.pop()

    yield from rec([0], 0)


def enumerate_all(x: Iterable[int], cap: int = ENUMERATE_CAP) -> List[Partition]:
    g = _ground(x)
    if len(g) > cap:
        raise PartitionError(f"ground set of size {len(g)} exceeds enumeration cap {cap}")
    return [Partition(g, r) for r in enumerate_rgs(len(g))]
