"""Dynamic programs over nice tree decompositions.

Tables map a state key to a list of partitions (restricted-growth strings
over the sorted ground tuple ``X``). For the Eulerian problems a key is
``(X, O)``: ``X`` the bag vertices used by the partial subgraph and ``O`` the
ones with odd degree so far. For Hamiltonian cycle every bag vertex is used,
and the key is the tuple of degree tags (0, 1 or 2) aligned with the bag.

Tables are sparse: keys with no partitions are absent. Each node's rule is
applied by pushing every non-empty child entry to the keys it contributes
to, which yields the same sets as iterating over all target keys and
reading the child keys they depend on. Every stored set goes through the
representative-set reduction before the node is final.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .graph import Graph, GraphError
from .partitions import RGS, rgs_block_size, rgs_elide, rgs_insert_singleton, rgs_join, rgs_merge
from .repset import WIDTH_CAP, reduce_rgs
from .treedec import (FORGET, INTRODUCE_EDGE, INTRODUCE_VERTEX, JOIN, LEAF, NiceTreeDecomposition,
                      TreeDecomposition, heuristic_decompose, make_nice, pin_vertex, validate)

log = logging.getLogger(__name__)

Key = Tuple[Tuple[int, ...], FrozenSet[int]]
Table = Dict[Key, List[RGS]]
NodeHook = Callable[[int, NiceTreeDecomposition, dict], None]


class TableBoundError(AssertionError):
    """A finalized table entry exceeded the 2^(|X|-1) representative-set bound."""


@dataclass
class DPStats:
    runs: int = 0
    nodes: int = 0
    width: int = -1
    max_table_size: int = 0
    max_bag: int = 0
    bound_checks: int = 0

    def merge_width(self, ntd: NiceTreeDecomposition) -> None:
        self.width = max(self.width, ntd.width)
        self.max_bag = max(self.max_bag, ntd.width + 1)


@dataclass
class WitnessSubgraph:
    vertices: FrozenSet[int]
    edges: FrozenSet[int]

    def as_graph(self, g: Graph) -> Graph:
        return g.subgraph(self.vertices, self.edges)


def _prepare(g: Graph, td: Optional[TreeDecomposition], vstar: int) -> NiceTreeDecomposition:
    if td is None:
        td = heuristic_decompose(g)
    validate(td, g)
    if td.width + 2 > WIDTH_CAP:
        from .graph import BudgetExceeded
        raise BudgetExceeded(f"decomposition width {td.width} too large for the table cap")
    return pin_vertex(make_nice(td, g), vstar)


def _finalize(out: Dict, ground_len: Callable, stats: DPStats) -> Dict:
    """Deduplicate, reduce to a representative subset, and check the bound."""
    final = {}
    for key, parts in out.items():
        uniq = list(dict.fromkeys(parts))
        k = ground_len(key)
        red = reduce_rgs(k, uniq)
        bound = 1 << (k - 1) if k >= 1 else 1
        stats.bound_checks += 1
        if len(red) > bound:
            raise TableBoundError(f"table entry {key} has {len(red)} partitions > {bound}")
        if len(red) > stats.max_table_size:
            stats.max_table_size = len(red)
        final[key] = red
    return final


def _insert_pos(xs: Tuple[int, ...], v: int) -> int:
    return sum(1 for x in xs if x < v)


# -- Eulerian Steiner / dominating Eulerian ---------------------------------


def _eulerian_dp(
    g: Graph,
    ntd: NiceTreeDecomposition,
    vstar: int,
    terminals: Optional[Set[int]],
    usable: Optional[Set[int]],
    stats: DPStats,
    hook: Optional[NodeHook] = None,
) -> bool:
    """Run the connectivity/parity DP; ``terminals is None`` selects the vertex-cover variant."""
    cover = terminals is None
    tables: Dict[int, Table] = {}
    xlen = lambda key: len(key[0])
    for t in ntd.postorder():
        node = ntd.nodes[t]
        out: Dict[Key, List[RGS]] = {}
        kind = node.kind
        if kind == LEAF:
            # bags here are {v*}; the partial subgraph must contain v*
            out[((vstar,), frozenset())] = [(0,)]
        elif kind == INTRODUCE_VERTEX:
            v = node.vertex
            optional = cover or v not in terminals
            for (xs, o), parts in tables.pop(node.children[0]).items():
                pos = _insert_pos(xs, v)
                nx = xs[:pos] + (v,) + xs[pos:]
                out.setdefault((nx, o), []).extend(rgs_insert_singleton(p, pos) for p in parts)
                if optional:
                    out.setdefault((xs, o), []).extend(parts)
        elif kind == INTRODUCE_EDGE:
            e = node.edge
            u, v = g.endpoints(e)
            can_use = usable is None or e in usable
            for (xs, o), parts in tables.pop(node.children[0]).items():
                has_u, has_v = u in xs, v in xs
                if cover and not (has_u or has_v):
                    continue
                out.setdefault((xs, o), []).extend(parts)
                if can_use and has_u and has_v:
                    iu, iv = xs.index(u), xs.index(v)
                    key = (xs, o ^ {u, v})
                    out.setdefault(key, []).extend(rgs_merge(p, iu, iv) for p in parts)
        elif kind == FORGET:
            v = node.vertex
            optional = cover or v not in terminals
            for (xs, o), parts in tables.pop(node.children[0]).items():
                if v in xs:
                    if v in o:
                        continue
                    pos = xs.index(v)
                    kept = [rgs_elide(p, pos) for p in parts if rgs_block_size(p, pos) > 1]
                    if kept:
                        out.setdefault((xs[:pos] + xs[pos + 1:], o), []).extend(kept)
                elif optional:
                    out.setdefault((xs, o), []).extend(parts)
        elif kind == JOIN:
            left = tables.pop(node.children[0])
            right = tables.pop(node.children[1])
            by_x: Dict[Tuple[int, ...], List[Tuple[FrozenSet[int], List[RGS]]]] = {}
            for (xs, o2), parts in right.items():
                by_x.setdefault(xs, []).append((o2, parts))
            for (xs, o1), p1s in left.items():
                for o2, p2s in by_x.get(xs, ()):
                    # O-hat = o1 & o2, the odd set of the union is o1 ^ o2
                    bucket = out.setdefault((xs, o1 ^ o2), [])
                    for p1 in p1s:
                        for p2 in p2s:
                            bucket.append(rgs_join(p1, p2))
        else:
            raise GraphError(f"unknown node kind {kind}")
        tables[t] = _finalize(out, xlen, stats)
        stats.nodes += 1
        if hook is not None:
            hook(t, ntd, tables[t])
    root = tables[ntd.root]
    return (0,) in root.get(((vstar,), frozenset()), ())


def solve_ess(
    g: Graph,
    k: Iterable[int],
    td: Optional[TreeDecomposition] = None,
    *,
    stats: Optional[DPStats] = None,
    usable: Optional[Set[int]] = None,
    hook: Optional[NodeHook] = None,
) -> bool:
    """Does ``g`` have an Eulerian subgraph containing every vertex of ``k``?"""
    terminals = set(k)
    for v in terminals:
        if v not in g:
            raise GraphError(f"terminal {v} is not a vertex of the graph")
    stats = stats if stats is not None else DPStats()
    if not terminals:
        # a single vertex with no edges is Eulerian
        if td is not None:
            validate(td, g)
        return True
    vstar = min(terminals)
    ntd = _prepare(g, td, vstar)
    stats.merge_width(ntd)
    stats.runs += 1
    return _eulerian_dp(g, ntd, vstar, terminals, usable, stats, hook)


def solve_ses(g: Graph, td: Optional[TreeDecomposition] = None, **kw) -> bool:
    """Is ``g`` supereulerian (has a spanning Eulerian subgraph)?"""
    return solve_ess(g, g.vertices, td, **kw)


def _des_candidates(g: Graph) -> Tuple[int, ...]:
    u, v = g.endpoints(min(g.edges))
    return (u, v)


def solve_des(
    g: Graph,
    td: Optional[TreeDecomposition] = None,
    *,
    stats: Optional[DPStats] = None,
    usable: Optional[Set[int]] = None,
    hook: Optional[NodeHook] = None,
) -> bool:
    """Does ``g`` have an Eulerian subgraph whose vertices cover every edge?

    One endpoint of any fixed edge lies in every solution, so the DP runs
    with each endpoint pinned and the answers are OR-ed.
    """
    stats = stats if stats is not None else DPStats()
    if td is None:
        td = heuristic_decompose(g)
    validate(td, g)
    if g.m == 0:
        return True
    for vstar in _des_candidates(g):
        ntd = _prepare(g, td, vstar)
        stats.merge_width(ntd)
        stats.runs += 1
        if _eulerian_dp(g, ntd, vstar, None, usable, stats, hook):
            return True
    return False


# -- Hamiltonian cycle ------------------------------------------------------


def _hc_dp(
    g: Graph,
    ntd: NiceTreeDecomposition,
    vstar: int,
    usable: Optional[Set[int]],
    stats: DPStats,
    hook: Optional[NodeHook] = None,
) -> bool:
    tables: Dict[int, Dict[Tuple[int, ...], List[RGS]]] = {}
    sorted_bag = {}
    for t in ntd.postorder():
        node = ntd.nodes[t]
        xs = tuple(sorted(node.bag))
        sorted_bag[t] = xs
        out: Dict[Tuple[int, ...], List[RGS]] = {}
        kind = node.kind
        if kind == LEAF:
            out[(0,)] = [(0,)]
        elif kind == INTRODUCE_VERTEX:
            pos = xs.index(node.vertex)
            for tags, parts in tables.pop(node.children[0]).items():
                nt = tags[:pos] + (0,) + tags[pos:]
                out[nt] = [rgs_insert_singleton(p, pos) for p in parts]
        elif kind == INTRODUCE_EDGE:
            e = node.edge
            u, v = g.endpoints(e)
            iu, iv = xs.index(u), xs.index(v)
            can_use = usable is None or e in usable
            for tags, parts in tables.pop(node.children[0]).items():
                out.setdefault(tags, []).extend(parts)
                if can_use and tags[iu] < 2 and tags[iv] < 2:
                    nt = list(tags)
                    nt[iu] += 1
                    nt[iv] += 1
                    out.setdefault(tuple(nt), []).extend(rgs_merge(p, iu, iv) for p in parts)
        elif kind == FORGET:
            pos = sorted_bag[node.children[0]].index(node.vertex)
            for tags, parts in tables.pop(node.children[0]).items():
                if tags[pos] != 2:
                    continue
                kept = [rgs_elide(p, pos) for p in parts if rgs_block_size(p, pos) > 1]
                if kept:
                    out.setdefault(tags[:pos] + tags[pos + 1:], []).extend(kept)
        elif kind == JOIN:
            left = tables.pop(node.children[0])
            right = tables.pop(node.children[1])
            for t1, p1s in left.items():
                for t2, p2s in right.items():
                    nt = tuple(a + b for a, b in zip(t1, t2))
                    if max(nt) > 2:
                        continue
                    bucket = out.setdefault(nt, [])
                    for p1 in p1s:
                        for p2 in p2s:
                            bucket.append(rgs_join(p1, p2))
        else:
            raise GraphError(f"unknown node kind {kind}")
        tables[t] = _finalize(out, lambda key: len(key), stats)
        stats.nodes += 1
        if hook is not None:
            hook(t, ntd, tables[t])
    return (0,) in tables[ntd.root].get((2,), ())


def solve_hc(
    g: Graph,
    td: Optional[TreeDecomposition] = None,
    *,
    stats: Optional[DPStats] = None,
    usable: Optional[Set[int]] = None,
    hook: Optional[NodeHook] = None,
) -> bool:
    """Does ``g`` have a Hamiltonian cycle (a spanning cycle on >= 3 vertices)?"""
    stats = stats if stats is not None else DPStats()
    if td is None:
        td = heuristic_decompose(g)
    validate(td, g)
    if g.n < 3:
        return False
    vstar = g.vertices[0]
    ntd = _prepare(g, td, vstar)
    stats.merge_width(ntd)
    stats.runs += 1
    return _hc_dp(g, ntd, vstar, usable, stats, hook)


# -- witnesses --------------------------------------------------------------


class WitnessError(ValueError):
    pass


def _decide(kind: str, g: Graph, k: Set[int], td: TreeDecomposition, usable: Set[int], stats) -> bool:
    if kind == "ess":
        return solve_ess(g, k, td, usable=usable, stats=stats)
    if kind == "ses":
        return solve_ess(g, g.vertices, td, usable=usable, stats=stats)
    if kind == "des":
        return solve_des(g, td, usable=usable, stats=stats)
    if kind == "hc":
        return solve_hc(g, td, usable=usable, stats=stats)
    raise ValueError(f"unknown problem kind {kind!r}")


def check_witness(kind: str, g: Graph, k: Iterable[int], w: WitnessSubgraph) -> bool:
    """Witness invariants: Eulerian plus the per-problem containment condition."""
    h = w.as_graph(g)
    if not h.n or not h.is_eulerian():
        return False
    vs = w.vertices
    if kind == "ess":
        return set(k) <= vs
    if kind == "ses":
        return vs == g.vertex_set
    if kind == "des":
        return all(a in vs or b in vs for a, b in g.edges.values())
    if kind == "hc":
        return vs == g.vertex_set and g.n >= 3 and all(h.degree(v) == 2 for v in vs)
    raise ValueError(f"unknown problem kind {kind!r}")


def extract_witness(
    g: Graph,
    k: Optional[Iterable[int]],
    td: Optional[TreeDecomposition],
    kind: str,
    stats: Optional[DPStats] = None,
) -> WitnessSubgraph:
    """Find a solution subgraph by greedy edge deletion with decision calls.

    An edge is dropped from the usable set whenever the answer stays yes
    without it. At the end every usable edge lies in every solution, so the
    usable edges (plus a lone vertex when there are none) form the witness.
    """
    terminals = set(k or ())
    if td is None:
        td = heuristic_decompose(g)
    usable = set(g.edges)
    if not _decide(kind, g, terminals, td, usable, stats):
        raise WitnessError(f"{kind}: the instance has no solution")
    for e in sorted(g.edges):
        usable.discard(e)
        if not _decide(kind, g, terminals, td, usable, stats):
            usable.add(e)
    if usable:
        vs = frozenset(x for e in usable for x in g.endpoints(e))
    elif kind == "ess":
        vs = frozenset([min(terminals)] if terminals else [g.vertices[0]])
    elif kind == "ses":
        vs = frozenset(g.vertices)
    elif kind == "des":
        vs = frozenset()
        for v in g.vertices:
            if all(v in uv for uv in g.edges.values()):
                vs = frozenset([v])
                break
    else:
        vs = frozenset()
    w = WitnessSubgraph(vs, frozenset(usable))
    if not check_witness(kind, g, terminals, w):
        raise WitnessError(f"{kind}: extracted subgraph fails the witness check")
    return w
