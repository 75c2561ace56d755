"""Lanes, the short-lane contractions H(i) and their thinned forms, and the index pipeline.

The Hamiltonian index h(G) is the least r such that the r-th iterated line
graph of G is Hamiltonian. The pipeline never builds line graphs: it asks
whether G is Hamiltonian (h = 0), whether G has a dominating Eulerian
subgraph (h = 1), whether the thinned contraction H~(2) or H~(3) is
supereulerian (h = 2, 3), and otherwise contracts one edge of every lane of
length at least two and recurses with h(G) = h(G//L) + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .dp import DPStats, solve_des, solve_ess, solve_hc
from .graph import Graph, GraphError, contract_groups
from .treedec import (TreeDecomposition, contract_decomposition, heuristic_decompose,
                      quotient_decomposition, validate)

log = logging.getLogger(__name__)

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class Lane:
    index: int
    edges: Tuple[int, ...]
    walk: Tuple[int, ...]  # vertices along the lane, len(edges) + 1 of them
    kind: str
    is_end_lane: bool

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def ends(self) -> Tuple[int, int]:
        return self.walk[0], self.walk[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.walk[1:-1]


@dataclass
class LaneDecomposition:
    v2: FrozenSet[int]
    vhat: FrozenSet[int]
    lanes: List[Lane]

    def lane_of_edge(self) -> Dict[int, Lane]:
        return {e: ln for ln in self.lanes for e in ln.edges}


def lanes(g: Graph) -> LaneDecomposition:
    """Split the edges of a connected graph into lanes.

    Walks start at every vertex of degree other than two and continue
    through degree-two vertices until the next such vertex.
    """
    if not g.is_connected():
        raise GraphError("lanes are defined for connected graphs only")
    v2 = frozenset(v for v in g.vertices if g.degree(v) == 2)
    vhat = frozenset(g.vertex_set - v2)
    if not vhat:
        raise GraphError("graph is a cycle: every vertex has degree two")
    used: Set[int] = set()
    out: List[Lane] = []
    for s in sorted(vhat):
        for e0 in sorted(g.incident(s)):
            if e0 in used:
                continue
            walk = [s]
            es = []
            cur, e = s, e0
            while True:
                used.add(e)
                es.append(e)
                w = g.other_end(e, cur)
                walk.append(w)
                if w in vhat:
                    break
                a, b = g.incident(w)
                e = b if a == e else a
                cur = w
            kind = CYCLE if walk[0] == walk[-1] else PATH
            end = g.degree(walk[0]) == 1 or g.degree(walk[-1]) == 1
            out.append(Lane(len(out), tuple(es), tuple(walk), kind, end))
    return LaneDecomposition(v2, vhat, out)


# -- H(i) and H~(i) ---------------------------------------------------------


@dataclass
class LongLane:
    lane: Lane
    d_start: int
    d_end: int


@dataclass
class ContractionRecord:
    i: int
    source: Graph
    components: List[FrozenSet[int]]
    dmap: Dict[int, int]  # source vertex -> vertex of H
    d_vertices: Dict[int, FrozenSet[int]]  # D_j -> C_j
    H: Graph
    long_lanes: List[LongLane]
    pair_counts: Dict[Tuple[int, int], Tuple[int, int, int, int]] = field(default_factory=dict)
    tilde: Optional[Graph] = None
    tilde_vmap: Dict[int, int] = field(default_factory=dict)  # source vertex -> vertex of H~


def build_H(g: Graph, deco: LaneDecomposition, i: int) -> Tuple[Graph, ContractionRecord]:
    """Contract every component of G[V^] plus the lanes shorter than ``i``."""
    if i not in (2, 3):
        raise GraphError("i must be 2 or 3")
    short = [ln for ln in deco.lanes if ln.length < i]
    verts = set(deco.vhat)
    es: List[int] = []
    for ln in short:
        verts.update(ln.interior)
        es.extend(ln.edges)
    comps = sorted((frozenset(c) for c in g.subgraph(verts, es).components()), key=min)
    H, vmap = contract_groups(g, comps)
    dvs = {vmap[next(iter(c))]: c for c in comps}
    long_lanes = [LongLane(ln, vmap[ln.ends[0]], vmap[ln.ends[1]])
                  for ln in deco.lanes if ln.length >= i]
    return H, ContractionRecord(i, g, comps, vmap, dvs, H, long_lanes)


def thinning_target(l1: int, l2: int) -> Tuple[int, int]:
    """How many long (>= i+2) and short (i or i+1) parallel lanes to keep."""
    if l2 == 0:
        return (2, 0) if l1 % 2 == 0 else (1, 0)
    if l2 == 1:
        return (1, 1)
    return (0, 2)


def build_tilde_H(record: ContractionRecord) -> Graph:
    """Apply the three thinning steps to H(i); fills ``record.tilde``."""
    i = record.i
    g = record.source
    H = record.H
    # step 1: lanes closing up at one D vertex
    live = [ll for ll in record.long_lanes if ll.d_start != ll.d_end]
    dropped = [ll for ll in record.long_lanes if ll.d_start == ll.d_end]

    # step 2: thin bundles of parallel lanes
    by_pair: Dict[Tuple[int, int], List[LongLane]] = {}
    for ll in live:
        key = tuple(sorted((ll.d_start, ll.d_end)))
        by_pair.setdefault(key, []).append(ll)
    kept: List[LongLane] = []
    for key in sorted(by_pair):
        bundle = by_pair[key]
        longs = sorted((ll for ll in bundle if ll.lane.length >= i + 2),
                       key=lambda ll: (ll.lane.length, ll.lane.index))
        mids = sorted((ll for ll in bundle if ll.lane.length in (i, i + 1)),
                      key=lambda ll: (ll.lane.length, ll.lane.index))
        l1, l2 = len(longs), len(mids)
        if l1 + l2 >= 3:
            l3, l4 = thinning_target(l1, l2)
            keep = longs[:l3] + mids[:l4]
            record.pair_counts[key] = (l1, l2, l3, l4)
        else:
            keep = bundle
        keep_ids = {ll.lane.index for ll in keep}
        for ll in bundle:
            (kept if ll.lane.index in keep_ids else dropped).append(ll)
    kept.sort(key=lambda ll: ll.lane.index)

    # step 3: drop end-lanes of length i, shorten lanes of length i and i+1
    drop_vertices: Set[int] = set()
    drop_edges: Set[int] = set()
    new_edges: Dict[int, Tuple[int, int]] = {}
    merged_into: Dict[int, int] = {}  # H vertex -> D it is folded into
    for ll in dropped:
        drop_vertices.update(record.dmap[v] for v in ll.lane.interior)
        drop_edges.update(ll.lane.edges)
    for ll in kept:
        ln = ll.lane
        if ln.is_end_lane and ln.length == i:
            drop_vertices.update(record.dmap[v] for v in ln.interior)
            drop_edges.update(ln.edges)
            for end, d in zip(ln.ends, (ll.d_start, ll.d_end)):
                if g.degree(end) == 1:
                    drop_vertices.add(d)
        elif ln.length in (i, i + 1):
            drop_edges.update(ln.edges)
            for v in ln.interior:
                merged_into[record.dmap[v]] = ll.d_start
            new_edges[ln.edges[0]] = (ll.d_start, ll.d_end)
    gone = drop_vertices | set(merged_into)
    verts = [v for v in H.vertices if v not in gone]
    emap = {e: uv for e, uv in H.edges.items() if e not in drop_edges}
    emap.update(new_edges)
    labels = {v: H.labels[v] for v in verts if v in H.labels}
    tilde = Graph(verts, emap, labels)
    if tilde.n == 0:
        log.warning("H~(%d) is empty; treating it as supereulerian", i)

    tv: Dict[int, int] = {}
    for v, hv in record.dmap.items():
        if hv in drop_vertices:
            continue
        tv[v] = merged_into.get(hv, hv)
    record.tilde = tilde
    record.tilde_vmap = tv
    return tilde


def tilde_decomposition(record: ContractionRecord, td: TreeDecomposition) -> TreeDecomposition:
    assert record.tilde is not None
    return quotient_decomposition(td, record.tilde_vmap, record.tilde.vertices, record.tilde)


# -- G//L ------------------------------------------------------------------


@dataclass
class LaneContraction:
    graph: Graph
    contracted: Dict[Tuple[int, int], int]  # (x, y) -> v_xy
    vmap: Dict[int, int]  # every old vertex -> new vertex
    dropped_loops: List[int]


def contract_lanes(g: Graph, deco: LaneDecomposition) -> LaneContraction:
    """Contract one edge of every lane of length at least two.

    Lanes of length three or more contract an edge between two interior
    vertices, so those choices never touch each other. A length-two lane
    contracts the edge toward a degree-one end when it has one, otherwise
    toward an end not yet used by another choice; when both ends are taken
    the contractions share a vertex and merge into one supervertex.
    An edge that would become a loop (a length-two cycle lane) is dropped.
    """
    chosen: List[Tuple[int, int, int]] = []
    touched: Set[int] = set()
    for ln in deco.lanes:
        if ln.length < 2:
            continue
        if ln.length >= 3:
            k = 1
        else:
            a, b = ln.ends
            if ln.kind == CYCLE:
                k = 0
            elif g.degree(b) == 1 or (a in touched and b not in touched):
                k = 1
            else:
                k = 0
        e = ln.edges[k]
        x, y = ln.walk[k], ln.walk[k + 1]
        touched.update((x, y))
        chosen.append((e, x, y))
    if not chosen:
        vmap = {v: v for v in g.vertices}
        return LaneContraction(g, {}, vmap, [])
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, x, y in chosen:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: Dict[int, Set[int]] = {}
    for _, x, y in chosen:
        for z in (x, y):
            groups.setdefault(find(z), set()).add(z)
    ordered = [groups[r] for r in sorted(groups)]
    # contract_groups drops edges inside a group, which removes the chosen
    # edges and any edge that would become a loop
    out, vmap = contract_groups(g, ordered)
    inside = [e for e, (u, v) in g.edges.items() if vmap[u] == vmap[v]]
    chosen_ids = {e for e, _, _ in chosen}
    loops = sorted(e for e in inside if e not in chosen_ids)
    return LaneContraction(out, {(x, y): vmap[x] for _, x, y in chosen}, vmap, loops)


def contract_lane_decomposition(td: TreeDecomposition, lc: LaneContraction) -> TreeDecomposition:
    others = {v: w for v, w in lc.vmap.items()}
    return contract_decomposition(td, lc.contracted, others)


# -- the pipeline ------------------------------------------------------------


def is_path(g: Graph) -> bool:
    """Connected, simple, acyclic, maximum degree at most two (K1 counts)."""
    if g.n == 0 or not g.is_connected() or g.m != g.n - 1:
        return False
    return all(g.degree(v) <= 2 for v in g.vertices)


@dataclass
class StageResult:
    depth: int
    stage: int
    answer: bool
    n: int
    m: int


@dataclass
class HIndexReport:
    value: Optional[int]  # exact index, or None in decision mode
    r_cap: Optional[int] = None
    at_most: Optional[bool] = None  # h <= r_cap, decision mode only
    trace: List[StageResult] = field(default_factory=list)
    stats: DPStats = field(default_factory=DPStats)
    shortcut: bool = False


class PipelineError(RuntimeError):
    pass


def _supereulerian(h: Graph, td: Optional[TreeDecomposition], stats: DPStats) -> bool:
    if h.n == 0:
        return True
    return solve_ess(h, h.vertices, td, stats=stats)


def _run(g: Graph, td: TreeDecomposition, r_cap: Optional[int], rep: HIndexReport,
         depth: int, budget: int) -> Optional[int]:
    """Return h(g) if it is at most r_cap (or r_cap is None), else None."""
    stats = rep.stats

    def record(stage, ans):
        rep.trace.append(StageResult(depth, stage, ans, g.n, g.m))
        log.debug("depth %d stage %d -> %s", depth, stage, ans)
        return ans

    if record(0, solve_hc(g, td, stats=stats)):
        return 0
    if r_cap == 0:
        return None
    if g.m >= 3 and record(1, solve_des(g, td, stats=stats)):
        return 1
    if r_cap == 1:
        return None
    deco = lanes(g)
    for i in (2, 3):
        _, rec = build_H(g, deco, i)
        tilde = build_tilde_H(rec)
        ttd = tilde_decomposition(rec, td) if tilde.n else None
        if record(i, _supereulerian(tilde, ttd, stats)):
            return i
        if r_cap == i:
            return None
    if budget <= 0:
        raise PipelineError("lane contraction did not terminate within the vertex-count bound")
    lc = contract_lanes(g, deco)
    if not lc.contracted:
        raise PipelineError("no lane of length >= 2 to contract although h >= 4")
    record(4, False)
    sub = _run(lc.graph, contract_lane_decomposition(td, lc),
               None if r_cap is None else r_cap - 1, rep, depth + 1, budget - 1)
    return None if sub is None else sub + 1


def hamiltonian_index(g: Graph, td: Optional[TreeDecomposition] = None,
                      r_cap: Optional[int] = None) -> HIndexReport:
    """Exact h(g), or with ``r_cap`` the decision h(g) <= r_cap.

    In decision mode any r_cap >= n - 3 is answered yes at once, since the
    iterated line graphs of a connected non-path graph are Hamiltonian from
    that point on.
    """
    if g.n == 0 or not g.is_connected():
        raise GraphError("the Hamiltonian index needs a connected nonempty graph")
    if is_path(g):
        raise GraphError("h undefined for paths")
    if r_cap is not None and r_cap < 0:
        raise GraphError("r must be non-negative")
    if td is None:
        td = heuristic_decompose(g)
    validate(td, g)
    rep = HIndexReport(None, r_cap)
    if r_cap is not None and r_cap >= g.n - 3:
        rep.at_most = True
        rep.shortcut = True
        return rep
    h = _run(g, td, r_cap, rep, 0, g.n)
    if r_cap is None:
        rep.value = h
    else:
        rep.at_most = h is not None
        rep.value = h
    return rep
