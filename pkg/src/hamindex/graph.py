"""Undirected multigraphs with stable vertex and edge identifiers.

Vertices are non-negative integers; every edge has its own integer id, so
two edges with the same endpoint pair are distinct parallel edges.
Self-loops are rejected. Graphs are immutable once built.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Set, Tuple


class GraphError(ValueError):
    """Raised for malformed graphs or violated operation preconditions."""


class BudgetExceeded(RuntimeError):
    """An explicit size or resource budget was exceeded (distinct from "no")."""


Edge = Tuple[int, int]


class Graph:
    """An immutable undirected multigraph.

    ``edges`` maps each edge id to its endpoint pair. ``labels`` optionally
    records where a vertex came from (a source edge for line graphs, the
    merged original vertices for contractions).
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_inc", "labels")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Edge] | Mapping[int, Edge] = (),
        labels: Optional[Mapping[int, Hashable]] = None,
    ):
        vset = set(vertices)
        if isinstance(edges, Mapping):
            items = list(edges.items())
        else:
            items = list(enumerate(edges))
        emap: Dict[int, Edge] = {}
        inc: Dict[int, List[int]] = {v: [] for v in vset}
        for eid, (u, v) in items:
            if u == v:
                raise GraphError(f"self-loop at vertex {u} (edge {eid})")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} = ({u}, {v}) has an endpoint outside the vertex set")
            if eid in emap:
                raise GraphError(f"duplicate edge id {eid}")
            emap[eid] = (u, v)
            inc[u].append(eid)
            inc[v].append(eid)
        self._vertices = tuple(sorted(vset))
        self._vset = frozenset(vset)
        self._edges = emap
        self._inc = inc
        self.labels: Dict[int, Hashable] = dict(labels) if labels else {}

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset:
        return self._vset

    @property
    def edges(self) -> Mapping[int, Edge]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __contains__(self, v: int) -> bool:
        return v in self._vset

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vset == other._vset and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vset, frozenset(self._edges.items())))

    def endpoints(self, eid: int) -> Edge:
        return self._edges[eid]

    def incident(self, v: int) -> List[int]:
        """Edge ids incident to ``v``."""
        self._check(v)
        return list(self._inc[v])

    def neighbors(self, v: int) -> Set[int]:
        self._check(v)
        return {self.other_end(e, v) for e in self._inc[v]}

    def other_end(self, eid: int, v: int) -> int:
        a, b = self._edges[eid]
        return b if a == v else a

    def degree(self, v: int) -> int:
        """Number of edge endpoints at ``v``; parallel edges count separately."""
        self._check(v)
        return len(self._inc[v])

    def _check(self, v: int) -> None:
        if v not in self._vset:
            raise GraphError(f"unknown vertex {v}")

    def edge_list(self) -> List[Edge]:
        return [self._edges[e] for e in sorted(self._edges)]

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self._edges.values():
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- connectivity and parity ------------------------------------------

    def components(self) -> List[Set[int]]:
        seen: Set[int] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = {s}
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in self._inc[x]:
                    y = self.other_end(e, x)
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        """True iff there is at most one component (the empty graph counts)."""
        if self.n <= 1:
            return True
        return len(self.components()) == 1

    def odd_vertices(self) -> Set[int]:
        return {v for v in self._vertices if len(self._inc[v]) % 2}

    def is_eulerian(self) -> bool:
        """Connected with all degrees even. A single vertex is Eulerian."""
        return self.is_connected() and not self.odd_vertices()

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, vertices: Iterable[int], edges: Iterable[int] = ()) -> "Graph":
        """Subgraph on ``vertices`` using the listed edge ids (ids are kept)."""
        vs = set(vertices)
        missing = vs - self._vset
        if missing:
            raise GraphError(f"vertices {sorted(missing)} not in graph")
        emap = {}
        for e in edges:
            if e not in self._edges:
                raise GraphError(f"unknown edge id {e}")
            emap[e] = self._edges[e]
        return Graph(vs, emap, {v: self.labels[v] for v in vs if v in self.labels})

    def edge_subgraph(self, edges: Iterable[int]) -> "Graph":
        """Subgraph formed by ``edges`` and their endpoints."""
        es = list(edges)
        vs = {x for e in es for x in self._edges[e]}
        return self.subgraph(vs, es)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = set(vertices)
        return self.subgraph(vs, [e for e, (u, v) in self._edges.items() if u in vs and v in vs])

    def without_edges(self, edges: Iterable[int]) -> "Graph":
        drop = set(edges)
        return Graph(self._vset, {e: uv for e, uv in self._edges.items() if e not in drop}, self.labels)

    def relabeled(self) -> Tuple["Graph", Dict[int, int]]:
        """Copy with vertices renumbered 0..n-1 and edges 0..m-1, plus the vertex map."""
        vmap = {v: i for i, v in enumerate(self._vertices)}
        edges = [(vmap[u], vmap[v]) for u, v in self.edge_list()]
        labels = {vmap[v]: self.labels.get(v, v) for v in self._vertices}
        return Graph(range(self.n), edges, labels), vmap


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def is_connected(g: Graph) -> bool:
    return g.is_connected()


def is_eulerian(g: Graph) -> bool:
    return g.is_eulerian()


def odd_vertices(g: Graph) -> Set[int]:
    return g.odd_vertices()


def subgraph(g: Graph, vertices: Iterable[int], edges: Iterable[int]) -> Graph:
    return g.subgraph(vertices, edges)


def union(g1: Graph, g2: Graph) -> Graph:
    """Union by identifier: vertex sets and edge-id maps are merged.

    An edge id present in both graphs must have the same endpoints.
    """
    emap = dict(g1.edges)
    for e, uv in g2.edges.items():
        if e in emap and set(emap[e]) != set(uv):
            raise GraphError(f"edge id {e} has different endpoints in the two graphs")
        emap[e] = uv
    labels = dict(g1.labels)
    labels.update(g2.labels)
    return Graph(g1.vertex_set | g2.vertex_set, emap, labels)


def line_graph(g: Graph) -> Graph:
    """L(g): one vertex per edge id, adjacent iff the edges share an endpoint.

    The result is always simple, also when ``g`` has parallel edges. Each
    vertex of the result is labelled with the endpoints of its source edge.
    """
    pairs: Set[Tuple[int, int]] = set()
    for v in g.vertices:
        inc = sorted(g.incident(v))
        for i, e in enumerate(inc):
            for f in inc[i + 1:]:
                pairs.add((e, f))
    return Graph(g.edges.keys(), sorted(pairs), {e: g.endpoints(e) for e in g.edges})


def iterated_line_graph(g: Graph, r: int, size_cap: int = 10_000) -> Graph:
    """Apply :func:`line_graph` ``r`` times.

    Raises :class:`BudgetExceeded` as soon as an intermediate graph would
    have more than ``size_cap`` vertices.
    """
    if r < 0:
        raise GraphError("iteration count must be non-negative")
    cur = g
    for _ in range(r):
        if cur.m > size_cap:
            raise BudgetExceeded(f"line graph would have {cur.m} vertices > cap {size_cap}")
        cur, _ = line_graph(cur).relabeled()
    return cur


def contract_groups(g: Graph, groups: Iterable[Iterable[int]]) -> Tuple[Graph, Dict[int, int]]:
    """Contract each (connected, pairwise disjoint) vertex group to one vertex.

    Vertices are renumbered densely: untouched vertices keep their relative
    order and come first, then one supervertex per group. Edges between a
    group and the outside survive with their ids (so parallel edges appear);
    edges inside a group are dropped. Returns the new graph and the map from
    old to new vertex ids. Labels of the new graph give, per new vertex, the
    sorted tuple of old vertices it stands for.
    """
    groups = [set(grp) for grp in groups]
    owner: Dict[int, int] = {}
    for i, grp in enumerate(groups):
        if not grp:
            raise GraphError("cannot contract an empty vertex set")
        for v in grp:
            if v not in g:
                raise GraphError(f"unknown vertex {v}")
            if v in owner:
                raise GraphError(f"vertex {v} belongs to two contraction groups")
            owner[v] = i
        if not g.induced(grp).is_connected():
            raise GraphError(f"contraction group {sorted(grp)} does not induce a connected subgraph")
    vmap: Dict[int, int] = {}
    nxt = 0
    for v in g.vertices:
        if v not in owner:
            vmap[v] = nxt
            nxt += 1
    base = nxt
    for v, i in owner.items():
        vmap[v] = base + i
    members: Dict[int, List[int]] = {}
    for v, w in vmap.items():
        members.setdefault(w, []).append(v)
    emap = {}
    for e, (u, v) in g.edges.items():
        a, b = vmap[u], vmap[v]
        if a != b:
            emap[e] = (a, b)
    labels = {w: tuple(sorted(vs)) for w, vs in members.items()}
    return Graph(range(base + len(groups)), emap, labels), vmap


def contract_subgraph(g: Graph, h_vertices: Iterable[int]) -> Tuple[Graph, int]:
    """Replace the connected vertex set ``h_vertices`` by a single fresh vertex.

    Returns the contracted graph and the id of the new supervertex.
    """
    hv = set(h_vertices)
    out, vmap = contract_groups(g, [hv])
    return out, vmap[next(iter(hv))]
