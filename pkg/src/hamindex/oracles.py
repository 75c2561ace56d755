"""Brute-force reference answers, written straight from the definitions.

Nothing here imports the dynamic programs, the decompositions, or the
partition machinery; graphs are read through their vertex and edge maps
only. Every search is bounded by an :class:`OracleBudget` and raises
:class:`~hamindex.graph.BudgetExceeded` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import BudgetExceeded, Graph, GraphError


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 64  # Hamiltonian backtracking
    max_cycle_rank: int = 22  # even-subgraph enumeration is 2^(m - n + c)
    max_line_graph: int = 400  # vertices of any iterated line graph
    max_steps: int = 1_000_000  # backtracking nodes
    max_ehc_edges: int = 9

    def __post_init__(self):
        for name, val in vars(self).items():
            if val <= 0:
                raise ValueError(f"budget {name} must be positive")


DEFAULT_BUDGET = OracleBudget()


def _adjacency(g: Graph) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges.values():
        adj[u].add(v)
        adj[v].add(u)
    return adj


# -- Hamiltonian cycles -------------------------------------------------------


def brute_hamiltonian(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Backtracking search for a spanning cycle (needs at least three vertices)."""
    n = g.n
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed the backtracking budget {budget.max_vertices}")
    if n < 3:
        return False
    adj = _adjacency(g)
    if any(len(a) < 2 for a in adj.values()):
        return False
    # a minimum-degree start pins the most cycle edges early
    start = min(g.vertices, key=lambda x: (len(adj[x]), x))
    on_path = {start}
    path = [start]
    # free[x]: neighbours of x that are off the path or are one of its two ends
    free = {x: len(adj[x]) for x in adj}
    steps = 0

    def extend() -> bool:
        nonlocal steps
        steps += 1
        if steps > budget.max_steps:
            raise BudgetExceeded("Hamiltonian backtracking exceeded its step budget")
        last = path[-1]
        if len(path) == n:
            return start in adj[last]
        if not _reachable_rest(adj, on_path, last, n):
            return False
        cands = [w for w in adj[last] if w not in on_path]
        cands.sort(key=lambda x: free[x])
        for w in cands:
            # ``last`` becomes interior once w is appended
            ok = True
            if len(path) > 1:
                for x in adj[last]:
                    if x not in on_path and x != w:
                        free[x] -= 1
                        if free[x] < 2:
                            ok = False
            if ok:
                on_path.add(w)
                path.append(w)
                if extend():
                    return True
                path.pop()
                on_path.discard(w)
            if len(path) > 1:
                for x in adj[last]:
                    if x not in on_path and x != w:
                        free[x] += 1
        return False

    return extend()


def _reachable_rest(adj, on_path, last, n) -> bool:
    """Every off-path vertex must be reachable from ``last`` through off-path vertices."""
    seen = set()
    stack = [w for w in adj[last] if w not in on_path]
    seen.update(stack)
    while stack:
        for y in adj[stack.pop()]:
            if y not in on_path and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n - len(on_path)


# -- Eulerian subgraphs -------------------------------------------------------


class _EvenSubgraphs:
    """Enumerates every nonempty even-degree edge subset of a graph.

    Even subsets form the cycle space: each one is the XOR of the
    fundamental cycles of the non-tree edges it contains.
    """

    def __init__(self, g: Graph, budget: OracleBudget):
        self.g = g
        self.eids = sorted(g.edges)
        self.ends = [g.edges[e] for e in self.eids]
        vidx = {v: i for i, v in enumerate(g.vertices)}
        self.vbit = vidx
        parent: Dict[int, Tuple[int, int]] = {}  # vertex -> (parent vertex, edge index)
        seen: Set[int] = set()
        tree: Set[int] = set()
        adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in g.vertices}
        for i, (u, v) in enumerate(self.ends):
            adj[u].append((v, i))
            adj[v].append((u, i))
        depth: Dict[int, int] = {}
        for root in g.vertices:
            if root in seen:
                continue
            seen.add(root)
            depth[root] = 0
            stack = [root]
            while stack:
                x = stack.pop()
                for y, i in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        parent[y] = (x, i)
                        depth[y] = depth[x] + 1
                        tree.add(i)
                        stack.append(y)
        self.cycles: List[int] = []
        for i, (u, v) in enumerate(self.ends):
            if i in tree:
                continue
            mask = 1 << i
            a, b = u, v
            while a != b:
                if depth[a] < depth[b]:
                    a, b = b, a
                pa, ei = parent[a]
                mask ^= 1 << ei
                a = pa
            self.cycles.append(mask)
        if len(self.cycles) > budget.max_cycle_rank:
            raise BudgetExceeded(
                f"cycle rank {len(self.cycles)} exceeds the enumeration budget {budget.max_cycle_rank}")
        self.vmask = [(1 << vidx[u]) | (1 << vidx[v]) for u, v in self.ends]

    def __iter__(self):
        """Yield (edge mask, vertex mask) for every nonempty even subset (Gray-code order)."""
        cur = 0
        k = len(self.cycles)
        for step in range(1, 1 << k):
            flip = (step & -step).bit_length() - 1
            cur ^= self.cycles[flip]
            yield cur, self.vertex_mask(cur)

    def vertex_mask(self, emask: int) -> int:
        vm = 0
        i = 0
        while emask:
            if emask & 1:
                vm |= self.vmask[i]
            emask >>= 1
            i += 1
        return vm

    def connected(self, emask: int, vmask: int) -> bool:
        edges = [self.vmask[i] for i in range(len(self.ends)) if emask >> i & 1]
        reach = vmask & -vmask
        grown = True
        while grown:
            grown = False
            for em in edges:
                if em & reach and em & ~reach:
                    reach |= em
                    grown = True
        return reach == vmask


def brute_eulerian_steiner(g: Graph, k: Iterable[int], budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there a connected even-degree subgraph containing every vertex of ``k``?"""
    terms = set(k)
    bad = terms - g.vertex_set
    if bad:
        raise GraphError(f"terminals {sorted(bad)} are not vertices")
    if len(terms) <= 1:
        # a lone vertex (the terminal, if any) has no edges and is Eulerian
        return True
    space = _EvenSubgraphs(g, budget)
    tmask = 0
    for t in terms:
        tmask |= 1 << space.vbit[t]
    for em, vm in space:
        if vm & tmask == tmask and space.connected(em, vm):
            return True
    return False


def brute_ses(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return brute_eulerian_steiner(g, g.vertices, budget)


def brute_des(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there a connected even-degree subgraph whose vertices cover every edge?"""
    if g.m == 0:
        return True
    for v in g.vertices:
        if all(v in uv for uv in g.edges.values()):
            return True
    space = _EvenSubgraphs(g, budget)
    for em, vm in space:
        if all(vm & m for m in space.vmask) and space.connected(em, vm):
            return True
    return False


# -- line graphs and the index ------------------------------------------------


def _line_graph(g: Graph) -> Graph:
    eids = sorted(g.edges)
    pos = {e: i for i, e in enumerate(eids)}
    pairs = set()
    for a, b in combinations(eids, 2):
        if set(g.edges[a]) & set(g.edges[b]):
            pairs.add((pos[a], pos[b]))
    return Graph(range(len(eids)), sorted(pairs))


def _is_path(g: Graph) -> bool:
    if g.n == 0 or g.m != g.n - 1:
        return False
    adj = _adjacency(g)
    if any(len(adj[v]) > 2 for v in adj):
        return False
    # connected with n - 1 edges means a tree
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def brute_hindex(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Smallest r with L^r(g) Hamiltonian, found by building the line graphs."""
    if _is_path(g):
        raise GraphError("h undefined for paths")
    if not g.is_connected() or g.n == 0:
        raise GraphError("the Hamiltonian index needs a connected nonempty graph")
    if not g.is_simple():
        raise GraphError("the line-graph oracle takes simple graphs only")
    cur = g
    r = 0
    while True:
        if brute_hamiltonian(cur, budget):
            return r
        if cur.m > budget.max_line_graph:
            raise BudgetExceeded(f"L^{r + 1} would have {cur.m} vertices > budget {budget.max_line_graph}")
        cur = _line_graph(cur)
        r += 1


def brute_edge_hamiltonian_cycle(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there a cyclic order of all edges with consecutive edges sharing a vertex?"""
    m = g.m
    if m > budget.max_ehc_edges:
        raise BudgetExceeded(f"{m} edges exceed the edge-ordering budget {budget.max_ehc_edges}")
    if m < 3:
        return False
    eids = sorted(g.edges)
    touch = {e: {f for f in eids if f != e and set(g.edges[e]) & set(g.edges[f])} for e in eids}
    first = eids[0]
    used = {first}
    order = [first]

    def extend() -> bool:
        if len(order) == m:
            return first in touch[order[-1]]
        for f in touch[order[-1]]:
            if f not in used:
                used.add(f)
                order.append(f)
                if extend():
                    return True
                order.pop()
                used.discard(f)
        return False

    return extend()


# -- per-node validity for the DP soundness check -----------------------------


def _canonical(labels: Sequence[int]) -> Tuple[int, ...]:
    seen: Dict[int, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def valid_states(
    g: Graph,
    v_t: Iterable[int],
    e_t: Iterable[int],
    bag: Iterable[int],
    terminals: Optional[Iterable[int]] = None,
    vstar: Optional[int] = None,
    max_edges: int = 12,
) -> Dict[Tuple[Tuple[int, ...], FrozenSet[int]], Set[Tuple[int, ...]]]:
    """All valid (X, O) -> partitions of X for one node, by subgraph enumeration.

    ``v_t``/``e_t`` are the vertices and edges of the processed subgraph and
    ``bag`` the node's bag. With ``terminals`` given this checks the Steiner
    conditions (all terminals of V_t present); with ``terminals=None`` and a
    ``vstar`` it checks the vertex-cover conditions. A subgraph consists of
    an edge subset plus any bag vertices added as isolated vertices;
    isolated vertices outside the bag would form a component missing X.
    Partitions are restricted-growth tuples over sorted X.
    """
    vt = set(v_t)
    et = sorted(e_t)
    xt = sorted(bag)
    if len(et) > max_edges:
        raise BudgetExceeded(f"{len(et)} edges exceed the validity-check budget {max_edges}")
    must = set(terminals) & vt if terminals is not None else set()
    out: Dict[Tuple[Tuple[int, ...], FrozenSet[int]], Set[Tuple[int, ...]]] = {}
    for r in range(len(et) + 1):
        for sub in combinations(et, r):
            deg: Dict[int, int] = {}
            for e in sub:
                for x in g.edges[e]:
                    deg[x] = deg.get(x, 0) + 1
            touched = set(deg)
            forced = touched & set(xt)
            optional = [x for x in xt if x not in touched]
            for extra_r in range(len(optional) + 1):
                for extra in combinations(optional, extra_r):
                    verts = touched | set(extra)
                    x = tuple(sorted(forced | set(extra)))
                    if not must <= verts:
                        continue
                    if terminals is None:
                        if vstar not in verts:
                            continue
                        if not all(a in verts or b in verts for a, b in (g.edges[e] for e in et)):
                            continue
                    # components by union-find over the chosen edges
                    par = {v: v for v in verts}

                    def find(v):
                        while par[v] != v:
                            par[v] = par[par[v]]
                            v = par[v]
                        return v

                    for e in sub:
                        a, b = g.edges[e]
                        par[find(a)] = find(b)
                    roots_x = {find(v) for v in x}
                    if {find(v) for v in verts} != roots_x:
                        continue  # a component misses X
                    odd = frozenset(v for v, d in deg.items() if d % 2)
                    if not odd <= set(x):
                        continue
                    out.setdefault((x, odd), set()).add(_canonical([find(v) for v in x]))
    return out
