"""Tree decompositions: validation, construction, nice form, and rebuilds."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from .graph import Graph, GraphError


class DecompositionError(ValueError):
    """A tree decomposition is malformed or does not fit its graph."""


@dataclass
class TreeDecomposition:
    bags: Dict[int, FrozenSet[int]]
    tree_edges: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.bags = {t: frozenset(b) for t, b in self.bags.items()}
        self.tree_edges = [tuple(e) for e in self.tree_edges]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {t: [] for t in self.bags}
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _check_tree(td: TreeDecomposition) -> None:
    nodes = set(td.bags)
    for a, b in td.tree_edges:
        if a not in nodes or b not in nodes:
            raise DecompositionError(f"tree edge ({a}, {b}) refers to an unknown bag")
        if a == b:
            raise DecompositionError(f"tree edge ({a}, {b}) is a loop")
    if not nodes:
        return
    if len(td.tree_edges) != len(nodes) - 1:
        raise DecompositionError(
            f"not a tree: {len(nodes)} bags but {len(td.tree_edges)} tree edges")
    adj = td.adjacency()
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if seen != nodes:
        raise DecompositionError("not a tree: the bag graph is disconnected")


def validate(td: TreeDecomposition, g: Graph) -> int:
    """Check the three decomposition conditions; return the width.

    Raises :class:`DecompositionError` naming the failed condition and a
    witness vertex, edge, or bag.
    """
    _check_tree(td)
    covered: Dict[int, List[int]] = {}
    for t, bag in td.bags.items():
        for v in bag:
            if v not in g:
                raise DecompositionError(f"bag {t} contains vertex {v} which is not in the graph")
            covered.setdefault(v, []).append(t)
    for v in g.vertices:
        if v not in covered:
            raise DecompositionError(f"vertex uncovered: vertex {v} is in no bag")
    pairs = {}
    for e, (u, v) in g.edges.items():
        pairs.setdefault(frozenset((u, v)), e)
    for pair, e in pairs.items():
        u, v = tuple(pair)
        if not (set(covered[u]) & set(covered[v])):
            raise DecompositionError(f"edge uncovered: edge {e} = ({u}, {v}) lies in no bag")
    adj = td.adjacency()
    for v, nodes in covered.items():
        nodes_set = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y in nodes_set and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != nodes_set:
            raise DecompositionError(
                f"vertex subtree disconnected: bags containing vertex {v} do not form a subtree")
    return td.width


def heuristic_decompose(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a greedy min-fill elimination ordering."""
    adj: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges.values():
        adj[u].add(v)
        adj[v].add(u)

    def fill(x: int) -> int:
        nb = list(adj[x])
        missing = 0
        for i, a in enumerate(nb):
            na = adj[a]
            for b in nb[i + 1:]:
                if b not in na:
                    missing += 1
        return missing

    stamp = {v: 0 for v in adj}
    heap = [(fill(v), len(adj[v]), v, 0) for v in adj]
    heapq.heapify(heap)
    order: List[int] = []
    bags: List[FrozenSet[int]] = []
    done: Set[int] = set()
    while heap:
        f, d, v, s = heapq.heappop(heap)
        if v in done or s != stamp[v]:
            continue
        nb = adj[v]
        bags.append(frozenset(nb | {v}))
        order.append(v)
        done.add(v)
        nbl = list(nb)
        for i, a in enumerate(nbl):
            adj[a].discard(v)
            for b in nbl[i + 1:]:
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
        touched = set(nbl)
        for a in nbl:
            touched |= adj[a]
        touched -= done
        for x in touched:
            stamp[x] += 1
            heapq.heappush(heap, (fill(x), len(adj[x]), x, stamp[x]))
        del adj[v]
    pos = {v: i for i, v in enumerate(order)}
    tree_edges = []
    roots = []
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v]
        if later:
            tree_edges.append((i, min(later)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    if not order:
        return TreeDecomposition({0: frozenset()}, [])
    return TreeDecomposition(dict(enumerate(bags)), tree_edges)


# -- nice tree decompositions ----------------------------------------------

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass
class NiceNode:
    kind: str
    bag: FrozenSet[int]
    children: Tuple[int, ...] = ()
    vertex: Optional[int] = None
    edge: Optional[int] = None


@dataclass
class NiceTreeDecomposition:
    """Rooted nice decomposition; ``nodes[i].children`` index into ``nodes``."""

    nodes: List[NiceNode]
    root: int

    @property
    def width(self) -> int:
        return max(len(n.bag) for n in self.nodes) - 1

    def postorder(self) -> List[int]:
        out: List[int] = []
        stack = [(self.root, False)]
        while stack:
            t, expanded = stack.pop()
            if expanded:
                out.append(t)
                continue
            stack.append((t, True))
            for c in reversed(self.nodes[t].children):
                stack.append((c, False))
        return out

    def parents(self) -> Dict[int, int]:
        return {c: t for t, node in enumerate(self.nodes) for c in node.children}

    def as_plain(self) -> TreeDecomposition:
        bags = {}
        edges = []
        for t in self.postorder():
            bags[t] = self.nodes[t].bag
            edges.extend((t, c) for c in self.nodes[t].children)
        return TreeDecomposition(bags, edges)

    def subtree_graphs(self) -> Dict[int, Tuple[FrozenSet[int], FrozenSet[int]]]:
        """(V_t, E_t) for every node: bag vertices and edges introduced below t."""
        out = {}
        for t in self.postorder():
            node = self.nodes[t]
            vs = set(node.bag)
            es = set()
            for c in node.children:
                cv, ce = out[c]
                vs |= cv
                es |= ce
            if node.kind == INTRODUCE_EDGE:
                es.add(node.edge)
            out[t] = (frozenset(vs), frozenset(es))
        return out

    def check(self, g: Graph) -> None:
        """Verify the nice-node bag relations and single edge introduction."""
        introduced: Dict[int, int] = {}
        for t, node in enumerate(self.nodes):
            ch = [self.nodes[c] for c in node.children]
            if node.kind == LEAF:
                ok = not ch
            elif node.kind == INTRODUCE_VERTEX:
                ok = len(ch) == 1 and node.vertex not in ch[0].bag and node.bag == ch[0].bag | {node.vertex}
            elif node.kind == FORGET:
                ok = len(ch) == 1 and node.vertex in ch[0].bag and node.bag == ch[0].bag - {node.vertex}
            elif node.kind == INTRODUCE_EDGE:
                u, v = g.endpoints(node.edge)
                ok = len(ch) == 1 and node.bag == ch[0].bag and u in node.bag and v in node.bag
                if node.edge in introduced:
                    raise DecompositionError(f"edge {node.edge} introduced twice")
                introduced[node.edge] = t
            elif node.kind == JOIN:
                ok = len(ch) == 2 and all(c.bag == node.bag for c in ch)
            else:
                ok = False
            if not ok:
                raise DecompositionError(f"node {t} ({node.kind}) violates the nice-node rules")
        missing = set(g.edges) - set(introduced)
        if missing:
            raise DecompositionError(f"edges never introduced: {sorted(missing)}")


def make_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Nice decomposition of the same width with empty root and leaf bags.

    Each edge id gets its own introduce-edge node, placed directly below the
    forget node of whichever endpoint is forgotten first.
    """
    validate(td, g)
    nodes: List[NiceNode] = []

    def add(kind, bag, children=(), vertex=None, edge=None) -> int:
        nodes.append(NiceNode(kind, frozenset(bag), tuple(children), vertex, edge))
        return len(nodes) - 1

    def transition(top: int, target: FrozenSet[int]) -> int:
        bag = set(nodes[top].bag)
        for v in sorted(bag - target):
            bag.discard(v)
            top = add(FORGET, bag, (top,), vertex=v)
        for v in sorted(target - bag):
            bag.add(v)
            top = add(INTRODUCE_VERTEX, bag, (top,), vertex=v)
        return top

    if not td.bags:
        return NiceTreeDecomposition([NiceNode(LEAF, frozenset())], 0)
    adj = td.adjacency()
    troot = min(td.bags)
    order: List[int] = []
    tparent = {troot: None}
    stack = [troot]
    while stack:
        t = stack.pop()
        order.append(t)
        for c in sorted(adj[t]):
            if c not in tparent:
                tparent[c] = t
                stack.append(c)
    tchildren: Dict[int, List[int]] = {t: [] for t in td.bags}
    for t, p in tparent.items():
        if p is not None:
            tchildren[p].append(t)
    built: Dict[int, int] = {}
    for t in reversed(order):
        target = td.bags[t]
        tops = [transition(built.pop(c), target) for c in sorted(tchildren[t])]
        if not tops:
            tops = [transition(add(LEAF, ()), target)]
        cur = tops[0]
        for other in tops[1:]:
            cur = add(JOIN, target, (cur, other))
        built[t] = cur
    root = transition(built[troot], frozenset())

    # second pass: splice in introduce-edge nodes below forget nodes
    ntd = NiceTreeDecomposition(nodes, root)
    pending: Dict[int, List[int]] = {}
    for e, (u, v) in sorted(g.edges.items()):
        pending.setdefault(u, []).append(e)
        pending.setdefault(v, []).append(e)
    done: Set[int] = set()
    for t in ntd.postorder():
        node = nodes[t]
        if node.kind != FORGET:
            continue
        w = node.vertex
        child = node.children[0]
        below = child
        for e in pending.get(w, ()):
            if e in done:
                continue
            done.add(e)
            below = add(INTRODUCE_EDGE, nodes[child].bag, (below,), edge=e)
        node.children = (below,)
    if len(done) != g.m:
        raise DecompositionError("internal error: some edges were not introduced")
    return NiceTreeDecomposition(nodes, root)


def pin_vertex(ntd: NiceTreeDecomposition, v: int) -> NiceTreeDecomposition:
    """Add ``v`` to every bag and splice out its introduce and forget nodes."""
    old = ntd.nodes
    new: List[NiceNode] = []
    remap: Dict[int, int] = {}
    for t in ntd.postorder():
        node = old[t]
        if node.kind in (INTRODUCE_VERTEX, FORGET) and node.vertex == v:
            remap[t] = remap[node.children[0]]
            continue
        new.append(NiceNode(node.kind, node.bag | {v},
                            tuple(remap[c] for c in node.children), node.vertex, node.edge))
        remap[t] = len(new) - 1
    return NiceTreeDecomposition(new, remap[ntd.root])


# -- rebuilds after contractions -------------------------------------------


def contract_decomposition(
    td: TreeDecomposition,
    contracted_edges: Mapping[Tuple[int, int], int],
    vertex_map: Optional[Mapping[int, int]] = None,
) -> TreeDecomposition:
    """Replace x and y by v_xy in every bag that holds either of them.

    Two contracted edges may share a vertex only if they name the same v_xy
    (the merged vertex of sequential contractions).

    ``vertex_map`` renames all other vertices (identity when omitted), for
    contracted graphs whose vertices were renumbered.
    """
    sub: Dict[int, int] = {}
    for (x, y), vxy in contracted_edges.items():
        for z in (x, y):
            # edges sharing a vertex are fine only if they merge into one vertex
            if sub.setdefault(z, vxy) != vxy:
                raise DecompositionError(f"contracted edges are not vertex-disjoint (vertex {z})")
    bags = {}
    for t, bag in td.bags.items():
        nb = set()
        for z in bag:
            if z in sub:
                nb.add(sub[z])
            elif vertex_map is not None:
                nb.add(vertex_map[z])
            else:
                nb.add(z)
        bags[t] = frozenset(nb)
    return TreeDecomposition(bags, list(td.tree_edges))


def quotient_decomposition(
    td: TreeDecomposition,
    vmap: Mapping[int, int],
    kept: Iterable[int],
    target: Graph,
) -> TreeDecomposition:
    """Map bags through ``vmap``, dropping vertices outside ``kept``.

    Falls back to :func:`heuristic_decompose` if the mapped decomposition
    does not validate against ``target``.
    """
    keep = set(kept)
    bags = {t: frozenset(vmap[z] for z in bag if z in vmap and vmap[z] in keep)
            for t, bag in td.bags.items()}
    out = TreeDecomposition(bags, list(td.tree_edges))
    try:
        validate(out, target)
    except DecompositionError:
        return heuristic_decompose(target)
    return out
