"""Solver-versus-oracle comparison suites and the graph generators they use."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .dp import DPStats, solve_des, solve_ess, solve_hc
from .graph import BudgetExceeded, Graph, line_graph
from .hindex import hamiltonian_index, is_path
from .oracles import brute_des, brute_eulerian_steiner, brute_hamiltonian, brute_hindex
from .treedec import heuristic_decompose


# -- generators ------------------------------------------------------------


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every simple graph on vertices 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])


def connected_labeled_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        for g in labeled_graphs(n):
            if g.is_connected():
                yield g


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """A random spanning tree plus each remaining pair with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        j = order[rng.randrange(i)]
        edges.add(tuple(sorted((order[i], j))))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph(range(n), sorted(edges))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(range(n), [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def canonical_key(g: Graph) -> Tuple:
    """Smallest sorted edge list over all vertex relabelings (small n only)."""
    best = None
    vs = g.vertices
    for perm in itertools.permutations(range(g.n)):
        pos = dict(zip(vs, perm))
        key = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges.values()))
        if best is None or key < best:
            best = key
    return (g.n, best)


def unlabeled_connected_graphs(max_n: int) -> List[Graph]:
    """One representative per isomorphism class of connected graphs, n <= max_n.

    Built by extending each class on n - 1 vertices by a new vertex with
    every nonempty neighbourhood, then deduplicating by canonical key.
    """
    if max_n < 1:
        return []
    level = [Graph([0])]
    out = list(level)
    for n in range(2, max_n + 1):
        seen = {}
        for g in level:
            for r in range(1, n):
                for nb in itertools.combinations(range(n - 1), r):
                    h = Graph(range(n), list(g.edges.values()) + [(x, n - 1) for x in nb])
                    seen.setdefault(canonical_key(h), h)
        level = list(seen.values())
        out.extend(level)
    return out


# -- suites -----------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    mismatches: List[str] = field(default_factory=list)
    skipped: int = 0
    stats: DPStats = field(default_factory=DPStats)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.name}: {self.cases} cases, {len(self.mismatches)} mismatches, "
                f"{self.skipped} over oracle budget")


def _edges_str(g: Graph) -> str:
    return str(g.edge_list())


def ess_suite(graphs: Sequence[Graph], terminal_sets: Callable[[Graph], Sequence[Sequence[int]]],
              name: str = "ess") -> SuiteResult:
    res = SuiteResult(name)
    for g in graphs:
        td = heuristic_decompose(g)
        for k in terminal_sets(g):
            res.cases += 1
            got = solve_ess(g, k, td, stats=res.stats)
            want = brute_eulerian_steiner(g, k)
            if got != want:
                res.mismatches.append(f"{_edges_str(g)} K={list(k)}: dp={got} oracle={want}")
    return res


def des_suite(graphs: Sequence[Graph], name: str = "des") -> SuiteResult:
    """DP answer, brute-force answer, and Hamiltonicity of the line graph must agree."""
    res = SuiteResult(name)
    for g in graphs:
        if g.m < 3:
            continue
        res.cases += 1
        got = solve_des(g, stats=res.stats)
        want = brute_des(g)
        lg = brute_hamiltonian(line_graph(g).relabeled()[0])
        if not got == want == lg:
            res.mismatches.append(f"{_edges_str(g)}: dp={got} oracle={want} L(G) hamiltonian={lg}")
    return res


def hc_suite(graphs: Sequence[Graph], name: str = "hc") -> SuiteResult:
    res = SuiteResult(name)
    for g in graphs:
        res.cases += 1
        got = solve_hc(g, stats=res.stats)
        want = brute_hamiltonian(g)
        if got != want:
            res.mismatches.append(f"{_edges_str(g)}: dp={got} oracle={want}")
    return res


def hindex_suite(graphs: Sequence[Graph], name: str = "hindex") -> SuiteResult:
    """Pipeline equals oracle, and h <= n - 3 whenever n >= 4."""
    res = SuiteResult(name)
    for g in graphs:
        if not g.is_connected() or is_path(g):
            continue
        try:
            want = brute_hindex(g)
        except BudgetExceeded:
            res.skipped += 1
            continue
        res.cases += 1
        rep = hamiltonian_index(g)
        got = rep.value
        res.stats.max_table_size = max(res.stats.max_table_size, rep.stats.max_table_size)
        res.stats.bound_checks += rep.stats.bound_checks
        if got != want:
            res.mismatches.append(f"{_edges_str(g)}: pipeline={got} oracle={want}")
        elif g.n >= 4 and got > g.n - 3:
            res.mismatches.append(f"{_edges_str(g)}: h={got} exceeds n - 3")
    return res


def all_subsets(g: Graph) -> List[Tuple[int, ...]]:
    vs = g.vertices
    return [c for r in range(len(vs) + 1) for c in itertools.combinations(vs, r)]


def run_all(max_n: int, log: Optional[Callable[[str], None]] = None) -> List[SuiteResult]:
    """The exhaustive suites on labeled graphs with at most ``max_n`` vertices."""
    connected = list(connected_labeled_graphs(max_n))
    everything = [g for n in range(1, max_n + 1) for g in labeled_graphs(n)]
    results = [
        ess_suite(connected, all_subsets),
        des_suite(connected),
        hc_suite(everything),
        hindex_suite(unlabeled_connected_graphs(max_n)),
    ]
    if log:
        for r in results:
            log(r.line())
            for mm in r.mismatches[:10]:
                log("  " + mm)
    return results
