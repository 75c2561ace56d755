"""Acceptance suite: one summary line per criterion, printed after the run."""

import functools
import itertools
import json
import random
import time

import pytest

from hamindex import cli
from hamindex.crosscheck import (all_subsets, connected_labeled_graphs, des_suite, ess_suite, hc_suite,
                                 hindex_suite, labeled_graphs, random_connected_graph, random_graph,
                                 unlabeled_connected_graphs)
from hamindex.dp import DPStats, TableBoundError, extract_witness, solve_des, solve_ess, solve_hc
from hamindex.formats import parse_gr, parse_td, write_gr, write_td
from hamindex.graph import Graph
from hamindex.partitions import enumerate_all, rgs_join
from hamindex.repset import PartitionSet, reduce
from hamindex.treedec import TreeDecomposition, heuristic_decompose

from conftest import ACCEPTANCE_LINES


def record(no, ok, detail):
    ACCEPTANCE_LINES[no] = f"[{'PASS' if ok else 'FAIL'}] criterion {no}: {detail}"


def merge_stats(*stats):
    out = DPStats()
    for s in stats:
        out.runs += s.runs
        out.bound_checks += s.bound_checks
        out.max_table_size = max(out.max_table_size, s.max_table_size)
    return out


# -- 1: representative sets --------------------------------------------------


def all_rgs(k):
    return [p.rgs for p in enumerate_all(range(k))]


def brute_represents(kept, family, k):
    """For every partition R: some member of family joins R to one block iff some kept one does."""
    top = (0,) * k
    for r in all_rgs(k):
        want = any(rgs_join(a, r) == top for a in family)
        got = any(rgs_join(b, r) == top for b in kept)
        if want != got:
            return False
    return True


@functools.lru_cache(maxsize=None)
def criterion_1():
    rng = random.Random(1)
    started = time.perf_counter()
    failures = cases = 0
    for k in range(1, 5):
        parts = all_rgs(k)
        for _ in range(200):
            fam = [p for p in parts if rng.random() < rng.random()]
            kept = [p.rgs for p in reduce(PartitionSet(range(k), (enumerate_all(range(k))[parts.index(r)] for r in fam)))]
            cases += 1
            ok = (set(kept) <= set(fam) and len(kept) <= 2 ** (k - 1)
                  and brute_represents(kept, fam, k))
            failures += not ok
    return cases, failures, time.perf_counter() - started


def test_criterion_1_representative_sets():
    cases, failures, secs = criterion_1()
    ok = failures == 0 and secs < 10
    record(1, ok, f"{cases} random families, |X| in 1..4, {failures} failures, {secs:.2f}s (limit 10s)")
    assert ok


# -- 2: ESS ------------------------------------------------------------------


def random_terminals(rng, g, count=3):
    return [rng.sample(g.vertices, rng.randint(1, g.n)) for _ in range(count)]


@functools.lru_cache(maxsize=None)
def criterion_2():
    started = time.perf_counter()
    exhaustive = ess_suite(list(connected_labeled_graphs(5)), all_subsets, "ess exhaustive")
    rng = random.Random(2)
    graphs = [random_connected_graph(rng.randint(6, 8), rng.uniform(0.25, 0.6), rng) for _ in range(2000)]
    sets = {id(g): random_terminals(rng, g) for g in graphs}
    rand = ess_suite(graphs, lambda g: sets[id(g)], "ess random")
    return exhaustive, rand, time.perf_counter() - started


def test_criterion_2_ess():
    ex, rnd, secs = criterion_2()
    ok = ex.ok and rnd.ok and secs < 600
    record(2, ok, f"ESS {ex.cases} exhaustive + {rnd.cases} random cases, "
                  f"{len(ex.mismatches) + len(rnd.mismatches)} mismatches, {secs:.1f}s")
    assert ok, (ex.mismatches + rnd.mismatches)[:5]


# -- 3: DES ------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def criterion_3():
    started = time.perf_counter()
    unl = des_suite(unlabeled_connected_graphs(6), "des unlabeled n<=6")
    lab = des_suite(list(connected_labeled_graphs(5)), "des labeled n<=5")
    return unl, lab, time.perf_counter() - started


def test_criterion_3_des():
    unl, lab, secs = criterion_3()
    ok = unl.ok and lab.ok and secs < 600
    record(3, ok, f"DES = brute = HC(L(G)) on {unl.cases} classes (n<=6) + {lab.cases} labeled "
                  f"(n<=5), {len(unl.mismatches) + len(lab.mismatches)} mismatches, {secs:.1f}s")
    assert ok, (unl.mismatches + lab.mismatches)[:5]


# -- 4: HC -------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def criterion_4():
    exhaustive = hc_suite([g for n in range(1, 6) for g in labeled_graphs(n)], "hc exhaustive")
    rng = random.Random(4)
    graphs = [random_graph(rng.randint(1, 10), rng.uniform(0.2, 0.8), rng) for _ in range(2000)]
    return exhaustive, hc_suite(graphs, "hc random")


def test_criterion_4_hc():
    ex, rnd = criterion_4()
    ok = ex.ok and rnd.ok
    record(4, ok, f"HC {ex.cases} exhaustive + {rnd.cases} random cases, "
                  f"{len(ex.mismatches) + len(rnd.mismatches)} mismatches")
    assert ok, (ex.mismatches + rnd.mismatches)[:5]


# -- 5: Hamiltonian index ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def criterion_5():
    unl = hindex_suite(unlabeled_connected_graphs(6), "hindex unlabeled n<=6")
    lab = hindex_suite(list(connected_labeled_graphs(5)), "hindex labeled n<=5")
    return unl, lab


def test_criterion_5_hindex():
    unl, lab = criterion_5()
    ok = unl.ok and lab.ok
    record(5, ok, f"h(G) = oracle and h <= n-3 on {unl.cases} classes (n<=6) + {lab.cases} labeled, "
                  f"{len(unl.mismatches) + len(lab.mismatches)} mismatches, "
                  f"{unl.skipped + lab.skipped} over oracle budget")
    assert ok, (unl.mismatches + lab.mismatches)[:5]


# -- 6: table bound ------------------------------------------------------------


def bound_hook(violations):
    def hook(t, ntd, table):
        # ESS keys are (X, O), HC keys are degree tags; partitions span the ground set either way
        for key, parts in table.items():
            if parts and len(parts) > max(1, 2 ** (len(parts[0]) - 1)):
                violations.append((t, key, len(parts)))
    return hook


@functools.lru_cache(maxsize=None)
def criterion_6():
    # every finalized table goes through the in-solver bound check, which raises on violation
    suites = [*criterion_2()[:2], *criterion_3()[:2], *criterion_4(), *criterion_5()]
    total = merge_stats(*(s.stats for s in suites))
    # plus an outside look at every table through the node hook
    violations, errors = [], 0
    rng = random.Random(6)
    hooked = 0
    for _ in range(300):
        g = random_connected_graph(rng.randint(2, 9), rng.uniform(0.2, 0.7), rng)
        hook = bound_hook(violations)
        try:
            solve_ess(g, random_terminals(rng, g, 1)[0], hook=hook)
            solve_des(g, hook=hook)
            solve_hc(g, hook=hook)
        except TableBoundError:
            errors += 1
        hooked += 1
    return total, violations, errors, hooked


def test_criterion_6_table_bound():
    total, violations, errors, hooked = criterion_6()
    ok = not violations and errors == 0 and total.bound_checks > 0
    record(6, ok, f"{total.bound_checks} finalized entries checked in suites (max {total.max_table_size}), "
                  f"{hooked} hooked runs, {len(violations) + errors} violations")
    assert ok


# -- 7: witnesses ----------------------------------------------------------------


def witness_ok(kind, g, k, edges):
    """Independent check on an edge list of (u, v) pairs of g."""
    if not edges:
        vs = set()
    else:
        vs = {x for e in edges for x in e}
    deg = {v: 0 for v in vs}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if any(d % 2 for d in deg.values()):
        return False
    # connectivity of the edge set
    if vs:
        seen, stack = set(), [next(iter(vs))]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack += [b if a == x else a for a, b in edges if x in (a, b)]
        if seen != vs:
            return False
    avail = list(g.edges.values())
    for e in edges:
        if e in avail:
            avail.remove(e)
        elif e[::-1] in avail:
            avail.remove(e[::-1])
        else:
            return False
    if kind == "ess":
        return not edges and len(set(k)) <= 1 or set(k) <= vs
    if kind == "ses":
        return vs == set(g.vertices) or (not edges and g.n == 1)
    if kind == "des":
        return all(a in vs or b in vs for a, b in g.edges.values()) or (
            not edges and any(all(v in uv for uv in g.edges.values()) for v in g.vertices))
    return vs == set(g.vertices) and all(d == 2 for d in deg.values())


@functools.lru_cache(maxsize=None)
def criterion_7():
    rng = random.Random(7)
    checked = bad = 0
    for _ in range(250):
        g = random_connected_graph(rng.randint(2, 8), rng.uniform(0.2, 0.7), rng)
        td = heuristic_decompose(g)
        k = random_terminals(rng, g, 1)[0]
        for kind, ans in (("ess", solve_ess(g, k, td)), ("ses", solve_ess(g, g.vertices, td)),
                          ("des", solve_des(g, td)), ("hc", solve_hc(g, td))):
            if not ans:
                continue
            w = extract_witness(g, k if kind == "ess" else None, td, kind)
            edges = [g.endpoints(e) for e in w.edges]
            checked += 1
            bad += not witness_ok(kind, g, k, edges) or (not edges and kind == "hc")
    return checked, bad


def test_criterion_7_witness(tmp_path, capsys):
    checked, bad = criterion_7()
    # the CLI path as well
    rng = random.Random(77)
    cli_checked = 0
    for i in range(40):
        g = random_connected_graph(rng.randint(3, 8), rng.uniform(0.3, 0.8), rng)
        gr = tmp_path / f"g{i}.gr"
        gr.write_text(write_gr(g))
        for kind in ("ses", "des", "hc"):
            assert cli.main([kind, "--graph", str(gr), "--json", "--witness"]) == 0
            rec = json.loads(capsys.readouterr().out)
            if rec["answer"] == "yes":
                edges = [(u - 1, v - 1) for u, v in rec["witness"]]
                bad += not witness_ok(kind, g, [], edges)
                cli_checked += 1
    ok = bad == 0 and checked > 0 and cli_checked > 0
    record(7, ok, f"{checked} library + {cli_checked} CLI witnesses verified, {bad} invalid")
    assert ok


# -- 8: scaling ----------------------------------------------------------------


def strip(n):
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(i + 4, n))]
    td = TreeDecomposition({i: set(range(i, i + 4)) for i in range(n - 3)},
                           [(i, i + 1) for i in range(n - 4)])
    return Graph(range(n), edges), td, list(range(0, n, 7))


def time_ess(n, repeats):
    g, td, ks = strip(n)
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        solve_ess(g, ks, td)
        best = min(best, time.perf_counter() - started)
    return best


def test_criterion_8_scaling():
    times = {n: time_ess(n, r) for n, r in ((100, 5), (1000, 3), (10_000, 1))}
    per = {n: t / n for n, t in times.items()}
    ratio = max(per.values()) / per[100]
    ok = ratio <= 4
    within = "within 2x" if ratio <= 2 else "above 2x"
    record(8, ok, "width 3 ESS " + ", ".join(f"n={n}: {t:.3f}s" for n, t in times.items())
           + f"; per-vertex growth {ratio:.2f}x ({within} of linear, hard limit 4x)")
    assert ok


# -- 9: formats and CLI ----------------------------------------------------------


def test_criterion_9_formats_cli(tmp_path, capsys):
    rng = random.Random(9)
    roundtrip_bad = 0
    for _ in range(200):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        extra = [tuple(rng.sample(g.vertices, 2)) for _ in range(rng.randint(0, 3))] if g.n > 1 else []
        g = Graph(g.vertices, list(g.edges.values()) + extra)
        text = "c generated\n" + write_gr(g)
        roundtrip_bad += parse_gr(text) != g
        td_text = write_td(heuristic_decompose(g), g.n)
        td, n = parse_td(td_text)
        roundtrip_bad += write_td(td, n) != td_text or n != g.n

    def run(*argv):
        code = cli.main(list(argv))
        capsys.readouterr()
        return code

    c5 = tmp_path / "c5.gr"
    c5.write_text(write_gr(Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])))
    k5 = tmp_path / "k5.gr"
    k5.write_text(write_gr(Graph(range(5), list(itertools.combinations(range(5), 2)))))
    bad_td = tmp_path / "bad.td"
    bad_td.write_text("s td 2 3 5\nb 1 1 2 3\nb 2 3 4 5\n1 2\n")
    codes = {
        "ran": run("hc", "--graph", str(c5)),
        "bad input": run("validate-td", "--graph", str(c5), "--td", str(bad_td)),
        "budget": run("linegraph", "--graph", str(k5), "--iterations", "3", "--cap", "100"),
        "crosscheck --max-n 5": run("crosscheck", "--max-n", "5"),
    }
    expected = {"ran": 0, "bad input": 2, "budget": 3, "crosscheck --max-n 5": 0}
    ok = roundtrip_bad == 0 and codes == expected
    record(9, ok, f"400 round-trips ({roundtrip_bad} bad), exit codes "
                  + ", ".join(f"{k}={v}" for k, v in codes.items()))
    assert ok, codes
