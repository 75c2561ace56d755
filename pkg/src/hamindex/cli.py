"""Command-line front end.

Exit codes: 0 the command ran (the answer is in the output), 2 bad input,
3 a resource budget was exceeded, 4 crosscheck found a mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Dict, List, Optional, Sequence

from .dp import DPStats, extract_witness, solve_des, solve_ess, solve_hc
from .formats import FormatError, parse_terminals, read_graph, read_td, write_gr, write_td
from .graph import BudgetExceeded, Graph, GraphError, iterated_line_graph
from .hindex import hamiltonian_index
from .partitions import PartitionError
from .treedec import DecompositionError, TreeDecomposition, heuristic_decompose, validate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


class InputError(Exception):
    pass


def _load_td(path: Optional[str], g: Graph) -> Optional[TreeDecomposition]:
    if path is None:
        return None
    td, n = read_td(path)
    if n != g.n:
        raise InputError(f"decomposition is for {n} vertices, graph has {g.n}")
    validate(td, g)
    return td


def _terminals(arg: str, g: Graph) -> List[int]:
    if arg.endswith(".t"):
        with open(arg) as fh:
            ks = parse_terminals(fh.read())
    else:
        ks = parse_terminals(arg.replace(",", " "))
    bad = [k + 1 for k in ks if k not in g]
    if bad:
        raise InputError(f"terminals {bad} are not vertices of the graph")
    return ks


def _stats(st: DPStats, started: float) -> Dict:
    return {
        "width": st.width,
        "nodes": st.nodes,
        "max_table_size": st.max_table_size,
        "dp_runs": st.runs,
        "wall_time_s": round(time.perf_counter() - started, 6),
    }


def _emit(args, record: Dict) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
        return
    print(record["answer"])
    if "witness" in record:
        print("witness:", " ".join(f"{u}-{v}" for u, v in record["witness"]))
    st = record.get("stats")
    if st:
        print("stats:", " ".join(f"{k}={v}" for k, v in st.items()))


def _cmd_solve(args) -> int:
    started = time.perf_counter()
    g = read_graph(args.graph)
    td = _load_td(args.td, g)
    if td is None:
        td = heuristic_decompose(g)
    st = DPStats()
    kind = args.command
    ks: List[int] = []
    if kind == "ess":
        ks = _terminals(args.terminals, g)
        ans = solve_ess(g, ks, td, stats=st)
    elif kind == "ses":
        ans = solve_ess(g, g.vertices, td, stats=st)
    elif kind == "des":
        ans = solve_des(g, td, stats=st)
    else:
        ans = solve_hc(g, td, stats=st)
    record = {"command": kind, "answer": "yes" if ans else "no"}
    if args.witness and ans:
        w = extract_witness(g, ks, td, kind)
        record["witness"] = sorted(tuple(sorted((u + 1, v + 1))) for u, v in
                                   (g.endpoints(e) for e in w.edges))
        vertices = sorted(v + 1 for v in w.vertices)
    record["stats"] = _stats(st, started)
    _emit(args, record)
    if args.witness and ans and not args.json:
        print("witness vertices:", " ".join(map(str, vertices)))
    return EXIT_OK


def _cmd_hindex(args) -> int:
    started = time.perf_counter()
    g = read_graph(args.graph)
    td = _load_td(args.td, g)
    rep = hamiltonian_index(g, td, args.max_r)
    if args.max_r is None:
        record = {"command": "hindex", "answer": rep.value, "value": rep.value}
    else:
        sym = "<=" if rep.at_most else ">"
        record = {"command": "hindex", "answer": f"{sym} {args.max_r}"}
        if rep.value is not None:
            record["value"] = rep.value
    record["stats"] = _stats(rep.stats, started)
    record["stats"]["stages"] = [[s.depth, s.stage, s.answer] for s in rep.trace]
    _emit(args, record)
    return EXIT_OK


def _cmd_linegraph(args) -> int:
    g = read_graph(args.graph)
    h = iterated_line_graph(g, args.iterations, args.cap)
    sys.stdout.write(write_gr(h))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = read_graph(args.graph)
    sys.stdout.write(write_td(heuristic_decompose(g), g.n))
    return EXIT_OK


def _cmd_validate(args) -> int:
    g = read_graph(args.graph)
    td, n = read_td(args.td)
    if n != g.n:
        raise InputError(f"decomposition is for {n} vertices, graph has {g.n}")
    width = validate(td, g)
    if args.json:
        print(json.dumps({"command": "validate-td", "answer": width, "value": width, "stats": {}}))
    else:
        print(width)
    return EXIT_OK


def _cmd_crosscheck(args) -> int:
    from .crosscheck import run_all

    started = time.perf_counter()
    results = run_all(args.max_n, None if args.json else print)
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({
            "command": "crosscheck",
            "answer": "pass" if ok else "fail",
            "stats": {"suites": {r.name: {"cases": r.cases, "mismatches": len(r.mismatches),
                                          "skipped": r.skipped} for r in results},
                      "wall_time_s": round(time.perf_counter() - started, 6)},
        }, sort_keys=True))
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hamindex",
        description="Eulerian subgraph, Hamiltonian cycle and Hamiltonian index solvers "
                    "over tree decompositions.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, td=True):
        sp.add_argument("--graph", required=True, help="PACE .gr file")
        if td:
            sp.add_argument("--td", help="PACE .td file (min-fill heuristic when omitted)")
        sp.add_argument("--json", action="store_true", help="one JSON object on stdout")

    for name, text in (("ess", "Eulerian subgraph containing the terminals"),
                       ("ses", "spanning Eulerian subgraph"),
                       ("des", "Eulerian subgraph whose vertices cover every edge"),
                       ("hc", "Hamiltonian cycle")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        if name == "ess":
            sp.add_argument("--terminals", required=True,
                            help="1-indexed list like 1,4,7 or a .t file")
        sp.add_argument("--witness", action="store_true", help="also print a solution subgraph")
        sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("hindex", help="Hamiltonian index h(G), or the test h(G) <= R")
    common(sp)
    sp.add_argument("--max-r", type=int, help="decide h(G) <= R instead of computing h(G)")
    sp.set_defaults(func=_cmd_hindex)

    sp = sub.add_parser("linegraph", help="iterated line graph as .gr")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--iterations", type=int, required=True)
    sp.add_argument("--cap", type=int, default=10_000, help="largest intermediate vertex count")
    sp.set_defaults(func=_cmd_linegraph, json=False)

    sp = sub.add_parser("decompose", help="min-fill tree decomposition as .td")
    sp.add_argument("--graph", required=True)
    sp.set_defaults(func=_cmd_decompose, json=False)

    sp = sub.add_parser("validate-td", help="check a decomposition and print its width")
    common(sp, td=False)
    sp.add_argument("--td", required=True)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("crosscheck", help="compare solvers with brute force on all small graphs")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_crosscheck)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, DecompositionError, PartitionError, FormatError, InputError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
