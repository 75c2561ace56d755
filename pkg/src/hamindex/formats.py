"""PACE-style text formats: graphs (.gr), tree decompositions (.td), terminals (.t).

Files use 1-indexed vertices; in memory vertices are 0-indexed, so vertex
``i`` in a file is ``i - 1`` in a :class:`Graph`. A repeated ``u v`` line in
a .gr file is a parallel edge. Comment lines start with ``c`` and are
dropped on reading.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

from .graph import Graph, GraphError
from .treedec import TreeDecomposition

PathLike = Union[str, Path]


class FormatError(GraphError):
    """Malformed input file (reported with its line number)."""


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield no, line.split()


def _ints(tokens: Sequence[str], no: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {no}: expected integers, got {' '.join(tokens)!r}") from None


def parse_gr(text: str) -> Graph:
    n = m = None
    edges: List[Tuple[int, int]] = []
    for no, tok in _lines(text):
        if tok[0] == "p":
            if n is not None:
                raise FormatError(f"line {no}: second header line")
            if len(tok) != 4 or tok[1] != "tw":
                raise FormatError(f"line {no}: header must be 'p tw <n> <m>'")
            n, m = _ints(tok[2:], no)
            continue
        if n is None:
            raise FormatError(f"line {no}: edge before the 'p tw' header")
        if len(tok) != 2:
            raise FormatError(f"line {no}: edge lines hold exactly two vertices")
        u, v = _ints(tok, no)
        for x in (u, v):
            if not 1 <= x <= n:
                raise FormatError(f"line {no}: vertex {x} outside 1..{n}")
        if u == v:
            raise FormatError(f"line {no}: self-loop at vertex {u}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing 'p tw <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, file has {len(edges)}")
    return Graph(range(n), edges)


def write_gr(g: Graph) -> str:
    """Serialize; vertices must be 0..n-1 (use :meth:`Graph.relabeled` otherwise)."""
    if g.vertices != tuple(range(g.n)):
        raise GraphError("only graphs on vertices 0..n-1 can be written as .gr")
    out = [f"p tw {g.n} {g.m}"]
    out += [f"{u + 1} {v + 1}" for u, v in g.edge_list()]
    return "\n".join(out) + "\n"


def parse_td(text: str) -> Tuple[TreeDecomposition, int]:
    """Return the decomposition and the vertex count from its header."""
    header = None
    bags = {}
    tree_edges = []
    for no, tok in _lines(text):
        if tok[0] == "s":
            if header is not None:
                raise FormatError(f"line {no}: second header line")
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError(f"line {no}: header must be 's td <bags> <max-bag> <n>'")
            header = _ints(tok[2:], no)
            continue
        if header is None:
            raise FormatError(f"line {no}: content before the 's td' header")
        nb, _, n = header
        if tok[0] == "b":
            vals = _ints(tok[1:], no)
            if not vals:
                raise FormatError(f"line {no}: bag line without an id")
            bid, verts = vals[0], vals[1:]
            if not 1 <= bid <= nb:
                raise FormatError(f"line {no}: bag id {bid} outside 1..{nb}")
            if bid in bags:
                raise FormatError(f"line {no}: bag {bid} defined twice")
            for v in verts:
                if not 1 <= v <= n:
                    raise FormatError(f"line {no}: vertex {v} outside 1..{n}")
            bags[bid] = frozenset(v - 1 for v in verts)
        else:
            if len(tok) != 2:
                raise FormatError(f"line {no}: tree edge lines hold exactly two bag ids")
            a, b = _ints(tok, no)
            tree_edges.append((a, b))
    if header is None:
        raise FormatError("missing 's td' header")
    nb, maxbag, n = header
    for b in range(1, nb + 1):
        bags.setdefault(b, frozenset())
    for a, b in tree_edges:
        if a not in bags or b not in bags:
            raise FormatError(f"tree edge ({a}, {b}) names an unknown bag")
    real_max = max((len(b) for b in bags.values()), default=0)
    if real_max != maxbag:
        raise FormatError(f"header says max bag size {maxbag}, largest bag has {real_max}")
    return TreeDecomposition(bags, tree_edges), n


def write_td(td: TreeDecomposition, n: int) -> str:
    """Serialize with bags renumbered 1..k in sorted id order."""
    ids = sorted(td.bags)
    num = {t: i + 1 for i, t in enumerate(ids)}
    maxbag = max((len(b) for b in td.bags.values()), default=0)
    out = [f"s td {len(ids)} {maxbag} {n}"]
    for t in ids:
        out.append(" ".join(["b", str(num[t])] + [str(v + 1) for v in sorted(td.bags[t])]))
    out += [f"{num[a]} {num[b]}" for a, b in td.tree_edges]
    return "\n".join(out) + "\n"


def parse_terminals(text: str) -> List[int]:
    """A ``t k v1 ... vk`` line (1-indexed), or a bare comma/space separated list."""
    body = [tok for _, tok in _lines(text)]
    if body and body[0][0] == "t":
        if len(body) != 1:
            raise FormatError("a .t file holds exactly one 't' line")
        vals = _ints(body[0][1:], 1)
        if not vals or vals[0] != len(vals) - 1:
            raise FormatError("terminal count does not match the listed vertices")
        verts = vals[1:]
    else:
        flat = [t for tok in body for part in tok for t in part.split(",") if t]
        verts = _ints(flat, 1)
    if any(v < 1 for v in verts):
        raise FormatError("terminals are 1-indexed vertex numbers")
    return [v - 1 for v in verts]


def write_terminals(k: Iterable[int]) -> str:
    ks = sorted(set(k))
    return " ".join(["t", str(len(ks))] + [str(v + 1) for v in ks]) + "\n"


def read_graph(path: PathLike) -> Graph:
    return parse_gr(Path(path).read_text())


def read_td(path: PathLike) -> Tuple[TreeDecomposition, int]:
    return parse_td(Path(path).read_text())
