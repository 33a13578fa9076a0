"""Graph corpora for the verification sweeps.

All connected graphs up to isomorphism: orders up to 7 come from the networkx
graph atlas, order 8 from a bundled graph6 file produced by
:func:`extend_connected` (regenerate with ``python -m kfox.corpus``). Cubic
3-connected graphs are grown from K4 by joining subdivision vertices of two
distinct edges, which reaches every cubic 3-connected graph.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator

import networkx as nx

from kfox.bits import iter_bits
from kfox.connectivity import is_k_connected
from kfox.formats import read_graph6_lines, to_graph6
from kfox.graph import Graph, complete_graph, is_connected

# number of connected graphs on n vertices, OEIS A001349
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
# number of cubic 3-connected graphs on n vertices, OEIS A204198
CUBIC_3CONNECTED_COUNTS = {4: 1, 6: 2, 8: 4, 10: 14, 12: 57}

_DATA_FILE = "connected8.g6"


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), ((pos[u], pos[v]) for u, v in h.edges()))


def _invariant(g: Graph) -> tuple:
    deg = g.degrees()
    tri = [0] * g.n
    for u, v in g.edges:
        common = g.adj[u] & g.adj[v]
        for w in iter_bits(common):
            tri[w] += 1
    profile = sorted(
        (deg[v], tri[v], tuple(sorted(deg[u] for u in iter_bits(g.adj[v])))) for v in range(g.n)
    )
    return (g.n, g.size, tuple(profile))


def dedup_isomorphic(graphs: Iterable[Graph]) -> list[Graph]:
    """First representative of every isomorphism class, in input order."""
    buckets: dict[tuple, list[tuple[Graph, nx.Graph]]] = {}
    out = []
    for g in graphs:
        key = _invariant(g)
        h = to_nx(g)
        bucket = buckets.setdefault(key, [])
        if any(nx.vf2pp_is_isomorphic(h, other) for _, other in bucket):
            continue
        bucket.append((g, h))
        out.append(g)
    return out


@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    return tuple(from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() > 0)


def extend_connected(graphs: Iterable[Graph]) -> list[Graph]:
    """All connected graphs on n + 1 vertices from all connected ones on n.

    Every connected graph has a vertex whose deletion leaves it connected, so
    adding a new vertex with every nonempty neighbourhood is exhaustive.
    """
    def candidates() -> Iterator[Graph]:
        for g in graphs:
            for nb in range(1, 1 << g.n):
                adj = list(g.adj)
                for v in iter_bits(nb):
                    adj[v] |= 1 << g.n
                adj.append(nb)
                yield Graph._trusted(adj)

    return dedup_isomorphic(candidates())


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """Connected graphs on exactly n vertices, one per isomorphism class."""
    if n < 1:
        return ()
    if n <= 7:
        return tuple(g for g in _atlas() if g.n == n and is_connected(g))
    if n == 8:
        text = resources.files("kfox.data").joinpath(_DATA_FILE).read_text()
        return tuple(read_graph6_lines(text.splitlines()))
    raise ValueError("the built-in corpus covers orders up to 8; supply a graph6 corpus")


def graphs_up_to(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from connected_graphs(n)


def k_connected_graphs(max_n: int, k: int) -> Iterator[Graph]:
    for g in graphs_up_to(max_n, k + 1):
        if is_k_connected(g, k):
            yield g


def _insert_edge(g: Graph, e: tuple[int, int], f: tuple[int, int]) -> Graph:
    a, b = g.n, g.n + 1
    edges = [x for x in g.edges if x != e and x != f]
    edges += [(e[0], a), (a, e[1]), (f[0], b), (b, f[1]), (a, b)]
    return Graph.from_edges(g.n + 2, edges)


@lru_cache(maxsize=None)
def cubic_3connected(n: int) -> tuple[Graph, ...]:
    """Cubic 3-connected graphs on n vertices, one per isomorphism class."""
    if n < 4 or n % 2:
        return ()
    if n == 4:
        return (complete_graph(4),)
    cands = []
    for g in cubic_3connected(n - 2):
        es = g.edges
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                cands.append(_insert_edge(g, es[i], es[j]))
    return tuple(h for h in dedup_isomorphic(cands) if is_k_connected(h, 3))


def cubic_graphs_up_to(max_n: int) -> Iterator[Graph]:
    for n in range(4, max_n + 1, 2):
        yield from cubic_3connected(n)


def write_order8(path) -> int:
    graphs = extend_connected(connected_graphs(7))
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
    return len(graphs)


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else str(
        resources.files("kfox.data").joinpath(_DATA_FILE)
    )
    print(write_order8(target), "graphs written to", target, file=sys.stderr)
