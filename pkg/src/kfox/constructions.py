"""Generators for the example and sharpness graph families.

Every generator checks its advertised connectivity and degree properties
through :mod:`kfox.connectivity` before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from kfox.bits import iter_bits
from kfox.connectivity import is_k_connected, vertex_connectivity
from kfox.graph import Graph, GraphError, cycle_graph, delete_vertex, min_degree, norm_edge
from kfox.trees import RootedTree


class ConstructionError(GraphError):
    pass


def _ensure(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionError(msg)


def wheel(rim: int) -> Graph:
    """Rim cycle on 0..rim-1 with the hub at vertex ``rim``."""
    if rim < 3:
        raise ConstructionError("a wheel needs at least 3 rim vertices")
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    g = Graph.from_edges(rim + 1, edges)
    _ensure(vertex_connectivity(g) == 3, "wheel is not 3-connected")
    return g


def wheel_hub(g: Graph) -> int:
    return g.n - 1


def prism() -> Graph:
    """K3 x K2: triangles 0-1-2 and 3-4-5 joined by the matching i -- i+3."""
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    g = Graph.from_edges(6, edges)
    _ensure(vertex_connectivity(g) == 3 and all(d == 3 for d in g.degrees()), "bad prism")
    return g


def prism_plus() -> Graph:
    """The prism plus its lexicographically least missing edge, (0, 4)."""
    p = prism()
    missing = next((u, v) for u in range(6) for v in range(u + 1, 6) if not p.has_edge(u, v))
    g = Graph.from_edges(6, list(p.edges) + [missing])
    _ensure(vertex_connectivity(g) == 3, "prism plus an edge should stay 3-connected")
    return g


def is_critically_2_connected(g: Graph) -> bool:
    if g.n < 3 or not is_k_connected(g, 2):
        return False
    return all(not is_k_connected(delete_vertex(g, x), 2) for x in range(g.n))


def lex_apex(base: Graph, k: int, check_critical: bool = True) -> Graph:
    """Lexicographic product of ``base`` with K_{(k-1)/2}, plus an apex joined to all.

    Vertex ``x`` of the base becomes the blob ``x*b .. x*b + b - 1`` with
    ``b = (k - 1) / 2``; the apex is the last vertex.
    """
    if k < 3 or k % 2 == 0:
        raise ConstructionError("k must be odd and at least 3")
    if check_critical and not is_critically_2_connected(base):
        raise ConstructionError("base graph is not critically 2-connected")
    b = (k - 1) // 2
    n = base.n * b + 1
    apex = n - 1
    edges = []
    for x in range(base.n):
        blob = range(x * b, x * b + b)
        edges += [(u, v) for u in blob for v in blob if u < v]
        edges += [(u, apex) for u in blob]
    for x, y in base.edges:
        edges += [(u, v) for u in range(x * b, x * b + b) for v in range(y * b, y * b + b)]
    g = Graph.from_edges(n, edges)
    _ensure(is_k_connected(g, k), f"apex construction is not {k}-connected")
    _ensure(2 * min_degree(g) == 3 * k - 3, "apex construction has the wrong minimum degree")
    return g


def cycle_lex_apex(n: int, k: int) -> Graph:
    """C_n[K_{(k-1)/2}] plus an apex; for k = 3 this is ``wheel(n)``."""
    if n < 3:
        raise ConstructionError("cycle length must be at least 3")
    return lex_apex(cycle_graph(n), k, check_critical=False)


def apex_star(g: Graph) -> RootedTree:
    apex = g.n - 1
    return RootedTree.make(g.n, ((apex, v) for v in range(apex)), apex)


@dataclass(frozen=True)
class Expansion:
    base: Graph
    graph: Graph
    triangles: tuple[int, ...]  # mask of the triangle replacing each base vertex
    ports: dict  # (x, y) -> vertex of triangle(x) carrying the edge xy

    def port(self, x: int, y: int) -> int:
        return self.ports[(x, y)]


def triangle_expand(g: Graph) -> Expansion:
    """Replace each vertex x of a cubic 3-connected graph by a triangle.

    Triangle vertices ``3x, 3x+1, 3x+2`` receive the edges to the neighbors of
    ``x`` in ascending neighbor order.
    """
    if any(d != 3 for d in g.degrees()):
        raise ConstructionError("triangle expansion needs a cubic graph")
    if not is_k_connected(g, 3):
        raise ConstructionError("triangle expansion needs a 3-connected graph")
    ports = {}
    for x in range(g.n):
        for j, y in enumerate(iter_bits(g.adj[x])):
            ports[(x, y)] = 3 * x + j
    edges = []
    for x in range(g.n):
        edges += [(3 * x, 3 * x + 1), (3 * x, 3 * x + 2), (3 * x + 1, 3 * x + 2)]
    for x, y in g.edges:
        edges.append((ports[(x, y)], ports[(y, x)]))
    h = Graph.from_edges(3 * g.n, edges)
    _ensure(all(d == 3 for d in h.degrees()), "expansion is not cubic")
    _ensure(is_k_connected(h, 3), "expansion is not 3-connected")
    tri = tuple(7 << (3 * x) for x in range(g.n))
    return Expansion(g, h, tri, ports)


def _hamiltonian_order(t: RootedTree) -> Optional[list[int]]:
    adj = t.adjacency()
    if any(a.bit_count() > 2 for a in adj):
        return None
    ends = [v for v in range(t.n) if adj[v].bit_count() <= 1]
    start = t.root if t.root in ends else ends[0]
    order, prev = [start], -1
    while len(order) < t.n:
        v = order[-1]
        nxt = next(u for u in iter_bits(adj[v]) if u != prev)
        prev = v
        order.append(nxt)
    return order


def lift_tree(g: Graph, t: RootedTree, expansion: Expansion) -> RootedTree:
    """T' = edges of T plus a spanning path inside every triangle.

    If T is a Hamiltonian path the triangle paths are threaded so that T' is a
    Hamiltonian path of the expansion, rooted at one of its ends.
    """
    if t.n != g.n or expansion.base != g:
        raise ConstructionError("tree, base graph and expansion do not match")
    t.mask(g)  # every tree edge must be a base edge
    edges = [norm_edge(expansion.port(x, y), expansion.port(y, x)) for x, y in t.edges]
    order = _hamiltonian_order(t)
    if order is None:
        for x in range(g.n):
            edges += [(3 * x, 3 * x + 1), (3 * x + 1, 3 * x + 2)]
        root = None if t.root is None else 3 * t.root
        return RootedTree.make(3 * g.n, edges, root)
    root = -1
    for i, x in enumerate(order):
        tri = [3 * x, 3 * x + 1, 3 * x + 2]
        entry = expansion.port(x, order[i - 1]) if i > 0 else None
        exit_ = expansion.port(x, order[i + 1]) if i + 1 < len(order) else None
        fixed = [p for p in (entry, exit_) if p is not None]
        middle = [p for p in tri if p not in fixed]
        if entry is None:
            path = middle + [exit_]
            root = path[0]
        elif exit_ is None:
            path = [entry] + middle
        else:
            path = [entry] + middle + [exit_]
        edges += [norm_edge(a, b) for a, b in zip(path, path[1:])]
    return RootedTree.make(3 * g.n, edges, root)
