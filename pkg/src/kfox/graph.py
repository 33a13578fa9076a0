"""Simple undirected graphs on dense vertex indices with bitmask adjacency.

Vertex sets are plain ``int`` bitmasks throughout the package (bit ``v`` set
means vertex ``v`` is a member); see :mod:`kfox.bits` for conversions.
Graphs are immutable and hashable, and equality is label-sensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from kfox.bits import iter_bits, lowest, members

MAX_ORDER = 64

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph arguments."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self._validated:
            return
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbor out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        if not 1 <= n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
        adj = [0] * n
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for order {n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), _validated=True)

    @classmethod
    def _trusted(cls, adj: Iterable[int]) -> "Graph":
        adj = tuple(adj)
        return cls(len(adj), adj, _validated=True)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def size(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def is_complete(self) -> bool:
        return all(nb.bit_count() == self.n - 1 for nb in self.adj)

    def edges_mask(self, edges: Iterable[Iterable[int]]) -> int:
        """Bitmask over :attr:`edges` indices for the given edge list."""
        idx = self.edge_index
        m = 0
        for u, v in edges:
            try:
                m |= 1 << idx[norm_edge(u, v)]
            except KeyError:
                raise GraphError(f"({u}, {v}) is not an edge") from None
        return m

    def edges_of_mask(self, emask: int) -> list[Edge]:
        es = self.edges
        return [es[i] for i in iter_bits(emask)]

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.size})"


def reach(adj: tuple[int, ...] | list[int], allowed: int, start: int) -> int:
    """Vertices of ``allowed`` reachable from the set ``start`` inside ``allowed``."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj[v]
        frontier = nb & allowed & ~seen
        seen |= frontier
    return seen


def is_connected_set(g: Graph, s: int) -> bool:
    """True iff ``g[s]`` is connected (the empty set counts as disconnected)."""
    if not s:
        return False
    return reach(g.adj, s, s & -s) == s


def is_connected(g: Graph) -> bool:
    return is_connected_set(g, g.full)


def neighborhood(g: Graph, s: int) -> int:
    """N_G(s): vertices outside ``s`` adjacent to some member of ``s``."""
    nb = 0
    for v in iter_bits(s):
        nb |= g.adj[v]
    return nb & ~s


def components(g: Graph, removed: int = 0) -> list[int]:
    """Components of ``g - removed`` as masks, ordered by minimum vertex."""
    rest = g.full & ~removed
    out = []
    while rest:
        comp = reach(g.adj, rest, rest & -rest)
        out.append(comp)
        rest &= ~comp
    return out


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, list[int]]:
    """``g[s]`` relabelled to 0..|s|-1 in ascending order, with the old labels."""
    old = members(s)
    pos = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        adj.append(sum(1 << pos[u] for u in iter_bits(g.adj[v] & s)))
    return Graph._trusted(adj), old


def delete_vertex(g: Graph, v: int) -> Graph:
    if g.n == 1:
        raise GraphError("cannot delete the only vertex")
    return induced_subgraph(g, g.full & ~(1 << v))[0]


def _compact_map(n: int, gone: int) -> list[int]:
    """Index map dropping the vertices in ``gone``; -1 marks dropped vertices."""
    out, nxt = [], 0
    for v in range(n):
        if gone >> v & 1:
            out.append(-1)
        else:
            out.append(nxt)
            nxt += 1
    return out


def _remap(mask: int, mapping: list[int]) -> int:
    m = 0
    for v in iter_bits(mask):
        if mapping[v] >= 0:
            m |= 1 << mapping[v]
    return m


def contract_set(g: Graph, s: int) -> Graph:
    """Identify the connected vertex set ``s`` into its smallest member.

    The remaining vertices keep their relative order; indices above removed
    vertices shift down.
    """
    if not is_connected_set(g, s):
        raise GraphError("contracted vertex set must be nonempty and connected")
    keep = lowest(s)
    gone = s & ~(1 << keep)
    if not gone:
        return g
    mapping = _compact_map(g.n, gone)
    merged_nb = neighborhood(g, s)
    adj = []
    for v in range(g.n):
        if gone >> v & 1:
            continue
        if v == keep:
            adj.append(_remap(merged_nb, mapping))
        elif g.adj[v] & s:
            adj.append(_remap((g.adj[v] & ~s) | (1 << keep), mapping))
        else:
            adj.append(_remap(g.adj[v], mapping))
    return Graph._trusted(adj)


def contract_edge(g: Graph, e: Iterable[int]) -> Graph:
    """G/e: identify the endpoints of ``e`` and simplify."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return contract_set(g, (1 << u) | (1 << v))


def is_triangle_free(g: Graph) -> bool:
    for u, v in g.edges:
        if g.adj[u] & g.adj[v]:
            return False
    return True


def triangle_count(g: Graph) -> int:
    t = 0
    for u, v in g.edges:
        t += (g.adj[u] & g.adj[v]).bit_count()
    return t // 3


def min_degree(g: Graph) -> int:
    return min(g.degrees())


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges))


# small named graphs used across the package and its tests


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(full & ~(1 << v) for v in range(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
