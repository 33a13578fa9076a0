"""Vertex connectivity, smallest separating sets, contractible edges, fragments."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from kfox.bits import iter_bits, members
from kfox.graph import (
    Edge,
    Graph,
    GraphError,
    components,
    contract_edge,
    delete_vertex,
    neighborhood,
    norm_edge,
    reach,
)


class PreconditionError(ValueError):
    """An operation was called outside its documented preconditions."""


def local_connectivity(g: Graph, s: int, t: int, cap: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths, stopping at ``cap``.

    ``s`` and ``t`` must be distinct and nonadjacent. Unit vertex capacities are
    modelled by splitting every vertex ``v`` into ``2v`` (in) and ``2v + 1`` (out).
    """
    if s == t or g.has_edge(s, t):
        raise PreconditionError("local connectivity needs distinct nonadjacent vertices")
    if cap is None:
        cap = g.n
    res: list[dict[int, int]] = [dict() for _ in range(2 * g.n)]
    for v in range(g.n):
        if v != s and v != t:
            res[2 * v][2 * v + 1] = 1
            res[2 * v + 1][2 * v] = 0
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            res[2 * a + 1][2 * b] = 1
            res[2 * b].setdefault(2 * a + 1, 0)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y, c in res[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            res[x][y] -= 1
            res[y][x] += 1
            y = x
        flow += 1
    return flow


@lru_cache(maxsize=8192)
def vertex_connectivity(g: Graph) -> int:
    """kappa(G), via unit-capacity vertex-split max flow over nonadjacent pairs."""
    if g.n < 2:
        raise GraphError("connectivity is undefined for a single vertex")
    if g.is_complete():
        return g.n - 1
    for v in range(g.n):
        if g.degree(v) == g.n - 1:
            # every separator contains a dominating vertex
            return 1 + vertex_connectivity(delete_vertex(g, v))
    best = min(g.degrees())
    for s in range(g.n):
        for t in iter_bits(g.full & ~g.adj[s] & ~((2 << s) - 1)):
            best = min(best, local_connectivity(g, s, t, cap=best))
            if best == 0:
                return 0
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """|V(G)| > k and no fewer than k vertices separate G."""
    if g.n <= k:
        return False
    if k <= 0:
        return True
    if g.is_complete():
        return True
    for s in range(g.n):
        for t in iter_bits(g.full & ~g.adj[s] & ~((2 << s) - 1)):
            if local_connectivity(g, s, t, cap=k) < k:
                return False
    return True


def separates(g: Graph, t: int) -> bool:
    rest = g.full & ~t
    if not rest:
        return False
    return reach(g.adj, rest, rest & -rest) != rest


@lru_cache(maxsize=8192)
def smallest_separating_sets(g: Graph) -> tuple[int, ...]:
    """All separating sets of size kappa(G), ascending by sorted member tuple."""
    if g.n < 2 or g.is_complete():
        return ()
    kappa = vertex_connectivity(g)
    out = []
    for combo in combinations(range(g.n), kappa):
        t = 0
        for v in combo:
            t |= 1 << v
        if separates(g, t):
            out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int
    separators: tuple[int, ...]
    is_complete: bool


def connectivity_report(g: Graph) -> ConnectivityReport:
    return ConnectivityReport(vertex_connectivity(g), smallest_separating_sets(g), g.is_complete())


# contractibility


def _check_edge(g: Graph, e: Iterable[int]) -> Edge:
    u, v = e
    if not g.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    return norm_edge(u, v)


def _require_k_connected(g: Graph, k: int) -> None:
    if g.n <= k or vertex_connectivity(g) < k:
        raise PreconditionError(f"graph is not {k}-connected")


def contractible_by_contraction(g: Graph, e: Iterable[int], k: int) -> bool:
    """Decide k-contractibility by contracting and recomputing connectivity."""
    h = contract_edge(g, _check_edge(g, e))
    return h.n > k and vertex_connectivity(h) >= k


def contractible_by_separators(g: Graph, e: Iterable[int], k: int) -> bool:
    """Decide k-contractibility from kappa(G) and the smallest separating sets."""
    u, v = _check_edge(g, e)
    kappa = vertex_connectivity(g)
    if kappa > k:
        # noncomplete, or complete on at least k + 2 vertices
        return True
    if g.is_complete():
        return False
    pair = (1 << u) | (1 << v)
    return not any(t & pair == pair for t in smallest_separating_sets(g))


def is_contractible(g: Graph, e: Iterable[int], k: int, method: str = "separators") -> bool:
    """Whether G/e is k-connected.

    ``method`` is ``"separators"``, ``"contraction"`` or ``"both"``; the latter
    computes both and raises ``RuntimeError`` if they disagree.
    """
    _require_k_connected(g, k)
    if method == "separators":
        return contractible_by_separators(g, e, k)
    if method == "contraction":
        return contractible_by_contraction(g, e, k)
    if method == "both":
        a = contractible_by_separators(g, e, k)
        b = contractible_by_contraction(g, e, k)
        if a != b:
            raise RuntimeError(f"contractibility routes disagree on {tuple(e)}")
        return a
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=8192)
def contractible_mask(g: Graph, k: int) -> int:
    """Bitmask over ``g.edges`` indices of the k-contractible edges."""
    _require_k_connected(g, k)
    kappa = vertex_connectivity(g)
    if kappa > k:
        return (1 << g.size) - 1
    if g.is_complete():
        return 0
    seps = smallest_separating_sets(g)
    m = 0
    for i, (u, v) in enumerate(g.edges):
        pair = (1 << u) | (1 << v)
        if not any(t & pair == pair for t in seps):
            m |= 1 << i
    return m


def contractible_edges(g: Graph, k: int) -> list[Edge]:
    return g.edges_of_mask(contractible_mask(g, k))


# fragments


@dataclass(frozen=True)
class Fragment:
    """A T-fragment: ``body`` F, ``boundary`` T = N(F), ``complement`` V - (T u F)."""

    body: int
    boundary: int
    complement: int

    def __len__(self) -> int:
        return self.body.bit_count()

    @property
    def comp(self) -> "Fragment":
        return Fragment(self.complement, self.boundary, self.body)

    def vertices(self) -> list[int]:
        return members(self.body)

    def as_dict(self) -> dict:
        return {
            "body": members(self.body),
            "boundary": members(self.boundary),
            "complement": members(self.complement),
        }


def fragments_of(g: Graph, t: int) -> list[Fragment]:
    """All 2^c - 2 T-fragments, c the number of components of G - T."""
    if g.is_complete() or t.bit_count() != vertex_connectivity(g) or not separates(g, t):
        raise PreconditionError("not a smallest separating set")
    comps = components(g, t)
    c = len(comps)
    rest = g.full & ~t
    out = []
    for sel in range(1, (1 << c) - 1):
        body = 0
        for i in iter_bits(sel):
            body |= comps[i]
        out.append(Fragment(body, t, rest & ~body))
    return out


@lru_cache(maxsize=8192)
def all_fragments(g: Graph) -> tuple[Fragment, ...]:
    """Fragments over all of the smallest separating sets, deduplicated by body."""
    seen = set()
    out = []
    for t in smallest_separating_sets(g):
        for f in fragments_of(g, t):
            if f.body not in seen:
                seen.add(f.body)
                out.append(f)
    return tuple(out)


def fragment_of_body(g: Graph, body: int) -> Optional[Fragment]:
    """The fragment with this body, or ``None`` if ``body`` is not a fragment."""
    if not body or g.is_complete():
        return None
    t = neighborhood(g, body)
    comp = g.full & ~(t | body)
    if not comp or t.bit_count() != vertex_connectivity(g):
        return None
    return Fragment(body, t, comp)


def check_lemma1(g: Graph, b: Fragment, f: Fragment) -> bool:
    """|B n T| >= |F-bar n T_B|, and on equality B n F is a fragment with the
    boundary (B n T) u (F n T_B) u (T n T_B)."""
    if not b.body & f.body:
        raise PreconditionError("fragment bodies are disjoint")
    t_b, t = b.boundary, f.boundary
    lhs = (b.body & t).bit_count()
    rhs = (f.complement & t_b).bit_count()
    if lhs < rhs:
        return False
    if lhs > rhs:
        return True
    x = (b.body & t) | (f.body & t_b) | (t & t_b)
    meet = fragment_of_body(g, b.body & f.body)
    return meet is not None and meet.boundary == x
