"""Spanning trees, DFS-tree recognition and fox certificates.

Trees are handled internally as bitmasks over ``g.edges`` indices; the
:class:`RootedTree` value type is the public face.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from kfox.bits import iter_bits, members
from kfox.connectivity import PreconditionError, contractible_mask
from kfox.graph import Edge, Graph, GraphError, is_connected, neighborhood, norm_edge

DEFAULT_TREE_CAP = 10**7


class TruncatedEnumeration(RuntimeError):
    """More trees exist than the caller-supplied cap allows."""

    def __init__(self, cap: int):
        super().__init__(f"spanning-tree enumeration exceeded the cap of {cap}")
        self.cap = cap


@dataclass(frozen=True)
class RootedTree:
    n: int
    edges: tuple[Edge, ...]
    root: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.edges) != self.n - 1:
            raise GraphError(f"a spanning tree on {self.n} vertices needs {self.n - 1} edges")
        if self.root is not None and not 0 <= self.root < self.n:
            raise GraphError(f"root {self.root} out of range")
        adj = self.adjacency()
        seen, stack = 1, [0]
        while stack:
            v = stack.pop()
            for u in iter_bits(adj[v] & ~seen):
                seen |= 1 << u
                stack.append(u)
        if seen != (1 << self.n) - 1:
            raise GraphError("edges do not form a spanning tree")

    @classmethod
    def make(cls, n: int, edges: Iterable[Iterable[int]], root: Optional[int] = None) -> "RootedTree":
        return cls(n, tuple(sorted(norm_edge(*e) for e in edges)), root)

    @classmethod
    def from_mask(cls, g: Graph, emask: int, root: Optional[int] = None) -> "RootedTree":
        return cls(g.n, tuple(g.edges_of_mask(emask)), root)

    def with_root(self, root: Optional[int]) -> "RootedTree":
        return RootedTree(self.n, self.edges, root)

    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"bad tree edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def mask(self, g: Graph) -> int:
        if g.n != self.n:
            raise GraphError("tree and graph orders differ")
        return g.edges_mask(self.edges)

    def as_dict(self) -> dict:
        return {"tree": [list(e) for e in self.edges], "root": self.root}


def tree_mask_adjacency(g: Graph, emask: int) -> list[int]:
    adj = [0] * g.n
    es = g.edges
    for i in iter_bits(emask):
        u, v = es[i]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


# spanning tree enumeration


def spanning_tree_masks(g: Graph, cap: Optional[int] = DEFAULT_TREE_CAP) -> Iterator[int]:
    """Yield every spanning tree once, as an edge-index mask.

    Contraction/deletion on the first remaining edge, run on an explicit
    stack. Deleting an edge is only explored when its ends stay connected, so
    every branch ends in a tree.
    """
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    count = 0
    for emask in _contract_delete(g):
        count += 1
        if cap is not None and count > cap:
            raise TruncatedEnumeration(cap)
        yield emask


def _reaches(edges: list[tuple[int, int, int]], a: int, b: int) -> bool:
    adj: dict[int, int] = {}
    for x, y, _ in edges:
        adj[x] = adj.get(x, 0) | (1 << y)
        adj[y] = adj.get(y, 0) | (1 << x)
    seen = frontier = 1 << a
    target = 1 << b
    while frontier:
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj.get(v, 0)
        frontier = nb & ~seen
        if frontier & target:
            return True
        seen |= frontier
    return False


def _contract_delete(g: Graph) -> Iterator[int]:
    if g.n == 1:
        yield 0
        return
    stack = [([(u, v, i) for i, (u, v) in enumerate(g.edges)], g.full, 0)]
    pop, push = stack.pop, stack.append
    while stack:
        edges, alive, chosen = pop()
        others = alive & (alive - 1)
        if others & (others - 1) == 0:
            # two super-vertices left: each remaining parallel edge closes a tree
            for _, _, j in edges:
                yield chosen | (1 << j)
            continue
        a, b, i = edges[0]
        rest = edges[1:]
        parallel = False
        merged = []
        for x, y, j in rest:
            if x == b:
                x = a
            if y == b:
                y = a
            if x != y:
                merged.append((x, y, j))
            else:
                parallel = True
        if parallel or _reaches(rest, a, b):
            push((rest, alive, chosen))
        push((merged, alive & ~(1 << b), chosen | (1 << i)))


def spanning_trees(g: Graph, cap: Optional[int] = DEFAULT_TREE_CAP) -> Iterator[RootedTree]:
    """Every spanning tree of ``g`` exactly once, rootless, in a fixed order."""
    for emask in spanning_tree_masks(g, cap):
        yield RootedTree.from_mask(g, emask)


def _as_tree_mask(g: Graph, q: RootedTree | int) -> int:
    return q if isinstance(q, int) else q.mask(g)


# DFS trees


def branches(tadj: list[int], root: int) -> list[list[int]]:
    """For each vertex x, the x-branches (components of Q - x avoiding the root)."""
    n = len(tadj)
    parent = [-1] * n
    order = [root]
    seen = 1 << root
    for v in order:
        for u in iter_bits(tadj[v] & ~seen):
            seen |= 1 << u
            parent[u] = v
            order.append(u)
    desc = [1 << v for v in range(n)]
    for v in reversed(order[1:]):
        desc[parent[v]] |= desc[v]
    out: list[list[int]] = [[] for _ in range(n)]
    for v in order[1:]:
        out[parent[v]].append(desc[v])
    return out


def _is_dfs_root(g: Graph, tadj: list[int], root: int) -> bool:
    for brs in branches(tadj, root):
        if len(brs) < 2:
            continue
        union = 0
        for b in brs:
            union |= b
        for b in brs:
            if neighborhood(g, b) & union & ~b:
                return False
    return True


def is_dfs_tree(g: Graph, q: RootedTree) -> bool:
    """True iff for every vertex x no edge of ``g`` joins two x-branches of ``q``."""
    if q.root is None:
        raise PreconditionError("DFS-tree recognition needs a rooted tree")
    emask = q.mask(g)
    return _is_dfs_root(g, tree_mask_adjacency(g, emask), q.root)


def dfs_roots(g: Graph, emask: int) -> int:
    """Mask of the roots that make the spanning tree ``emask`` a DFS tree."""
    tadj = tree_mask_adjacency(g, emask)
    out = 0
    for r in range(g.n):
        if _is_dfs_root(g, tadj, r):
            out |= 1 << r
    return out


def dfs_tree_masks(g: Graph, cap: Optional[int] = DEFAULT_TREE_CAP) -> Iterator[tuple[int, int]]:
    """(edge mask, root) for every DFS tree, by filtering spanning trees x roots."""
    for emask in spanning_tree_masks(g, cap):
        tadj = tree_mask_adjacency(g, emask)
        for r in range(g.n):
            if _is_dfs_root(g, tadj, r):
                yield emask, r


def dfs_trees(g: Graph, cap: Optional[int] = DEFAULT_TREE_CAP) -> Iterator[RootedTree]:
    for emask, r in dfs_tree_masks(g, cap):
        yield RootedTree.from_mask(g, emask, r)


# contractible tree edges and foxes


def count_contractible(g: Graph, q: RootedTree | int, k: int) -> int:
    return (_as_tree_mask(g, q) & contractible_mask(g, k)).bit_count()


@dataclass(frozen=True)
class FoxCertificate:
    graph: Graph
    tree: RootedTree
    k: int
    contractible_count: int = 0


def _spanning_tree_within(g: Graph, allowed: int) -> Optional[int]:
    """A spanning tree using only edges of ``allowed``, or None."""
    es = g.edges
    adj = tree_mask_adjacency(g, allowed)
    seen, stack, tree = 1, [0], 0
    while stack:
        v = stack.pop()
        for u in iter_bits(adj[v] & ~seen):
            seen |= 1 << u
            stack.append(u)
            tree |= 1 << g.edge_index[norm_edge(u, v)]
    return tree if seen == g.full else None


def find_fox_certificate(g: Graph, k: int) -> Optional[FoxCertificate]:
    """A spanning tree without k-contractible edges, if one exists.

    Such a tree exists iff the non-contractible edges form a connected
    spanning subgraph, so no tree enumeration is needed.
    """
    if g.n == 1:
        return None
    bad = ((1 << g.size) - 1) & ~contractible_mask(g, k)
    tree = _spanning_tree_within(g, bad)
    if tree is None:
        return None
    return FoxCertificate(g, RootedTree.from_mask(g, tree), k, 0)


def min_spanning_contractible(g: Graph, k: int) -> tuple[int, int]:
    """Exact minimum of contractible tree edges over all spanning trees.

    Kruskal with weight 0 on non-contractible and 1 on contractible edges; the
    optimum is (number of components of the non-contractible subgraph) - 1.
    Returns ``(count, tree mask)``.
    """
    cm = contractible_mask(g, k)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = 0
    cost = 0
    order = [i for i in range(g.size) if not cm >> i & 1] + members(cm)
    for i in order:
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree |= 1 << i
            cost += cm >> i & 1
    return cost, tree


def min_dfs_contractible(
    g: Graph, k: int, cap: Optional[int] = DEFAULT_TREE_CAP
) -> tuple[int, int, int]:
    """Exact minimum over all DFS trees; returns ``(count, tree mask, root)``.

    Every spanning tree is visited; roots are only tried for trees that would
    improve the current best, and the search stops once the spanning-tree
    minimum (a lower bound) is reached.
    """
    cm = contractible_mask(g, k)
    floor, _ = min_spanning_contractible(g, k)
    best, best_tree, best_root = g.n, 0, -1
    for emask in spanning_tree_masks(g, cap):
        c = (emask & cm).bit_count()
        if c >= best:
            continue
        tadj = tree_mask_adjacency(g, emask)
        for r in range(g.n):
            if _is_dfs_root(g, tadj, r):
                best, best_tree, best_root = c, emask, r
                break
        if best == floor:
            break
    return best, best_tree, best_root


def min_contractible_over(
    g: Graph, k: int, mode: str = "all-spanning", cap: Optional[int] = DEFAULT_TREE_CAP
) -> tuple[int, RootedTree]:
    """Minimum number of k-contractible tree edges over a tree class, with a witness."""
    if mode == "all-spanning":
        count, tree = min_spanning_contractible(g, k)
        return count, RootedTree.from_mask(g, tree)
    if mode == "dfs-only":
        count, tree, root = min_dfs_contractible(g, k, cap)
        return count, RootedTree.from_mask(g, tree, root)
    raise ValueError(f"unknown tree class {mode!r}")


def star_tree(g: Graph, center: int) -> RootedTree:
    if g.degree(center) != g.n - 1:
        raise GraphError(f"vertex {center} is not adjacent to all others")
    return RootedTree.make(g.n, ((center, v) for v in range(g.n) if v != center), center)
