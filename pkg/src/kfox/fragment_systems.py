"""Fragments relative to a family of vertex sets: S-fragments, S-ends, S-atoms.

A fragment F with boundary T is an S-fragment when some member of the family
lies inside T. For a spanning tree Q the family of tree-edge endpoint pairs
drives the contractible-edge theorems; :class:`FragmentIndex` precomputes the
per-graph data so that a tree can be analysed with a handful of bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from kfox.bits import iter_bits, mask_of, set_key
from kfox.connectivity import (
    Fragment,
    PreconditionError,
    all_fragments,
    contractible_mask,
    smallest_separating_sets,
    vertex_connectivity,
)
from kfox.graph import Edge, Graph
from kfox.trees import RootedTree

ORIGINS = ("tree-edges", "r-family", "singletons", "custom")


@dataclass(frozen=True)
class SetFamily:
    sets: tuple[int, ...]
    origin: str = "custom"

    def __post_init__(self) -> None:
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown family origin {self.origin!r}")
        if any(s == 0 for s in self.sets):
            raise ValueError("family members must be nonempty")


def tree_edge_family(g: Graph, q: RootedTree | int) -> SetFamily:
    emask = q if isinstance(q, int) else q.mask(g)
    return SetFamily(tuple(mask_of(e) for e in g.edges_of_mask(emask)), "tree-edges")


def singleton_family(g: Graph) -> SetFamily:
    return SetFamily(tuple(1 << v for v in range(g.n)), "singletons")


@dataclass(frozen=True)
class SFragment:
    fragment: Fragment
    witness: int


def _fragments(g: Graph) -> tuple[Fragment, ...]:
    if g.n < 2:
        return ()
    return all_fragments(g)


def s_fragments(g: Graph, family: SetFamily) -> list[SFragment]:
    """Fragments whose boundary contains a family member; witness is the
    lexicographically least such member."""
    ordered = sorted(set(family.sets), key=set_key)
    out = []
    for f in _fragments(g):
        for s in ordered:
            if s & f.boundary == s:
                out.append(SFragment(f, s))
                break
    return out


def s_ends(g: Graph, family: SetFamily) -> list[SFragment]:
    """Inclusion-minimal S-fragments."""
    frs = s_fragments(g, family)
    bodies = [sf.fragment.body for sf in frs]
    return [
        sf
        for sf in frs
        if not any(b != sf.fragment.body and b & sf.fragment.body == b for b in bodies)
    ]


def s_atoms(g: Graph, family: SetFamily) -> list[SFragment]:
    """S-fragments of globally minimum cardinality."""
    frs = s_fragments(g, family)
    if not frs:
        return []
    least = min(len(sf.fragment) for sf in frs)
    return [sf for sf in frs if len(sf.fragment) == least]


def atoms(g: Graph) -> list[Fragment]:
    """Classical atoms: fragments of minimum cardinality."""
    frs = _fragments(g)
    if not frs:
        return []
    least = min(len(f) for f in frs)
    return [f for f in frs if len(f) == least]


def build_r_family(g: Graph, q: RootedTree | int, k: int) -> SetFamily:
    """Endpoint pairs of tree edges with exactly one endpoint in some S-end,
    where S is the tree-edge family."""
    if g.n <= k or vertex_connectivity(g) < k:
        raise PreconditionError(f"graph is not {k}-connected")
    emask = q if isinstance(q, int) else q.mask(g)
    ix = FragmentIndex.of(g)
    r = ix.r_edges(emask)
    return SetFamily(tuple(mask_of(e) for e in g.edges_of_mask(r)), "r-family")


# Mader's atom theorems as checkable statements


def check_mader_general(
    g: Graph, family: SetFamily, atom: SFragment, s: int, t: int
) -> bool:
    """For an S-atom A with S in the family inside T - A-bar and T meeting A:
    A is inside T and |A| <= |T - T_A| / 2."""
    a = atom.fragment
    frs = s_fragments(g, family)
    if not frs or len(a) != min(len(sf.fragment) for sf in frs):
        raise PreconditionError("not an S-atom of this family")
    if not any(sf.fragment.body == a.body for sf in frs):
        raise PreconditionError("not an S-fragment of this family")
    if s not in family.sets:
        raise PreconditionError("s is not a member of the family")
    if t not in smallest_separating_sets(g):
        raise PreconditionError("t is not a smallest separating set")
    if s & (t & ~a.complement) != s:
        raise PreconditionError("s is not contained in t minus the atom's complement")
    if not t & a.body:
        raise PreconditionError("t does not meet the atom")
    return a.body & t == a.body and 2 * len(a) <= (t & ~a.boundary).bit_count()


def check_mader_special(g: Graph, atom: Fragment, t: int) -> bool:
    """For an atom A and T meeting A: A inside T and |A| <= |T - T_A|/2 <= kappa/2."""
    least = atoms(g)
    if not least or len(atom) != len(least[0]) or atom not in least:
        raise PreconditionError("not an atom")
    if t not in smallest_separating_sets(g):
        raise PreconditionError("t is not a smallest separating set")
    if not t & atom.body:
        raise PreconditionError("t does not meet the atom")
    rest = (t & ~atom.boundary).bit_count()
    return (
        atom.body & t == atom.body
        and 2 * len(atom) <= rest
        and rest <= vertex_connectivity(g)
    )


# per-graph index for fast per-tree analysis


class FragmentIndex:
    """Fragments of one graph with edge-incidence masks precomputed.

    Edge masks are over ``g.edges`` indices, fragment masks over positions in
    :attr:`frags`.
    """

    _cache: dict = {}

    def __init__(self, g: Graph):
        self.g = g
        self.frags = _fragments(g)
        self.kappa = vertex_connectivity(g) if g.n > 1 else 0
        m = len(self.frags)
        self.size = [len(f) for f in self.frags]
        self.body = [f.body for f in self.frags]
        self.inner = []  # edges with both ends in the boundary
        self.cut = []  # edges with exactly one end in the body
        self.touch = []  # edges with at least one end in the body
        for f in self.frags:
            inner = cut = touch = 0
            for i, (u, v) in enumerate(g.edges):
                bu, bv = f.body >> u & 1, f.body >> v & 1
                if f.boundary >> u & 1 and f.boundary >> v & 1:
                    inner |= 1 << i
                if bu != bv:
                    cut |= 1 << i
                if bu or bv:
                    touch |= 1 << i
            self.inner.append(inner)
            self.cut.append(cut)
            self.touch.append(touch)
        self.below = [0] * m  # fragments properly inside fragment i
        self.in_boundary = [0] * m  # fragments whose body lies in the boundary of i
        for i, fi in enumerate(self.frags):
            for j, fj in enumerate(self.frags):
                if i != j and fj.body & fi.body == fj.body:
                    self.below[i] |= 1 << j
                if fj.body & fi.boundary == fj.body:
                    self.in_boundary[i] |= 1 << j
        self.all_mask = (1 << m) - 1

    @classmethod
    def of(cls, g: Graph) -> "FragmentIndex":
        ix = cls._cache.get(g)
        if ix is None:
            if len(cls._cache) > 4096:
                cls._cache.clear()
            ix = cls._cache[g] = cls(g)
        return ix

    def selected(self, emask: int) -> int:
        """Fragments whose boundary contains an edge of ``emask``."""
        out = 0
        for i, inner in enumerate(self.inner):
            if inner & emask:
                out |= 1 << i
        return out

    def frags_containing(self, s: int) -> int:
        """Fragments whose boundary contains the vertex set ``s``."""
        out = 0
        for i, f in enumerate(self.frags):
            if s & f.boundary == s:
                out |= 1 << i
        return out

    def ends(self, sel: int) -> int:
        out = 0
        for i in iter_bits(sel):
            if not self.below[i] & sel:
                out |= 1 << i
        return out

    def min_size(self, sel: int) -> Optional[int]:
        return min((self.size[i] for i in iter_bits(sel)), default=None)

    def r_edges(self, emask: int) -> int:
        ends = self.ends(self.selected(emask))
        out = 0
        for i in iter_bits(ends):
            out |= self.cut[i]
        return out & emask

    def fragment(self, i: int) -> Fragment:
        return self.frags[i]


@dataclass
class TreeView:
    """The S- and R-structure of one spanning tree."""

    ix: FragmentIndex
    tree: int
    contractible: int
    s_frags: int
    s_ends: int
    r_edges: int
    r_frags: int
    r_ends: int

    @classmethod
    def build(cls, ix: FragmentIndex, tree: int, contractible: int) -> "TreeView":
        s_frags = ix.selected(tree)
        s_ends = ix.ends(s_frags)
        r_edges = 0
        for i in iter_bits(s_ends):
            r_edges |= ix.cut[i]
        r_edges &= tree
        r_frags = ix.selected(r_edges)
        return cls(ix, tree, contractible, s_frags, s_ends, r_edges, r_frags, ix.ends(r_frags))

    def small(self, i: int, k: int) -> bool:
        return 2 * self.ix.size[i] == k - 1

    def good(self, i: int) -> bool:
        return bool(self.ix.touch[i] & self.tree & self.contractible)

    def very_good(self, i: int) -> bool:
        leaving = self.ix.cut[i] & self.tree
        return leaving & ~self.contractible == 0

    def s_hypothesis(self, k: int) -> bool:
        """All S-fragments have cardinality at least (k - 1)/2."""
        return all(2 * self.ix.size[i] >= k - 1 for i in iter_bits(self.s_frags))


# classification and colouring


@dataclass(frozen=True)
class FragmentClassification:
    size_class: str
    quality: str
    very_good: bool
    threshold: Fraction


def classify_fragment(g: Graph, q: RootedTree | int, f: Fragment, k: int) -> FragmentClassification:
    emask = q if isinstance(q, int) else q.mask(g)
    cm = contractible_mask(g, k)
    es = g.edges
    touching = leaving = 0
    for i in iter_bits(emask):
        u, v = es[i]
        inside = (f.body >> u & 1) + (f.body >> v & 1)
        if inside:
            touching |= 1 << i
        if inside == 1:
            leaving |= 1 << i
    threshold = Fraction(k - 1, 2)
    return FragmentClassification(
        size_class="small" if len(f) == threshold else "big",
        quality="good" if touching & cm else "bad",
        very_good=leaving & ~cm == 0,
        threshold=threshold,
    )


def color_tree_edges(g: Graph, q: RootedTree | int, k: int) -> dict[Edge, str]:
    """Map each tree edge to ``contractible``, ``green`` or ``red``."""
    emask = q if isinstance(q, int) else q.mask(g)
    cm = contractible_mask(g, k)
    crossing = FragmentIndex.of(g).r_edges(emask)
    out = {}
    for i in iter_bits(emask):
        e = g.edges[i]
        if cm >> i & 1:
            out[e] = "contractible"
        elif crossing >> i & 1:
            out[e] = "red"
        else:
            out[e] = "green"
    return out


def family_from_sets(sets: Iterable[Iterable[int]], origin: str = "custom") -> SetFamily:
    return SetFamily(tuple(mask_of(s) for s in sets), origin)
