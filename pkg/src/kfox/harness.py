"""Exhaustive verification sweeps of the contractible-edge theorems.

Each theorem arm inspects one ``(graph, k)`` instance and reports whether it
was checked, skipped because the hypothesis fails, or inconclusive because a
tree enumeration hit its cap. Violations carry the graph in graph6 together
with the offending tree so that :func:`replay` can reproduce them.

Trees are quantified exhaustively. Where a statement only asks for at least
``b`` contractible edges, trees with ``b`` or more are dismissed before the
more expensive DFS and fragment work; this prunes work, not cases.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional, Sequence

from kfox.bits import iter_bits
from kfox.connectivity import (
    PreconditionError,
    all_fragments,
    check_lemma1,
    contractible_mask,
    is_k_connected,
    smallest_separating_sets,
    vertex_connectivity,
)
from kfox.constructions import prism, prism_plus
from kfox.formats import from_graph6, to_graph6
from kfox.fragment_systems import FragmentIndex, TreeView
from kfox.graph import Graph, complete_graph, is_triangle_free, min_degree, triangle_count
from kfox.trees import (
    DEFAULT_TREE_CAP,
    TruncatedEnumeration,
    dfs_roots,
    min_dfs_contractible,
    min_spanning_contractible,
    spanning_tree_masks,
)

THEOREMS = (
    "T1", "T2", "T3", "T4", "T5", "T6", "T7i", "T7ii",
    "C1", "C2", "L1", "L2", "MaderGeneral", "MaderSpecial",
)

EXCEPTIONS = ("K4", "prism", "prism-plus")

DEFAULT_MAX_N = {
    "T1": 7, "T3": 7, "T6": 7, "T7i": 7, "T7ii": 7, "L2": 7,
    "T2": 8, "T5": 8, "C1": 8, "L1": 8, "MaderGeneral": 8, "MaderSpecial": 8,
    "T4": 10, "C2": 10,
}

# arms whose statement is about k = 3 only or does not involve k at all
FIXED_K = {"T1": 3, "T4": 3, "C2": 3, "L1": None, "MaderGeneral": None, "MaderSpecial": None}

CUBIC_ARMS = ("T4", "C2")


@dataclass
class Violation:
    graph6: str
    k: Optional[int]
    tree: list
    root: Optional[int]
    detail: str

    def as_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "k": self.k,
            "tree": self.tree,
            "root": self.root,
            "detail": self.detail,
        }


@dataclass
class Outcome:
    status: str  # checked | skipped | inconclusive
    violations: list = field(default_factory=list)
    note: str = ""


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    corpus_size: int = 0
    checked: int = 0
    skipped: int = 0
    inconclusive: int = 0
    violations: list = field(default_factory=list)
    inconclusive_graphs: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.inconclusive

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "corpus_size": self.corpus_size,
            "checked": self.checked,
            "skipped": self.skipped,
            "inconclusive": self.inconclusive,
            "violations": [v.as_dict() for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


# exception recognition without a general isomorphism routine


def _fingerprint(g: Graph) -> tuple:
    return (g.n, tuple(sorted(g.degrees())), triangle_count(g))


_NAMED: dict[str, Graph] = {}


def _named(name: str) -> Graph:
    if name not in _NAMED:
        _NAMED[name] = {"K4": lambda: complete_graph(4), "prism": prism, "prism-plus": prism_plus}[name]()
    return _NAMED[name]


def _relabel_match(g: Graph, h: Graph) -> bool:
    target = set(h.edges)
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges):
            return True
    return False


def exception_name(g: Graph, names: Sequence[str] = EXCEPTIONS) -> Optional[str]:
    """Which of the named exceptional graphs ``g`` is, if any."""
    for name in names:
        h = _named(name)
        if _fingerprint(g) != _fingerprint(h):
            continue
        if name == "K4" or _relabel_match(g, h):
            return name
    return None


# helpers


def _violation(g: Graph, k: Optional[int], tree: int = 0, root: Optional[int] = None, detail: str = "") -> Violation:
    return Violation(
        to_graph6(g),
        k,
        [list(e) for e in g.edges_of_mask(tree)] if tree else [],
        root,
        detail,
    )


def _is_cubic(g: Graph) -> bool:
    return all(d == 3 for d in g.degrees())


def _first_dfs_root(g: Graph, tree: int) -> Optional[int]:
    roots = dfs_roots(g, tree)
    return (roots & -roots).bit_length() - 1 if roots else None


# arms


def arm_t1(g: Graph, k: int, opts: dict) -> Outcome:
    if not is_k_connected(g, 3):
        return Outcome("skipped", note="not 3-connected")
    names = () if opts.get("weaken") else opts.get("exceptions", EXCEPTIONS)
    name = exception_name(g, names)
    if name:
        return Outcome("skipped", note=f"exception {name}")
    count, tree, root = min_dfs_contractible(g, 3, opts.get("cap"))
    if count < 2:
        return Outcome("checked", [_violation(g, 3, tree, root, f"DFS tree with {count} 3-contractible edges")])
    return Outcome("checked")


def arm_t2(g: Graph, k: int, opts: dict) -> Outcome:
    if not is_k_connected(g, k):
        return Outcome("skipped", note=f"not {k}-connected")
    if k <= 2 and g.is_complete() and g.n == k + 1:
        return Outcome("skipped", note="excluded complete graph")
    if not opts.get("weaken") and not (is_triangle_free(g) or 2 * min_degree(g) >= 3 * k - 2):
        return Outcome("skipped", note="neither triangle free nor of large minimum degree")
    count, tree = min_spanning_contractible(g, k)
    if count < 2:
        return Outcome("checked", [_violation(g, k, tree, None, f"spanning tree with {count} {k}-contractible edges")])
    return Outcome("checked")


def arm_t3(g: Graph, k: int, opts: dict) -> Outcome:
    if k <= 3:
        return arm_t1(g, 3, opts)
    if not is_k_connected(g, k):
        return Outcome("skipped", note=f"not {k}-connected")
    if not opts.get("weaken") and 2 * min_degree(g) < 3 * k - 3:
        return Outcome("skipped", note="minimum degree below 3k/2 - 3/2")
    count, tree, root = min_dfs_contractible(g, k, opts.get("cap"))
    if count < 2:
        return Outcome("checked", [_violation(g, k, tree, root, f"DFS tree with {count} {k}-contractible edges")])
    return Outcome("checked")


def arm_t4(g: Graph, k: int, opts: dict) -> Outcome:
    if not _is_cubic(g) or not is_k_connected(g, 3):
        return Outcome("skipped", note="not cubic and 3-connected")
    if not opts.get("weaken") and exception_name(g, ("K4",)):
        return Outcome("skipped", note="exception K4")
    count, tree = min_spanning_contractible(g, 3)
    if 3 * count < g.n - 3:
        return Outcome("checked", [_violation(g, 3, tree, None, f"spanning tree with {count} < n/3 - 1 3-contractible edges")])
    return Outcome("checked")


def arm_c1(g: Graph, k: int, opts: dict) -> Outcome:
    if not is_k_connected(g, k):
        return Outcome("skipped", note=f"not {k}-connected")
    if g.is_complete() and g.n == k + 1:
        return Outcome("skipped", note="excluded complete graph")
    if not opts.get("weaken") and any(2 * len(f) < k for f in all_fragments(g)):
        return Outcome("skipped", note="a fragment is smaller than k/2")
    count, tree = min_spanning_contractible(g, k)
    if count < 2:
        return Outcome("checked", [_violation(g, k, tree, None, f"spanning tree with {count} {k}-contractible edges")])
    return Outcome("checked")


def arm_c2(g: Graph, k: int, opts: dict) -> Outcome:
    if not _is_cubic(g) or not is_k_connected(g, 3):
        return Outcome("skipped", note="not cubic and 3-connected")
    names = () if opts.get("weaken") else opts.get("exceptions", ("K4", "prism"))
    name = exception_name(g, names)
    if name:
        return Outcome("skipped", note=f"exception {name}")
    count, tree = min_spanning_contractible(g, 3)
    if count < 2:
        return Outcome("checked", [_violation(g, 3, tree, None, f"spanning tree with {count} 3-contractible edges")])
    return Outcome("checked")


# per-tree property checks shared by the sweeps and by replay


def t5_detail(view: TreeView, k: int) -> Optional[str]:
    ix = view.ix
    for b in iter_bits(view.s_ends):
        if view.small(b, k):
            continue
        if ix.cut[b] & view.tree & ~view.contractible:
            return f"S-end {ix.frags[b].vertices()} of size {ix.size[b]} has a non-contractible leaving tree edge"
    return None


def t6_detail(view: TreeView, k: int) -> Optional[str]:
    ix = view.ix
    for b in iter_bits(view.r_ends):
        if view.small(b, k) or view.good(b):
            continue
        near = ix.in_boundary[b] & view.r_frags
        if any(view.small(c, k) and view.very_good(c) for c in iter_bits(near)):
            continue
        return f"R-end {ix.frags[b].vertices()} is big, bad and sees no small very good R-fragment"
    return None


def l2_detail(view: TreeView, k: int) -> Optional[str]:
    if (view.tree & view.contractible).bit_count() >= 2:
        return None
    for b in iter_bits(view.r_ends):
        if view.small(b, k) and not view.good(b):
            return None
    return "fewer than two contractible tree edges and no small bad R-end"


_TREE_CHECKS: dict[str, Callable[[TreeView, int], Optional[str]]] = {
    "T5": t5_detail,
    "T6": t6_detail,
    "L2": l2_detail,
}


def _tree_property_arm(theorem: str) -> Callable[[Graph, int, dict], Outcome]:
    check = _TREE_CHECKS[theorem]

    def arm(g: Graph, k: int, opts: dict) -> Outcome:
        if g.n < 2 or vertex_connectivity(g) != k:
            return Outcome("skipped", note=f"connectivity is not {k}")
        if theorem == "L2" and g.is_complete():
            return Outcome("skipped", note="complete graph")
        ix = FragmentIndex.of(g)
        cm = contractible_mask(g, k)
        any_tree = False
        out = []
        try:
            for tree in spanning_tree_masks(g, opts.get("cap")):
                view = TreeView.build(ix, tree, cm)
                if not opts.get("weaken") and not view.s_hypothesis(k):
                    continue
                any_tree = True
                detail = check(view, k)
                if detail:
                    out.append(_violation(g, k, tree, None, detail))
        except TruncatedEnumeration as exc:
            return Outcome("inconclusive", note=str(exc))
        return Outcome("checked" if any_tree else "skipped", out)

    arm.__name__ = f"arm_{theorem.lower()}"
    return arm


def _t7_arm(part: str) -> Callable[[Graph, int, dict], Outcome]:
    need = 1 if part == "i" else 2

    def arm(g: Graph, k: int, opts: dict) -> Outcome:
        if k <= 3:
            return arm_t1(g, 3, opts)
        if g.n < 2 or g.is_complete() or vertex_connectivity(g) != k:
            return Outcome("skipped", note=f"complete or connectivity is not {k}")
        ix = FragmentIndex.of(g)
        if part == "ii" and not opts.get("weaken") and any(2 * s < k - 1 for s in ix.size):
            return Outcome("skipped", note="a fragment is smaller than (k - 1)/2")
        cm = contractible_mask(g, k)
        any_tree = False
        out = []
        try:
            for tree in spanning_tree_masks(g, opts.get("cap")):
                count = (tree & cm).bit_count()
                if any_tree and count >= need:
                    continue
                if part == "i" and not opts.get("weaken") and not TreeView.build(ix, tree, cm).s_hypothesis(k):
                    continue
                root = _first_dfs_root(g, tree)
                if root is None:
                    continue
                any_tree = True
                if count < need:
                    out.append(_violation(g, k, tree, root, f"DFS tree with {count} {k}-contractible edges"))
        except TruncatedEnumeration as exc:
            return Outcome("inconclusive", note=str(exc))
        return Outcome("checked" if any_tree else "skipped", out)

    arm.__name__ = f"arm_t7{part}"
    return arm


def _lemma1_holds(g: Graph, b, f) -> bool:
    if b.body & f.body:
        return check_lemma1(g, b, f)
    # negative control only: the inequality part for disjoint bodies
    return (b.body & f.boundary).bit_count() >= (f.complement & b.boundary).bit_count()


def arm_l1(g: Graph, k: Optional[int], opts: dict) -> Outcome:
    frags = all_fragments(g) if g.n > 1 else ()
    if not frags:
        return Outcome("skipped", note="no fragments")
    out = []
    for b in frags:
        for f in frags:
            if not b.body & f.body and not opts.get("weaken"):
                continue
            if not _lemma1_holds(g, b, f):
                out.append(_violation(g, None, 0, None, f"crossing-fragment inequality fails for B={b.vertices()} F={f.vertices()}"))
    return Outcome("checked", out)


def arm_mader_special(g: Graph, k: Optional[int], opts: dict) -> Outcome:
    frags = all_fragments(g) if g.n > 1 else ()
    if not frags:
        return Outcome("skipped", note="no fragments")
    least = min(len(f) for f in frags)
    kappa = vertex_connectivity(g)
    out = []
    for a in frags:
        if len(a) != least:
            continue
        for t in smallest_separating_sets(g):
            if not t & a.body and not opts.get("weaken"):
                continue
            rest = (t & ~a.boundary).bit_count()
            if not (a.body & t == a.body and 2 * least <= rest <= kappa):
                out.append(_violation(g, None, 0, None, f"atom {a.vertices()} against T={list(iter_bits(t))}"))
    return Outcome("checked", out)


def mader_members(g: Graph) -> list[int]:
    """Singletons and edges lying inside some smallest separating set."""
    seps = smallest_separating_sets(g)
    union = 0
    for t in seps:
        union |= t
    members = [1 << v for v in iter_bits(union)]
    for u, v in g.edges:
        pair = (1 << u) | (1 << v)
        if any(t & pair == pair for t in seps):
            members.append(pair)
    return members


def arm_mader_general(g: Graph, k: Optional[int], opts: dict) -> Outcome:
    """Every family of at most two members from :func:`mader_members`.

    Shrinking a family to the two sets that matter (the S of the statement and
    a witness for the atom) keeps the atom an atom, so these families reach
    every qualifying (atom, S, T) triple of every family of edges and
    singletons, tree-edge families included.
    """
    ix = FragmentIndex.of(g) if g.n > 1 else None
    if ix is None or not ix.frags:
        return Outcome("skipped", note="no fragments")
    seps = smallest_separating_sets(g)
    members = mader_members(g)
    picks = [ix.frags_containing(s) for s in members]
    families = [(i,) for i in range(len(members))] + list(combinations(range(len(members)), 2))
    out = []
    seen = set()
    for fam in families:
        sel = 0
        for i in fam:
            sel |= picks[i]
        if not sel:
            continue
        least = ix.min_size(sel)
        for a in iter_bits(sel):
            if ix.size[a] != least:
                continue
            frag = ix.frags[a]
            for i in fam:
                s = members[i]
                for t in seps:
                    if not opts.get("weaken") and (s & t & ~frag.complement != s or not t & frag.body):
                        continue
                    key = (a, s, t)
                    if key in seen:
                        continue
                    seen.add(key)
                    rest = (t & ~frag.boundary).bit_count()
                    if not (frag.body & t == frag.body and 2 * least <= rest):
                        out.append(_violation(
                            g, None, 0, None,
                            f"S-atom {frag.vertices()} with S={list(iter_bits(s))} T={list(iter_bits(t))}",
                        ))
    return Outcome("checked", out)


ARMS: dict[str, Callable[[Graph, Optional[int], dict], Outcome]] = {
    "T1": arm_t1,
    "T2": arm_t2,
    "T3": arm_t3,
    "T4": arm_t4,
    "T5": _tree_property_arm("T5"),
    "T6": _tree_property_arm("T6"),
    "L2": _tree_property_arm("L2"),
    "T7i": _t7_arm("i"),
    "T7ii": _t7_arm("ii"),
    "C1": arm_c1,
    "C2": arm_c2,
    "L1": arm_l1,
    "MaderGeneral": arm_mader_general,
    "MaderSpecial": arm_mader_special,
}


# sweeping


def default_corpus(theorem: str, max_n: int) -> list[Graph]:
    from kfox import corpus

    if theorem in CUBIC_ARMS:
        return list(corpus.cubic_graphs_up_to(max_n))
    return list(corpus.graphs_up_to(max_n))


def _run_one(task: tuple) -> tuple[Outcome, str]:
    theorem, g6, k, opts = task
    g = from_graph6(g6)
    try:
        return ARMS[theorem](g, k, opts), g6
    except TruncatedEnumeration as exc:
        return Outcome("inconclusive", note=str(exc)), g6


def verify(
    theorem: str,
    corpus: Optional[Iterable[Graph]] = None,
    ks: Optional[Sequence[int]] = None,
    max_n: Optional[int] = None,
    cap: Optional[int] = DEFAULT_TREE_CAP,
    exceptions: Optional[Sequence[str]] = None,
    jobs: int = 1,
    weaken: bool = False,
) -> VerificationReport:
    """Run one theorem arm over every ``(graph, k)`` instance of a corpus.

    ``corpus_size`` counts instances, i.e. graphs times the k values used.
    ``weaken`` drops the arm's hypothesis filter (negative control); such a
    run is expected to report violations.
    """
    if theorem not in ARMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[theorem]
    graphs = list(corpus) if corpus is not None else default_corpus(theorem, max_n)
    if theorem in FIXED_K:
        k_values: list = [FIXED_K[theorem]]
    else:
        k_values = sorted(set(ks)) if ks else [3, 4, 5]
    opts: dict = {"cap": cap, "weaken": weaken}
    if exceptions is not None:
        opts["exceptions"] = tuple(exceptions)
    params = {
        "k": k_values,
        "max_n": max_n if corpus is None else None,
        "tree_cap": cap,
        "weaken": weaken,
    }
    if exceptions is not None:
        params["exceptions"] = list(exceptions)
    report = VerificationReport(theorem, params)
    tasks = [(theorem, to_graph6(g), k, opts) for g in graphs for k in k_values]
    report.corpus_size = len(tasks)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]
    for outcome, g6 in results:
        if outcome.status == "checked":
            report.checked += 1
        elif outcome.status == "skipped":
            report.skipped += 1
        else:
            report.inconclusive += 1
            report.inconclusive_graphs.append((g6, outcome.note))
        report.violations.extend(outcome.violations)
    return report


def replay(
    theorem: str,
    violation: Violation | dict,
    exceptions: Optional[Sequence[str]] = None,
    weaken: bool = False,
) -> bool:
    """Re-run the arm on the violation's graph and confirm the same violation."""
    v = violation if isinstance(violation, Violation) else Violation(**violation)
    opts: dict = {"cap": DEFAULT_TREE_CAP, "weaken": weaken}
    if exceptions is not None:
        opts["exceptions"] = tuple(exceptions)
    g = from_graph6(v.graph6)
    outcome = ARMS[theorem](g, v.k, opts)
    return any(w.as_dict() == v.as_dict() for w in outcome.violations)


def default_jobs() -> int:
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


def fox_census(corpus: Iterable[Graph], k: int) -> list[tuple[str, bool, Optional[list]]]:
    """Per graph: graph6, whether it is a k-fox, and the certificate tree edges."""
    from kfox.trees import find_fox_certificate

    out = []
    for g in corpus:
        if not is_k_connected(g, k):
            raise PreconditionError(f"{to_graph6(g)} is not {k}-connected")
        cert = find_fox_certificate(g, k)
        out.append((to_graph6(g), cert is not None, [list(e) for e in cert.tree.edges] if cert else None))
    return out
