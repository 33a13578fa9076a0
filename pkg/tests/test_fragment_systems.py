import random
from fractions import Fraction

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfox.bits import iter_bits, mask_of, members
from kfox.connectivity import (
    PreconditionError,
    all_fragments,
    contractible_mask,
    is_k_connected,
    smallest_separating_sets,
)
from kfox.constructions import prism, prism_plus, wheel
from kfox.corpus import graphs_up_to
from kfox.fragment_systems import (
    FragmentIndex,
    SetFamily,
    TreeView,
    atoms,
    build_r_family,
    check_mader_general,
    check_mader_special,
    classify_fragment,
    color_tree_edges,
    family_from_sets,
    s_atoms,
    s_ends,
    s_fragments,
    singleton_family,
    tree_edge_family,
)
from kfox.graph import Graph, complete_graph, neighborhood
from kfox.trees import RootedTree, dfs_tree_masks, spanning_tree_masks, star_tree


def _bodies(sfs):
    return {frozenset(sf.fragment.vertices()) for sf in sfs}


def _prism_dfs_tree_with_one_contractible_edge(g):
    cm = contractible_mask(g, 3)
    return next((m, r) for m, r in dfs_tree_masks(g) if (m & cm).bit_count() == 1)


def test_family_validation():
    with pytest.raises(ValueError):
        SetFamily((0,))
    with pytest.raises(ValueError):
        SetFamily((1,), "mystery")


def test_prism_tree_family_filters_by_boundary():
    g = prism()
    tree, _ = _prism_dfs_tree_with_one_contractible_edge(g)
    fam = tree_edge_family(g, tree)
    frs = _bodies(s_fragments(g, fam))
    edges = g.edges_of_mask(tree)
    for v in range(6):
        nb = neighborhood(g, 1 << v)
        inside = any(mask_of(e) & nb == mask_of(e) for e in edges)
        assert (frozenset([v]) in frs) == inside


def test_empty_and_singleton_families():
    g = prism()
    assert s_fragments(g, SetFamily(())) == []
    assert _bodies(s_fragments(g, singleton_family(g))) == {frozenset(f.vertices()) for f in all_fragments(g)}


def test_witness_is_least_member():
    g = prism()
    fam = family_from_sets([[1, 2], [1], [3]])
    for sf in s_fragments(g, fam):
        candidates = [s for s in fam.sets if s & sf.fragment.boundary == s]
        assert sf.witness == min(candidates, key=lambda s: members(s))


def test_wheel_spoke_star():
    w = wheel(5)
    q = star_tree(w, 5)
    fam = tree_edge_family(w, q)
    rim = {frozenset([v]) for v in range(5)}
    assert rim <= _bodies(s_fragments(w, fam))
    assert _bodies(s_ends(w, fam)) == rim
    assert _bodies(s_atoms(w, fam)) == rim
    colors = color_tree_edges(w, q, 3)
    assert set(colors.values()) == {"red"}
    for sf in s_fragments(w, fam):
        if len(sf.fragment) == 1:
            c = classify_fragment(w, q, sf.fragment, 3)
            assert c.quality == "bad" and c.size_class == "small"


def test_classical_atoms_of_prism_are_singletons():
    assert {len(a) for a in atoms(prism())} == {1}
    assert atoms(complete_graph(4)) == []


def test_all_contractible_tree_has_empty_r_family():
    k5 = complete_graph(5)
    for m in list(spanning_tree_masks(k5))[:10]:
        assert build_r_family(k5, m, 3).sets == ()
        assert set(color_tree_edges(k5, m, 3).values()) == {"contractible"}


def test_prism_plus_dfs_tree_has_nonempty_r_family():
    g = prism_plus()
    tree, root = _prism_dfs_tree_with_one_contractible_edge(g)
    assert build_r_family(g, tree, 3).sets
    with pytest.raises(PreconditionError):
        build_r_family(g, tree, 4)


def test_good_fragment_at_the_contractible_edge():
    g = prism()
    tree, _ = _prism_dfs_tree_with_one_contractible_edge(g)
    (e,) = g.edges_of_mask(tree & contractible_mask(g, 3))
    for f in all_fragments(g):
        if f.body & mask_of(e):
            assert classify_fragment(g, tree, f, 3).quality == "good"


def test_threshold_is_exact_rational():
    missing = ((0, 1), (2, 3), (4, 5))
    octahedron = Graph.from_edges(6, [e for e in complete_graph(6).edges if e not in missing])
    f = all_fragments(octahedron)[0]
    tree = next(spanning_tree_masks(octahedron))
    c = classify_fragment(octahedron, tree, f, 4)
    assert len(f) == 1
    assert c.threshold == Fraction(3, 2) and c.size_class == "big"
    p = prism()
    f = all_fragments(p)[0]
    assert classify_fragment(p, next(spanning_tree_masks(p)), f, 3).size_class == "small"


def test_mader_preconditions():
    g = prism()
    fam = singleton_family(g)
    atom = s_atoms(g, fam)[0]
    v = atom.fragment.vertices()[0]
    far = next(t for t in smallest_separating_sets(g) if not t >> v & 1)
    with pytest.raises(PreconditionError):
        check_mader_special(g, atom.fragment, far)
    near = next(t for t in smallest_separating_sets(g) if t >> v & 1)
    assert check_mader_special(g, atom.fragment, near)
    big = next(f for f in all_fragments(g) if len(f) == 2)
    with pytest.raises(PreconditionError):
        check_mader_special(g, big, near)
    with pytest.raises(PreconditionError):
        check_mader_general(g, fam, atom, 1 << 9, near)


# agreement with the definitions


def _random_family(g, r):
    size = r.randint(1, 4)
    return family_from_sets(
        [r.sample(range(g.n), r.randint(1, min(3, g.n))) for _ in range(size)]
    )


def test_s_structures_match_oracle():
    r = random.Random(7)
    for g in graphs_up_to(7, 3):
        if not all_fragments(g):
            continue
        for _ in range(3):
            fam = _random_family(g, r)
            sets = [members(s) for s in fam.sets]
            frs = s_fragments(g, fam)
            assert _bodies(frs) == oracles.s_fragments(g, sets)
            ends = s_ends(g, fam)
            assert _bodies(ends) == oracles.s_ends(g, sets)
            at = s_atoms(g, fam)
            assert _bodies(at) <= _bodies(ends) <= _bodies(frs)
            for sf in frs:
                assert frozenset(members(sf.fragment.complement)) in _bodies(frs)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_tree_view_matches_direct_computation(seed):
    r = random.Random(seed)
    pool = [g for g in graphs_up_to(7, 4) if is_k_connected(g, 3)]
    g = r.choice(pool)
    k = r.choice([k for k in (2, 3, 4) if is_k_connected(g, k)])
    trees = list(spanning_tree_masks(g))
    tree = r.choice(trees)
    ix = FragmentIndex.of(g)
    view = TreeView.build(ix, tree, contractible_mask(g, k))
    fam = tree_edge_family(g, tree)
    assert {ix.body[i] for i in iter_bits(view.s_frags)} == {sf.fragment.body for sf in s_fragments(g, fam)}
    assert {ix.body[i] for i in iter_bits(view.s_ends)} == {sf.fragment.body for sf in s_ends(g, fam)}
    r_fam = build_r_family(g, tree, k)
    assert set(g.edges_of_mask(view.r_edges)) == {tuple(members(s)) for s in r_fam.sets}
    assert {ix.body[i] for i in iter_bits(view.r_ends)} == {sf.fragment.body for sf in s_ends(g, r_fam)}
    # the R family by definition: tree edges with exactly one end in some S-end
    ends = oracles.s_ends(g, [list(e) for e in g.edges_of_mask(tree)])
    expected = {e for e in g.edges_of_mask(tree) if any(len(set(e) & b) == 1 for b in ends)}
    assert set(g.edges_of_mask(view.r_edges)) == expected
    for i in iter_bits(view.s_frags):
        c = classify_fragment(g, tree, ix.fragment(i), k)
        assert c.quality == ("good" if view.good(i) else "bad")
        assert c.very_good == view.very_good(i)
        assert (c.size_class == "small") == view.small(i, k)


def test_mader_general_over_every_tree_family():
    # the literal statement, quantified over spanning-tree edge families
    checked = 0
    for g in graphs_up_to(6, 3):
        if g.is_complete():
            continue
        seps = smallest_separating_sets(g)
        for tree in spanning_tree_masks(g):
            fam = tree_edge_family(g, tree)
            for atom in s_atoms(g, fam):
                a = atom.fragment
                for s in fam.sets:
                    for t in seps:
                        if s & t & ~a.complement == s and t & a.body:
                            assert check_mader_general(g, fam, atom, s, t)
                            checked += 1
    assert checked > 1000


def test_mader_special_on_small_graphs():
    for g in graphs_up_to(7, 3):
        least = atoms(g)
        for a in least:
            for t in smallest_separating_sets(g):
                if t & a.body:
                    assert check_mader_special(g, a, t)


def test_colors_partition_tree_edges():
    g = prism_plus()
    cm = contractible_mask(g, 3)
    for m in spanning_tree_masks(g):
        colors = color_tree_edges(g, m, 3)
        assert set(colors) == set(g.edges_of_mask(m))
        for e, c in colors.items():
            assert (c == "contractible") == bool(cm >> g.edge_index[e] & 1)
        red = {e for e, c in colors.items() if c == "red"}
        r_edges = {tuple(members(s)) for s in build_r_family(g, m, 3).sets}
        assert red == r_edges - set(g.edges_of_mask(cm))


def test_r_family_origin():
    g = prism()
    assert build_r_family(g, RootedTree.from_mask(g, next(spanning_tree_masks(g))), 3).origin == "r-family"
