import pytest

from kfox.connectivity import contractible_edges, is_k_connected, vertex_connectivity
from kfox.constructions import (
    ConstructionError,
    apex_star,
    cycle_lex_apex,
    is_critically_2_connected,
    lex_apex,
    lift_tree,
    prism,
    prism_plus,
    triangle_expand,
    wheel,
    wheel_hub,
)
from kfox.corpus import cubic_3connected
from kfox.graph import Graph, complete_graph, cycle_graph, min_degree, path_graph
from kfox.trees import RootedTree, count_contractible, is_dfs_tree, star_tree


@pytest.mark.parametrize("rim", range(3, 10))
def test_wheels(rim):
    w = wheel(rim)
    assert w.n == rim + 1 and wheel_hub(w) == rim
    assert vertex_connectivity(w) == 3
    if rim > 3:
        assert contractible_edges(w, 3) == [e for e in w.edges if rim not in e]


def test_wheel_too_small():
    with pytest.raises(ConstructionError):
        wheel(2)


def test_prism_and_prism_plus():
    p = prism()
    assert p.size == 9 and all(d == 3 for d in p.degrees())
    q = prism_plus()
    assert set(q.edges) - set(p.edges) == {(0, 4)}
    assert vertex_connectivity(q) == 3


def test_critical_two_connectivity():
    assert is_critically_2_connected(cycle_graph(5))
    assert not is_critically_2_connected(complete_graph(4))
    assert not is_critically_2_connected(path_graph(4))


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_apex_with_k3_is_the_wheel(n):
    assert cycle_lex_apex(n, 3) == wheel(n)


@pytest.mark.parametrize("n, k", [(4, 5), (5, 5), (6, 5), (4, 7), (5, 7)])
def test_cycle_apex_is_a_sharp_fox(n, k):
    g = cycle_lex_apex(n, k)
    assert g.n == n * (k - 1) // 2 + 1
    assert is_k_connected(g, k)
    assert 2 * min_degree(g) == 3 * k - 3
    assert count_contractible(g, apex_star(g), k) == 0


def test_lex_apex_rejects_bad_parameters():
    with pytest.raises(ConstructionError):
        cycle_lex_apex(5, 4)
    with pytest.raises(ConstructionError):
        lex_apex(complete_graph(4), 5)
    with pytest.raises(ConstructionError):
        cycle_lex_apex(2, 5)


def test_triangle_expansion_of_k4():
    ex = triangle_expand(complete_graph(4))
    g = ex.graph
    assert g.n == 12 and all(d == 3 for d in g.degrees())
    assert is_k_connected(g, 3)
    for x in range(4):
        for y in range(4):
            if x != y:
                p = ex.port(x, y)
                assert ex.triangles[x] >> p & 1
                assert g.has_edge(p, ex.port(y, x))


def test_triangle_expansion_of_larger_cubic_graphs():
    for base in cubic_3connected(8):
        ex = triangle_expand(base)
        assert ex.graph.n == 24 and is_k_connected(ex.graph, 3)


def test_triangle_expansion_rejects_non_cubic():
    with pytest.raises(ConstructionError):
        triangle_expand(complete_graph(5))
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    assert triangle_expand(two_triangles).graph.n == 18


def test_lifted_trees_of_expanded_k4():
    k4 = complete_graph(4)
    ex = triangle_expand(k4)
    star = lift_tree(k4, star_tree(k4, 0), ex)
    assert count_contractible(ex.graph, star, 3) == 3
    path = RootedTree.make(4, [(0, 1), (1, 2), (2, 3)], 0)
    lifted = lift_tree(k4, path, ex)
    assert max(a.bit_count() for a in lifted.adjacency()) == 2
    assert is_dfs_tree(ex.graph, lifted)
    assert count_contractible(ex.graph, lifted, 3) == 3


def test_lift_tree_mismatch():
    k4 = complete_graph(4)
    with pytest.raises(ConstructionError):
        lift_tree(prism(), star_tree(k4, 0), triangle_expand(k4))
