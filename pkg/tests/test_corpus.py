import networkx as nx
import pytest

from kfox.connectivity import is_k_connected
from kfox.corpus import (
    CONNECTED_COUNTS,
    CUBIC_3CONNECTED_COUNTS,
    connected_graphs,
    cubic_3connected,
    dedup_isomorphic,
    extend_connected,
    k_connected_graphs,
    to_nx,
)
from kfox.graph import complete_graph, cycle_graph, is_connected, relabel


@pytest.mark.parametrize("n", range(1, 9))
def test_connected_counts(n):
    gs = connected_graphs(n)
    assert len(gs) == CONNECTED_COUNTS[n]
    assert all(g.n == n and is_connected(g) for g in gs)


def test_extension_reproduces_atlas_counts():
    assert len(extend_connected(connected_graphs(5))) == CONNECTED_COUNTS[6]


def test_order8_has_no_isomorphic_duplicates():
    seen = {}
    for g in connected_graphs(8):
        h = to_nx(g)
        key = nx.weisfeiler_lehman_graph_hash(h)
        for other in seen.get(key, []):
            assert not nx.is_isomorphic(h, other)
        seen.setdefault(key, []).append(h)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_cubic_counts(n):
    gs = cubic_3connected(n)
    assert len(gs) == CUBIC_3CONNECTED_COUNTS[n]
    for g in gs:
        assert all(d == 3 for d in g.degrees()) and is_k_connected(g, 3)


def test_dedup_keeps_first_representative():
    c = cycle_graph(5)
    twin = relabel(c, [2, 4, 1, 3, 0])
    assert dedup_isomorphic([c, twin, complete_graph(5)]) == [c, complete_graph(5)]


def test_k_connected_filter():
    gs = list(k_connected_graphs(6, 3))
    assert gs and all(is_k_connected(g, 3) for g in gs)
    assert min(g.n for g in gs) == 4
