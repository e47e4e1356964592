import pytest

from permatch.exc import BadParamsException
from permatch.graphs.constructions import (
    blowup,
    complete_bipartite_graph,
    complete_graph,
    construct,
    directed_cycle,
    thm2_h,
)


def test_directed_cycle(get_graph_fixture):
    assert directed_cycle(5) == get_graph_fixture('cycle5.txt')
    assert directed_cycle(5).is_directed_cycle()


def test_complete_graph():
    graph = complete_graph(4)
    assert graph.edge_count == 6
    assert all(graph.degree(vertex) == 3 for vertex in range(4))


def test_complete_bipartite_graph():
    graph = complete_bipartite_graph(2, 3)
    assert graph.n == 5
    assert graph.edge_count == 6
    assert not graph.has_edge(0, 1)
    assert graph.has_edge(1, 4)


@pytest.mark.parametrize('k,l,arcs', [
    (1, 3, 3),
    (2, 3, 12),
    (2, 5, 20),
    (3, 2, 18),
])
def test_blowup_sizes(k, l, arcs):
    graph = blowup(k, l)
    assert graph.n == k * l
    assert graph.arc_count == arcs
    assert all(graph.out_degree(v) == k and graph.in_degree(v) == k for v in range(graph.n))


def test_blowup_special_cases():
    assert blowup(1, 6) == directed_cycle(6)
    assert blowup(3, 2) == complete_bipartite_graph(3).digraph


def test_blowup_labelling():
    graph = blowup(2, 3)
    assert graph.has_arc(0, 2) and graph.has_arc(1, 3)
    assert graph.has_arc(4, 0) and graph.has_arc(5, 1)
    assert not graph.has_arc(0, 4)


@pytest.mark.parametrize('k,l', [(0, 3), (2, 1), (9, 8)])
def test_bad_blowup(k, l):
    with pytest.raises(BadParamsException):
        blowup(k, l)


def test_thm2_h():
    graph, m_0 = thm2_h(2)
    assert graph.n == 8
    assert graph.edge_count == 12
    assert all(graph.degree(vertex) == 3 for vertex in range(8))
    assert m_0.sorted_edges() == [(0, 1), (2, 3), (4, 7), (5, 6)]
    assert m_0.check(graph) is m_0


@pytest.mark.parametrize('kind,params,n', [
    ('cycle', {'n': 4}, 4),
    ('complete', {'n': 3}, 3),
    ('complete-bipartite', {'n': 2}, 4),
    ('complete_bipartite', {'n': 2}, 4),
    ('blowup', {'k': 2, 'l': 5}, 10),
    ('thm2h', {'n': 1}, 4),
    ('thm2_h', {'n': 3}, 12),
])
def test_construct(kind, params, n):
    assert construct(kind, **params).n == n


@pytest.mark.parametrize('kind,params', [
    ('petersen', {'n': 10}),
    ('blowup', {'n': 3}),
    ('cycle', {'n': 1}),
])
def test_construct_errors(kind, params):
    with pytest.raises(BadParamsException):
        construct(kind, **params)
