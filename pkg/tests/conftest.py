from io import open
import json
import os
import pytest

from permatch.default import DefaultTheoremVerifier
from permatch.graphs.base import BipartiteGraph, new_digraph, new_graph
from permatch.graphs.io import parse_graph

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')
SCHEMAS_DIR = os.path.join(os.path.dirname(__file__), os.pardir, 'src', 'permatch', 'schemas')


@pytest.fixture
def test_permatch():
    return DefaultTheoremVerifier()


@pytest.fixture(scope='session')
def fixture_path():

    def func(file_name):
        return os.path.join(FIXTURES_DIR, file_name)

    return func


@pytest.fixture(scope='session')
def get_graph_fixture(fixture_path):

    def loader(file_name):

        with open(fixture_path(file_name), 'r', encoding='utf8') as graph_file:
            return parse_graph(graph_file.read())

    return loader


@pytest.fixture(scope='session')
def get_schema():

    def loader(name):

        with open(os.path.join(SCHEMAS_DIR, '{}.json'.format(name)), 'r', encoding='utf8') as schema_file:
            return json.load(schema_file)

    return loader


@pytest.fixture(scope='session')
def make_digraph():

    def func(n, arcs):
        return new_digraph(n, arcs)

    return func


@pytest.fixture(scope='session')
def make_graph():

    def func(n, edges):
        return new_graph(n, edges)

    return func


@pytest.fixture(scope='session')
def make_bipartite():

    def func(n_left, n_right, edges):
        return BipartiteGraph.from_edges(n_left, n_right, edges)

    return func


@pytest.fixture(scope='session')
def figure2(get_graph_fixture):
    return get_graph_fixture('figure2.txt')
