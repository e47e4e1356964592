"""
Text and JSON graph formats.

Text form: the first non-blank line is ``digraph <n>``, ``graph <n>`` or
``bipartite <n_left> <n_right>``; every following line is an arc or edge ``u v`` with
0-based indices. ``#`` starts a comment; blank lines are ignored. Canonical output
lists edges in lexicographic order (``u < v`` for undirected edges).

JSON form: ``{"type": "digraph", "n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}``;
undirected graphs use ``"edges"``, bipartite graphs use ``"n_left"``, ``"n_right"``
and ``"edges"``.
"""
from io import open
import json

from permatch.exc import GraphSyntaxException, OutOfRangeException, SelfLoopException
from permatch.graphs.base import BipartiteGraph, Digraph, UndirectedGraph, new_digraph

HEADER_ARITY = {'digraph': 1, 'graph': 1, 'bipartite': 2}


def _parse_ints(tokens, line):
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise GraphSyntaxException("expected integers, got {!r}".format(' '.join(tokens)), line)


def _build(kind, sizes, pairs):
    """
    ``pairs`` holds ``(u, v, line)`` triples so range errors can name their line.
    """
    if kind == 'bipartite':
        n_left, n_right = sizes
        for u, v, line in pairs:
            if not (0 <= u < n_left and 0 <= v < n_right):
                raise OutOfRangeException("line {}: edge ({}, {}) outside [0, {}) x [0, {})".format(
                    line, u, v, n_left, n_right))
        return BipartiteGraph.from_edges(n_left, n_right, [(u, v) for u, v, _ in pairs])
    n = sizes[0]
    for u, v, line in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeException("line {}: ({}, {}) outside [0, {})".format(line, u, v, n))
        if u == v:
            raise SelfLoopException("line {}: self loop at vertex {}".format(line, u))
    if kind == 'digraph':
        return new_digraph(n, [(u, v) for u, v, _ in pairs])
    return UndirectedGraph.from_edges(n, [(u, v) for u, v, _ in pairs])


def _parse_text(text):
    kind = None
    sizes = None
    pairs = []
    for number, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        if kind is None:
            kind = tokens[0]
            if kind not in HEADER_ARITY:
                raise GraphSyntaxException("unknown graph type {!r}".format(kind), number)
            if len(tokens) != 1 + HEADER_ARITY[kind]:
                raise GraphSyntaxException("malformed {} header".format(kind), number)
            sizes = _parse_ints(tokens[1:], number)
            continue
        if len(tokens) != 2:
            raise GraphSyntaxException("expected 'u v', got {!r}".format(raw.strip()), number)
        u, v = _parse_ints(tokens, number)
        pairs.append((u, v, number))
    if kind is None:
        raise GraphSyntaxException("missing header", 1)
    return _build(kind, sizes, pairs)


def _parse_json(text):
    try:
        data = json.loads(text)
        kind = data['type']
        if kind == 'bipartite':
            sizes = [int(data['n_left']), int(data['n_right'])]
        else:
            sizes = [int(data['n'])]
        key = 'arcs' if kind == 'digraph' else 'edges'
        pairs = [(int(u), int(v), None) for u, v in data.get(key, [])]
    except (ValueError, KeyError, TypeError) as exc:
        raise GraphSyntaxException("malformed JSON graph: {}".format(exc))
    if kind not in HEADER_ARITY:
        raise GraphSyntaxException("unknown graph type {!r}".format(kind))
    return _build(kind, sizes, pairs)


def parse_graph(text):
    """
    Parses either format (JSON is recognised by a leading ``{``).

    :param text: the serialized graph
    :return: a :class:`Digraph`, :class:`UndirectedGraph` or :class:`BipartiteGraph`
    :raises GraphSyntaxException: with the offending line number
    :raises SelfLoopException: for a loop ``v v``
    :raises OutOfRangeException: for an index outside the declared size
    """
    if text.lstrip().startswith('{'):
        return _parse_json(text)
    return _parse_text(text)


def _edge_list(graph):
    if isinstance(graph, Digraph):
        return graph.arcs()
    return graph.edges()


def serialize_graph(graph, fmt='text'):
    """
    Canonical serialization; ``parse_graph(serialize_graph(g)) == g``.

    :param graph: any of the three graph types
    :param fmt: ``text`` or ``json``
    """
    pairs = _edge_list(graph)
    if fmt == 'json':
        if isinstance(graph, BipartiteGraph):
            data = {'type': 'bipartite', 'n_left': graph.n_left, 'n_right': graph.n_right}
        else:
            data = {'type': graph.kind, 'n': graph.n}
        data['arcs' if isinstance(graph, Digraph) else 'edges'] = [list(pair) for pair in pairs]
        return json.dumps(data) + '\n'
    if isinstance(graph, BipartiteGraph):
        header = 'bipartite {} {}'.format(graph.n_left, graph.n_right)
    else:
        header = '{} {}'.format(graph.kind, graph.n)
    return ''.join(['{}\n'.format(header)] + ['{} {}\n'.format(u, v) for u, v in pairs])


def read_graph(path):
    with open(path, 'r', encoding='utf8') as graph_file:
        return parse_graph(graph_file.read())


def write_graph(graph, path, fmt='text'):
    with open(path, 'w', encoding='utf8') as graph_file:
        graph_file.write(serialize_graph(graph, fmt))
