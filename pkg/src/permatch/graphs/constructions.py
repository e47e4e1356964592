"""
Named graph families: directed cycles, complete graphs, complete bipartite graphs, the
blowups ``D_{k,l}`` of a directed cycle, and the 3-regular graph ``H`` whose
distinguished perfect matching ``M_0`` is disjoint from every other perfect matching.
"""
from permatch.exc import BadParamsException
from permatch.graphs.base import (
    BipartiteGraph,
    Digraph,
    PerfectMatching,
    UndirectedGraph,
    new_digraph,
)
from permatch.graphs.utils import MAX_VERTICES, full_mask


def directed_cycle(n):
    """
    The directed cycle ``0 -> 1 -> ... -> n-1 -> 0``.
    """
    if n < 2:
        raise BadParamsException("a directed cycle needs n >= 2, got {}".format(n))
    return new_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    """
    ``K_n`` as an undirected graph (every ordered pair of distinct vertices is an arc).
    """
    if n < 1:
        raise BadParamsException("K_n needs n >= 1, got {}".format(n))
    mask = full_mask(n)
    return UndirectedGraph(Digraph(n, [mask & ~(1 << i) for i in range(n)]))


def complete_bipartite_graph(n, m=None):
    """
    ``K_{n,m}`` (``K_{n,n}`` by default) as an undirected graph: the left part is
    ``0..n-1`` and the right part ``n..n+m-1``.
    """
    m = n if m is None else m
    if n < 1 or m < 1:
        raise BadParamsException("K_{{n,m}} needs n, m >= 1, got {}, {}".format(n, m))
    return BipartiteGraph.complete(n, m).to_undirected()


def blowup(k, l):
    """
    ``D_{k,l}``: ``l`` layers of ``k`` vertices with every arc from layer ``j`` to layer
    ``j + 1 mod l``. Labelling is layer-major: member ``i`` of layer ``j`` is vertex
    ``j * k + i``. ``D_{1,n}`` is the directed ``n``-cycle and ``D_{n,2}`` is
    ``K_{n,n}``.

    :param k: layer size, ``k >= 1``
    :param l: number of layers, ``l >= 2``
    """
    if k < 1 or l < 2 or k * l > MAX_VERTICES:
        raise BadParamsException("blowup needs k >= 1, l >= 2, kl <= {}; got k={}, l={}".format(
            MAX_VERTICES, k, l))
    layer = full_mask(k)
    rows = []
    for j in range(l):
        target = layer << (((j + 1) % l) * k)
        rows.extend([target] * k)
    return Digraph(k * l, rows)


def thm2_h(n):
    """
    The graph ``H`` on ``4n`` vertices together with its matching ``M_0``.

    Vertices ``v_1 .. v_{2n}`` are ``0 .. 2n-1`` and ``u_1 .. u_{2n}`` are
    ``2n .. 4n-1``. For every ``i`` the blocks ``{v_{2i-1}, v_{2i}}`` and
    ``{u_{2i-1}, u_{2i}}`` are completely joined, and ``v_{2i-1} v_{2i}`` and
    ``u_{2i} u_{2i+1}`` (indices of ``u`` mod ``2n``) are edges. ``M_0`` is made of those
    last two kinds of edge. ``H`` has exactly ``2^n + 1`` perfect matchings and ``M_0`` is
    disjoint from all the others.

    :return: ``(H, M_0)``
    """
    if n < 1 or 4 * n > MAX_VERTICES:
        raise BadParamsException("thm2_h needs 1 <= n <= {}, got {}".format(MAX_VERTICES // 4, n))

    def v(index):
        return index - 1

    def u(index):
        return 2 * n + (index - 1) % (2 * n)

    edges = []
    m_0 = []
    for i in range(1, n + 1):
        for a in (2 * i - 1, 2 * i):
            for b in (2 * i - 1, 2 * i):
                edges.append((v(a), u(b)))
        m_0.append((v(2 * i - 1), v(2 * i)))
        m_0.append((u(2 * i), u(2 * i + 1)))
    edges.extend(m_0)
    graph = UndirectedGraph.from_edges(4 * n, edges)
    return graph, PerfectMatching.from_pairs(m_0)


CONSTRUCTIONS = {
    'cycle': lambda n: directed_cycle(n),
    'complete': lambda n: complete_graph(n),
    'complete_bipartite': lambda n: complete_bipartite_graph(n),
    'blowup': lambda k, l: blowup(k, l),
    'thm2_h': lambda n: thm2_h(n)[0],
}


def construct(kind, **params):
    """
    Builds a named graph. ``thm2_h`` returns only the graph here; call :func:`thm2_h`
    directly to get ``M_0`` as well.

    :param kind: one of ``cycle``, ``complete``, ``complete_bipartite``, ``blowup``,
        ``thm2_h`` (hyphenated spellings are accepted)
    :param params: ``n`` for every kind except ``blowup``, which takes ``k`` and ``l``
    :raises BadParamsException: for an unknown kind or bad parameters
    """
    builder = CONSTRUCTIONS.get(kind.replace('-', '_').replace('thm2h', 'thm2_h'))
    if builder is None:
        raise BadParamsException("unknown construction {!r}".format(kind))
    try:
        return builder(**params)
    except TypeError as exc:
        raise BadParamsException("bad parameters for {}: {}".format(kind, exc))
