"""
Reductions between directed graphs and bipartite graphs.
"""
from collections import namedtuple

from permatch.exc import TooLargeException
from permatch.graphs.base import BipartiteGraph, PerfectMatching
from permatch.graphs.utils import iter_bits

BIPARTITION_MAX_VERTICES = 24


def permutation_model(digraph):
    """
    The bipartite graph ``G'`` on ``[n] ⊔ [n]`` with ``{u_l, v_r}`` an edge iff
    ``(u, v)`` is an arc or ``u = v``. Permutations on ``G`` are exactly the perfect
    matchings of ``G'``.
    """
    rows = [row | 1 << vertex for vertex, row in enumerate(digraph.rows)]
    return BipartiteGraph(digraph.n, digraph.n, rows)


def derangement_model(digraph):
    """
    The bipartite graph whose biadjacency matrix is the adjacency matrix of
    ``digraph``; its perfect matchings are the derangements on ``digraph``.
    """
    return BipartiteGraph(digraph.n, digraph.n, digraph.rows)


class Bipartition(namedtuple('Bipartition', ['graph', 'sides'])):
    """
    One cross graph of :func:`bipartitions_over_matching`.

    ``sides[v]`` is ``0`` for a left vertex and ``1`` for a right vertex. ``graph`` is
    the :class:`BipartiteGraph` of the cross edges, with left and right vertices
    numbered in increasing original order (see ``left`` and ``right``).
    """

    @property
    def left(self):
        return tuple(v for v, side in enumerate(self.sides) if side == 0)

    @property
    def right(self):
        return tuple(v for v, side in enumerate(self.sides) if side == 1)

    def contains(self, matching):
        """
        True iff every edge of the general-graph ``matching`` crosses this bipartition.
        """
        return all(self.sides[u] != self.sides[v] for u, v in matching.edges)

    def local_matching(self, matching):
        """
        Translates a general-graph matching whose edges all cross into a
        ``(left, right)`` matching of :attr:`graph`.
        """
        left_index = {v: i for i, v in enumerate(self.left)}
        right_index = {v: i for i, v in enumerate(self.right)}
        pairs = []
        for u, v in matching.edges:
            if self.sides[u] == 1:
                u, v = v, u
            pairs.append((left_index[u], right_index[v]))
        return PerfectMatching.from_pairs(pairs, bipartite=True)


def bipartitions_over_matching(graph, matching):
    """
    Yields the ``2^(n-1)`` bipartitions of an undirected graph on ``2n`` vertices that
    put the two ends of every edge of ``matching`` on opposite sides, keeping only the
    edges that cross. The smaller end of the lowest matching edge is always on the left,
    so no assignment is produced twice up to a global swap.

    :param graph: an :class:`~permatch.graphs.base.UndirectedGraph`
    :param matching: a perfect matching of ``graph``
    :raises NotPerfectMatchingException: if ``matching`` is not one
    """
    matching.check(graph)
    if graph.n > BIPARTITION_MAX_VERTICES:
        raise TooLargeException("bipartition enumeration is capped at {} vertices".format(
            BIPARTITION_MAX_VERTICES), BIPARTITION_MAX_VERTICES)
    pairs = matching.sorted_edges()
    for choice in range(1 << (len(pairs) - 1)):
        sides = [0] * graph.n
        for index, (u, v) in enumerate(pairs):
            flip = index and choice >> (index - 1) & 1
            sides[u], sides[v] = (1, 0) if flip else (0, 1)
        yield _cross_graph(graph, tuple(sides))


def _cross_graph(graph, sides):
    left = [v for v in range(graph.n) if sides[v] == 0]
    right_index = {v: i for i, v in enumerate(v for v in range(graph.n) if sides[v] == 1)}
    rows = []
    for u in left:
        row = 0
        for v in iter_bits(graph.rows[u]):
            if sides[v] == 1:
                row |= 1 << right_index[v]
        rows.append(row)
    return Bipartition(BipartiteGraph(len(left), len(right_index), rows), sides)
