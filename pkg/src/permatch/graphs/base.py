from collections import namedtuple

from permatch.exc import (
    BadParamsException,
    GraphException,
    NotPerfectMatchingException,
    OutOfRangeException,
    SelfLoopException,
    TooLargeException,
)
from permatch.graphs.utils import MAX_VERTICES, full_mask, iter_bits, mask_of, popcount


def _check_vertex_count(n):
    if not isinstance(n, int) or n < 1:
        raise BadParamsException("vertex count must be a positive integer, got {!r}".format(n))
    if n > MAX_VERTICES:
        raise TooLargeException("at most {} vertices are supported, got {}".format(MAX_VERTICES, n), MAX_VERTICES)


class Digraph(namedtuple('Digraph', ['n', 'rows'])):
    """
    A loopless directed graph on ``[n]`` stored as bitset adjacency rows: bit ``j`` of
    ``rows[i]`` is set iff the arc ``(i, j)`` is present.

    Instances are immutable and hashable; build them with :func:`new_digraph` or the
    constructors in :mod:`permatch.graphs.constructions`.

    :param n: the vertex count (``1 <= n <= 64``)
    :type n: int
    :param rows: ``n`` adjacency bitmasks
    :type rows: tuple[int]
    """

    kind = 'digraph'

    def __new__(cls, n, rows):
        _check_vertex_count(n)
        rows = tuple(rows)
        if len(rows) != n:
            raise GraphException("expected {} adjacency rows, got {}".format(n, len(rows)))
        limit = full_mask(n)
        for vertex, row in enumerate(rows):
            if row < 0 or row & ~limit:
                raise OutOfRangeException("row {} references a vertex >= {}".format(vertex, n))
            if row >> vertex & 1:
                raise SelfLoopException("self loop at vertex {}".format(vertex))
        return super(Digraph, cls).__new__(cls, n, rows)

    def has_arc(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def arcs(self):
        """
        :return: all arcs as ``(u, v)`` pairs in lexicographic order
        """
        return [(u, v) for u, row in enumerate(self.rows) for v in iter_bits(row)]

    @property
    def arc_count(self):
        return sum(popcount(row) for row in self.rows)

    def out_degree(self, vertex):
        return popcount(self.rows[vertex])

    def in_rows(self):
        """
        :return: the in-neighbourhood bitmask of every vertex
        """
        columns = [0] * self.n
        for u, row in enumerate(self.rows):
            for v in iter_bits(row):
                columns[v] |= 1 << u
        return tuple(columns)

    def in_degree(self, vertex):
        return popcount(self.in_rows()[vertex])

    def transpose(self):
        return Digraph(self.n, self.in_rows())

    def is_symmetric(self):
        return self.rows == self.in_rows()

    def is_directed_cycle(self):
        """
        True iff the arcs form one directed cycle through all vertices: ``n`` arcs,
        every in- and out-degree is 1 and following arcs from vertex 0 visits everyone.
        """
        if self.n < 2 or self.arc_count != self.n:
            return False
        if any(popcount(row) != 1 for row in self.rows):
            return False
        if any(popcount(column) != 1 for column in self.in_rows()):
            return False
        seen = 0
        vertex = 0
        for _ in range(self.n):
            seen |= 1 << vertex
            vertex = self.rows[vertex].bit_length() - 1
        return vertex == 0 and seen == full_mask(self.n)

    def induced(self, vertices):
        """
        The subgraph induced on ``vertices``, relabelled to ``0..k-1`` in sorted vertex
        order.

        :param vertices: the vertices to keep
        :return: ``(subgraph, labels)`` where ``labels[local] = original``
        """
        labels = tuple(sorted(set(vertices)))
        local = {vertex: index for index, vertex in enumerate(labels)}
        keep = mask_of(labels)
        rows = []
        for vertex in labels:
            row = 0
            for target in iter_bits(self.rows[vertex] & keep):
                row |= 1 << local[target]
            rows.append(row)
        return Digraph(len(labels), rows), labels

    def adjacency_matrix(self):
        return [[row >> v & 1 for v in range(self.n)] for row in self.rows]


def new_digraph(n, arcs):
    """
    Builds a :class:`Digraph` holding exactly ``arcs``; duplicates collapse.

    :param n: vertex count, ``1 <= n <= 64``
    :param arcs: iterable of ``(u, v)`` pairs
    :raises SelfLoopException: for an arc ``(v, v)``
    :raises OutOfRangeException: for an endpoint outside ``[0, n)``
    """
    _check_vertex_count(n)
    rows = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeException("arc ({}, {}) outside [0, {})".format(u, v, n))
        if u == v:
            raise SelfLoopException("self loop at vertex {}".format(u))
        rows[u] |= 1 << v
    return Digraph(n, rows)


class UndirectedGraph(namedtuple('UndirectedGraph', ['digraph'])):
    """
    An undirected graph, stored as the symmetric :class:`Digraph` in which ``(u, v)``
    is an arc iff ``(v, u)`` is. Derangements and permutations on an undirected graph
    are those of this symmetric view.
    """

    kind = 'graph'

    def __new__(cls, digraph):
        if not digraph.is_symmetric():
            raise GraphException("adjacency of an undirected graph must be symmetric")
        return super(UndirectedGraph, cls).__new__(cls, digraph)

    @classmethod
    def from_edges(cls, n, edges):
        arcs = []
        for u, v in edges:
            arcs.append((u, v))
            arcs.append((v, u))
        return cls(new_digraph(n, arcs))

    @property
    def n(self):
        return self.digraph.n

    @property
    def rows(self):
        return self.digraph.rows

    def has_edge(self, u, v):
        return self.digraph.has_arc(u, v)

    def edges(self):
        """
        :return: the edges as ``(u, v)`` pairs with ``u < v``, lexicographically sorted
        """
        return [(u, v) for u, v in self.digraph.arcs() if u < v]

    @property
    def edge_count(self):
        return self.digraph.arc_count // 2

    def degree(self, vertex):
        return self.digraph.out_degree(vertex)

    def without_edges(self, edges):
        rows = list(self.rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return UndirectedGraph(Digraph(self.n, rows))


def new_graph(n, edges):
    return UndirectedGraph.from_edges(n, edges)


class BipartiteGraph(namedtuple('BipartiteGraph', ['n_left', 'n_right', 'rows'])):
    """
    A bipartite graph given by its biadjacency matrix: bit ``r`` of ``rows[l]`` is set
    iff left vertex ``l`` is joined to right vertex ``r``.
    """

    kind = 'bipartite'

    def __new__(cls, n_left, n_right, rows):
        _check_vertex_count(n_left)
        _check_vertex_count(n_right)
        rows = tuple(rows)
        if len(rows) != n_left:
            raise GraphException("expected {} biadjacency rows, got {}".format(n_left, len(rows)))
        limit = full_mask(n_right)
        for left, row in enumerate(rows):
            if row < 0 or row & ~limit:
                raise OutOfRangeException("row {} references a right vertex >= {}".format(left, n_right))
        return super(BipartiteGraph, cls).__new__(cls, n_left, n_right, rows)

    @classmethod
    def from_edges(cls, n_left, n_right, edges):
        _check_vertex_count(n_left)
        _check_vertex_count(n_right)
        rows = [0] * n_left
        for left, right in edges:
            if not (0 <= left < n_left and 0 <= right < n_right):
                raise OutOfRangeException("edge ({}, {}) outside [0, {}) x [0, {})".format(
                    left, right, n_left, n_right))
            rows[left] |= 1 << right
        return cls(n_left, n_right, rows)

    @classmethod
    def complete(cls, n_left, n_right=None):
        n_right = n_left if n_right is None else n_right
        return cls(n_left, n_right, [full_mask(n_right)] * n_left)

    def has_edge(self, left, right):
        return bool(self.rows[left] >> right & 1)

    def edges(self):
        return [(left, right) for left, row in enumerate(self.rows) for right in iter_bits(row)]

    @property
    def edge_count(self):
        return sum(popcount(row) for row in self.rows)

    def is_balanced(self):
        return self.n_left == self.n_right

    def is_complete(self):
        return all(row == full_mask(self.n_right) for row in self.rows)

    def without_edges(self, edges):
        rows = list(self.rows)
        for left, right in edges:
            rows[left] &= ~(1 << right)
        return BipartiteGraph(self.n_left, self.n_right, rows)

    def symmetric_digraph(self):
        """
        The undirected bipartite graph on ``[n_left] ⊔ [n_right]`` as a symmetric
        digraph: left vertex ``l`` becomes ``l`` and right vertex ``r`` becomes
        ``n_left + r``.
        """
        n = self.n_left + self.n_right
        rows = [row << self.n_left for row in self.rows] + [0] * self.n_right
        for left, right in self.edges():
            rows[self.n_left + right] |= 1 << left
        return Digraph(n, rows)

    def to_undirected(self):
        return UndirectedGraph(self.symmetric_digraph())


class PerfectMatching(namedtuple('PerfectMatching', ['edges', 'bipartite'])):
    """
    A perfect matching as a frozen set of edges. Bipartite matchings hold
    ``(left, right)`` pairs; matchings of general graphs hold ``(u, v)`` with ``u < v``.
    """

    @classmethod
    def from_pairs(cls, pairs, bipartite=False):
        if bipartite:
            return cls(frozenset((left, right) for left, right in pairs), True)
        return cls(frozenset((min(u, v), max(u, v)) for u, v in pairs), False)

    @classmethod
    def from_assignment(cls, assignment):
        """
        A bipartite matching from a left-to-right map given as a sequence.
        """
        return cls(frozenset(enumerate(assignment)), True)

    def sorted_edges(self):
        return sorted(self.edges)

    def meets(self, other):
        return not self.edges.isdisjoint(other.edges)

    def as_assignment(self):
        return tuple(right for _, right in sorted(self.edges))

    def check(self, graph):
        """
        Verifies this is a perfect matching of ``graph``.

        :param graph: an :class:`UndirectedGraph` or :class:`BipartiteGraph`
        :raises NotPerfectMatchingException: when it is not
        """
        if isinstance(graph, BipartiteGraph):
            if not self.bipartite:
                raise NotPerfectMatchingException("a bipartite graph needs a (left, right) matching")
            lefts = [left for left, _ in self.edges]
            rights = [right for _, right in self.edges]
            if not graph.is_balanced() or sorted(lefts) != list(range(graph.n_left)) \
                    or sorted(rights) != list(range(graph.n_right)):
                raise NotPerfectMatchingException("matching does not cover every vertex exactly once")
            present = all(0 <= r < graph.n_right and graph.has_edge(l, r) for l, r in self.edges)
        else:
            if self.bipartite:
                raise NotPerfectMatchingException("a general graph needs an undirected matching")
            covered = [vertex for edge in self.edges for vertex in edge]
            if sorted(covered) != list(range(graph.n)):
                raise NotPerfectMatchingException("matching does not cover every vertex exactly once")
            present = all(graph.has_edge(u, v) for u, v in self.edges)
        if not present:
            raise NotPerfectMatchingException("matching uses an edge missing from the graph")
        return self
