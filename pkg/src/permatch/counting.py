"""
Derangements, permutations and perfect matchings on graphs, counted exactly.

A *permutation on* ``G`` is a bijection ``sigma`` of the vertices with
``(v, sigma(v))`` an arc whenever ``sigma(v) != v``; a *derangement on* ``G`` is one
with no fixed points. Derangements are counted as ``per(A)`` and permutations as
``per(A + I)`` where ``A`` is the adjacency matrix. Undirected graphs are counted
through their symmetric digraph, bipartite graphs through the undirected graph on
``[n_left] ⊔ [n_right]``.
"""
from collections import namedtuple
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from permatch.exc import (
    BadParamsException,
    NotOnGraphException,
    PermutationException,
    TooLargeException,
)
from permatch.graphs.base import BipartiteGraph, PerfectMatching
from permatch.graphs.utils import iter_bits, lowest_bit, mask_of
from permatch.permanent import IntMatrix, permanent_ryser

ENUMERATION_MAX_N = 10
FIXED_POINT_MAX_N = 12
BIPARTITE_SUM_MAX_N = 8
MATCHING_ENUMERATION_MAX_N = 12
GENERAL_MATCHING_MAX_VERTICES = 24
DISPLAY_DIGITS = 12

ExactRatio = Fraction
"""
Exact ratios are reduced :class:`fractions.Fraction` values.
"""


class Permutation(namedtuple('Permutation', ['sigma'])):
    """
    A bijection of ``[n]``; ``sigma[v]`` is the image of ``v``. Serialized as the
    comma-separated images, so ``"1,2,0"`` maps ``0 -> 1 -> 2 -> 0``.
    """

    def __new__(cls, sigma):
        sigma = tuple(int(image) for image in sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise PermutationException("{} is not a bijection of [{}]".format(
                ','.join(map(str, sigma)), len(sigma)))
        return super(Permutation, cls).__new__(cls, sigma)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def parse(cls, text):
        try:
            return cls(int(part) for part in text.replace(' ', '').split(','))
        except ValueError:
            raise PermutationException("malformed permutation {!r}".format(text))

    @property
    def n(self):
        return len(self.sigma)

    def fixed_points(self):
        return frozenset(v for v, image in enumerate(self.sigma) if v == image)

    def is_derangement(self):
        return all(v != image for v, image in enumerate(self.sigma))

    def is_identity(self):
        return all(v == image for v, image in enumerate(self.sigma))

    def cycles(self):
        """
        The nontrivial cycles, each starting at its smallest vertex, sorted by it.
        """
        seen = set()
        result = []
        for start in range(self.n):
            if start in seen or self.sigma[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            vertex = self.sigma[start]
            while vertex != start:
                cycle.append(vertex)
                seen.add(vertex)
                vertex = self.sigma[vertex]
            result.append(tuple(cycle))
        return result

    def check(self, graph):
        """
        Verifies every moved vertex follows an arc of ``graph``.

        :raises NotOnGraphException: naming the first missing arc
        """
        rows = _digraph_rows(graph)
        if len(rows) != self.n:
            raise NotOnGraphException("permutation of [{}] on a graph with {} vertices".format(self.n, len(rows)))
        for v, image in enumerate(self.sigma):
            if v != image and not rows[v] >> image & 1:
                raise NotOnGraphException("({}, {}) is not an arc".format(v, image))
        return self

    def __str__(self):
        return ','.join(str(image) for image in self.sigma)


class IntersectionTally(namedtuple('IntersectionTally', ['hits', 'misses'])):
    """
    Perfect matchings of a graph split by whether they share an edge with a fixed
    matching ``M`` (``M`` itself is a hit).
    """

    @property
    def total(self):
        return self.hits + self.misses


def _digraph_rows(graph):
    return as_digraph(graph).rows


def _with_loops(rows):
    return [row | 1 << v for v, row in enumerate(rows)]


def count_derangements(graph, workers=1):
    """
    The number of derangements on ``graph``: ``per(A)``.

    :param graph: a digraph, undirected graph or bipartite graph with ``n <= 30``
    :raises TooLargeException: beyond 30 vertices
    """
    return permanent_ryser(IntMatrix.from_bitmasks(_digraph_rows(graph)), workers)


def count_permutations(graph, workers=1):
    """
    The number of permutations on ``graph``: ``per(A + I)``; at least 1.
    """
    return permanent_ryser(IntMatrix.from_bitmasks(_with_loops(_digraph_rows(graph))), workers)


def dp_ratio(graph, workers=1):
    """
    :return: derangements over permutations as an exact reduced fraction
    """
    return ExactRatio(count_derangements(graph, workers), count_permutations(graph, workers))


def decimal_string(ratio, digits=DISPLAY_DIGITS):
    """
    ``ratio`` rounded half-even to ``digits`` significant digits, in plain notation.
    """
    ratio = Fraction(ratio)
    if not ratio:
        return '0.' + '0' * (digits - 1)
    sign = '-' if ratio < 0 else ''
    ratio = abs(ratio)
    exponent = len(str(ratio.numerator)) - len(str(ratio.denominator))
    if ratio < Fraction(10) ** exponent:
        exponent -= 1
    places = digits - 1 - exponent
    scaled = round(ratio * Fraction(10) ** places)
    if scaled >= 10 ** digits:
        scaled //= 10
        places -= 1
    return sign + format(Decimal(scaled).scaleb(-places), 'f')


def format_ratio(ratio):
    """
    ``"num/den (decimal)"``, e.g. ``"1/2 (0.500000000000)"``.
    """
    ratio = Fraction(ratio)
    return "{}/{} ({})".format(ratio.numerator, ratio.denominator, decimal_string(ratio))


def enumerate_permutations(graph, derangements_only=False):
    """
    Yields every permutation (or derangement) on ``graph`` once, in lexicographic
    order of ``sigma``.

    :raises TooLargeException: for ``n > 10``
    """
    rows = _digraph_rows(graph)
    n = len(rows)
    if n > ENUMERATION_MAX_N:
        raise TooLargeException("permutation enumeration is capped at n = {}".format(ENUMERATION_MAX_N),
                                ENUMERATION_MAX_N)
    options = rows if derangements_only else _with_loops(rows)
    sigma = [0] * n

    def extend(vertex, used):
        if vertex == n:
            yield Permutation(sigma)
            return
        for image in iter_bits(options[vertex] & ~used):
            sigma[vertex] = image
            for permutation in extend(vertex + 1, used | 1 << image):
                yield permutation

    return extend(0, 0)


def count_perfect_matchings(graph, workers=1):
    """
    Perfect matchings of a bipartite graph: ``per`` of its biadjacency matrix, and 0
    when the parts differ in size.
    """
    if not graph.is_balanced():
        return 0
    return permanent_ryser(IntMatrix.from_bitmasks(graph.rows), workers)


def count_perfect_matchings_general(graph):
    """
    Perfect matchings of an undirected graph by branching on the lowest unmatched
    vertex, memoised on the set of unmatched vertices.

    :raises TooLargeException: beyond 24 vertices
    """
    if graph.n > GENERAL_MATCHING_MAX_VERTICES:
        raise TooLargeException("general matching count is capped at {} vertices".format(
            GENERAL_MATCHING_MAX_VERTICES), GENERAL_MATCHING_MAX_VERTICES)
    if graph.n % 2:
        return 0
    rows = graph.rows

    @lru_cache(maxsize=None)
    def count(unmatched):
        if not unmatched:
            return 1
        vertex = lowest_bit(unmatched)
        rest = unmatched & ~(1 << vertex)
        return sum(count(rest & ~(1 << partner)) for partner in iter_bits(rows[vertex] & rest))

    return count((1 << graph.n) - 1)


def enumerate_perfect_matchings(graph):
    """
    Yields the perfect matchings of a bipartite graph as ``(left, right)`` matchings, in
    lexicographic order of the left-to-right assignment.
    """
    if not graph.is_balanced():
        return
    n = graph.n_left
    if n > MATCHING_ENUMERATION_MAX_N:
        raise TooLargeException("matching enumeration is capped at parts of {}".format(
            MATCHING_ENUMERATION_MAX_N), MATCHING_ENUMERATION_MAX_N)
    assignment = [0] * n

    def extend(left, used):
        if left == n:
            yield PerfectMatching.from_assignment(assignment)
            return
        for right in iter_bits(graph.rows[left] & ~used):
            assignment[left] = right
            for matching in extend(left + 1, used | 1 << right):
                yield matching

    for matching in extend(0, 0):
        yield matching


def enumerate_perfect_matchings_general(graph):
    """
    Yields the perfect matchings of an undirected graph, branching on the lowest
    unmatched vertex and its partners in increasing order.
    """
    if graph.n > GENERAL_MATCHING_MAX_VERTICES:
        raise TooLargeException("general matching enumeration is capped at {} vertices".format(
            GENERAL_MATCHING_MAX_VERTICES), GENERAL_MATCHING_MAX_VERTICES)
    if graph.n % 2:
        return
    rows = graph.rows
    pairs = []

    def extend(unmatched):
        if not unmatched:
            yield PerfectMatching.from_pairs(pairs)
            return
        vertex = lowest_bit(unmatched)
        rest = unmatched & ~(1 << vertex)
        for partner in iter_bits(rows[vertex] & rest):
            pairs.append((vertex, partner))
            for matching in extend(rest & ~(1 << partner)):
                yield matching
            pairs.pop()

    for matching in extend((1 << graph.n) - 1):
        yield matching


def matching_intersection_tally(graph, matching):
    """
    Splits the perfect matchings of ``graph`` into those meeting ``matching`` and those
    disjoint from it. The disjoint ones are exactly the perfect matchings of
    ``graph - matching``.

    :param graph: a :class:`BipartiteGraph` or :class:`UndirectedGraph`
    :param matching: a perfect matching of ``graph``
    :raises NotPerfectMatchingException: if it is not one
    """
    matching.check(graph)
    if isinstance(graph, BipartiteGraph):
        total = count_perfect_matchings(graph)
        misses = count_perfect_matchings(graph.without_edges(matching.edges))
    else:
        total = count_perfect_matchings_general(graph)
        misses = count_perfect_matchings_general(graph.without_edges(matching.edges))
    return IntersectionTally(total - misses, misses)


def _induced_permanent(rows, vertices):
    """
    ``per(A(S, S))`` for the vertex list ``S`` (1 for the empty list).
    """
    if not vertices:
        return 1
    keep = mask_of(vertices)
    local = {vertex: index for index, vertex in enumerate(vertices)}
    masks = [mask_of(local[t] for t in iter_bits(rows[v] & keep)) for v in vertices]
    return permanent_ryser(IntMatrix.from_bitmasks(masks))


def permutations_by_fixed_points(graph):
    """
    ``counts[m]`` is the number of permutations on ``graph`` with exactly ``m`` fixed
    points: the sum of ``per(A(S, S))`` over the sets ``S`` of ``n - m`` moved vertices.

    :raises TooLargeException: for ``n > 12``
    """
    rows = _digraph_rows(graph)
    n = len(rows)
    if n > FIXED_POINT_MAX_N:
        raise TooLargeException("fixed-point partition is capped at n = {}".format(FIXED_POINT_MAX_N),
                                FIXED_POINT_MAX_N)
    counts = [0] * (n + 1)
    for size in range(n + 1):
        for moved in combinations(range(n), size):
            counts[n - size] += _induced_permanent(rows, moved)
    return counts


def bipartite_permutation_sum(graph):
    """
    Permutations on a balanced bipartite graph as the double subset sum of squared
    subpermanents of the biadjacency matrix ``M``: each permutation moves the left set
    ``S`` onto the right set ``S'`` and back again.

    :raises BadParamsException: for unequal parts
    :raises TooLargeException: for parts larger than 8
    """
    if not graph.is_balanced():
        raise BadParamsException("the subpermanent sum needs equal parts, got {} and {}".format(
            graph.n_left, graph.n_right))
    n = graph.n_left
    if n > BIPARTITE_SUM_MAX_N:
        raise TooLargeException("bipartite permutation sum is capped at n = {}".format(BIPARTITE_SUM_MAX_N),
                                BIPARTITE_SUM_MAX_N)
    matrix = IntMatrix.from_bitmasks(graph.rows)
    total = 0
    for size in range(n + 1):
        for rows in combinations(range(n), size):
            for columns in combinations(range(n), size):
                total += permanent_ryser(matrix.submatrix(rows, columns)) ** 2
    return total


def blowup_counts(k, l):
    """
    Closed forms on ``D_{k,l}``: ``d = (k!)^l``, ``p = sum_i (C(k, i) (k - i)!)^l`` and
    ``d / p = 1 / sum_i (i!)^(-l)``.

    :return: ``(d, p, ratio)``
    """
    if k < 1 or l < 2:
        raise BadParamsException("blowup needs k >= 1 and l >= 2, got k={}, l={}".format(k, l))
    d = factorial(k) ** l
    p = sum((comb(k, i) * factorial(k - i)) ** l for i in range(k + 1))
    ratio = 1 / sum(Fraction(1, factorial(i) ** l) for i in range(k + 1))
    return d, p, ratio


def complete_bipartite_ratio_bound(n):
    """
    ``(d/p)`` of ``K_{n,n}``, which is ``1 / sum_{k <= n} (k!)^(-2)``; no balanced
    bipartite graph on ``2n`` vertices does better.
    """
    return 1 / sum(Fraction(1, factorial(k) ** 2) for k in range(n + 1))


def as_digraph(graph):
    """
    The digraph through which ``graph`` is counted.
    """
    if isinstance(graph, BipartiteGraph):
        return graph.symmetric_digraph()
    return getattr(graph, 'digraph', graph)


def is_directed_cycle(graph):
    return as_digraph(graph).is_directed_cycle()
