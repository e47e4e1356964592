"""
Checkers for bipartite graphs: a perfect matching meets at least half of all perfect
matchings, and ``K_{n,n}`` maximises ``(d/p)`` among balanced bipartite graphs.
"""
from fractions import Fraction

from permatch.checkers.base import BaseTheoremChecker, describe, new_report
from permatch.counting import (
    bipartite_permutation_sum,
    complete_bipartite_ratio_bound,
    count_derangements,
    count_perfect_matchings,
    count_permutations,
    enumerate_perfect_matchings,
)
from permatch.exc import TooLargeException
from permatch.graphs.base import BipartiteGraph

THEOREM1_MAX_N = 6
THEOREM6_MAX_N = 6


def _check_size(graph, limit, what):
    if max(graph.n_left, graph.n_right) > limit:
        raise TooLargeException("{} checks are capped at parts of {}".format(what, limit), limit)


def check_theorem1(graph):
    """
    One report per perfect matching ``M``: the perfect matchings meeting ``M`` are at
    least as many as those avoiding it. A graph without perfect matchings yields no
    reports.

    :param graph: a :class:`BipartiteGraph` with parts of at most 6
    """
    _check_size(graph, THEOREM1_MAX_N, 'theorem 1')
    if not graph.is_balanced():
        return []
    total = count_perfect_matchings(graph)
    instance = describe(graph)
    reports = []
    for matching in enumerate_perfect_matchings(graph):
        misses = count_perfect_matchings(graph.without_edges(matching.edges))
        hits = total - misses
        details = {'matching': [list(edge) for edge in matching.sorted_edges()], 'hits': hits, 'misses': misses}
        reports.append(new_report('theorem1', instance, hits >= misses, hits == misses, details))
    return reports


def check_theorem6(graph):
    """
    ``d/p <= 1 / sum_{k <= n} (k!)^(-2)`` with equality exactly for ``K_{n,n}``. Also
    confirms ``d = per(M)^2`` and the subpermanent expression for ``p``.

    :param graph: a :class:`BipartiteGraph` with parts of at most 6
    """
    _check_size(graph, THEOREM6_MAX_N, 'theorem 6')
    instance = describe(graph)
    derangements = count_derangements(graph)
    if not derangements:
        return new_report('theorem6', instance, True, details={'derangements': 0, 'note': 'no derangements'})
    n = graph.n_left
    permutations = count_permutations(graph)
    ratio = Fraction(derangements, permutations)
    bound = complete_bipartite_ratio_bound(n)
    matchings = count_perfect_matchings(graph)
    subpermanent_sum = bipartite_permutation_sum(graph)
    complete = graph.is_complete()
    details = {
        'derangements': derangements,
        'permutations': permutations,
        'ratio': str(ratio),
        'bound': str(bound),
        'complete': complete,
        'matchings_squared': matchings ** 2,
        'subpermanent_sum': subpermanent_sum,
    }
    holds = (ratio <= bound and (ratio == bound) == complete
             and derangements == matchings ** 2 and permutations == subpermanent_sum)
    return new_report('theorem6', instance, holds, ratio == bound, details)


class Theorem1Checker(BaseTheoremChecker):
    theorem = '1'
    applicable_types = [BipartiteGraph]

    def check(self, instance, *args, **kwargs):
        return check_theorem1(instance)


class Theorem6Checker(BaseTheoremChecker):
    theorem = '6'
    applicable_types = [BipartiteGraph]

    def check(self, instance, *args, **kwargs):
        return [check_theorem6(instance)]
