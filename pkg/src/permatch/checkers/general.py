"""
Perfect matchings of general graphs: a perfect matching ``M`` of a graph on ``2n``
vertices meets at least ``1 / (2^(n-1) + 1)`` of all perfect matchings.

The check also replays the argument behind the bound. Every matching avoiding ``M``
forms with ``M`` a union of even cycles, so it survives in one of the ``2^(n-1)``
bipartitions that split every edge of ``M``. Inside each bipartition the bipartite
statement applies, and matchings there that meet ``M`` meet it in the whole graph.
"""
from fractions import Fraction
import logging

from permatch.checkers.base import BaseTheoremChecker, describe, new_report
from permatch.counting import (
    count_perfect_matchings,
    enumerate_perfect_matchings_general,
    matching_intersection_tally,
)
from permatch.exc import TooLargeException
from permatch.graphs.base import UndirectedGraph
from permatch.graphs.models import bipartitions_over_matching

logger = logging.getLogger(__name__)

THEOREM2_MAX_VERTICES = 12


def _bipartition_totals(graph, matching):
    """
    The bipartitions over ``matching``, the summed local misses of ``matching`` and
    whether the bipartite statement held in every one of them.
    """
    bipartitions = list(bipartitions_over_matching(graph, matching))
    misses = 0
    local_ok = True
    for bipartition in bipartitions:
        local = bipartition.local_matching(matching)
        total = count_perfect_matchings(bipartition.graph)
        local_misses = count_perfect_matchings(bipartition.graph.without_edges(local.edges))
        local_ok = local_ok and total - local_misses >= local_misses
        misses += local_misses
    return bipartitions, misses, local_ok


def _uncovered(graph, matching, bipartitions):
    """
    Counts the perfect matchings disjoint from ``matching`` that cross none of the
    given bipartitions.
    """
    return sum(1 for other in enumerate_perfect_matchings_general(graph.without_edges(matching.edges))
               if not any(bipartition.contains(other) for bipartition in bipartitions))


def check_theorem2(graph):
    """
    One report per perfect matching ``M``: ``misses <= 2^(n-1) * hits``. The report
    fails as well if some bipartition breaks the bipartite statement, or if the
    bipartitions do not account for every matching avoiding ``M``.

    :param graph: an :class:`UndirectedGraph` on at most 12 vertices
    """
    if graph.n > THEOREM2_MAX_VERTICES:
        raise TooLargeException("theorem 2 checks are capped at {} vertices".format(THEOREM2_MAX_VERTICES),
                                THEOREM2_MAX_VERTICES)
    if graph.n % 2:
        return []
    factor = 2 ** (graph.n // 2 - 1)
    instance = describe(graph)
    reports = []
    for matching in enumerate_perfect_matchings_general(graph):
        tally = matching_intersection_tally(graph, matching)
        bipartitions, local_misses, local_ok = _bipartition_totals(graph, matching)
        uncovered = _uncovered(graph, matching, bipartitions)
        covered = not uncovered
        details = {
            'matching': [list(edge) for edge in matching.sorted_edges()],
            'hits': tally.hits,
            'misses': tally.misses,
            'bound': factor * tally.hits,
            'bipartitions': len(bipartitions),
            'bipartition_misses': local_misses,
            'local_theorem1': local_ok,
            'covered': covered,
            'uncovered': uncovered,
        }
        holds = tally.misses <= factor * tally.hits and local_ok and covered
        if not holds:
            logger.warning("theorem 2 fails on %s for %s", instance, details['matching'])
        reports.append(new_report('theorem2', instance, holds, tally.misses == factor * tally.hits, details))
    return reports


def intersecting_fraction(reports):
    """
    The smallest share of perfect matchings meeting a fixed one, over the theorem 2
    reports in ``reports``; ``None`` when there are none.
    """
    shares = [Fraction(report.details['hits'], report.details['hits'] + report.details['misses'])
              for report in reports if report.theorem == 'theorem2' and report.details]
    return min(shares) if shares else None


class Theorem2Checker(BaseTheoremChecker):
    theorem = '2'
    applicable_types = [UndirectedGraph]

    def check(self, instance, *args, **kwargs):
        return check_theorem2(instance)
