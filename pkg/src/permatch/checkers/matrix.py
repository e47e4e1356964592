"""
Checkers on permanents: the subpermanent expansion, the Minc-Brégman and van der
Waerden sandwich for regular matrices, and the closed forms for the blowups
``D_{k,l}``.
"""
from collections import namedtuple
from fractions import Fraction

from permatch.checkers.base import BaseTheoremChecker, describe, new_report
from permatch.counting import (
    ENUMERATION_MAX_N,
    FIXED_POINT_MAX_N,
    blowup_counts,
    count_derangements,
    count_permutations,
    enumerate_permutations,
    permutations_by_fixed_points,
)
from permatch.exc import BadParamsException, TooLargeException
from permatch.graphs.base import BipartiteGraph, Digraph, UndirectedGraph
from permatch.graphs.constructions import blowup
from permatch.permanent import (
    RYSER_MAX_N,
    IntMatrix,
    exact_log,
    log_bounds,
    permanent_ryser,
    subpermanent_sides,
)

LOG_SLACK = 1e-9


class BlowupParams(namedtuple('BlowupParams', ['k', 'l'])):
    """
    The parameters of ``D_{k,l}``, checked without building a graph file.
    """
    pass


def graph_matrix(instance):
    """
    The matrix a graph is checked through: the biadjacency matrix of a balanced
    bipartite graph, otherwise the adjacency matrix.
    """
    if isinstance(instance, IntMatrix):
        return instance
    if isinstance(instance, BipartiteGraph):
        if not instance.is_balanced():
            raise BadParamsException("an unbalanced bipartite graph has no square biadjacency matrix")
        return IntMatrix.from_bitmasks(instance.rows)
    return IntMatrix.from_bitmasks(instance.rows)


def _label(instance):
    if isinstance(instance, IntMatrix):
        return 'matrix n={} {}'.format(instance.n, ';'.join(','.join(map(str, row)) for row in instance.entries))
    return describe(instance)


def check_subpermanent(instance):
    """
    ``C(n, k) per(M)`` equals the sum of ``per(M(S, S')) per(M(S̄, S̄'))`` for every
    ``k`` from 0 to ``n``.
    """
    matrix = graph_matrix(instance)
    sides = [subpermanent_sides(matrix, k) for k in range(matrix.n + 1)]
    mismatched = [k for k, (lhs, rhs) in enumerate(sides) if lhs != rhs]
    details = {'permanent': permanent_ryser(matrix), 'sides': [[lhs, rhs] for lhs, rhs in sides]}
    return new_report('subpermanent', _label(instance), not mismatched, True, details,
                      witness={'k': mismatched} if mismatched else None)


def check_bounds(instance):
    """
    For a 0/1 matrix with all line sums ``k``:
    ``n! (k/n)^n <= per <= (k!)^(n/k)`` in log space with ``1e-9`` slack.
    """
    matrix = graph_matrix(instance)
    sums = set(matrix.row_sums() + matrix.column_sums())
    if not matrix.is_binary() or len(sums) != 1 or 0 in sums:
        raise BadParamsException("bounds need a 0/1 matrix with equal positive line sums")
    k = sums.pop()
    log_lower, log_upper = log_bounds(matrix.n, k)
    log_permanent = exact_log(permanent_ryser(matrix))
    details = {'k': k, 'log_lower': log_lower, 'log_permanent': log_permanent, 'log_upper': log_upper}
    holds = log_lower - LOG_SLACK <= log_permanent <= log_upper + LOG_SLACK
    equality = abs(log_upper - log_permanent) <= LOG_SLACK
    return new_report('bounds', _label(instance), holds, equality, details)


def check_blowup_formulas(k, l, workers=1):
    """
    Counts on ``D_{k,l}`` against ``d = (k!)^l``, ``p = sum_i (C(k, i)(k - i)!)^l`` and
    ``d/p = 1 / sum_i (i!)^(-l)``. Up to 10 vertices the counts are also enumerated,
    up to 12 they are also split by fixed points (which only come in multiples of
    ``l``).
    """
    if k < 1 or l < 2:
        raise BadParamsException("blowup needs k >= 1 and l >= 2, got k={}, l={}".format(k, l))
    if k * l > RYSER_MAX_N:
        raise TooLargeException("blowup checks are capped at kl = {}".format(RYSER_MAX_N), RYSER_MAX_N)
    graph = blowup(k, l)
    d_formula, p_formula, ratio_formula = blowup_counts(k, l)
    derangements = count_derangements(graph, workers)
    permutations = count_permutations(graph, workers)
    failures = []
    if (derangements, permutations) != (d_formula, p_formula):
        failures.append('permanents disagree with the closed forms')
    if Fraction(derangements, permutations) != ratio_formula:
        failures.append('ratio disagrees with the closed form')
    details = {
        'derangements': derangements,
        'permutations': permutations,
        'ratio': str(ratio_formula),
    }
    if k * l <= ENUMERATION_MAX_N:
        enumerated = sum(1 for _ in enumerate_permutations(graph))
        deranged = sum(1 for _ in enumerate_permutations(graph, derangements_only=True))
        details.update(enumerated_derangements=deranged, enumerated_permutations=enumerated)
        if (deranged, enumerated) != (d_formula, p_formula):
            failures.append('enumeration disagrees with the closed forms')
    if k * l <= FIXED_POINT_MAX_N:
        by_fixed = permutations_by_fixed_points(graph)
        details['by_fixed_points'] = by_fixed
        if any(count for fixed, count in enumerate(by_fixed) if fixed % l):
            failures.append('fixed points not spread evenly over the layers')
        if sum(by_fixed) != p_formula or by_fixed[0] != d_formula:
            failures.append('fixed-point partition disagrees with the closed forms')
    details['failures'] = failures
    return new_report('blowup', 'blowup k={} l={}'.format(k, l), not failures, False, details)


class SubpermanentChecker(BaseTheoremChecker):
    theorem = 'subpermanent'
    applicable_types = [Digraph, UndirectedGraph, BipartiteGraph, IntMatrix]

    def is_applicable(self, instance, *args, **kwargs):
        if isinstance(instance, BipartiteGraph) and not instance.is_balanced():
            return False
        return super(SubpermanentChecker, self).is_applicable(instance)

    def check(self, instance, *args, **kwargs):
        return [check_subpermanent(instance)]


class BoundsChecker(BaseTheoremChecker):
    theorem = 'bounds'
    applicable_types = [Digraph, UndirectedGraph, BipartiteGraph, IntMatrix]

    def is_applicable(self, instance, *args, **kwargs):
        if not super(BoundsChecker, self).is_applicable(instance):
            return False
        if isinstance(instance, BipartiteGraph) and not instance.is_balanced():
            return False
        matrix = graph_matrix(instance)
        sums = set(matrix.row_sums() + matrix.column_sums())
        return matrix.is_binary() and len(sums) == 1 and 0 not in sums

    def check(self, instance, *args, **kwargs):
        return [check_bounds(instance)]


class BlowupChecker(BaseTheoremChecker):
    theorem = 'blowup'
    applicable_types = [BlowupParams]

    def check(self, instance, *args, **kwargs):
        return [check_blowup_formulas(instance.k, instance.l, kwargs.get('workers', 1))]
