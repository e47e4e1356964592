"""
Checkers for directed graphs: ``p >= 2d`` with equality exactly on directed cycles,
the injection behind it, and the count of cycles through a vertex against the
number of Hamilton cycles.
"""
from fractions import Fraction
import logging

from permatch.checkers.base import BaseTheoremChecker, describe, new_report
from permatch.counting import count_derangements, count_permutations, enumerate_permutations, is_directed_cycle
from permatch.exc import NotInImageException, TooLargeException
from permatch.graphs.base import BipartiteGraph, Digraph, UndirectedGraph
from permatch.injection import (
    apply_injection,
    choose_special_vertex,
    hamilton_census,
    invert_injection,
)

logger = logging.getLogger(__name__)

THEOREM3_MAX_N = 24
INJECTION_MAX_N = 7


def _vertex_count(graph):
    if isinstance(graph, BipartiteGraph):
        return graph.n_left + graph.n_right
    return graph.n


def check_theorem3(graph, workers=1):
    """
    ``2d <= p``, with equality if and only if ``graph`` is a directed cycle.
    """
    if _vertex_count(graph) > THEOREM3_MAX_N:
        raise TooLargeException("theorem 3 checks are capped at n = {}".format(THEOREM3_MAX_N), THEOREM3_MAX_N)
    derangements = count_derangements(graph, workers)
    permutations = count_permutations(graph, workers)
    cycle = is_directed_cycle(graph)
    details = {
        'derangements': derangements,
        'permutations': permutations,
        'ratio': str(Fraction(derangements, permutations)),
        'directed_cycle': cycle,
    }
    equality = 2 * derangements == permutations
    return new_report('theorem3', describe(graph), 2 * derangements <= permutations and equality == cycle,
                      equality, details)


def _round_trips(graph, derangement, image, vertex):
    try:
        return invert_injection(graph, image, vertex) == derangement
    except NotInImageException:
        return False


def check_injection(graph):
    """
    For every special vertex: the images of all derangements are distinct, each has a
    fixed point and inverts back to its derangement. Off directed cycles the identity
    is not an image at :func:`~permatch.injection.choose_special_vertex`, so
    ``p >= 2d + 1``.
    """
    n = _vertex_count(graph)
    if n > INJECTION_MAX_N:
        raise TooLargeException("injection checks are capped at n = {}".format(INJECTION_MAX_N), INJECTION_MAX_N)
    derangements = list(enumerate_permutations(graph, derangements_only=True))
    cycle = is_directed_cycle(graph)
    failures = []
    images_at = {}
    for vertex in range(n):
        images = [apply_injection(graph, derangement, vertex) for derangement in derangements]
        images_at[vertex] = set(images)
        if len(images_at[vertex]) != len(images):
            failures.append('not injective at {}'.format(vertex))
        if any(image.is_derangement() for image in images):
            failures.append('fixed-point-free image at {}'.format(vertex))
        if not all(_round_trips(graph, d, image, vertex) for d, image in zip(derangements, images)):
            failures.append('round trip fails at {}'.format(vertex))

    details = {'derangements': len(derangements), 'directed_cycle': cycle}
    if derangements and not cycle:
        special = choose_special_vertex(graph)
        permutations = count_permutations(graph)
        identity_hit = any(image.is_identity() for image in images_at[special])
        details.update(special_vertex=special, permutations=permutations)
        if identity_hit:
            failures.append('identity is an image at {}'.format(special))
        if permutations < 2 * len(derangements) + 1:
            failures.append('fewer than 2d + 1 permutations')
    details['failures'] = failures
    if failures:
        logger.warning("injection fails on %s: %s", describe(graph), '; '.join(failures))
    return new_report('injection', describe(graph), not failures, bool(derangements) and cycle, details)


def check_corollary(graph):
    """
    Off directed cycles some vertex lies on at least twice as many cycles as there are
    Hamilton cycles. Equality flags graphs where the most covered vertex meets the
    bound exactly.
    """
    census = hamilton_census(graph)
    ham = census.ham_count
    details = {'hamilton_cycles': ham, 'cycles_through': list(census.cycles_through)}
    tight = ham > 0 and max(census.cycles_through) == 2 * ham
    return new_report('corollary', describe(graph), census.corollary_ok, tight, details)


class Theorem3Checker(BaseTheoremChecker):
    theorem = '3'
    applicable_types = [Digraph, UndirectedGraph, BipartiteGraph]

    def check(self, instance, *args, **kwargs):
        return [check_theorem3(instance, kwargs.get('workers', 1))]


class InjectionChecker(BaseTheoremChecker):
    theorem = 'injection'
    applicable_types = [Digraph, UndirectedGraph]

    def check(self, instance, *args, **kwargs):
        return [check_injection(instance)]


class CorollaryChecker(BaseTheoremChecker):
    theorem = 'corollary'
    applicable_types = [Digraph, UndirectedGraph]

    def check(self, instance, *args, **kwargs):
        return [check_corollary(instance)]
