"""
The injection from derangements to permutations with a fixed point.

Fix a vertex ``v``. A derangement ``D`` keeps every cycle that avoids ``v``. The cycle
``C`` through ``v`` is a Hamilton cycle of the subgraph induced on its vertices; write
it ``v_0 = v, v_1, ..., v_{k-1}``. A *chord* is an arc ``(v_i, v_j)`` of that subgraph
that is not an arc of ``C``. It leaves out the positions strictly between ``i`` and
``j`` walking forward (its *leftover* set) and closes the cycle ``v_j, ..., v_i``. A
chord is *forward* when position 0 is not left out. ``C`` is replaced by all fixed
points when it has no forward chord, and otherwise by the cycle closed by its first
minimal forward chord plus the leftover vertices as fixed points.

Images always have a fixed point and the map can be undone from the image alone
(:func:`invert_injection`), so ``p >= 2d`` on every graph.
"""
from collections import namedtuple
import logging

from permatch.counting import Permutation, as_digraph
from permatch.exc import (
    IsDirectedCycleException,
    NotDerangementException,
    NotHamiltonException,
    NotInImageException,
    NotOnGraphException,
    OutOfRangeException,
    TooLargeException,
    UniquenessViolation,
)
from permatch.graphs.utils import iter_bits, mask_of, popcount

logger = logging.getLogger(__name__)

CENSUS_MAX_N = 12


class CycleDecomposition(namedtuple('CycleDecomposition', ['cycles', 'fixed'])):
    """
    :param cycles: the nontrivial cycles, each starting at its smallest vertex
    :param fixed: the fixed vertices
    """
    pass


class ChordRecord(namedtuple('ChordRecord', ['i', 'j', 'leftover', 'completed'])):
    """
    A chord ``(v_i, v_j)`` of a rooted Hamilton cycle, in positions along the cycle.

    ``leftover`` holds the positions strictly between ``i`` and ``j`` walking forward;
    ``completed`` the positions ``j, j+1, ..., i`` of the cycle the chord closes.
    """

    @property
    def leftover_mask(self):
        return mask_of(self.leftover)

    def arc(self, cycle):
        return cycle[self.i], cycle[self.j]


class HamiltonCensus(namedtuple('HamiltonCensus', ['ham_count', 'cycles_through', 'corollary_ok'])):
    """
    :param ham_count: directed Hamilton cycles
    :param cycles_through: per vertex, the simple directed cycles through it
    :param corollary_ok: the graph is a directed cycle or some vertex lies on at least
        twice as many cycles as there are Hamilton cycles
    """
    pass


def cycle_decomposition(graph, permutation):
    """
    :raises NotOnGraphException: if a moved vertex does not follow an arc
    """
    permutation.check(graph)
    return CycleDecomposition(tuple(permutation.cycles()), permutation.fixed_points())


def _check_hamilton(digraph, cycle):
    n = digraph.n
    if n < 2 or len(cycle) != n or sorted(cycle) != list(range(n)):
        raise NotHamiltonException("{} does not visit all {} vertices once".format(list(cycle), n))
    for index, vertex in enumerate(cycle):
        successor = cycle[(index + 1) % n]
        if not digraph.has_arc(vertex, successor):
            raise NotHamiltonException("({}, {}) is not an arc".format(vertex, successor))


def forward_chords(graph, cycle):
    """
    The forward chords of the Hamilton ``cycle`` rooted at ``cycle[0]``, ordered by
    ``(i, j)``.

    :raises NotHamiltonException: if ``cycle`` is not a Hamilton cycle of ``graph``
    """
    digraph = as_digraph(graph)
    _check_hamilton(digraph, cycle)
    n = len(cycle)
    position = {vertex: index for index, vertex in enumerate(cycle)}
    chords = []
    for i, vertex in enumerate(cycle):
        for j in sorted(position[target] for target in iter_bits(digraph.rows[vertex])):
            if j == (i + 1) % n:
                continue
            leftover = tuple((i + step) % n for step in range(1, (j - i) % n))
            if 0 in leftover:
                continue
            completed = tuple((j + step) % n for step in range((i - j) % n + 1))
            chords.append(ChordRecord(i, j, leftover, completed))
    return chords


def first_minimal_forward_chord(graph, cycle):
    """
    Among the forward chords whose leftover set has no forward chord's leftover set as
    a proper subset, the one with the smallest start position; ``None`` when there is
    no forward chord.

    :raises UniquenessViolation: if two minimal chords share a start
    """
    chords = forward_chords(graph, cycle)
    masks = [chord.leftover_mask for chord in chords]
    minimal = [chord for chord, mask in zip(chords, masks)
               if not any(other != mask and other & ~mask == 0 for other in masks)]
    if not minimal:
        return None
    starts = [chord.i for chord in minimal]
    if len(set(starts)) != len(starts):
        raise UniquenessViolation("two minimal forward chords start at the same position")
    return min(minimal, key=lambda chord: chord.i)


def _image_sigma(digraph, cycle):
    """
    The image of the Hamilton ``cycle`` as a list of images on ``digraph``'s vertices.
    """
    n = len(cycle)
    chord = first_minimal_forward_chord(digraph, cycle)
    if chord is None:
        return list(range(n))
    sigma = list(range(n))
    for index in chord.completed[:-1]:
        sigma[cycle[index]] = cycle[(index + 1) % n]
    sigma[cycle[chord.i]] = cycle[chord.j]
    return sigma


def hamilton_image(graph, cycle):
    """
    The image of the Hamilton ``cycle`` (rooted at ``cycle[0]``) as a permutation of
    ``graph``: either all fixed points, or one cycle through the root with the
    leftover vertices fixed.
    """
    digraph = as_digraph(graph)
    _check_hamilton(digraph, cycle)
    return Permutation(_image_sigma(digraph, cycle))


def _check_vertex(digraph, vertex):
    if not 0 <= vertex < digraph.n:
        raise OutOfRangeException("special vertex {} outside [0, {})".format(vertex, digraph.n))


def _orbit(sigma, vertex):
    orbit = [vertex]
    current = sigma[vertex]
    while current != vertex:
        orbit.append(current)
        current = sigma[current]
    return orbit


def apply_injection(graph, derangement, vertex):
    """
    Maps a derangement to a permutation with at least one fixed point.

    :param graph: the host graph
    :param derangement: a derangement on ``graph``
    :param vertex: the special vertex ``v``
    :raises OutOfRangeException: unless ``0 <= vertex < n``
    :raises NotDerangementException: if ``derangement`` has a fixed point
    :raises NotOnGraphException: if it does not live on ``graph``
    """
    digraph = as_digraph(graph)
    _check_vertex(digraph, vertex)
    derangement.check(digraph)
    if not derangement.is_derangement():
        raise NotDerangementException("{} has fixed points".format(derangement))
    sigma = list(derangement.sigma)
    cycle = _orbit(sigma, vertex)
    sub, labels = digraph.induced(cycle)
    local = {original: index for index, original in enumerate(labels)}
    local_sigma = _image_sigma(sub, [local[x] for x in cycle])
    for index, image in enumerate(local_sigma):
        sigma[labels[index]] = labels[image]
    return Permutation(sigma)


def hamilton_cycles(graph, root=0, limit=None):
    """
    Yields the directed Hamilton cycles of ``graph`` as vertex tuples starting at
    ``root``, in lexicographic order, stopping after ``limit`` cycles.
    """
    digraph = as_digraph(graph)
    n = digraph.n
    if n < 2:
        return
    rows = digraph.rows
    path = [root]
    found = [0]

    def extend(vertex, visited):
        if len(path) == n:
            if rows[vertex] >> root & 1:
                found[0] += 1
                yield tuple(path)
            return
        for target in iter_bits(rows[vertex] & ~visited):
            path.append(target)
            for cycle in extend(target, visited | 1 << target):
                yield cycle
                if limit is not None and found[0] >= limit:
                    return
            path.pop()

    for cycle in extend(root, 1 << root):
        yield cycle


def _check_restored(digraph, permutation, vertex, sigma):
    try:
        candidate = Permutation(sigma)
        image = apply_injection(digraph, candidate, vertex)
    except (NotOnGraphException, NotDerangementException):
        raise NotInImageException("{} is not an image".format(permutation))
    if image != permutation:
        raise NotInImageException("{} is not an image".format(permutation))
    return candidate


def invert_injection(graph, permutation, vertex):
    """
    The unique derangement mapped to ``permutation`` by :func:`apply_injection` with
    special vertex ``vertex``.

    When ``vertex`` is fixed the broken cycle is the unique Hamilton cycle on the fixed
    points. Otherwise the first vertex on the cycle through ``vertex`` with an arc into
    the fixed points ends the chord, and the fixed points are threaded back in the
    only order the arcs allow.

    :raises OutOfRangeException: unless ``0 <= vertex < n``
    :raises NotInImageException: when no derangement maps to ``permutation``
    """
    digraph = as_digraph(graph)
    _check_vertex(digraph, vertex)
    permutation.check(digraph)
    fixed = sorted(permutation.fixed_points())
    if not fixed:
        raise NotInImageException("{} has no fixed point".format(permutation))
    sigma = list(permutation.sigma)
    fixed_mask = mask_of(fixed)

    if vertex in fixed:
        sub, labels = digraph.induced(fixed)
        local = {original: index for index, original in enumerate(labels)}
        cycles = list(hamilton_cycles(sub, local[vertex], limit=2))
        if len(cycles) != 1:
            raise NotInImageException("the fixed points carry {} Hamilton cycle".format(
                'no' if not cycles else 'more than one'))
        restored = [labels[index] for index in cycles[0]]
    else:
        orbit = _orbit(sigma, vertex)
        for s, tail in enumerate(orbit):
            into_fixed = digraph.rows[tail] & fixed_mask
            if into_fixed:
                break
        else:
            raise NotInImageException("no arc from the cycle through {} into the fixed points".format(vertex))
        if popcount(into_fixed) != 1:
            raise NotInImageException("vertex {} has several arcs into the fixed points".format(tail))
        order = [into_fixed.bit_length() - 1]
        remaining = fixed_mask & ~(1 << order[0])
        while remaining:
            prefix = mask_of(order)
            arcs = [(u, w) for u in iter_bits(prefix) for w in iter_bits(digraph.rows[u] & remaining)]
            if len(arcs) != 1:
                raise NotInImageException("leftover vertices admit {} continuations".format(len(arcs)))
            order.append(arcs[0][1])
            remaining &= ~(1 << arcs[0][1])
        restored = orbit[:s + 1] + order + orbit[s + 1:]

    n = len(restored)
    for index, original in enumerate(restored):
        sigma[original] = restored[(index + 1) % n]
    return _check_restored(digraph, permutation, vertex, sigma)


def choose_special_vertex(graph):
    """
    A vertex ``v`` for which the identity is not an image. If the graph has exactly one
    Hamilton cycle this is the tail of its lexicographically smallest chord; otherwise
    vertex 0 works.

    :raises IsDirectedCycleException: for a directed cycle, where no vertex works
    """
    digraph = as_digraph(graph)
    if digraph.is_directed_cycle():
        raise IsDirectedCycleException("every vertex maps the Hamilton cycle to the identity")
    cycles = list(hamilton_cycles(digraph, 0, limit=2))
    if len(cycles) != 1:
        return 0
    cycle = cycles[0]
    cycle_arcs = {(cycle[index], cycle[(index + 1) % len(cycle)]) for index in range(len(cycle))}
    chords = [arc for arc in digraph.arcs() if arc not in cycle_arcs]
    return chords[0][0] if chords else 0


def hamilton_census(graph):
    """
    Counts Hamilton cycles and, per vertex, all simple directed cycles through it
    (2-cycles included). Each cycle is found once, from its smallest vertex.

    :raises TooLargeException: for ``n > 12``
    """
    digraph = as_digraph(graph)
    n = digraph.n
    if n > CENSUS_MAX_N:
        raise TooLargeException("cycle census is capped at n = {}".format(CENSUS_MAX_N), CENSUS_MAX_N)
    rows = digraph.rows
    through = [0] * n
    ham_count = 0
    for start in range(n):
        allowed = ~((1 << (start + 1)) - 1)
        stack = [(1 << start, iter(iter_bits(rows[start] & allowed)))]
        while stack:
            visited, successors = stack[-1]
            target = next(successors, None)
            if target is None:
                stack.pop()
                continue
            next_visited = visited | 1 << target
            if rows[target] >> start & 1:
                for member in iter_bits(next_visited):
                    through[member] += 1
                if popcount(next_visited) == n:
                    ham_count += 1
            stack.append((next_visited, iter(iter_bits(rows[target] & allowed & ~next_visited))))
    corollary_ok = digraph.is_directed_cycle() or any(count >= 2 * ham_count for count in through)
    logger.debug("census: %d Hamilton cycles, cycles through each vertex %s", ham_count, through)
    return HamiltonCensus(ham_count, tuple(through), corollary_ok)
