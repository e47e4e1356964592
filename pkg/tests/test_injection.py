from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from permatch.counting import Permutation, count_permutations, enumerate_permutations
from permatch.exc import (
    IsDirectedCycleException,
    NotDerangementException,
    NotHamiltonException,
    NotInImageException,
    NotOnGraphException,
    OutOfRangeException,
    TooLargeException,
)
from permatch.graphs.base import Digraph
from permatch.graphs.constructions import blowup, complete_graph, directed_cycle
from permatch.injection import (
    apply_injection,
    choose_special_vertex,
    cycle_decomposition,
    first_minimal_forward_chord,
    forward_chords,
    hamilton_census,
    hamilton_cycles,
    hamilton_image,
    invert_injection,
)

HAMILTON = tuple(range(8))
ROTATION = Permutation([1, 2, 3, 4, 5, 6, 7, 0])


@st.composite
def digraphs(draw, max_n=6):
    n = draw(st.integers(min_value=2, max_value=max_n))
    rows = [draw(st.integers(min_value=0, max_value=(1 << n) - 1)) & ~(1 << v) for v in range(n)]
    return Digraph(n, rows)


def without_arc(graph, u, v):
    rows = list(graph.rows)
    rows[u] &= ~(1 << v)
    return Digraph(graph.n, rows)


def test_cycle_decomposition(figure2):
    decomposition = cycle_decomposition(figure2, Permutation([1, 4, 2, 3, 5, 6, 7, 0]))
    assert decomposition.cycles == ((0, 1, 4, 5, 6, 7),)
    assert decomposition.fixed == frozenset([2, 3])
    with pytest.raises(NotOnGraphException):
        cycle_decomposition(figure2, Permutation([2, 1, 0, 3, 4, 5, 6, 7]))


def test_forward_chords(figure2):
    chords = forward_chords(figure2, HAMILTON)
    assert [(chord.i, chord.j) for chord in chords] == [(1, 4), (1, 5), (3, 6)]
    assert chords[0].leftover == (2, 3)
    assert chords[0].completed == (4, 5, 6, 7, 0, 1)
    assert chords[0].arc(HAMILTON) == (1, 4)
    assert chords[1].leftover_mask == 0b11100


def test_first_minimal_forward_chord(figure2):
    chord = first_minimal_forward_chord(figure2, HAMILTON)
    assert (chord.i, chord.j) == (1, 4)


def test_first_minimal_forward_chord_without_1_4(figure2):
    chord = first_minimal_forward_chord(without_arc(figure2, 1, 4), HAMILTON)
    assert (chord.i, chord.j) == (1, 5)


def test_backward_chords_only():
    graph = Digraph(4, [0b0010, 0b0100, 0b1000, 0b0011])
    assert forward_chords(graph, (0, 1, 2, 3)) == []
    assert first_minimal_forward_chord(graph, (0, 1, 2, 3)) is None
    assert hamilton_image(graph, (0, 1, 2, 3)).is_identity()


def test_not_hamilton(figure2):
    with pytest.raises(NotHamiltonException):
        forward_chords(figure2, (0, 1, 2, 3))
    with pytest.raises(NotHamiltonException):
        forward_chords(figure2, (0, 2, 1, 3, 4, 5, 6, 7))


def test_hamilton_image(figure2):
    image = hamilton_image(figure2, HAMILTON)
    assert image.cycles() == [(0, 1, 4, 5, 6, 7)]
    assert image.fixed_points() == frozenset([2, 3])


def test_apply_injection(figure2):
    image = apply_injection(figure2, ROTATION, 0)
    assert image == Permutation([1, 4, 2, 3, 5, 6, 7, 0])
    assert invert_injection(figure2, image, 0) == ROTATION


def test_apply_injection_keeps_other_cycles():
    graph = complete_graph(5)
    derangement = Permutation([1, 2, 0, 4, 3])
    image = apply_injection(graph, derangement, 3)
    assert image.sigma[:3] == (1, 2, 0)
    assert image.fixed_points() == frozenset([3, 4])
    assert invert_injection(graph, image, 3) == derangement


def test_apply_injection_errors(figure2):
    with pytest.raises(NotDerangementException):
        apply_injection(figure2, Permutation.identity(8), 0)
    with pytest.raises(NotOnGraphException):
        apply_injection(figure2, Permutation([7, 0, 1, 2, 3, 4, 5, 6]), 0)


@pytest.mark.parametrize('vertex', [7, 5, -1])
def test_special_vertex_out_of_range(vertex):
    cycle = directed_cycle(5)
    with pytest.raises(OutOfRangeException):
        apply_injection(cycle, Permutation([1, 2, 3, 4, 0]), vertex)
    with pytest.raises(OutOfRangeException):
        invert_injection(cycle, Permutation.identity(5), vertex)


def test_identity_is_not_an_image(figure2):
    with pytest.raises(NotInImageException):
        invert_injection(figure2, Permutation.identity(8), 0)


def test_derangement_is_not_an_image():
    with pytest.raises(NotInImageException):
        invert_injection(directed_cycle(3), Permutation([1, 2, 0]), 0)


def test_directed_cycle_maps_to_identity():
    cycle = directed_cycle(5)
    for vertex in range(5):
        assert apply_injection(cycle, Permutation([1, 2, 3, 4, 0]), vertex).is_identity()


@pytest.mark.parametrize('graph', [
    directed_cycle(4),
    complete_graph(4),
    blowup(2, 3),
    Digraph(5, [0b00110, 0b01100, 0b11000, 0b10001, 0b00011]),
])
def test_injection_round_trips(graph):
    derangements = list(enumerate_permutations(graph, derangements_only=True))
    for vertex in range(graph.n):
        images = [apply_injection(graph, derangement, vertex) for derangement in derangements]
        assert len(set(images)) == len(images)
        assert all(image.fixed_points() for image in images)
        assert [invert_injection(graph, image, vertex) for image in images] == derangements


def test_figure2_round_trips(figure2):
    derangements = list(enumerate_permutations(figure2, derangements_only=True))
    images = [apply_injection(figure2, derangement, 0) for derangement in derangements]
    assert len(set(images)) == len(images)
    assert [invert_injection(figure2, image, 0) for image in images] == derangements


@given(digraphs(), st.data())
@settings(max_examples=40, deadline=None)
def test_injection_property(graph, data):
    vertex = data.draw(st.integers(min_value=0, max_value=graph.n - 1))
    derangements = list(enumerate_permutations(graph, derangements_only=True))
    images = set()
    for derangement in derangements:
        image = apply_injection(graph, derangement, vertex)
        assert image.fixed_points()
        assert image.check(graph)
        assert invert_injection(graph, image, vertex) == derangement
        images.add(image)
    assert len(images) == len(derangements)
    assert count_permutations(graph) >= 2 * len(derangements)


def test_hamilton_cycles(figure2):
    assert list(hamilton_cycles(figure2)) == [HAMILTON]
    assert list(hamilton_cycles(complete_graph(4))) == [
        (0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3), (0, 2, 3, 1), (0, 3, 1, 2), (0, 3, 2, 1)]
    assert len(list(hamilton_cycles(complete_graph(4), limit=2))) == 2
    assert list(hamilton_cycles(directed_cycle(3), root=1)) == [(1, 2, 0)]


def test_choose_special_vertex(figure2):
    assert choose_special_vertex(figure2) == 1
    assert choose_special_vertex(complete_graph(3)) == 0
    with pytest.raises(IsDirectedCycleException):
        choose_special_vertex(directed_cycle(4))


@given(digraphs(max_n=5))
@settings(max_examples=40, deadline=None)
def test_special_vertex_misses_the_identity(graph):
    if graph.is_directed_cycle():
        return
    derangements = list(enumerate_permutations(graph, derangements_only=True))
    if not derangements:
        return
    vertex = choose_special_vertex(graph)
    assert not any(apply_injection(graph, d, vertex).is_identity() for d in derangements)
    assert count_permutations(graph) >= 2 * len(derangements) + 1


def test_hamilton_census(figure2):
    census = hamilton_census(figure2)
    assert census.ham_count == 1
    assert census.cycles_through == (4, 4, 4, 4, 3, 4, 6, 6)
    assert census.corollary_ok


@pytest.mark.parametrize('graph,ham_count,through', [
    (directed_cycle(5), 1, (1, 1, 1, 1, 1)),
    (complete_graph(3), 2, (4, 4, 4)),
    (complete_graph(2), 1, (1, 1)),
])
def test_census_small(graph, ham_count, through):
    census = hamilton_census(graph)
    assert census.ham_count == ham_count
    assert census.cycles_through == through
    assert census.corollary_ok


def test_census_cap():
    with pytest.raises(TooLargeException):
        hamilton_census(directed_cycle(13))
