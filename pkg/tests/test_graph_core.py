import itertools

import pytest

from src.errors import InputFormatError, PreconditionError, SizeBoundError
from src.graph_core import (
    PENTAGON_HARDY_SETS, Context, Graph, build_family_graph, clique_number, contexts_of,
    family_partitions, hardy_sets_for, independence_number, make_context, maximal_cliques,
)


def test_family_graph_n7_edges():
    g = build_family_graph(7)
    assert g.part_a == (2, 3, 4)
    assert g.part_b == (5, 6, 7)
    assert g.neighbours(1) == frozenset({3, 4, 5, 6})
    assert g.adjacent(2, 7)
    for i, j in itertools.combinations((2, 3, 4), 2):
        assert g.adjacent(i, j)
    for i, j in itertools.combinations((5, 6, 7), 2):
        assert g.adjacent(i, j)
    assert len(g.edges) == 4 + 1 + 3 + 3


def test_family_graph_n8_shares_vertex_5():
    g = build_family_graph(8)
    assert g.part_a == (2, 3, 4, 5)
    assert g.part_b == (5, 6, 7, 8)
    assert g.shared_vertices == (5,)


def test_pentagon_is_a_five_cycle(pentagon):
    assert pentagon.sorted_edges() == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]
    assert not pentagon.has_partitions


@pytest.mark.parametrize("n", range(6, 21))
def test_vertex_one_and_the_exceptional_pair(n):
    g = build_family_graph(n)
    assert g.neighbours(1) == frozenset(range(3, n))
    assert g.adjacent(2, n)


def test_rejects_small_n():
    with pytest.raises(PreconditionError):
        build_family_graph(4)


def test_graph_validates_edges():
    with pytest.raises(PreconditionError):
        Graph(n=3, edges=frozenset({(1, 1)}))
    with pytest.raises(PreconditionError):
        Graph(n=3, edges=frozenset({(1, 4)}))
    with pytest.raises(PreconditionError):
        Graph(n=3, edges=frozenset({(1, 2)}), part_a=(1, 2, 3))


def test_edges_are_normalized():
    g = Graph(n=3, edges=frozenset({(2, 1), (3, 2)}))
    assert g.sorted_edges() == [(1, 2), (2, 3)]


def test_independence_number_examples(pentagon):
    assert independence_number(pentagon) == 2
    assert independence_number(build_family_graph(7)) == 2
    assert independence_number(Graph(n=4, edges=frozenset())) == 4


@pytest.mark.parametrize("n", range(6, 21))
def test_family_independence_number_is_two(n):
    assert independence_number(build_family_graph(n)) == 2


def test_independence_number_size_bound():
    with pytest.raises(SizeBoundError):
        independence_number(Graph(n=25, edges=frozenset()))


def test_pentagon_cliques_are_its_edges(pentagon):
    cliques = maximal_cliques(pentagon)
    assert [c.vertices for c in cliques] == pentagon.sorted_edges()


def test_family_cliques_include_partitions():
    assert {Context((2, 3, 4)), Context((5, 6, 7))} <= set(maximal_cliques(build_family_graph(7)))
    assert {Context((2, 3, 4, 5)), Context((5, 6, 7, 8))} <= set(maximal_cliques(build_family_graph(8)))


def test_maximal_cliques_are_sorted_and_deterministic():
    g = build_family_graph(9)
    first = maximal_cliques(g)
    assert first == maximal_cliques(g)
    assert [c.vertices for c in first] == sorted(c.vertices for c in first)


@pytest.mark.parametrize("n", range(6, 16))
def test_clique_number(n):
    g = build_family_graph(n)
    expected = (n - 1) // 2 if n % 2 else n // 2
    assert clique_number(g) == expected
    assert max(len(c) for c in maximal_cliques(g)) == expected


@pytest.mark.parametrize("n", range(6, 16))
def test_every_vertex_in_two_contexts(n):
    contexts = maximal_cliques(build_family_graph(n))
    for v in range(1, n + 1):
        assert len(contexts_of(contexts, v)) >= 2


def test_make_context_checks_clique():
    g = build_family_graph(7)
    assert make_context(g, [4, 2, 3]).vertices == (2, 3, 4)
    with pytest.raises(PreconditionError):
        make_context(g, [1, 2])


def test_family_partitions_even_and_odd():
    assert family_partitions(9) == ((2, 3, 4, 5), (6, 7, 8, 9))
    assert family_partitions(6) == ((2, 3, 4), (4, 5, 6))


def test_hardy_sets(pentagon):
    assert hardy_sets_for(build_family_graph(7)) == ((2, 3, 4), (5, 6, 7))
    assert hardy_sets_for(pentagon) == PENTAGON_HARDY_SETS
    with pytest.raises(PreconditionError):
        hardy_sets_for(Graph(n=3, edges=frozenset({(1, 2)})))


def test_graph_dict_round_trip():
    g = build_family_graph(8)
    assert Graph.from_dict(g.to_dict()) == g


def test_graph_from_dict_rejects_garbage():
    with pytest.raises(InputFormatError):
        Graph.from_dict({"edges": []})
