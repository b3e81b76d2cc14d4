import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from acyclicmatch.generators import complete, complete_bipartite, cycle, k4_plus, path, petersen, star_of_k23
from acyclicmatch.graph import (
    PATTERNS,
    Graph,
    SpecialClass,
    blocks,
    classify_special,
    closed_neighborhood,
    components,
    contract_pattern,
    count_special_components,
    delete_vertices,
    disjoint_union,
    find_subgraph,
    girth,
    induced_subgraph,
    lies_on_cycle,
    pattern_graph,
    relabel,
    shortest_cycle,
)

from conftest import subcubic_graphs, to_nx


def test_rejects_loops_and_asymmetry():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(1,), ()])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_duplicate_edges_rejected():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_basic_accessors():
    g = complete_bipartite(2, 3)
    assert (g.n, g.m, g.max_degree()) == (5, 6, 3)
    assert g.edges() == sorted(g.edges())
    assert all(u < v for u, v in g.edges())
    assert g.is_subcubic()
    assert g == Graph.from_edges(5, reversed(g.edges()))
    assert hash(g) == hash(Graph.from_edges(5, g.edges()))


def test_delete_and_induce_relabel_in_order():
    g = path(5)
    h, old_to_new = delete_vertices(g, [2])
    assert h.edges() == [(0, 1), (2, 3)]
    assert old_to_new == {0: 0, 1: 1, 3: 2, 4: 3}
    h, _ = induced_subgraph(g, [4, 3, 1])
    assert h.edges() == [(1, 2)]
    assert closed_neighborhood(g, [0, 4]) == (0, 1, 3, 4)


def test_components_sorted_by_least_vertex():
    g = Graph.from_edges(6, [(4, 5), (0, 3), (1, 2)])
    assert components(g) == [(0, 3), (1, 2), (4, 5)]


@pytest.mark.parametrize("g, expected", [
    (complete_bipartite(2, 3), SpecialClass.K23),
    (k4_plus(), SpecialClass.K4PLUS),
    (complete_bipartite(3, 3), SpecialClass.K33),
    (complete(4), SpecialClass.NONE),
    (cycle(5), SpecialClass.NONE),
    (Graph.from_edges(1, []), SpecialClass.NONE),
    (star_of_k23(), SpecialClass.NONE),
])
def test_classify_special(g, expected):
    assert classify_special(g) is expected


def test_patterns_match_their_graphs():
    for cls in PATTERNS:
        assert classify_special(pattern_graph(cls)) is cls


def test_count_special_components():
    g = disjoint_union(complete_bipartite(2, 3), complete_bipartite(3, 3),
                       complete_bipartite(3, 3), k4_plus(), complete(4))
    assert count_special_components(g) == (1, 1, 2)
    assert count_special_components(star_of_k23()) == (0, 0, 0)


@given(subcubic_graphs(max_n=8), st.randoms(use_true_random=False))
def test_classification_is_label_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert classify_special(relabel(g, perm)) is classify_special(g)


def _brute_find(g, pattern_cls):
    p = pattern_graph(pattern_cls)
    for image in itertools.permutations(range(g.n), p.n):
        if all(g.has_edge(image[u], image[v]) for u, v in p.edges()):
            return image
    return None


@pytest.mark.parametrize("cls", [SpecialClass.K23, SpecialClass.K4PLUS])
@given(g=subcubic_graphs(min_n=5, max_n=8))
def test_find_subgraph_agrees_with_permutation_search(cls, g):
    found = find_subgraph(g, cls)
    brute = _brute_find(g, cls)
    assert (found is None) == (brute is None)
    if found is not None:
        p = pattern_graph(cls)
        assert len(set(found)) == p.n
        assert all(g.has_edge(found[u], found[v]) for u, v in p.edges())
        # Scan order returns the lexicographically least embedding.
        assert tuple(found) == tuple(brute)


def test_find_subgraph_rejects_k33():
    with pytest.raises(ValueError):
        find_subgraph(complete_bipartite(3, 3), SpecialClass.K33)


@given(subcubic_graphs(max_n=10))
def test_blocks_match_networkx(g):
    dec = blocks(g)
    h = to_nx(g)
    assert set(dec.cutvertices) == set(nx.articulation_points(h))
    ours = {frozenset(b) for b in dec.blocks if len(b) > 1}
    theirs = {frozenset(c) for c in nx.biconnected_components(h)}
    assert ours == theirs


@given(subcubic_graphs(max_n=10))
def test_lies_on_cycle_matches_cycle_basis(g):
    on_cycle = {v for c in nx.cycle_basis(to_nx(g)) for v in c}
    assert {v for v in range(g.n) if lies_on_cycle(g, v)} == on_cycle


@given(subcubic_graphs(max_n=11))
def test_shortest_cycle_is_a_shortest_cycle(g):
    cyc = shortest_cycle(g)
    h = to_nx(g)
    if cyc is None:
        assert nx.is_forest(h)
        assert girth(g) is None
        return
    assert len(set(cyc)) == len(cyc) >= 3
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    assert girth(g) == len(cyc) == nx.girth(h)


def test_girth_named():
    assert girth(petersen()) == 5
    assert girth(complete_bipartite(3, 3)) == 4
    assert girth(complete(4)) == 3
    assert girth(path(6)) is None


def test_star_of_k23_endblocks():
    dec = blocks(star_of_k23())
    # The center plus the three attachment vertices are cutvertices.
    assert len(dec.cutvertices) == 4
    big = [i for i in dec.endblocks() if len(dec.blocks[i]) == 5]
    assert len(big) == 3


def test_contract_k23_in_star():
    g = star_of_k23()
    witness = find_subgraph(g, SpecialClass.K23)
    cmap = contract_pattern(g, witness)
    assert cmap.quotient.n == g.n - 4
    assert sorted(len(c) for c in cmap.classes)[-1] == 5
    for e in cmap.quotient.edges():
        u, v = cmap.lift_edge(*e)
        assert g.has_edge(u, v)


def test_contract_rejects_disconnected_witness():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        contract_pattern(g, [0, 2])


def test_relabel_round_trip():
    g = petersen()
    perm = list(range(10))
    random.Random(1).shuffle(perm)
    inv = [0] * 10
    for i, p in enumerate(perm):
        inv[p] = i
    assert relabel(relabel(g, perm), inv) == g
