import os
import random
import subprocess
import sys

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from acyclicmatch import kernels
from acyclicmatch.generators import complete, complete_bipartite, cycle, gk_chain, k4_plus, path, petersen, star_of_k23
from acyclicmatch.graph import Graph, delete_vertices, disjoint_union, relabel
from acyclicmatch.oracle import (
    EXACT,
    LOWER_BOUND_ONLY,
    AcyclicCertificate,
    SolveBudget,
    acyclic_violation,
    exact_nu_ac,
    greedy_acyclic_matching,
    is_acyclic_matching,
)

from conftest import brute_nu_ac, subcubic_graphs, to_nx


def test_validation_examples():
    k4 = complete(4)
    assert is_acyclic_matching(k4, [(0, 1)])
    assert not is_acyclic_matching(k4, [(0, 1), (2, 3)])  # covers all of K4
    c4 = cycle(4)
    assert not is_acyclic_matching(c4, [(0, 1), (2, 3)])
    assert is_acyclic_matching(path(4), [(0, 1), (2, 3)])
    assert is_acyclic_matching(k4, [])


@pytest.mark.parametrize("matching, fragment", [
    ([(0, 2)], "not an edge"),
    ([(0, 1), (1, 2)], "shares a vertex"),
    ([(0, 9)], "outside"),
    ([(0, 1), (2, 3)], "cycle"),
])
def test_violation_reasons(matching, fragment):
    assert fragment in acyclic_violation(cycle(4), matching)


def test_certificate_rejects_invalid():
    with pytest.raises(ValueError):
        AcyclicCertificate.build(cycle(4), [(0, 1), (2, 3)])
    cert = AcyclicCertificate.build(path(4), [(3, 2), (1, 0)])
    assert cert.matching == ((0, 1), (2, 3))
    assert cert.covered == (0, 1, 2, 3)
    assert cert.induced_edges == 3


def test_budget_rejects_negative():
    with pytest.raises(ValueError):
        SolveBudget(node_limit=-1)


@pytest.mark.parametrize("g, value", [
    (complete_bipartite(3, 3), 1),
    (complete(4), 1),
    (complete_bipartite(2, 2), 1),
    (complete_bipartite(1, 3), 1),
    (complete_bipartite(2, 3), 1),
    (k4_plus(), 1),
    (path(4), 2),
    (cycle(7), 3),
    (petersen(), 3),
    (star_of_k23(), 4),
    (gk_chain(1), 3),
    (Graph.from_edges(1, []), 0),
    (Graph.from_edges(0, []), 0),
])
def test_named_values(g, value):
    res = exact_nu_ac(g)
    assert res.status == EXACT
    assert res.size == value
    assert is_acyclic_matching(g, res.certificate.matching)


@given(subcubic_graphs(max_n=9))
def test_exact_matches_brute_force(g):
    res = exact_nu_ac(g)
    assert res.exact
    assert res.size == brute_nu_ac(g)
    assert is_acyclic_matching(g, res.certificate.matching)


@given(subcubic_graphs(max_n=11))
def test_sandwiched_by_matching_number(g):
    nu_ac = exact_nu_ac(g).size
    nu = len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
    assert greedy_acyclic_matching(g).size <= nu_ac <= nu <= g.n // 2


@given(subcubic_graphs(min_n=2, max_n=10), st.data())
def test_monotone_under_vertex_deletion(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h, _ = delete_vertices(g, [v])
    assert exact_nu_ac(h).size <= exact_nu_ac(g).size


@given(subcubic_graphs(max_n=10), st.randoms(use_true_random=False))
def test_label_invariance(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    assert exact_nu_ac(relabel(g, perm)).size == exact_nu_ac(g).size


@given(subcubic_graphs(max_n=8), subcubic_graphs(max_n=8))
def test_additive_over_components(a, b):
    assert exact_nu_ac(disjoint_union(a, b)).size == exact_nu_ac(a).size + exact_nu_ac(b).size


@given(subcubic_graphs(min_n=4, max_n=14))
def test_jit_and_pure_kernels_agree(g):
    a = exact_nu_ac(g, jit=True)
    b = exact_nu_ac(g, jit=False)
    assert (a.size, a.nodes, a.status, a.certificate) == (b.size, b.nodes, b.status, b.certificate)


def test_induces_forest_kernels_agree():
    r = random.Random(5)
    g = petersen()
    adj = [sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]
    for _ in range(300):
        mask = r.getrandbits(g.n)
        sub = to_nx(g).subgraph([v for v in range(g.n) if mask >> v & 1])
        expect = nx.is_forest(sub) if sub.number_of_nodes() else True
        assert kernels.induces_forest.py_func(adj, g.n, mask) == expect


def test_pure_path_beyond_jit_width():
    # 64 vertices exceeds int64 masks; the pure kernel takes over.
    g = disjoint_union(*[petersen()] * 6, path(4))
    assert g.n > kernels.MAX_JIT_VERTICES
    res = exact_nu_ac(g)
    assert res.exact and res.size == 6 * 3 + 2


def test_node_limit_gives_lower_bound():
    g = gk_chain(2)
    res = exact_nu_ac(g, SolveBudget(node_limit=10))
    assert res.status == LOWER_BOUND_ONLY
    assert res.nodes <= 10
    assert is_acyclic_matching(g, res.certificate.matching)
    assert res.size <= 6


def test_time_limit_zero_still_returns_witness():
    res = exact_nu_ac(star_of_k23(), SolveBudget(time_limit_ms=0))
    assert res.size >= 1
    assert is_acyclic_matching(star_of_k23(), res.certificate.matching)


def test_target_stops_early():
    g = star_of_k23()
    res = exact_nu_ac(g, SolveBudget(target=2))
    assert res.size >= 2
    assert res.status == LOWER_BOUND_ONLY
    full = exact_nu_ac(g, SolveBudget(target=10))
    assert full.status == EXACT and full.size == 4


def test_deterministic_witness():
    g = gk_chain(2)
    assert exact_nu_ac(g).certificate == exact_nu_ac(g).certificate


def test_env_flag_selects_pure_kernel():
    code = ("from acyclicmatch import _jit, kernels; from acyclicmatch.generators import star_of_k23;"
            "from acyclicmatch.oracle import exact_nu_ac;"
            "print(_jit.JIT_DISABLED, kernels.use_jit(10), exact_nu_ac(star_of_k23()).size)")
    env = dict(os.environ, ACYCLICMATCH_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["True", "False", "4"]
