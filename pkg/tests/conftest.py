import itertools
import os
import random

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from acyclicmatch.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def subcubic_graphs(draw, min_n=1, max_n=10, max_degree=3):
    """Random graph with degrees capped, built from a drawn pair order."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    order = draw(st.permutations(pairs)) if pairs else []
    keep = draw(st.lists(st.booleans(), min_size=len(order), max_size=len(order)))
    deg = [0] * n
    edges = []
    for (u, v), k in zip(order, keep):
        if k and deg[u] < max_degree and deg[v] < max_degree:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, edges)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_nu_ac(g: Graph) -> int:
    """Largest acyclic matching over all edge subsets, checked with networkx."""
    edges = g.edges()
    h = to_nx(g)
    best = 0
    for r in range(1, g.n // 2 + 1):
        found = False
        for sub in itertools.combinations(edges, r):
            cov = [v for e in sub for v in e]
            if len(set(cov)) != len(cov):
                continue
            if nx.is_forest(h.subgraph(cov)):
                found = True
                break
        if not found:
            break
        best = r
    return best


@pytest.fixture
def rng():
    return random.Random(12345)
