"""Acyclic-matching validation and the exact branch-and-bound oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .graph import Edge, Graph, components, induced_subgraph

EXACT = "exact"
LOWER_BOUND_ONLY = "lower-bound-only"


def _norm(e: Sequence[int]) -> Edge:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def acyclic_violation(g: Graph, matching: Iterable[Sequence[int]]) -> str | None:
    """Why ``matching`` is not an acyclic matching of ``g``, or None if it is."""
    covered: set[int] = set()
    for e in matching:
        if len(e) != 2:
            return f"{tuple(e)} is not a vertex pair"
        u, v = _norm(e)
        if not (0 <= u < g.n and 0 <= v < g.n):
            return f"edge ({u}, {v}) references a vertex outside 0..{g.n - 1}"
        if u == v or not g.has_edge(u, v):
            return f"({u}, {v}) is not an edge of the graph"
        if u in covered or v in covered:
            return f"edge ({u}, {v}) shares a vertex with another matching edge"
        covered.update((u, v))
    # Union-find over every host edge between covered vertices.
    parent = {v: v for v in covered}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in sorted(covered):
        for w in g.neighbors(u):
            if w > u and w in covered:
                ru, rw = find(u), find(w)
                if ru == rw:
                    return f"covered vertices induce a cycle through edge ({u}, {w})"
                parent[ru] = rw
    return None


def is_acyclic_matching(g: Graph, matching: Iterable[Sequence[int]]) -> bool:
    return acyclic_violation(g, matching) is None


@dataclass(frozen=True)
class AcyclicCertificate:
    """An acyclic matching together with its covered vertex set."""

    matching: tuple[Edge, ...]
    covered: tuple[int, ...]
    induced_edges: int

    @classmethod
    def build(cls, g: Graph, matching: Iterable[Sequence[int]]) -> AcyclicCertificate:
        edges = tuple(sorted(_norm(e) for e in matching))
        reason = acyclic_violation(g, edges)
        if reason is not None:
            raise ValueError(f"not an acyclic matching: {reason}")
        covered = tuple(sorted(v for e in edges for v in e))
        cs = set(covered)
        induced = sum(1 for u in covered for w in g.neighbors(u) if w > u and w in cs)
        return cls(edges, covered, induced)

    @property
    def size(self) -> int:
        return len(self.matching)

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.matching]


@dataclass(frozen=True)
class SolveBudget:
    node_limit: int | None = None
    time_limit_ms: int | None = None
    target: int | None = None

    def __post_init__(self):
        for name in ("node_limit", "time_limit_ms", "target"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class ExactResult:
    size: int
    certificate: AcyclicCertificate
    status: str
    nodes: int

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def greedy_acyclic_matching(g: Graph) -> AcyclicCertificate:
    """Scan edges in id order, keeping each one that leaves the matching acyclic."""
    covered = 0
    chosen = []
    adj = _adj_masks(g)
    check = kernels.induces_forest if kernels.use_jit(g.n) else kernels.induces_forest.py_func
    if kernels.use_jit(g.n):
        import numpy as np
        adj = np.array(adj, dtype=np.int64)
    for u, v in g.edges():
        bit = (1 << u) | (1 << v)
        if covered & bit:
            continue
        if check(adj, g.n, covered | bit):
            covered |= bit
            chosen.append((u, v))
    return AcyclicCertificate.build(g, chosen)


def _adj_masks(g: Graph) -> list[int]:
    out = []
    for v in range(g.n):
        mask = 0
        for w in g.neighbors(v):
            mask |= 1 << w
        out.append(mask)
    return out


def branching_order(g: Graph) -> list[Edge]:
    """Edges by descending endpoint-degree sum, ties by edge id."""
    edges = g.edges()
    ids = {e: i for i, e in enumerate(edges)}
    return sorted(edges, key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), ids[e]))


_CHUNK = 1 << 16


def exact_nu_ac(g: Graph, budget: SolveBudget | None = None, *, jit: bool | None = None) -> ExactResult:
    """Maximum acyclic matching by branch and bound, component by component.

    With a budget the search may stop early; the result then carries the best
    matching found and status ``lower-bound-only``.  ``jit=False`` forces the
    pure-Python kernel.
    """
    budget = budget or SolveBudget()
    deadline = None
    if budget.time_limit_ms is not None:
        deadline = time.monotonic() + budget.time_limit_ms / 1000.0
    comps = [c for c in components(g) if len(c) >= 2]
    subs = [induced_subgraph(g, c)[0] for c in comps]
    greedy = [greedy_acyclic_matching(h) for h in subs]
    lower = [c.size for c in greedy]
    exact_flags = [False] * len(subs)
    witnesses: list[list[Edge]] = [list(c.matching) for c in greedy]
    nodes = 0

    for i, h in enumerate(subs):
        if budget.target is not None and sum(lower) >= budget.target:
            break
        order = branching_order(h)
        pos = {e: j for j, e in enumerate(order)}
        incumbent = [pos[e] for e in witnesses[i]]
        if budget.target is not None:
            comp_target = budget.target - (sum(lower) - lower[i])
        else:
            comp_target = h.n  # unreachable: a matching has at most n/2 edges
        state = kernels.SearchState(h.n, _adj_masks(h), order, incumbent, comp_target, jit=jit)
        while True:
            quota = _CHUNK
            if budget.node_limit is not None:
                quota = min(quota, budget.node_limit - nodes - state.nodes)
                if quota <= 0:
                    break
            code = state.step(quota)
            if code != kernels.PAUSED:
                break
            if deadline is not None and time.monotonic() >= deadline:
                break
        nodes += state.nodes
        if state.best > lower[i]:
            lower[i] = state.best
            witnesses[i] = state.best_edges()
        if state.status == kernels.FINISHED:
            exact_flags[i] = True
        elif state.status != kernels.TARGET_REACHED:
            break

    edges = [(c[u], c[v]) for c, w in zip(comps, witnesses) for u, v in w]
    cert = AcyclicCertificate.build(g, edges)
    status = EXACT if all(exact_flags) else LOWER_BOUND_ONLY
    return ExactResult(cert.size, cert, status, nodes)
