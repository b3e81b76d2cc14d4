"""Named graphs, the extremal families, random subcubic graphs and an
exhaustive enumerator of small connected subcubic graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .formats import graph6_decode, graph6_encode
from .graph import Edge, Graph, SpecialClass, pattern_graph, relabel

ENUM_CAP = 9

FAMILIES = ("k4", "k22", "k13", "k23", "k4plus", "k33", "cycle", "path", "star",
            "gk", "petersen", "random", "enum")


class CapacityError(ValueError):
    """Enumeration requested beyond the configured order cap."""


@dataclass(frozen=True)
class GraphFamilySpec:
    family: str
    params: tuple[int, ...] = ()
    model: str = "pairing"
    seed: int = 0
    options: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if any(p < 0 for p in self.params):
            raise ValueError("family parameters must be nonnegative")
        if self.family == "gk" and (not self.params or self.params[0] < 1):
            raise ValueError("gk needs k >= 1")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def k4_plus() -> Graph:
    return pattern_graph(SpecialClass.K4PLUS)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def _k23_endblock(offset: int) -> tuple[list[Edge], int]:
    """Edges of a K_{2,3} on ``offset..offset+4``; the attachment vertex is
    ``offset`` (a degree-2 vertex), ``offset+1``/``offset+2`` are the other
    degree-2 vertices and ``offset+3``/``offset+4`` the degree-3 side."""
    deg2 = (offset, offset + 1, offset + 2)
    deg3 = (offset + 3, offset + 4)
    return [(a, b) for a in deg2 for b in deg3], offset


def star_of_k23() -> Graph:
    """K_{1,3} with each leaf replaced by a K_{2,3} endblock (16 vertices)."""
    edges: list[Edge] = []
    for i in range(3):
        block, attach = _k23_endblock(1 + 5 * i)
        edges.extend(block)
        edges.append((0, attach))
    return Graph.from_edges(16, edges)


# Layout of one copy of the 11-vertex gadget H, relative to its offset:
#   0          u(H), the middle vertex of the K_{1,2}
#   1..5       first K_{2,3} endblock (1 attaches to u)
#   6..10      second K_{2,3} endblock (6 attaches to u)
GADGET_ORDER = 11


def _gadget_edges(offset: int) -> list[Edge]:
    edges: list[Edge] = []
    for start in (1, 6):
        block, attach = _k23_endblock(offset + start)
        edges.extend(block)
        edges.append((offset, attach))
    return edges


def gk_chain(k: int) -> Graph:
    """k copies of H; u(H_i) is joined to the least-id degree-2 vertex of
    H_{i+1} other than u(H_{i+1})."""
    if k < 1:
        raise ValueError("k must be at least 1")
    edges: list[Edge] = []
    for i in range(k):
        edges.extend(_gadget_edges(GADGET_ORDER * i))
    base = Graph.from_edges(GADGET_ORDER * k, edges)
    for i in range(k - 1):
        off = GADGET_ORDER * (i + 1)
        target = min(v for v in range(off + 1, off + GADGET_ORDER) if base.degree(v) == 2)
        edges.append((GADGET_ORDER * i, target))
    return Graph.from_edges(GADGET_ORDER * k, edges)


def random_cubic(n: int, rng: random.Random, max_tries: int = 10000) -> Graph:
    """Uniform pairing model with rejection of loops and multi-edges."""
    if n % 2 or n < 4:
        raise ValueError("a cubic graph needs an even order of at least 4")
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (u, v) if u < v else (v, u)
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph.from_edges(n, sorted(edges))
    raise RuntimeError("pairing model kept producing non-simple graphs")


def random_subcubic(n: int, rng: random.Random, keep: float = 1.0) -> Graph:
    """Edge addition over a shuffled list of vertex pairs; each pair whose
    endpoints both have degree below 3 is added with probability ``keep``."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < 3 and deg[v] < 3 and (keep >= 1.0 or rng.random() < keep):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, edges)


def random_graphs(n: int, count: int, seed: int, model: str = "pairing",
                  keep: float = 1.0) -> Iterator[Graph]:
    rng = random.Random(seed)
    for _ in range(count):
        if model == "pairing":
            yield random_cubic(n, rng)
        elif model == "addition":
            yield random_subcubic(n, rng, keep)
        else:
            raise ValueError(f"unknown random model {model!r}")


def make(spec: GraphFamilySpec) -> Graph | Iterator[Graph]:
    f, p = spec.family, spec.params
    if f == "k4":
        return complete(4)
    if f == "k22":
        return complete_bipartite(2, 2)
    if f == "k13":
        return complete_bipartite(1, 3)
    if f == "k23":
        return complete_bipartite(2, 3)
    if f == "k4plus":
        return k4_plus()
    if f == "k33":
        return complete_bipartite(3, 3)
    if f == "cycle":
        return cycle(p[0])
    if f == "path":
        return path(p[0])
    if f == "star":
        return star_of_k23()
    if f == "gk":
        return gk_chain(p[0])
    if f == "petersen":
        return petersen()
    if f == "random":
        count = p[1] if len(p) > 1 else 1
        return random_graphs(p[0], count, spec.seed, spec.model,
                             spec.options.get("keep", 1.0))
    if f == "enum":
        return enumerate_connected_subcubic(p[0], cap=spec.options.get("cap", ENUM_CAP))
    raise ValueError(f"unknown family {f!r}")


# -- canonical form ---------------------------------------------------------


def _refine(adj: list[tuple[int, ...]], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells are split by the vector of neighbor counts into every cell and the
    pieces are ordered by that vector, so the result is label-independent.
    """
    while True:
        where = {}
        for i, c in enumerate(cells):
            for v in c:
                where[v] = i
        k = len(cells)
        new_cells: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {}
            for v in c:
                counts = [0] * k
                for w in adj[v]:
                    counts[where[w]] += 1
                sig[v] = tuple(counts)
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(c)
                continue
            changed = True
            for key in keys:
                new_cells.append([v for v in c if sig[v] == key])
        cells = new_cells
        if not changed:
            return cells


def canonical_form(g: Graph) -> str:
    """Canonical graph6 string: equal iff the graphs are isomorphic.

    Individualization-refinement without automorphism pruning; the least
    relabeled adjacency over all search leaves wins.  Fine for small graphs.
    """
    adj = [g.neighbors(v) for v in range(g.n)]
    edges = g.edges()
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degree(v), []).append(v)
    start = _refine(adj, [by_degree[d] for d in sorted(by_degree)])
    best: tuple | None = None

    def leaf_key(cells: list[list[int]]) -> tuple:
        pos = {c[0]: i for i, c in enumerate(cells)}
        return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges))

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            key = leaf_key(cells)
            if best is None or key < best:
                best = key
            return
        for v in cells[target]:
            rest = [w for w in cells[target] if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, split))

    search(start)
    return graph6_encode(Graph.from_edges(g.n, best or ()))


def canonical_graph(g: Graph) -> Graph:
    return graph6_decode(canonical_form(g))


# -- enumeration ------------------------------------------------------------


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[str, ...]:
    if n == 1:
        return (graph6_encode(Graph(1, [()])),)
    found: set[str] = set()
    for text in _enumerate(n - 1):
        parent = graph6_decode(text)
        free = [v for v in range(parent.n) if parent.degree(v) < 3]
        base = parent.edges()
        for r in (1, 2, 3):
            for nbrs in combinations(free, r):
                child = Graph.from_edges(n, base + [(v, n - 1) for v in nbrs])
                found.add(canonical_form(child))
    return tuple(sorted(found))


def enumerate_connected_subcubic(n: int, cap: int = ENUM_CAP) -> Iterator[Graph]:
    """One representative (in canonical labeling) per isomorphism class of
    connected graphs with maximum degree at most 3 on ``n`` vertices.

    Every such graph with n >= 2 has a non-cutvertex, so extending each
    class on n-1 vertices by one new vertex reaches all classes; duplicates
    are rejected by canonical form.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapacityError(f"enumeration order {n} exceeds the cap {cap}")
    for text in _enumerate(n):
        yield graph6_decode(text)


def enumeration_count(n: int, cap: int = ENUM_CAP) -> int:
    return sum(1 for _ in enumerate_connected_subcubic(n, cap))


def shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)
