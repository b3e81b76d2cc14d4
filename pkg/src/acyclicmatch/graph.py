"""Immutable simple graphs and the structural queries used by the reductions.

Vertices are the integers ``0..n-1``.  Every operation is a pure function;
anything that changes the vertex set returns a fresh :class:`Graph` together
with the id mapping needed to translate results back.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

Edge = tuple[int, int]


class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_n", "_adj", "_m", "_hash")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(adjacency) != n:
            raise ValueError(f"expected {n} adjacency lists, got {len(adjacency)}")
        adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        total = 0
        for v, nbrs in enumerate(adj):
            for i, w in enumerate(nbrs):
                if not 0 <= w < n:
                    raise ValueError(f"neighbor {w} of {v} out of range")
                if w == v:
                    raise ValueError(f"self-loop at {v}")
                if i and nbrs[i - 1] == w:
                    raise ValueError(f"duplicate neighbor {w} of {v}")
            total += len(nbrs)
        for v, nbrs in enumerate(adj):
            for w in nbrs:
                if v not in adj[w]:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        self._n = n
        self._adj = adj
        self._m = total // 2
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, nbrs)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        a = self._adj[u]
        b = self._adj[v]
        return v in a if len(a) <= len(b) else u in b

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nbrs in enumerate(self._adj) for v in nbrs if u < v]

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()})"


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def closed_neighborhood(g: Graph, xs: Iterable[int]) -> tuple[int, ...]:
    """N[X]: the vertices of ``xs`` together with all their neighbors, sorted."""
    out: set[int] = set()
    for x in xs:
        out.add(x)
        out.update(g.neighbors(x))
    return tuple(sorted(out))


def delete_vertices(g: Graph, xs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``g - xs`` and the order-preserving old-to-new id mapping."""
    drop = set(xs)
    for x in drop:
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} out of range")
    keep = [v for v in range(g.n) if v not in drop]
    return induced_subgraph(g, keep)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``keep``; vertices are renumbered in increasing order."""
    kept = sorted(set(keep))
    old_to_new = {v: i for i, v in enumerate(kept)}
    adj = [[old_to_new[w] for w in g.neighbors(v) if w in old_to_new] for v in kept]
    return Graph(len(kept), adj), old_to_new


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by minimum vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == 0]


# -- special graphs ----------------------------------------------------------


class SpecialClass(enum.Enum):
    K23 = "K23"
    K4PLUS = "K4PLUS"
    K33 = "K33"
    NONE = "NONE"


# Pattern vertex 0..k-1, edges.  Every vertex after the first has an earlier
# neighbor, so the backtracking search only ever scans neighbor lists.
#   K23:    0, 2 form the degree-3 side; 1, 3, 4 the degree-2 side.
#   K4PLUS: 0..3 are the K4 vertices, edge 1-3 subdivided by vertex 4.
#   K33:    0, 2, 4 versus 1, 3, 5.
K23_DEG3 = (0, 2)
K23_DEG2 = (1, 3, 4)
PATTERNS: dict[SpecialClass, tuple[int, tuple[Edge, ...]]] = {
    SpecialClass.K23: (5, ((0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (2, 4))),
    SpecialClass.K4PLUS: (5, ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 4), (3, 4))),
    SpecialClass.K33: (6, tuple((a, b) for a in (0, 2, 4) for b in (1, 3, 5))),
}


def pattern_graph(cls: SpecialClass) -> Graph:
    k, edges = PATTERNS[cls]
    return Graph.from_edges(k, edges)


def _match_pattern(g: Graph, k: int, pedges: Sequence[Edge]) -> tuple[int, ...] | None:
    pnbrs: list[list[int]] = [[] for _ in range(k)]
    for a, b in pedges:
        pnbrs[a].append(b)
        pnbrs[b].append(a)
    pdeg = [len(x) for x in pnbrs]
    # Constraints on pattern vertex i from earlier pattern vertices.
    back = [[j for j in pnbrs[i] if j < i] for i in range(k)]
    mapping = [-1] * k
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == k:
            return True
        if back[i]:
            anchor = mapping[back[i][0]]
            candidates: Iterable[int] = g.neighbors(anchor)
        else:
            candidates = range(g.n)
        for c in candidates:
            if c in used or g.degree(c) < pdeg[i]:
                continue
            if any(not g.has_edge(c, mapping[j]) for j in back[i]):
                continue
            mapping[i] = c
            used.add(c)
            if extend(i + 1):
                return True
            used.discard(c)
        mapping[i] = -1
        return False

    if extend(0):
        return tuple(mapping)
    return None


def find_subgraph(g: Graph, pattern: SpecialClass) -> tuple[int, ...] | None:
    """Lexicographically least embedding of ``pattern`` as a (not necessarily
    induced) subgraph of ``g``.

    The result maps pattern vertex ``i`` (numbered as in :data:`PATTERNS`)
    to ``result[i]``.  Candidates are scanned in increasing id order, so the
    first embedding found is the least tuple.
    """
    if pattern not in (SpecialClass.K23, SpecialClass.K4PLUS):
        raise ValueError("find_subgraph supports K23 and K4PLUS only")
    k, pedges = PATTERNS[pattern]
    if g.n < k:
        return None
    return _match_pattern(g, k, pedges)


_SIGNATURES = {
    SpecialClass.K23: (5, 6, (2, 2, 2, 3, 3)),
    SpecialClass.K4PLUS: (5, 7, (2, 3, 3, 3, 3)),
    SpecialClass.K33: (6, 9, (3, 3, 3, 3, 3, 3)),
}


def classify_special(g: Graph) -> SpecialClass:
    """Which of K23, K4PLUS, K33 the graph is isomorphic to, if any."""
    degs = tuple(sorted(g.degrees()))
    for cls, (n, m, seq) in _SIGNATURES.items():
        if g.n == n and g.m == m and degs == seq:
            k, pedges = PATTERNS[cls]
            # Equal order and size: a subgraph embedding is an isomorphism.
            if _match_pattern(g, k, pedges) is not None:
                return cls
    return SpecialClass.NONE


def count_special_components(g: Graph) -> tuple[int, int, int]:
    """(#K23, #K4PLUS, #K33) components of ``g``."""
    counts = {SpecialClass.K23: 0, SpecialClass.K4PLUS: 0, SpecialClass.K33: 0}
    for comp in components(g):
        if len(comp) not in (5, 6):
            continue
        cls = classify_special(induced_subgraph(g, comp)[0])
        if cls is not SpecialClass.NONE:
            counts[cls] += 1
    return counts[SpecialClass.K23], counts[SpecialClass.K4PLUS], counts[SpecialClass.K33]


# -- blocks and cycles -------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    cutvertices: frozenset[int]
    membership: dict[int, tuple[int, ...]]  # vertex -> indices into ``blocks``

    def endblocks(self) -> list[int]:
        """Indices of blocks containing at most one cutvertex."""
        return [i for i, b in enumerate(self.blocks)
                if sum(v in self.cutvertices for v in b) <= 1]


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components (bridges are 2-vertex blocks, isolated vertices
    singleton blocks) and cutvertices.  Iterative Hopcroft-Tarjan."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    found: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if g.degree(root) == 0:
            disc[root] = t
            t += 1
            found.append((root,))
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        edge_stack: list[Edge] = []
        # frames: (vertex, parent, neighbor iterator position)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            nbrs = g.neighbors(v)
            if i < len(nbrs):
                stack[-1] = (v, parent, i + 1)
                w = nbrs[i]
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, 0))
                    if v == root:
                        root_children += 1
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if not stack:
                break
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                if p != root:
                    cuts.add(p)
                verts: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    verts.update(e)
                    if e == (p, v):
                        break
                found.append(tuple(sorted(verts)))
        if root_children > 1:
            cuts.add(root)
    ordered = tuple(sorted(found))
    membership: dict[int, list[int]] = {}
    for i, b in enumerate(ordered):
        for v in b:
            membership.setdefault(v, []).append(i)
    return BlockDecomposition(
        ordered, frozenset(cuts), {v: tuple(ix) for v, ix in membership.items()})


def lies_on_cycle(g: Graph, v: int, decomposition: BlockDecomposition | None = None) -> bool:
    bd = decomposition or blocks(g)
    return any(len(bd.blocks[i]) >= 3 for i in bd.membership.get(v, ()))


def shortest_cycle(g: Graph) -> list[int] | None:
    """A cycle of minimum length, as an ordered vertex list, or None for forests.

    BFS from every vertex in id order; a later start only replaces the
    current cycle when it finds a strictly shorter one.
    """
    best_len = g.n + 1
    best: list[int] | None = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        limit = best_len
        hit = None
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= limit:
                break
            for y in g.neighbors(x):
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    length = dist[x] + dist[y] + 1
                    if length < limit:
                        hit = (x, y)
                        limit = length
        if hit is None:
            continue
        x, y = hit
        left = []
        while x != -1:
            left.append(x)
            x = parent[x]
        right = []
        while y != -1:
            right.append(y)
            y = parent[y]
        cycle = left[::-1] + right[:-1]
        if len(set(cycle)) != limit:
            continue  # closed walk is not simple; a shorter cycle exists elsewhere
        best_len = limit
        best = cycle
        if best_len == 3:
            break
    return best


def girth(g: Graph) -> int | None:
    c = shortest_cycle(g)
    return None if c is None else len(c)


# -- contraction ------------------------------------------------------------


@dataclass(frozen=True)
class ContractionMap:
    quotient: Graph
    classes: tuple[tuple[int, ...], ...]  # quotient vertex -> original vertices
    edge_preimage: dict[Edge, Edge]  # quotient edge -> least original edge

    def lift_edge(self, a: int, b: int) -> Edge:
        return self.edge_preimage[(a, b) if a < b else (b, a)]


def contract_pattern(g: Graph, witness: Iterable[int]) -> ContractionMap:
    """Merge the vertices of ``witness`` into a single vertex.

    The merged vertex takes the position of the least witness vertex; the
    other vertices keep their relative order.  Loops are dropped and parallel
    edges merged, with the least original edge kept as preimage.
    """
    hs = sorted(set(witness))
    if not hs:
        raise ValueError("empty witness")
    sub, _ = induced_subgraph(g, hs)
    if len(components(sub)) != 1:
        raise ValueError("witness does not induce a connected subgraph")
    hset = set(hs)
    classes: list[tuple[int, ...]] = []
    new_id: dict[int, int] = {}
    for v in range(g.n):
        if v in hset:
            if v == hs[0]:
                new_id[v] = len(classes)
                classes.append(tuple(hs))
        else:
            new_id[v] = len(classes)
            classes.append((v,))
    for v in hs:
        new_id[v] = new_id[hs[0]]
    preimage: dict[Edge, Edge] = {}
    for u, v in g.edges():
        a, b = new_id[u], new_id[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in preimage or (u, v) < preimage[key]:
            preimage[key] = (u, v)
    q = Graph.from_edges(len(classes), preimage.keys())
    return ContractionMap(q, tuple(classes), preimage)


# -- misc -------------------------------------------------------------------


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges()))


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph.from_edges(off, edges)


__all__ = [
    "BlockDecomposition", "ContractionMap", "Edge", "Graph", "K23_DEG2", "K23_DEG3", "PATTERNS", "SpecialClass",
    "blocks", "classify_special", "closed_neighborhood", "components",
    "contract_pattern", "count_special_components", "degree", "delete_vertices",
    "disjoint_union", "find_subgraph", "girth", "induced_subgraph", "is_connected",
    "isolated_vertices", "lies_on_cycle", "pattern_graph", "relabel",
    "shortest_cycle",
]
