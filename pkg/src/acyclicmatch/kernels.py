"""Bitmask kernels for the exact acyclic-matching search.

A vertex set is an integer bitmask and ``adj[v]`` is the neighbor mask of
``v``.  The same source runs under numba (int64 masks, so at most
:data:`MAX_JIT_VERTICES` vertices) or as plain Python on lists of Python
ints, which has no size limit.
"""

import numpy as np

from ._jit import JIT_DISABLED, njit

MAX_JIT_VERTICES = 62

# Return codes of bnb_run.
PAUSED = 0
FINISHED = 1
TARGET_REACHED = 2


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def induces_forest(adj, n, mask):
    """True iff the subgraph induced by ``mask`` is acyclic."""
    vcount = 0
    twice_edges = 0
    for v in range(n):
        if (mask >> v) & 1:
            vcount += 1
            twice_edges += popcount(adj[v] & mask)
    edges = twice_edges // 2
    if edges >= vcount:
        return edges == 0
    comps = 0
    rest = mask
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in range(n):
                if (frontier >> v) & 1:
                    nxt |= adj[v]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        rest &= ~seen
        comps += 1
    return edges == vcount - comps


@njit(cache=True)
def bnb_run(adj, n, eu, ev, m, cov, size, phase, chosen, best_chosen, ctrl, target, quota):
    """Depth-first include/exclude search over edges ``0..m-1``.

    ``cov[k]``/``size[k]`` hold the covered mask and matching size before
    deciding edge ``k``; ``phase[k]`` is 0 (unvisited), 1 (include tried) or
    2 (both tried).  ``ctrl`` = [depth, best, nodes] carries the position
    between calls, so a search can be paused after ``quota`` nodes and
    resumed.  The incumbent lives in ``ctrl[1]``/``best_chosen``.
    """
    k = ctrl[0]
    best = ctrl[1]
    nodes = ctrl[2]
    spent = 0
    while k >= 0:
        if phase[k] == 0:
            if spent >= quota:
                ctrl[0] = k
                ctrl[1] = best
                ctrl[2] = nodes
                return PAUSED
            spent += 1
            nodes += 1
            s = size[k]
            c = cov[k]
            if s > best:
                best = s
                for j in range(m):
                    best_chosen[j] = 0
                for j in range(k):
                    best_chosen[j] = chosen[j]
                if best >= target:
                    ctrl[0] = k
                    ctrl[1] = best
                    ctrl[2] = nodes
                    return TARGET_REACHED
            if k == m:
                k -= 1
                continue
            # Vertices that some remaining edge could still cover.
            usable = 0
            for j in range(k, m):
                ba = 1 << eu[j]
                bb = 1 << ev[j]
                if (c & ba) or (c & bb):
                    continue
                if (usable & ba) and (usable & bb):
                    continue
                if induces_forest(adj, n, c | ba | bb):
                    usable |= ba | bb
            if s + popcount(usable) // 2 <= best:
                k -= 1
                continue
            phase[k] = 1
            ba = 1 << eu[k]
            bb = 1 << ev[k]
            if (usable & ba) and (usable & bb) and not (c & ba) and not (c & bb):
                if induces_forest(adj, n, c | ba | bb):
                    chosen[k] = 1
                    cov[k + 1] = c | ba | bb
                    size[k + 1] = s + 1
                    phase[k + 1] = 0
                    k += 1
                    continue
        if phase[k] == 1:
            phase[k] = 2
            chosen[k] = 0
            cov[k + 1] = cov[k]
            size[k + 1] = size[k]
            phase[k + 1] = 0
            k += 1
            continue
        k -= 1
    ctrl[0] = -1
    ctrl[1] = best
    ctrl[2] = nodes
    return FINISHED


def use_jit(n: int) -> bool:
    return not JIT_DISABLED and n <= MAX_JIT_VERTICES


class SearchState:
    """Arrays for one resumable :func:`bnb_run` search.

    ``order`` lists the edges in branching order; ``incumbent`` is a list of
    positions into ``order`` forming a known acyclic matching.
    """

    def __init__(self, n, adj_masks, order, incumbent, target, jit=None):
        m = len(order)
        self.n = n
        self.m = m
        self.order = list(order)
        self.jit = use_jit(n) if jit is None else jit
        if self.jit:
            mk = lambda xs: np.array(xs, dtype=np.int64)  # noqa: E731
            self.run = bnb_run
        else:
            mk = list
            self.run = bnb_run.py_func
        self.adj = mk(adj_masks)
        self.eu = mk([e[0] for e in order])
        self.ev = mk([e[1] for e in order])
        self.cov = mk([0] * (m + 1))
        self.size = mk([0] * (m + 1))
        self.phase = mk([0] * (m + 1))
        self.chosen = mk([0] * max(m, 1))
        best = mk([0] * max(m, 1))
        for pos in incumbent:
            best[pos] = 1
        self.best_chosen = best
        self.ctrl = mk([0, len(incumbent), 0])
        self.target = target
        self.done = False
        self.status = PAUSED

    def step(self, quota: int) -> int:
        if self.done:
            return self.status
        code = self.run(self.adj, self.n, self.eu, self.ev, self.m, self.cov, self.size,
                        self.phase, self.chosen, self.best_chosen, self.ctrl,
                        self.target, quota)
        self.status = int(code)
        self.done = code != PAUSED
        return self.status

    @property
    def best(self) -> int:
        return int(self.ctrl[1])

    @property
    def nodes(self) -> int:
        return int(self.ctrl[2])

    def best_edges(self):
        return [self.order[j] for j in range(self.m) if self.best_chosen[j]]
