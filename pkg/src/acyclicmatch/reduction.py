"""Constructive acyclic matchings of guaranteed size in subcubic graphs.

Each connected component is reduced by the first applicable rule of a fixed
table.  A rule recognises a local configuration, deletes a vertex set,
solves what is left recursively and adds a few matching edges inside the
deleted set.  The result has at least ceil((n - k23 - k4plus - 2*k33) / 4)
edges, where the k's count components isomorphic to K_{2,3}, K_4 with one
edge subdivided, and K_{3,3}; isolated vertices are ignored.

Rule ids, in priority order::

    B0      component is one of the three special graphs
    B1      component has at most 4 vertices
    R1      K4+ subgraph
    R2      endblock isomorphic to K_{2,3}
    R3      two leaves with a common neighbor
    R4      leaf whose neighbor lies on no cycle
    R5a-d   leaf whose neighbor lies on a cycle
    R6a-c   K_{2,3} subgraph (R6c contracts it)
    R7      adjacent degree-2 vertices
    R8      degree-2 vertex on a triangle
    R9      degree-2 vertex on a 4-cycle
    R10     5-cycle through two degree-2 vertices
    R11     any degree-2 vertex
    R12     triangle (component is cubic from here on)
    R13/R13x, R14/R14x, R15/R15x   girth 4, 5, 6
    F-ODD, F-EVEN                  girth >= 7

``R5a-small`` and ``R6c-small`` are the two places where the residual graph
is special and the component is small (at most 11 vertices); there the
whole component is matched directly.

Every step is checked at runtime: the accumulated matching must be acyclic in
the input graph and each component must meet its size guarantee.  A failure
raises :class:`SoundnessError`, which always means a bug here, never bad
input.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable

from .graph import (
    K23_DEG2,
    K23_DEG3,
    Edge,
    Graph,
    SpecialClass,
    blocks,
    classify_special,
    closed_neighborhood,
    components,
    contract_pattern,
    count_special_components,
    find_subgraph,
    induced_subgraph,
    isolated_vertices,
    shortest_cycle,
)
from .oracle import AcyclicCertificate, acyclic_violation, exact_nu_ac

log = logging.getLogger(__name__)


class SoundnessError(RuntimeError):
    """A reduction produced an invalid or too small matching."""


class TraceError(ValueError):
    """A recorded trace does not replay on the given graph."""

    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    deleted: tuple[int, ...]
    contributed: tuple[Edge, ...]

    def to_json(self) -> dict:
        return {"rule": self.rule, "deleted": list(self.deleted),
                "contributed": [list(e) for e in self.contributed]}

    @classmethod
    def from_json(cls, obj: dict) -> ReductionStep:
        return cls(obj["rule"], tuple(obj["deleted"]),
                   tuple(tuple(e) for e in obj["contributed"]))


@dataclass
class ReductionTrace:
    steps: list[ReductionStep]
    certificate: AcyclicCertificate
    skipped_isolated: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps],
                "matching": self.certificate.to_json(),
                "skipped_isolated": list(self.skipped_isolated)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, g: Graph, obj: dict) -> ReductionTrace:
        steps = [ReductionStep.from_json(s) for s in obj["steps"]]
        cert = AcyclicCertificate.build(g, [tuple(e) for e in obj["matching"]])
        return cls(steps, cert, tuple(obj.get("skipped_isolated", ())))


def guarantee(g: Graph) -> int:
    """ceil((n - i - k23 - k4plus - 2*k33) / 4) with i the isolated vertices."""
    k23, k4p, k33 = count_special_components(g)
    deficit = g.n - len(isolated_vertices(g)) - k23 - k4p - 2 * k33
    return -(-deficit // 4)


def check_guarantee(g: Graph, cert: AcyclicCertificate) -> bool:
    return cert.size >= guarantee(g)


def _component_guarantee(g: Graph) -> int:
    """Guarantee for a connected graph with at least two vertices."""
    cls = classify_special(g)
    loss = {SpecialClass.K23: 1, SpecialClass.K4PLUS: 1, SpecialClass.K33: 2}.get(cls, 0)
    return -(-(g.n - loss) // 4)


# -- frames -----------------------------------------------------------------


class _Frame:
    """A working graph whose vertices stand for classes of input vertices.

    Induced subgraphs keep singleton classes; contracting a K_{2,3} merges
    five classes into one.  ``lifts`` maps local edges touching merged
    classes to the input edge they stand for.
    """

    __slots__ = ("graph", "classes", "lifts")

    def __init__(self, graph: Graph, classes: list[tuple[int, ...]],
                 lifts: dict[Edge, Edge]):
        self.graph = graph
        self.classes = classes
        self.lifts = lifts

    def lift_edge(self, a: int, b: int) -> Edge:
        if a > b:
            a, b = b, a
        got = self.lifts.get((a, b))
        if got is not None:
            return got
        ca, cb = self.classes[a], self.classes[b]
        if len(ca) != 1 or len(cb) != 1:
            raise SoundnessError(f"no preimage recorded for contracted edge ({a}, {b})")
        u, v = ca[0], cb[0]
        return (u, v) if u < v else (v, u)

    def lift_vertices(self, vs) -> tuple[int, ...]:
        return tuple(sorted(x for v in vs for x in self.classes[v]))

    def induced(self, keep) -> tuple[_Frame, dict[int, int]]:
        sub, old_to_new = induced_subgraph(self.graph, keep)
        classes = [()] * sub.n
        for old, new in old_to_new.items():
            classes[new] = self.classes[old]
        lifts = {}
        for (a, b), e in self.lifts.items():
            if a in old_to_new and b in old_to_new:
                na, nb = old_to_new[a], old_to_new[b]
                lifts[(na, nb) if na < nb else (nb, na)] = e
        return _Frame(sub, classes, lifts), old_to_new

    def contract(self, hs) -> tuple[_Frame, dict[Edge, Edge]]:
        """Quotient frame and the map quotient edge -> local edge of self."""
        cmap = contract_pattern(self.graph, hs)
        classes = [self.lift_vertices(c) for c in cmap.classes]
        lifts = {}
        local = {}
        for qe in cmap.quotient.edges():
            fe = cmap.edge_preimage[qe]
            local[qe] = fe
            if len(classes[qe[0]]) > 1 or len(classes[qe[1]]) > 1:
                lifts[qe] = self.lift_edge(*fe)
        return _Frame(cmap.quotient, classes, lifts), local


@dataclass
class _Action:
    rule: str
    deleted: tuple[int, ...]
    edges: list[Edge]
    kind: str = "delete"  # delete | direct | contract
    extra: dict = field(default_factory=dict)


# -- rule detection ---------------------------------------------------------


class _View:
    """Cached local structure of one connected frame graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.deg = g.degrees()
        self.nbr = [set(g.neighbors(v)) for v in range(g.n)]
        self._blocks = None

    @property
    def blocks(self):
        if self._blocks is None:
            self._blocks = blocks(self.g)
        return self._blocks

    def adj(self, a: int, b: int) -> bool:
        return b in self.nbr[a]

    def nclosed(self, xs) -> set[int]:
        return set(closed_neighborhood(self.g, xs))

    def residual_isolated(self, deleted) -> list[int]:
        dset = set(deleted)
        return [v for v in range(self.g.n)
                if v not in dset and self.nbr[v] <= dset]


def _least_edge(g: Graph, ok: Callable[[int, int], bool] = lambda u, v: True) -> Edge:
    for u, v in g.edges():
        if ok(u, v):
            return (u, v)
    raise SoundnessError("no eligible edge")


def _rule_b0(vw: _View) -> _Action | None:
    cls = classify_special(vw.g)
    if cls is SpecialClass.NONE:
        return None
    if cls is SpecialClass.K4PLUS:
        e = _least_edge(vw.g, lambda u, v: vw.deg[u] == 3 and vw.deg[v] == 3)
    else:
        e = _least_edge(vw.g)
    return _Action("B0", tuple(range(vw.g.n)), [e], "direct")


def _rule_b1(vw: _View) -> _Action | None:
    if vw.g.n > 4:
        return None
    return _Action("B1", tuple(range(vw.g.n)), [_least_edge(vw.g)], "direct")


def _rule_r1(vw: _View) -> _Action | None:
    w = find_subgraph(vw.g, SpecialClass.K4PLUS)
    if w is None:
        return None
    # Pattern vertices 0 and 2 are the K4 vertices away from the subdivision
    # vertex 4, so their edge has no neighbor left in the residual graph.
    return _Action("R1", tuple(sorted(w[:4])), [(w[0], w[2])])


def _rule_r2(vw: _View) -> _Action | None:
    bd = vw.blocks
    for b in bd.blocks:
        if len(b) != 5:
            continue
        cuts = [v for v in b if v in bd.cutvertices]
        if len(cuts) != 1:
            continue
        sub, _ = induced_subgraph(vw.g, b)
        if classify_special(sub) is not SpecialClass.K23:
            continue
        u = cuts[0]
        rest = [v for v in b if v != u]
        e = next((a, c) for a in rest for c in rest if a < c and vw.adj(a, c))
        return _Action("R2", tuple(rest), [e])
    return None


def _leaves(vw: _View) -> list[int]:
    return [v for v in range(vw.g.n) if vw.deg[v] == 1]


def _rule_r3(vw: _View) -> _Action | None:
    for w in range(vw.g.n):
        lv = [x for x in sorted(vw.nbr[w]) if vw.deg[x] == 1]
        if len(lv) >= 2:
            u, v = lv[0], lv[1]
            return _Action("R3", tuple(sorted((u, v, w))), [(u, w)])
    return None


def _rule_r4(vw: _View) -> _Action | None:
    bd = vw.blocks
    for u in _leaves(vw):
        (v,) = vw.nbr[u]
        if not any(len(bd.blocks[i]) >= 3 for i in bd.membership[v]):
            return _Action("R4", tuple(sorted((u, v))), [(u, v)])
    return None


def _rule_r5(vw: _View) -> _Action | None:
    leaves = _leaves(vw)
    if not leaves:
        return None
    u = leaves[0]
    (v,) = vw.nbr[u]
    others = sorted(vw.nbr[v] - {u})
    if len(others) != 2:
        raise SoundnessError(f"R5: neighbor {v} of leaf {u} does not have degree 3")

    def has_leaf(z: int) -> bool:
        return any(vw.deg[y] == 1 for y in vw.nbr[z])

    free = [z for z in others if not has_leaf(z)]
    if free:
        w = free[0]
        x = others[1] if w == others[0] else others[0]
        iso = vw.residual_isolated((u, v, w))
        if iso:
            if iso != [x]:
                raise SoundnessError(f"R5a: unexpected isolated vertices {iso}")
            deleted = (u, v, w, x)
            rest, _ = induced_subgraph(vw.g, [z for z in range(vw.g.n) if z not in deleted])
            if rest.n >= 2 and classify_special(rest) is not SpecialClass.NONE:
                return _Action("R5a-small", tuple(range(vw.g.n)), [], "direct",
                               {"exact": True})
            return _Action("R5a", tuple(sorted(deleted)), [(u, v)])
        return _Action("R5b", tuple(sorted((u, v, w))), [(u, v)])
    w, x = others
    y = min(z for z in vw.nbr[w] if vw.deg[z] == 1)
    if vw.adj(x, w):
        if vw.g.n != 6:
            raise SoundnessError("R5c: expected a component of order 6")
        return _Action("R5c", tuple(range(vw.g.n)), [(u, v), (w, y)], "direct")
    return _Action("R5d", tuple(sorted((u, v, w, y))), [(u, v)])


def _rule_r6(vw: _View) -> _Action | None:
    wm = find_subgraph(vw.g, SpecialClass.K23)
    if wm is None:
        return None
    v1, v2 = (wm[i] for i in K23_DEG3)
    us = sorted(wm[i] for i in K23_DEG2)
    hs = tuple(sorted(wm))
    deg2 = [x for x in us if vw.deg[x] == 2]
    if deg2:
        ui = deg2[0]
        deg3 = [x for x in us if vw.deg[x] == 3]
        if not deg3:
            raise SoundnessError("R6a: K23 subgraph is the whole component")
        uj = deg3[0]
        return _Action("R6a", tuple(x for x in hs if x != uj), [(ui, v1)])
    outside = {x: next(z for z in vw.nbr[x] if z not in (v1, v2)) for x in us}
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = us[i], us[j]
            if outside[a] == outside[b]:
                c = next(x for x in us if x not in (a, b))
                z = outside[a]
                return _Action("R6b", tuple(sorted(vw.nclosed(us))), [(z, a), (c, v1)])
    return _Action("R6c", hs, [], "contract",
                   {"us": us, "v1": v1, "outside": outside})


def _rule_r7(vw: _View) -> _Action | None:
    for u in range(vw.g.n):
        if vw.deg[u] != 2:
            continue
        for v in sorted(vw.nbr[u]):
            if vw.deg[v] == 2:
                (w,) = vw.nbr[u] - {v}
                return _Action("R7", tuple(sorted((u, v, w))), [(u, v)])
    return None


def _rule_r8(vw: _View) -> _Action | None:
    for u1 in range(vw.g.n):
        if vw.deg[u1] != 2:
            continue
        a, b = sorted(vw.nbr[u1])
        if vw.adj(a, b):
            return _Action("R8", tuple(sorted((u1, a, b))), [(u1, a)])
    return None


def _rule_r9(vw: _View) -> _Action | None:
    for u1 in range(vw.g.n):
        if vw.deg[u1] != 2:
            continue
        a, b = sorted(vw.nbr[u1])
        common = sorted((vw.nbr[a] & vw.nbr[b]) - {u1})
        if common:
            return _Action("R9", tuple(sorted((u1, a, common[0], b))), [(u1, a)])
    return None


def _rule_r10(vw: _View) -> _Action | None:
    for u5 in range(vw.g.n):
        d2 = sorted(x for x in vw.nbr[u5] if vw.deg[x] == 2)
        for i in range(len(d2)):
            for j in range(i + 1, len(d2)):
                u1, u4 = d2[i], d2[j]
                (u2,) = vw.nbr[u1] - {u5}
                (u3,) = vw.nbr[u4] - {u5}
                if u2 != u3 and vw.adj(u2, u3):
                    deleted = vw.nclosed([u5]) | {u2, u3}
                    return _Action("R10", tuple(sorted(deleted)), [(u1, u2), (u4, u5)])
    return None


def _rule_r11(vw: _View) -> _Action | None:
    for u in range(vw.g.n):
        if vw.deg[u] == 2:
            v, w = sorted(vw.nbr[u])
            x = min(vw.nbr[v] - {u})
            return _Action("R11", tuple(sorted((u, v, w, x))), [(u, v)])
    return None


def _rule_r12(vw: _View) -> _Action | None:
    for u1 in range(vw.g.n):
        nb = sorted(vw.nbr[u1])
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if vw.adj(nb[i], nb[j]):
                    return _Action("R12", tuple(sorted(vw.nclosed([u1]))), [(u1, nb[i])])
    return None


def _off_cycle(vw: _View, cyc: list[int]) -> list[int]:
    g = len(cyc)
    out = []
    for i, x in enumerate(cyc):
        rest = vw.nbr[x] - {cyc[i - 1], cyc[(i + 1) % g]}
        if len(rest) != 1:
            raise SoundnessError(f"cycle vertex {x} is not of degree 3")
        out.append(next(iter(rest)))
    return out


def _orientations(cyc: list[int]):
    g = len(cyc)
    for d in (1, -1):
        for r in range(g):
            yield [cyc[(r + d * i) % g] for i in range(g)]


def _trapped(vw: _View, core: set[int]) -> list[int]:
    """Vertices outside ``core`` whose whole neighborhood lies inside it."""
    return sorted(x for x in range(vw.g.n) if x not in core and vw.nbr[x] <= core)


def _rule_girth(vw: _View) -> _Action | None:
    cyc = shortest_cycle(vw.g)
    if cyc is None:
        raise SoundnessError("cubic component without a cycle")
    g = len(cyc)
    if g == 3:
        raise SoundnessError("triangle survived R12")
    if g == 4:
        for c in _orientations(cyc):
            v = _off_cycle(vw, c)
            if vw.adj(v[0], v[1]):
                deleted = vw.nclosed([v[0]]) | {c[1], c[2], c[3]}
                return _Action("R13", tuple(sorted(deleted)), [(c[0], v[0]), (c[1], c[2])])
        u = list(cyc)
        v = _off_cycle(vw, u)
        core = vw.nclosed([v[0], u[0], u[2]])
        xs = _trapped(vw, core)
        if xs:
            x = xs[0]
            if vw.adj(x, u[1]):
                # Reflect through u1-u3 so that x is not adjacent to u2.
                u[1], u[3] = u[3], u[1]
            w1 = min(w for w in vw.nbr[v[0]] - {u[0]} if vw.adj(w, x))
            deleted = vw.nclosed([v[0], u[0], u[2], w1])
            return _Action("R13x", tuple(sorted(deleted)),
                           [(x, w1), (u[0], v[0]), (u[1], u[2])])
        return _Action("R13", tuple(sorted(core)), [(u[0], v[0]), (u[1], u[2])])
    u = cyc
    v = _off_cycle(vw, u)
    if g == 5:
        core = vw.nclosed([u[0], u[1], u[3]])
        xs = _trapped(vw, core)
        if xs:
            x = xs[0]
            deleted = vw.nclosed([v[0], u[0], u[1], u[3]])
            return _Action("R14x", tuple(sorted(deleted)),
                           [(x, v[0]), (u[0], u[1]), (u[2], u[3])])
        return _Action("R14", tuple(sorted(core)), [(u[0], u[1]), (u[2], u[3])])
    if g == 6:
        core = vw.nclosed([v[0], u[2], u[4], u[5]])
        xs = _trapped(vw, core)
        if xs:
            x = xs[0]
            deleted = vw.nclosed([v[0], v[2], u[2], u[4], u[5]])
            return _Action("R15x", tuple(sorted(deleted)),
                           [(x, v[2]), (u[0], v[0]), (u[1], u[2]), (u[4], u[5])])
        return _Action("R15", tuple(sorted(core)),
                       [(u[0], v[0]), (u[1], u[2]), (u[4], u[5])])
    if g % 2:
        deleted = vw.nclosed(u[:g - 2])
        edges = [(u[2 * i], u[2 * i + 1]) for i in range((g - 1) // 2)]
        return _Action("F-ODD", tuple(sorted(deleted)), edges)
    deleted = vw.nclosed([v[0]] + u[:g - 2])
    edges = [(u[0], v[0])] + [(u[2 * i - 1], u[2 * i]) for i in range(1, (g - 2) // 2 + 1)]
    return _Action("F-EVEN", tuple(sorted(deleted)), edges)


RULES: tuple[tuple[str, Callable[[_View], _Action | None]], ...] = (
    ("B0", _rule_b0), ("B1", _rule_b1), ("R1", _rule_r1), ("R2", _rule_r2),
    ("R3", _rule_r3), ("R4", _rule_r4), ("R5", _rule_r5), ("R6", _rule_r6),
    ("R7", _rule_r7), ("R8", _rule_r8), ("R9", _rule_r9), ("R10", _rule_r10),
    ("R11", _rule_r11), ("R12", _rule_r12), ("GIRTH", _rule_girth),
)


def select_rule(g: Graph) -> _Action:
    """First applicable rule for a connected graph with at least 2 vertices."""
    vw = _View(g)
    for _, detect in RULES:
        act = detect(vw)
        if act is not None:
            return act
    raise SoundnessError("no reduction rule applies")  # pragma: no cover


# -- engine -----------------------------------------------------------------


class _Engine:
    def __init__(self, g: Graph, expected: list[ReductionStep] | None = None):
        self.g = g
        self.steps: list[ReductionStep] = []
        self.expected = expected
        self.final_edges: set[Edge] = set()

    def _record(self, step: ReductionStep) -> int:
        self.steps.append(step)
        return len(self.steps) - 1

    def _check_replayed(self, index: int) -> None:
        if self.expected is None:
            return
        got = self.steps[index]
        if index >= len(self.expected):
            raise TraceError(index, f"trace ends early; replay fired {got.rule}")
        want = self.expected[index]
        if got != want:
            raise TraceError(index, f"recorded {want.to_json()} but replay gives {got.to_json()}")

    def _validate(self, frame: _Frame, local: list[Edge], where: str) -> None:
        lifted = [frame.lift_edge(a, b) for a, b in local]
        reason = acyclic_violation(self.g, lifted)
        if reason is not None:
            raise SoundnessError(f"{where}: {reason}")
        need = _component_guarantee(frame.graph)
        if len(local) < need:
            raise SoundnessError(
                f"{where}: {len(local)} edges on a component of order {frame.graph.n}, "
                f"guarantee is {need}")

    def solve(self, frame: _Frame) -> list[Edge]:
        """Acyclic matching of a connected frame, in frame-local edges."""
        act = select_rule(frame.graph)
        if act.kind == "contract":
            return self._contract(frame, act)
        if act.extra.get("exact"):
            act.edges = list(exact_nu_ac(frame.graph).certificate.matching)
        idx = self._record(ReductionStep(
            act.rule, frame.lift_vertices(act.deleted),
            tuple(frame.lift_edge(a, b) for a, b in act.edges)))
        self._check_replayed(idx)
        local = list(act.edges)
        if act.kind == "delete":
            dset = set(act.deleted)
            rest, old_to_new = frame.induced([v for v in range(frame.graph.n) if v not in dset])
            back = {new: old for old, new in old_to_new.items()}
            for comp in components(rest.graph):
                if len(comp) < 2:
                    continue
                sub, sub_map = rest.induced(comp)
                sub_back = {new: back[old] for old, new in sub_map.items()}
                for a, b in self.solve(sub):
                    local.append((sub_back[a], sub_back[b]))
        self._validate(frame, local, act.rule)
        return local

    def _contract(self, frame: _Frame, act: _Action) -> list[Edge]:
        us, v1, outside = act.extra["us"], act.extra["v1"], act.extra["outside"]
        quotient, to_local = frame.contract(act.deleted)
        if classify_special(quotient.graph) is not SpecialClass.NONE:
            edges = sorted((x, outside[x]) for x in us)
            rule = "R6c-small"
            if (acyclic_violation(self.g, [frame.lift_edge(*e) for e in edges]) is not None
                    or len(edges) < _component_guarantee(frame.graph)):
                edges = list(exact_nu_ac(frame.graph).certificate.matching)
            idx = self._record(ReductionStep(
                rule, frame.lift_vertices(range(frame.graph.n)),
                tuple(frame.lift_edge(a, b) for a, b in edges)))
            self._check_replayed(idx)
            self._validate(frame, edges, rule)
            return edges
        idx = self._record(ReductionStep("R6c", frame.lift_vertices(act.deleted), ()))
        sub = self.solve(quotient)
        local = [to_local[(a, b) if a < b else (b, a)] for a, b in sub]
        covered = {x for e in local for x in e}
        free = [x for x in us if x not in covered]
        if len(free) < 2:
            raise SoundnessError("R6c: lifted matching covers two vertices of the K23")
        extra = (free[0], v1)
        local.append(extra)
        self.steps[idx] = ReductionStep("R6c", self.steps[idx].deleted,
                                        (frame.lift_edge(*extra),))
        self._check_replayed(idx)
        self._validate(frame, local, "R6c")
        return local

    def run(self) -> tuple[AcyclicCertificate, tuple[int, ...]]:
        iso = []
        edges: list[Edge] = []
        for comp in components(self.g):
            if len(comp) == 1:
                iso.append(comp[0])
                continue
            sub, old_to_new = induced_subgraph(self.g, comp)
            frame = _Frame(sub, [(v,) for v in comp], {})
            edges.extend(frame.lift_edge(a, b) for a, b in self.solve(frame))
        reason = acyclic_violation(self.g, edges)
        if reason is not None:
            raise SoundnessError(f"final matching: {reason}")
        cert = AcyclicCertificate.build(self.g, edges)
        if cert.size < guarantee(self.g):
            raise SoundnessError("final matching is below the guarantee")
        return cert, tuple(iso)


def constructive_matching(g: Graph) -> tuple[AcyclicCertificate, ReductionTrace]:
    """Acyclic matching with at least :func:`guarantee` edges, plus its trace."""
    engine = _Engine(g)
    cert, iso = engine.run()
    if iso:
        log.warning("skipping %d isolated vertices: %s", len(iso), list(iso))
    return cert, ReductionTrace(engine.steps, cert, iso)


def replay_trace(g: Graph, trace: ReductionTrace) -> AcyclicCertificate:
    """Re-run the reduction on ``g`` and check it against ``trace`` step by step.

    Each step must be exactly what the first applicable rule produces at that
    point; its contributed edges must be edges of ``g`` lying in its deleted
    set (R6c excepted) and never reuse a deleted vertex.
    """
    seen: set[int] = set()
    for i, step in enumerate(trace.steps):
        for u, v in step.contributed:
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise TraceError(i, f"({u}, {v}) is not an edge")
            if step.rule != "R6c" and not {u, v} <= set(step.deleted):
                raise TraceError(i, f"({u}, {v}) leaves the deleted set")
        if step.rule != "R6c":
            clash = seen & set(step.deleted)
            if clash:
                raise TraceError(i, f"vertices {sorted(clash)} deleted twice")
            seen.update(step.deleted)
    engine = _Engine(g, expected=list(trace.steps))
    try:
        cert, iso = engine.run()
    except SoundnessError as exc:
        raise TraceError(len(engine.steps), f"replay failed: {exc}") from exc
    if len(engine.steps) != len(trace.steps):
        raise TraceError(len(engine.steps), "trace has extra steps")
    if cert != trace.certificate:
        raise TraceError(len(trace.steps), "final matching differs")
    if iso != tuple(trace.skipped_isolated):
        raise TraceError(len(trace.steps), "isolated-vertex list differs")
    return cert
