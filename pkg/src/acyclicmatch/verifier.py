"""Bound formulas and per-graph reports comparing them with both solvers."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial
from typing import Iterable, Iterator

from .formats import FormatError, graph6_decode, graph6_encode
from .graph import (
    Graph,
    SpecialClass,
    classify_special,
    count_special_components,
    is_connected,
    isolated_vertices,
)
from .oracle import EXACT, SolveBudget, exact_nu_ac
from .reduction import constructive_matching

log = logging.getLogger(__name__)


def theorem2_rhs(g: Graph) -> Fraction:
    """(n - k23 - k4plus - 2*k33) / 4, with isolated vertices left out of n.

    For graphs without isolated vertices this is exactly the lower bound on
    the acyclic matching number of subcubic graphs; isolated vertices can
    never be covered, so they are dropped rather than counted.
    """
    k23, k4p, k33 = count_special_components(g)
    return Fraction(g.n - len(isolated_vertices(g)) - k23 - k4p - 2 * k33, 4)


def theorem1_rhs(g: Graph) -> Fraction | None:
    """m/6 for connected graphs other than K4+ and K33; None otherwise."""
    if not is_connected(g):
        return None
    if classify_special(g) in (SpecialClass.K4PLUS, SpecialClass.K33):
        return None
    return Fraction(g.m, 6)


def theorem1_rhs_ungated(g: Graph) -> Fraction:
    return Fraction(g.m, 6)


def conjecture1_rhs(g: Graph) -> Fraction:
    """3n/11, without the unspecified additive constant."""
    return Fraction(3 * g.n, 11)


def conjecture2_rhs(g: Graph) -> Fraction:
    d = g.max_degree()
    if d == 0:
        raise ValueError("conjectured bound needs maximum degree at least 1")
    n = g.n
    dense = Fraction(2 * n, (math.ceil(d / 2) + 1) * (d // 2 + 1))
    sparse = Fraction(n, 2 * d)
    return min(dense, sparse)


def baseline_rhs(g: Graph) -> Fraction:
    """m/9, the edge-coloring bound for subcubic graphs."""
    return Fraction(g.m, 9)


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _fmt(x: Fraction | None) -> str | None:
    return None if x is None else str(x)


@dataclass
class BoundReport:
    graph_id: str
    n: int
    m: int
    max_degree: int
    connected: bool
    isolated: int
    special_counts: dict
    nu_ac_exact: int | None
    exact_status: str
    exact_nodes: int
    exact_witness: list
    nu_constructive: int | None
    constructive_matching: list
    trace_rules: list
    rhs_theorem1: str | None
    rhs_theorem2: str
    rhs_conjecture1: str
    rhs_conjecture2: str | None
    rhs_baseline: str
    ceil_theorem1: int | None
    ceil_theorem2: int
    ceil_baseline: int
    meets_thm1: bool | None
    meets_thm2: bool | None
    tight_thm2: bool | None
    meets_baseline: bool | None
    conjecture1_deficit: str | None
    meets_conj2: bool | None
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def verify_graph(g: Graph, budget: SolveBudget | None = None,
                 constructive: bool = True) -> BoundReport:
    """Evaluate every bound on ``g`` against the exact and constructive solvers."""
    exact = exact_nu_ac(g, budget)
    nu = exact.size if exact.status == EXACT else None
    best_known = exact.size
    if constructive:
        cert, trace = constructive_matching(g)
        cons = cert.size
        cons_m = cert.to_json()
        rules = [s.rule for s in trace.steps]
        best_known = max(best_known, cons)
    else:
        cons, cons_m, rules = None, [], []

    t1 = theorem1_rhs(g)
    t2 = theorem2_rhs(g)
    c1 = conjecture1_rhs(g)
    c2 = conjecture2_rhs(g) if g.max_degree() > 0 else None
    base = baseline_rhs(g)
    k23, k4p, k33 = count_special_components(g)

    def meets(rhs: Fraction | None) -> bool | None:
        if rhs is None:
            return None
        if best_known >= ceil_frac(rhs):
            return True  # any witness suffices
        return False if nu is not None else None

    report = BoundReport(
        graph_id=graph6_encode(g), n=g.n, m=g.m, max_degree=g.max_degree(),
        connected=is_connected(g), isolated=len(isolated_vertices(g)),
        special_counts={"K23": k23, "K4PLUS": k4p, "K33": k33},
        nu_ac_exact=nu, exact_status=exact.status, exact_nodes=exact.nodes,
        exact_witness=exact.certificate.to_json(),
        nu_constructive=cons, constructive_matching=cons_m, trace_rules=rules,
        rhs_theorem1=_fmt(t1), rhs_theorem2=_fmt(t2), rhs_conjecture1=_fmt(c1),
        rhs_conjecture2=_fmt(c2), rhs_baseline=_fmt(base),
        ceil_theorem1=None if t1 is None else ceil_frac(t1),
        ceil_theorem2=ceil_frac(t2), ceil_baseline=ceil_frac(base),
        meets_thm1=meets(t1), meets_thm2=meets(t2),
        tight_thm2=None if nu is None else Fraction(nu) == t2,
        meets_baseline=meets(base),
        conjecture1_deficit=None if nu is None else str(nu - c1),
        meets_conj2=meets(c2),
    )
    if report.meets_thm2 is False:
        report.violations.append("theorem2")
    if report.meets_thm1 is False:
        report.violations.append("theorem1")
    if g.max_degree() <= 3 and report.meets_baseline is False:
        report.violations.append("baseline")
    if cons is not None and nu is not None and cons > nu:
        report.violations.append("constructive_exceeds_exact")
    if report.violations:
        log.error("bound violation on %s: %s", report.graph_id, report.violations)
    return report


@dataclass
class StreamSummary:
    """Deterministic fold over a report stream (no timing information)."""

    graphs: int = 0
    malformed: int = 0
    unresolved: int = 0
    violations: list = field(default_factory=list)
    thm2_tight: list = field(default_factory=list)
    min_ratio: str | None = None
    min_ratio_graph: str | None = None
    thm1_excluded: list = field(default_factory=list)

    def add(self, r: BoundReport) -> None:
        self.graphs += 1
        if r.nu_ac_exact is None:
            self.unresolved += 1
        else:
            if r.n > 0:
                ratio = Fraction(r.nu_ac_exact, r.n)
                if self.min_ratio is None or ratio < Fraction(self.min_ratio):
                    self.min_ratio = str(ratio)
                    self.min_ratio_graph = r.graph_id
            if r.tight_thm2:
                self.thm2_tight.append(r.graph_id)
        if r.connected and r.rhs_theorem1 is None:
            self.thm1_excluded.append(r.graph_id)
        for v in r.violations:
            self.violations.append({"graph_id": r.graph_id, "bound": v})

    @property
    def ok(self) -> bool:
        return not self.violations and not self.malformed

    def to_json(self) -> dict:
        out = asdict(self)
        out["summary"] = True
        return out


def _verify_item(item, budget: SolveBudget | None, constructive: bool):
    if isinstance(item, Graph):
        g = item
    else:
        try:
            g = graph6_decode(item)
        except FormatError as exc:
            return None, str(exc)
    return verify_graph(g, budget, constructive), None


def iter_reports(source: Iterable[Graph | str], budget: SolveBudget | None = None,
                 jobs: int = 1, summary: StreamSummary | None = None,
                 constructive: bool = True) -> Iterator[BoundReport]:
    """Reports in input order.  Malformed graph6 lines are skipped and counted
    in ``summary``; the output does not depend on ``jobs``."""
    summary = summary if summary is not None else StreamSummary()
    work = partial(_verify_item, budget=budget, constructive=constructive)
    items = (s.strip() if isinstance(s, str) else s for s in source)
    items = (s for s in items if not (isinstance(s, str) and not s))
    if jobs <= 1:
        results = map(work, items)
        for report, err in results:
            if report is None:
                summary.malformed += 1
                log.warning("skipping malformed graph6 line: %s", err)
                continue
            summary.add(report)
            yield report
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for report, err in pool.map(work, items, chunksize=16):
            if report is None:
                summary.malformed += 1
                log.warning("skipping malformed graph6 line: %s", err)
                continue
            summary.add(report)
            yield report


def verify_stream(source: Iterable[Graph | str], budget: SolveBudget | None = None,
                  jobs: int = 1) -> tuple[list[BoundReport], StreamSummary]:
    summary = StreamSummary()
    reports = list(iter_reports(source, budget, jobs, summary))
    return reports, summary
