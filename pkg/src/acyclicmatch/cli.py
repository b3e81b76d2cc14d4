"""Command line frontend: ``acyclicmatch <subcommand> ...``.

Exit codes: 0 success, 1 bad usage, 2 malformed input (or a matching that
is not acyclic under ``validate``), 3 soundness or bound violation.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys
import time
from typing import IO, Iterator, Sequence

from .formats import FormatError, graph6_encode, read_graphs, read_matching
from .generators import FAMILIES, CapacityError, GraphFamilySpec, make
from .graph import Graph
from .oracle import SolveBudget, acyclic_violation, exact_nu_ac
from .reduction import SoundnessError, constructive_matching, guarantee
from .verifier import BoundReport, StreamSummary, iter_reports

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MALFORMED = 2
EXIT_SOUNDNESS = 3

log = logging.getLogger("acyclicmatch")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _nonneg(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 0:
        raise argparse.ArgumentTypeError("limits must be nonnegative")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="acyclicmatch", description="Acyclic matchings in subcubic graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def io_opts(sp, with_input=True):
        if with_input:
            sp.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
            sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
        sp.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
        sp.add_argument("--pretty", action="store_true", help="human-readable output")

    def budget_opts(sp):
        sp.add_argument("--node-limit", type=_nonneg)
        sp.add_argument("--time-limit-ms", type=_nonneg)
        sp.add_argument("--target", type=_nonneg)

    sp = sub.add_parser("solve", help="constructive matching with its size guarantee")
    io_opts(sp)
    sp.add_argument("--trace", action="store_true", help="include the reduction trace")

    sp = sub.add_parser("exact", help="maximum acyclic matching by branch and bound")
    io_opts(sp)
    budget_opts(sp)

    sp = sub.add_parser("check", help="bound reports as JSON lines, summary last")
    io_opts(sp)
    budget_opts(sp)
    sp.add_argument("--jobs", type=_nonneg, default=1)
    sp.add_argument("--csv", help="also write the reports as CSV to this path")
    sp.add_argument("--no-constructive", action="store_true",
                    help="skip the constructive algorithm")

    sp = sub.add_parser("gen", help="generate graphs as graph6 lines")
    io_opts(sp, with_input=False)
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("params", nargs="*", type=_nonneg)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--model", choices=("pairing", "addition"), default="pairing")
    sp.add_argument("--keep", type=float, default=1.0,
                    help="edge acceptance probability for --model addition")

    sp = sub.add_parser("enum", help="connected subcubic graphs on n vertices")
    io_opts(sp, with_input=False)
    sp.add_argument("n", type=_nonneg)
    sp.add_argument("--cap", type=_nonneg, default=9)

    sp = sub.add_parser("validate", help="check that a matching is acyclic")
    sp.add_argument("matching", help="file of 'u v' lines")
    io_opts(sp)
    return p


@contextlib.contextmanager
def _open_in(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _dump(obj: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, indent=2)
    return json.dumps(obj, separators=(",", ":"))


def _budget(args) -> SolveBudget:
    return SolveBudget(args.node_limit, args.time_limit_ms, args.target)


def _graphs(args, fh: IO[str]) -> list[Graph]:
    # Read everything first so malformed input fails before any output.
    return list(read_graphs(fh, args.format))


def cmd_solve(args) -> int:
    with _open_in(args.input) as fh:
        graphs = _graphs(args, fh)
    with _open_out(args.output) as out:
        for g in graphs:
            cert, trace = constructive_matching(g)
            need = guarantee(g)
            rec = {"graph_id": graph6_encode(g), "size": cert.size,
                   "matching": cert.to_json(), "guarantee": need,
                   "meets_guarantee": cert.size >= need}
            if args.trace:
                rec["trace"] = trace.to_json()
            out.write(_dump(rec, args.pretty) + "\n")
    return EXIT_OK


def cmd_exact(args) -> int:
    with _open_in(args.input) as fh:
        graphs = _graphs(args, fh)
    budget = _budget(args)
    with _open_out(args.output) as out:
        for g in graphs:
            res = exact_nu_ac(g, budget)
            rec = {"graph_id": graph6_encode(g), "size": res.size, "status": res.status,
                   "witness": res.certificate.to_json(), "nodes": res.nodes}
            out.write(_dump(rec, args.pretty) + "\n")
    return EXIT_OK


def _csv_row(r: BoundReport) -> dict:
    return {k: json.dumps(v) if isinstance(v, (list, dict)) else v
            for k, v in r.to_json().items()}


def cmd_check(args) -> int:
    summary = StreamSummary()
    started = time.perf_counter()
    with _open_in(args.input) as fh:
        if args.format == "graph6":
            source = list(fh)  # malformed lines are skipped and counted
        else:
            source = _graphs(args, fh)
        reports = iter_reports(source, _budget(args), max(args.jobs, 1), summary,
                               constructive=not args.no_constructive)
        with _open_out(args.output) as out, contextlib.ExitStack() as stack:
            writer = None
            for r in reports:
                obj = r.to_json()
                out.write(_dump(obj, args.pretty) + "\n")
                if args.csv:
                    if writer is None:
                        fh_csv = stack.enter_context(open(args.csv, "w", newline="", encoding="utf-8"))
                        writer = csv.DictWriter(fh_csv, fieldnames=list(obj))
                        writer.writeheader()
                    writer.writerow(_csv_row(r))
            out.write(_dump(summary.to_json(), args.pretty) + "\n")
    elapsed = time.perf_counter() - started
    print(f"checked {summary.graphs} graphs in {elapsed:.2f} s "
          f"({summary.malformed} malformed, {len(summary.violations)} violations)",
          file=sys.stderr)
    if summary.violations:
        return EXIT_SOUNDNESS
    if summary.malformed:
        return EXIT_MALFORMED
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GraphFamilySpec(args.family, tuple(args.params), args.model, args.seed,
                           {"keep": args.keep})
    needs = {"cycle": 1, "path": 1, "gk": 1, "random": 1, "enum": 1}
    if len(args.params) < needs.get(args.family, 0):
        raise UsageError(f"family {args.family!r} needs a size parameter")
    result = make(spec)
    graphs = [result] if isinstance(result, Graph) else result
    with _open_out(args.output) as out:
        for g in graphs:
            out.write(graph6_encode(g) + "\n")
    return EXIT_OK


def cmd_enum(args) -> int:
    spec = GraphFamilySpec("enum", (args.n,), options={"cap": args.cap})
    if args.n < 1:
        raise UsageError("n must be positive")
    with _open_out(args.output) as out:
        for g in make(spec):
            out.write(graph6_encode(g) + "\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    with open(args.matching, encoding="utf-8") as fh:
        matching = read_matching(fh)
    with _open_in(args.input) as fh:
        graphs = _graphs(args, fh)
    if len(graphs) != 1:
        raise FormatError(f"expected exactly one graph, got {len(graphs)}")
    reason = acyclic_violation(graphs[0], matching)
    rec = {"graph_id": graph6_encode(graphs[0]), "size": len(matching),
           "acyclic": reason is None, "reason": reason}
    with _open_out(args.output) as out:
        out.write(_dump(rec, args.pretty) + "\n")
    return EXIT_OK if reason is None else EXIT_MALFORMED


COMMANDS = {"solve": cmd_solve, "exact": cmd_exact, "check": cmd_check,
            "gen": cmd_gen, "enum": cmd_enum, "validate": cmd_validate}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"acyclicmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"acyclicmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, UnicodeDecodeError) as exc:
        print(f"acyclicmatch: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except FileNotFoundError as exc:
        print(f"acyclicmatch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoundnessError as exc:
        print(f"acyclicmatch: soundness violation: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except ValueError as exc:
        print(f"acyclicmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
