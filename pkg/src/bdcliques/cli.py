"""Command-line interface.

Exit status is 0 when every check passes, 1 when a check fails (a
counterexample is printed), and 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Sequence, TextIO

from . import __version__, graph6
from .clusters import FoldRefused, Q, clusters, excluded_red_predicate, fold
from .colex import (
    asymptotic_upper_bound,
    colex_graph,
    decompose,
    g_t,
    rainbow_colex_graph,
)
from .graph import Graph, count_cliques
from .multiset import InfeasibleError, ceil_half, mk_oracle
from .report import VerificationReport, parse_jsonl, render_table, summarize
from .search import DEFAULT_BUDGET, BudgetExceeded, SearchSpec, compute_f
from .suites import SUITES, run_suite

OUTPUT_SCHEMA = "bdcliques.cli/1"

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@contextmanager
def _open_out(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def ingest_corpus(path: str) -> tuple[list[Graph], list[graph6.Diagnostic]]:
    """Parse a file of graph6 lines (``-`` is stdin); bad lines become diagnostics."""
    if path == "-":
        return graph6.parse_lines(sys.stdin)
    return graph6.read_file(path)


def _input_graphs(args: argparse.Namespace) -> list[Graph]:
    if args.graph is not None:
        try:
            return [graph6.decode(args.graph)]
        except graph6.Graph6Error as exc:
            raise UsageError(f"--graph: {exc}") from exc
    graphs, diags = ingest_corpus(args.input)
    for d in diags:
        print(f"{args.input}:{d.line}: {d.message}", file=sys.stderr)
    return graphs


def _emit(args: argparse.Namespace, record: dict[str, Any], table: str) -> None:
    with _open_out(getattr(args, "output", None)) as out:
        if args.format == "jsonl":
            out.write(json.dumps({"schema": OUTPUT_SCHEMA, **record}, sort_keys=True) + "\n")
        else:
            out.write(table + "\n")


def default_k(r: int) -> int:
    """Red-edge deficit guaranteed by the excluded-configuration results at this ``r``."""
    return 5 if r == 8 else ceil_half(r)


# --- subcommands ----------------------------------------------------------------

def cmd_colex(args: argparse.Namespace) -> int:
    if args.omega is not None:
        if args.m is None:
            raise UsageError("colex --omega needs --m")
        g = rainbow_colex_graph(args.omega, args.m)
        label = f"R_{args.omega}({args.m})"
    else:
        if args.b is None:
            raise UsageError("colex needs --b, or --omega with --m")
        g = colex_graph(args.b)
        label = f"C({args.b})"
    code = graph6.encode(g)
    k = count_cliques(g, args.t)
    _emit(args, {"command": "colex", "graph": label, "graph6": code, "t": args.t, "k_t": k,
                 "n": g.n, "m": g.num_edges},
          f"{label}: n={g.n} m={g.num_edges}\ngraph6: {code}\nk_{args.t} = {k}")
    return OK


def cmd_decompose(args: argparse.Namespace) -> int:
    dec = decompose(args.m, args.r)
    rec = {"command": "decompose", "m": dec.m, "r": dec.r, "a": dec.a, "b": dec.b, "c": dec.c, "d": dec.d}
    _emit(args, rec, f"m = {dec.m} = {dec.a}*C({dec.r + 1},2) + {dec.b},  b = C({dec.c},2) + {dec.d}"
                     f"\na={dec.a} b={dec.b} c={dec.c} d={dec.d}")
    return OK


def cmd_bound(args: argparse.Namespace) -> int:
    m, r, t = args.m, args.r, args.t
    k = default_k(r) if args.k is None else args.k
    g = g_t(m, r, t)
    rec: dict[str, Any] = {"command": "bound", "m": m, "r": r, "t": t, "k": k, "g_t": g}
    lines = [f"g_{t}({m},{r}) = {g}"]
    if 3 <= t <= r + 1:
        ab = asymptotic_upper_bound(m, r, t)
        rec["asymptotic"] = str(ab)
        lines.append(f"m*C({r + 1},{t})/C({r + 1},2) = {ab}")
    res = mk_oracle(m, r, k)
    rec["mk3"] = res.value3
    rec["mk_witness"] = str(res.witness)
    lines.append(f"3M_{k}({m},{r}) = {res.value3}  witness {res.witness}")
    try:
        star = mk_oracle(m, r, k, require_r=True)
    except InfeasibleError:
        lines.append(f"3M*_{k}({m},{r}) infeasible (2m < r)")
    else:
        rec["mstar3"] = star.value3
        rec["mstar_witness"] = str(star.witness)
        lines.append(f"3M*_{k}({m},{r}) = {star.value3}  witness {star.witness}")
    _emit(args, rec, "\n".join(lines))
    return OK


def cmd_clusters(args: argparse.Namespace) -> int:
    records, blocks = [], []
    for gi, g in enumerate(_input_graphs(args)):
        found = clusters(g, args.r)
        rows = []
        for ci, cl in enumerate(found):
            q = Q(cl.red, args.r)
            verdict = excluded_red_predicate(cl, args.r)
            records.append({"command": "clusters", "graph": gi, "cluster": ci, "T": list(cl.T),
                            "S": list(cl.S), "red": [[cl.S[u], cl.S[v]] for u, v in cl.red.edges()],
                            "blue": [list(e) for e in cl.blue], "Q": q,
                            "verdict": list(verdict.citations)})
            rows.append([ci, _set(cl.T), _set(cl.S), cl.red_edges, cl.blue_edges, q, str(verdict)])
        head = f"graph {gi}: n={g.n} m={g.num_edges} r={args.r}, {len(found)} clusters"
        if rows:
            head += "\n" + render_table(rows, ["#", "T", "S", "e(R)", "e(B)", "Q(R)", "excluded by"])
        blocks.append(head)
    with _open_out(args.output) as out:
        if args.format == "jsonl":
            for rec in records:
                out.write(json.dumps({"schema": OUTPUT_SCHEMA, **rec}, sort_keys=True) + "\n")
        else:
            out.write("\n\n".join(blocks) + ("\n" if blocks else ""))
    return OK


def _set(vs: Sequence[int]) -> str:
    return "{" + ",".join(map(str, vs)) + "}"


def cmd_fold(args: argparse.Namespace) -> int:
    records, lines = [], []
    for gi, g in enumerate(_input_graphs(args)):
        found = [cl for cl in clusters(g, args.r) if cl.red_edges > 0 or args.cluster is not None]
        if args.cluster is not None:
            if not 0 <= args.cluster < len(found):
                raise UsageError(f"graph {gi} has {len(found)} clusters; no index {args.cluster}")
            cl = found[args.cluster]
        else:
            # default: the first cluster with missing edges that can be folded
            foldable = [c for c in found if c.blue_edges >= c.red_edges]
            if not foldable:
                raise FoldRefused(f"graph {gi}: no cluster with red edges and e(B) >= e(R)")
            cl = foldable[0]
        h = fold(g, cl)
        before, after = count_cliques(g, 3), count_cliques(h, 3)
        code = graph6.encode(h)
        records.append({"command": "fold", "graph": gi, "T": list(cl.T), "k3_before": before,
                        "k3_after": after, "gain": after - before, "Q": Q(cl.red, args.r),
                        "edges_before": g.num_edges, "edges_after": h.num_edges, "graph6": code})
        lines.append(f"graph {gi}: fold T={_set(cl.T)}  k_3 {before} -> {after} (gain {after - before}, "
                     f"Q(R) = {Q(cl.red, args.r)}), edges {g.num_edges} -> {h.num_edges}\n{code}")
    with _open_out(args.output) as out:
        if args.format == "jsonl":
            for rec in records:
                out.write(json.dumps({"schema": OUTPUT_SCHEMA, **rec}, sort_keys=True) + "\n")
        else:
            out.write("\n".join(lines) + ("\n" if lines else ""))
    return OK


def cmd_search(args: argparse.Namespace) -> int:
    spec = SearchSpec(args.m, args.r, args.t, connected_only=args.connected,
                      clique_number_cap=args.omega, vertex_cap=args.vertex_cap)
    budget = None if args.budget == 0 else args.budget
    try:
        res = compute_f(spec, budget=budget, workers=args.workers, checkpoint=args.checkpoint)
    except BudgetExceeded as exc:
        p = exc.partial
        print(f"budget exceeded after {p.graphs_visited} classes "
              f"({len(exc.completed)}/{exc.total} subtrees done, partial max {p.f_value}); "
              "rerun with --checkpoint to resume", file=sys.stderr)
        return FAILED
    rec = {"command": "search", "m": spec.m, "r": spec.r, "t": spec.t, "f": res.f_value,
           "g": res.g_value, "matches": res.matches_conjecture, "visited": res.graphs_visited,
           "extremal": list(res.extremal_graphs), "spec": spec.digest()}
    table = (f"f_{spec.t}({spec.m},{spec.r}) = {res.f_value}   g_{spec.t} = {res.g_value}   "
             f"{'match' if res.matches_conjecture else 'MISMATCH'}\n"
             f"classes visited: {res.graphs_visited}\nextremal graphs ({len(res.extremal_graphs)}):\n"
             + "\n".join(res.extremal_graphs))
    _emit(args, rec, table)
    if not res.matches_conjecture:
        print(f"counterexample: {res.extremal_graphs[0] if res.extremal_graphs else '-'}", file=sys.stderr)
        return FAILED
    return OK


def _render_report(rep: VerificationReport) -> str:
    lines = list(summarize(rep))
    if rep.suite == "r8-table":
        rows = [[c.id.split("=")[1], c.values["x"], c.values["mstar3"], c.values["g3"],
                 "ok" if c.passed else "differs: " + "/".join(map(str, c.values["tabulated"]))]
                for c in rep.group("row ")]
        lines.append(render_table(rows, ["m", "x", "3M*", "3g3", "tabulated"]))
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    rep = run_suite(args.suite, seed=args.seed, count=args.count)
    with _open_out(args.output) as out:
        out.write(rep.to_jsonl(timing=args.timing) if args.format == "jsonl" else _render_report(rep) + "\n")
    return OK if rep.passed else FAILED


def cmd_report(args: argparse.Namespace) -> int:
    reports: list[VerificationReport] = []
    for path in args.files:
        try:
            if path == "-":
                reports += parse_jsonl(sys.stdin)
            else:
                reports += parse_jsonl(Path(path).read_text(encoding="utf-8").splitlines())
        except (ValueError, KeyError) as exc:
            raise UsageError(f"{path}: not a report stream ({exc})") from exc
    with _open_out(args.output) as out:
        if args.format == "jsonl":
            out.write("".join(r.to_jsonl(timing=True) for r in reports))
        else:
            rows = [[r.suite, "PASS" if r.passed else "FAIL", len(r.cases), len(r.failures)]
                    for r in reports]
            out.write(render_table(rows, ["suite", "status", "cases", "failures"]) + "\n")
            for r in reports:
                for line in list(summarize(r))[1:]:
                    out.write(f"{r.suite}: {line.strip()}\n")
    return OK if all(r.passed for r in reports) else FAILED


# --- parser ---------------------------------------------------------------------

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "jsonl"), default="table",
                        help="human-readable table or line-delimited JSON records")
    common.add_argument("-o", "--output", help="write to this path instead of stdout ('-' for stdout)")

    graph_in = argparse.ArgumentParser(add_help=False)
    src = graph_in.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="a graph6 string")
    src.add_argument("--input", help="file of graph6 lines, '-' for stdin")
    graph_in.add_argument("--r", type=_pos, required=True, help="degree cap")

    p = argparse.ArgumentParser(prog="bdcliques",
                                description="Clique counts in graphs with bounded maximum degree.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("colex", parents=[common], help="build C(b) or R_omega(m)")
    s.add_argument("--b", type=_nonneg)
    s.add_argument("--omega", type=int)
    s.add_argument("--m", type=_nonneg)
    s.add_argument("--t", type=_pos, default=3)
    s.set_defaults(fn=cmd_colex)

    s = sub.add_parser("decompose", parents=[common], help="m = a*C(r+1,2) + C(c,2) + d")
    s.add_argument("--m", type=_nonneg, required=True)
    s.add_argument("--r", type=_pos, required=True)
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("bound", parents=[common], help="g_t, asymptotic bound, multiset bounds")
    s.add_argument("--m", type=_nonneg, required=True)
    s.add_argument("--r", type=_pos, required=True)
    s.add_argument("--t", type=int, default=3)
    s.add_argument("--k", type=_nonneg, help="red-edge deficit (default 5 at r=8, else ceil(r/2))")
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("clusters", parents=[common, graph_in], help="clusters, Q(R) and verdicts")
    s.set_defaults(fn=cmd_clusters)

    s = sub.add_parser("fold", parents=[common, graph_in], help="fold a cluster and compare k_3")
    s.add_argument("--cluster", type=_nonneg, help="cluster index as listed by the clusters subcommand")
    s.set_defaults(fn=cmd_fold)

    s = sub.add_parser("search", parents=[common], help="exhaustive f_t(m, r)")
    s.add_argument("--m", type=_nonneg, required=True)
    s.add_argument("--r", type=_pos, required=True)
    s.add_argument("--t", type=int, default=3)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--omega", type=_pos, help="clique number cap")
    s.add_argument("--vertex-cap", type=_pos)
    s.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET,
                   help="max classes visited, 0 for unlimited (env BDCLIQUES_BUDGET)")
    s.add_argument("--workers", type=_pos, default=1)
    s.add_argument("--checkpoint", help="JSON-lines progress file; reused on rerun")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", choices=list(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=_pos, help="instances for the randomised suites")
    s.add_argument("--timing", action="store_true", help="include runtime in JSON output")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="aggregate JSON-lines reports")
    s.add_argument("files", nargs="+", help="report files, '-' for stdin")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError, OSError) as exc:
        # domain errors (fold refused, infeasible bound, bad graph6) included
        print(f"bdcliques {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
