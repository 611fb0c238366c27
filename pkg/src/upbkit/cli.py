"""Command-line front end.

Every subcommand reads one matrix (a file path, ``-`` for stdin, or
``--catalog NAME``), recomputes what it reports and writes text either to
stdout or to ``--out``. Columns and rows are printed 1-based.

Exit codes: 0 success, 1 ``verify`` found an extension (or the oracle
disagreed), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import catalog
from .errors import BudgetExceeded, TooLarge, UpbError
from .extension import (DEFAULT_BUDGET, ExtensionWitness, find_extension, naive_extension_oracle,
                        serialize_witness)
from .graphs import build_graph, column_subgraph, is_complete_single_pair, iso_classes, ortho_graph_dot
from .locc import PairAudit, audit_all_pairs
from .orbits import column_signature, orbits
from .uom import ColumnStats, Uom, column_stats, pair_bound_holds, parse_uom, serialize_uom

BUDGET_ENV = "UPB_SEARCH_BUDGET"


class UsageError(Exception):
    pass


def _fmt_set(cols) -> str:
    return "{" + ",".join(str(c + 1) for c in cols) + "}"


def _fmt_partition(parts) -> str:
    return " ".join(_fmt_set(p) for p in parts)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# --------------------------------------------------------------------------
# Report bundle
# --------------------------------------------------------------------------

@dataclass
class ReportBundle:
    source: str
    uom: Uom
    is_upb: bool
    stats: list[ColumnStats]
    sum_p: int
    bound: int
    complete: bool
    iso: tuple | None
    orbit_parts: tuple
    audit: PairAudit | None
    witness: ExtensionWitness | None
    oracle: str | None = None
    notes: list[str] = field(default_factory=list)

    def text(self) -> str:
        u = self.uom
        out = [f"source: {self.source}", f"matrix: {u.rows}x{u.cols}"]
        out += ["  " + line for line in serialize_uom(u).splitlines()]
        out.append(f"validated: {_yes(u.validated)}")
        out.append(f"is_upb: {_yes(self.is_upb)}")
        for j, st in enumerate(self.stats):
            pairs = ",".join(f"({a},{b})" for a, b in st.pairs)
            out.append(f"column {j + 1}: sigma={st.sigma} p={st.p} pairs=[{pairs}]")
        out.append(f"sum_p: {self.sum_p} bound: {self.bound} holds: {_yes(self.sum_p >= self.bound)}"
                   f" equality: {_yes(self.sum_p == self.bound)}")
        out.append(f"complete_single_pair: {_yes(self.complete)}")
        out.append("iso_classes: " + ("too-large" if self.iso is None else _fmt_partition(self.iso)))
        out.append("orbits: " + _fmt_partition(self.orbit_parts))
        if self.audit is not None:
            a = self.audit
            out.append(f"bipartitions k={a.k}: {a.indistinguishable}/{len(a.reports)} indistinguishable")
            out += ["  " + r.line() for r in a.reports]
        out.append("witness: " + ("none" if self.witness is None else str(self.witness)))
        if self.oracle is not None:
            out.append(f"oracle: {self.oracle}")
        out += [f"note: {n}" for n in self.notes]
        return "\n".join(out) + "\n"

    def records(self) -> str:
        u = self.uom
        out = [f"matrix source={self.source} rows={u.rows} cols={u.cols}"]
        out += [f"row index={i + 1} entries={','.join(v.token for v in row)}"
                for i, row in enumerate(u.entries)]
        out.append(f"validated value={_yes(u.validated)}")
        out.append(f"is_upb value={_yes(self.is_upb)}")
        for j, st in enumerate(self.stats):
            pairs = ";".join(f"{a}:{b}" for a, b in st.pairs)
            out.append(f"column index={j + 1} sigma={st.sigma} p={st.p} pairs={pairs}")
        out.append(f"bound sum_p={self.sum_p} rhs={self.bound} holds={_yes(self.sum_p >= self.bound)}")
        out.append(f"complete_single_pair value={_yes(self.complete)}")
        if self.iso is None:
            out.append("iso_classes status=too-large")
        else:
            out += [f"iso_class columns={','.join(str(c + 1) for c in p)}" for p in self.iso]
        out += [f"orbit columns={','.join(str(c + 1) for c in p)}" for p in self.orbit_parts]
        if self.audit is not None:
            out += [_report_record(r) for r in self.audit.reports]
        out.append("witness value=" + ("none" if self.witness is None else
                                        serialize_witness(self.witness).replace(" ", ",")))
        if self.oracle is not None:
            out.append(f"oracle value={self.oracle}")
        return "\n".join(out) + "\n"


def _report_record(r) -> str:
    side = lambda split: "irreducible" if split is None else "reducible"
    return (f"bipartition subset={','.join(str(c + 1) for c in r.s)} "
            f"side1={side(r.reducible_on_s)} side2={side(r.reducible_on_complement)} verdict={r.verdict}")


def build_bundle(u: Uom, source: str, *, oracle: bool = False) -> ReportBundle:
    stats = [column_stats(u, j) for j in range(u.cols)]
    bound = pair_bound_holds(u)
    witness = find_extension(u)
    try:
        iso = iso_classes(u)
    except TooLarge:
        iso = None
    audit = None
    if u.cols >= 2:
        audit = audit_all_pairs(u, min(2, u.cols - 1))
    bundle = ReportBundle(
        source, u, witness is None, stats, bound.lhs, bound.rhs,
        is_complete_single_pair(u), iso, orbits(u), audit, witness,
    )
    if audit is not None and audit.note:
        bundle.notes.append(audit.note)
    if oracle:
        budget = int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
        try:
            naive = naive_extension_oracle(u, budget)
        except BudgetExceeded:
            bundle.oracle = "budget-exceeded"
        else:
            bundle.oracle = "agree" if naive == witness else "disagree"
    return bundle


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _load(args) -> tuple[Uom, str]:
    if args.catalog is not None:
        if args.input is not None:
            raise UsageError("give either an input file or --catalog, not both")
        return catalog.builtin(args.catalog).uom, args.catalog
    if args.input is None:
        raise UsageError("an input file or --catalog is required")
    if args.input == "-":
        return parse_uom(sys.stdin.read()), "<stdin>"
    with open(args.input, encoding="utf-8") as fh:
        return parse_uom(fh.read()), args.input


def cmd_verify(args) -> tuple[int, str]:
    u, source = _load(args)
    bundle = build_bundle(u, source, oracle=args.oracle)
    text = bundle.records() if args.format == "records" else bundle.text()
    code = 0 if bundle.is_upb and bundle.oracle in (None, "agree", "budget-exceeded") else 1
    return code, text


def cmd_stats(args) -> tuple[int, str]:
    u, _ = _load(args)
    bound = pair_bound_holds(u)
    out = []
    for j in range(u.cols):
        st = column_stats(u, j)
        if args.format == "records":
            pairs = ";".join(f"{a}:{b}" for a, b in st.pairs)
            out.append(f"column index={j + 1} sigma={st.sigma} p={st.p} pairs={pairs}")
        else:
            pairs = ",".join(f"({a},{b})" for a, b in st.pairs)
            out.append(f"column {j + 1}: sigma={st.sigma} p={st.p} pairs=[{pairs}]")
    if args.format == "records":
        out.append(f"bound sum_p={bound.lhs} rhs={bound.rhs} holds={_yes(bound.holds)}")
    else:
        out.append(f"sum_p: {bound.lhs} bound: {bound.rhs} holds: {_yes(bound.holds)}")
    return 0, "\n".join(out) + "\n"


def cmd_graph(args) -> tuple[int, str]:
    u, _ = _load(args)
    g = build_graph(u)
    if args.column is not None:
        j = args.column - 1
        if not 0 <= j < u.cols:
            raise UsageError(f"--column must lie in 1..{u.cols}")
        column_subgraph(g, j, u.cols)
        return 0, ortho_graph_dot(g, name=f"column{args.column}", columns=[j])
    return 0, ortho_graph_dot(g)


def cmd_distinguish(args) -> tuple[int, str]:
    u, _ = _load(args)
    try:
        audit = audit_all_pairs(u, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "records":
        out = [_report_record(r) for r in audit.reports]
        out.append(f"summary k={audit.k} subsets={len(audit.reports)} "
                   f"indistinguishable={audit.indistinguishable}")
    else:
        out = [r.line() for r in audit.reports]
        out.append(f"indistinguishable: {audit.indistinguishable}/{len(audit.reports)}")
    if audit.note:
        out.append(f"note: {audit.note}" if args.format == "text" else f"note text={audit.note!r}")
    return 0, "\n".join(out) + "\n"


def cmd_orbits(args) -> tuple[int, str]:
    u, _ = _load(args)
    out = []
    for part in orbits(u):
        sig = column_signature(u, part[0])
        if args.format == "records":
            out.append(f"orbit columns={','.join(str(c + 1) for c in part)} signature={sig}")
        else:
            out.append(f"{_fmt_set(part)} {sig}")
    return 0, "".join(line + "\n" for line in out)


def cmd_classes(args) -> tuple[int, str]:
    u, _ = _load(args)
    parts = iso_classes(u)
    if args.format == "records":
        return 0, "".join(f"iso_class columns={','.join(str(c + 1) for c in p)}\n" for p in parts)
    return 0, "".join(_fmt_set(p) + "\n" for p in parts)


def cmd_catalog(args) -> tuple[int, str]:
    if args.action == "list":
        return 0, "".join(n + "\n" for n in catalog.names())
    if args.name is None:
        raise UsageError("catalog show needs a name")
    entry = catalog.builtin(args.name)
    header = f"# {entry.name}: {entry.provenance}\n"
    return 0, header + serialize_uom(entry.uom)


def cmd_generate(args) -> tuple[int, str]:
    return 0, serialize_uom(catalog.gen_odd_q(args.odd_q))


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="NAME", help="use a built-in matrix")
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    def with_input(p):
        p.add_argument("input", nargs="?", help="matrix file in UOM text format, or - for stdin")
        return p

    parser = argparse.ArgumentParser(prog="upbkit", description="Unextendible product basis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = with_input(sub.add_parser("verify", parents=[common], help="full report and UPB verdict"))
    p.add_argument("--oracle", action="store_true",
                   help=f"cross-check with exhaustive enumeration (budget from {BUDGET_ENV})")
    p.set_defaults(func=cmd_verify)

    with_input(sub.add_parser("stats", parents=[common], help="per-column statistics")).set_defaults(func=cmd_stats)

    p = with_input(sub.add_parser("graph", parents=[common], help="DOT export of the orthogonality graph"))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--column", type=int, metavar="J", help="only edges of column J (1-based)")
    mode.add_argument("--full", action="store_true", help="all columns (default)")
    p.add_argument("--dot", metavar="PATH", help="alias for --out")
    p.set_defaults(func=cmd_graph)

    p = with_input(sub.add_parser("distinguish", parents=[common], help="bipartition reducibility audit"))
    p.add_argument("--k", type=int, default=2, help="columns on the first side (default 2)")
    p.set_defaults(func=cmd_distinguish)

    with_input(sub.add_parser("orbits", parents=[common], help="LU orbits of columns")).set_defaults(func=cmd_orbits)
    with_input(sub.add_parser("classes", parents=[common], help="isomorphism classes of column graphs")
               ).set_defaults(func=cmd_classes)

    p = sub.add_parser("catalog", parents=[common], help="list or show built-in matrices")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("generate", parents=[common], help="write the (q+1) x q circulant matrix")
    p.add_argument("--odd-q", type=int, required=True, metavar="Q")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out_path = args.out or getattr(args, "dot", None)
    try:
        code, text = args.func(args)
    except (UpbError, UsageError, OSError) as exc:
        print(f"upbkit: error: {exc}", file=sys.stderr)
        return 2
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
