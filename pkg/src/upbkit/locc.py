"""Local reducibility of a UOM across a bipartition of its qubits.

Split the columns into a side ``S`` and its complement. The row set can be
split into non-empty parts P, Q that are mutually orthogonal on ``S`` iff
the graph joining rows *not* separated by any column of ``S`` is
disconnected: rows joined there must land on the same side. When neither
side admits such a split the set is irreducible on both sides and hence
locally indistinguishable across the cut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .graphs import SimpleGraph
from .uom import Uom, require_validated

DISTINGUISHABLE_HINT = "distinguishable-hint"
INDISTINGUISHABLE = "indistinguishable"

Split = tuple[tuple[int, ...], tuple[int, ...]]


def _side_mask(u: Uom, s: Iterable[int]) -> int:
    mask = 0
    for j in s:
        if not 0 <= j < u.cols:
            raise ValueError(f"column {j} out of range for {u.cols} columns")
        mask |= 1 << j
    return mask


def nonortho_graph(u: Uom, s: Iterable[int]) -> SimpleGraph:
    """Rows i, k adjacent iff no column of ``s`` separates them."""
    require_validated(u, "nonortho_graph")
    side = _side_mask(u, s)
    edges = frozenset(
        (i, k) for i, k in itertools.combinations(range(u.rows), 2)
        if not u.orth_mask(i, k) & side
    )
    return SimpleGraph(u.rows, edges)


def _components(g: SimpleGraph) -> list[list[int]]:
    adj = g.adjacency()
    seen = 0
    comps = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp, frontier = 0, 1 << start
        while frontier:
            comp |= frontier
            nxt = 0
            for v in range(g.n):
                if frontier >> v & 1:
                    nxt |= adj[v]
            frontier = nxt & ~comp
        seen |= comp
        comps.append([v for v in range(g.n) if comp >> v & 1])
    return comps


def reducible_on(u: Uom, s: Iterable[int]) -> Split | None:
    """A split (P, Q) orthogonal on ``s``, or None if none exists.

    P is the component of row 0 in :func:`nonortho_graph`; Q is the rest.
    """
    comps = _components(nonortho_graph(u, s))
    if len(comps) < 2:
        return None
    p = tuple(comps[0])
    q = tuple(v for v in range(u.rows) if v not in p)
    return p, q


@dataclass(frozen=True)
class BipartitionReport:
    s: tuple[int, ...]
    reducible_on_s: Split | None
    reducible_on_complement: Split | None

    @property
    def verdict(self) -> str:
        if self.reducible_on_s is None and self.reducible_on_complement is None:
            return INDISTINGUISHABLE
        return DISTINGUISHABLE_HINT

    def line(self) -> str:
        """One-line text rendering with 1-based columns."""
        side = lambda split: "irreducible" if split is None else "reducible"
        cols = ",".join(str(j + 1) for j in self.s)
        return (
            f"S={{{cols}}} | side1={side(self.reducible_on_s)} | "
            f"side2={side(self.reducible_on_complement)} | verdict={self.verdict}"
        )


def bipartition_report(u: Uom, s: Iterable[int]) -> BipartitionReport:
    s = tuple(sorted(set(s)))
    complement = tuple(j for j in range(u.cols) if j not in s)
    return BipartitionReport(s, reducible_on(u, s), reducible_on(u, complement))


@dataclass(frozen=True)
class PairAudit:
    k: int
    reports: tuple[BipartitionReport, ...]
    note: str = ""

    @property
    def indistinguishable(self) -> int:
        return sum(r.verdict == INDISTINGUISHABLE for r in self.reports)

    @property
    def distinguishable_hint(self) -> int:
        return len(self.reports) - self.indistinguishable


def audit_all_pairs(u: Uom, k: int) -> PairAudit:
    """One report per k-subset of columns, in lexicographic order."""
    if not 1 <= k < u.cols:
        raise ValueError(f"side size must satisfy 1 <= k < {u.cols}, got {k}")
    reports = tuple(bipartition_report(u, s) for s in itertools.combinations(range(u.cols), k))
    note = ""
    if k == 1 or k == u.cols - 1:
        note = (
            "one side is a single qubit: orthogonal product sets on 2 x N are always "
            "LOCC distinguishable, so verdicts here only describe first-round reducibility"
        )
    return PairAudit(k, reports, note)
