"""Deciding unextendibility of a symbolic product-state matrix.

For qubit entries a product state can be orthogonal, in a given column, only
to the rows carrying one particular variable (it must be that variable's
partner); otherwise it is orthogonal to no row of that column. A candidate
extension is therefore a choice, per column, of either nothing (``None``,
written ``_``) or one *target* variable whose rows it kills. The matrix is
unextendible iff no choice kills every row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, ShapeMismatch
from .uom import Uom, VectorVar, column_stats, entry_counts

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ExtensionWitness:
    """Per-column targets of a product row orthogonal to the killed rows.

    ``choices[j]`` is the variable whose rows are killed in column ``j`` (the
    witness state there is its partner), or ``None`` for a generic state.
    """

    choices: tuple[VectorVar | None, ...]
    coverage: frozenset[int]

    def states(self) -> tuple[VectorVar | None, ...]:
        """Local states of the witness row; ``None`` is a generic state."""
        return tuple(None if t is None else t.partner() for t in self.choices)

    def is_valid(self, u: Uom) -> bool:
        return self.coverage == frozenset(range(u.rows))

    def __str__(self) -> str:
        return serialize_witness(self)


def witness_from_choices(u: Uom, choices: Sequence[VectorVar | None]) -> ExtensionWitness:
    choices = tuple(choices)
    if len(choices) != u.cols:
        raise ShapeMismatch(f"{len(choices)} choices for {u.cols} columns")
    covered = frozenset(
        i
        for i, row in enumerate(u.entries)
        if any(t is not None and row[j] == t for j, t in enumerate(choices))
    )
    return ExtensionWitness(choices, covered)


def serialize_witness(w: ExtensionWitness) -> str:
    return " ".join("_" if s is None else s.token for s in w.states())


def parse_witness(u: Uom, text: str) -> ExtensionWitness:
    """Inverse of :func:`serialize_witness` against the matrix ``u``."""
    from .uom import _parse_entry

    tokens = text.split()
    choices = [
        None if tok == "_" else _parse_entry(tok, j, 0).partner()
        for j, tok in enumerate(tokens)
    ]
    return witness_from_choices(u, choices)


def _column_options(u: Uom) -> list[list[tuple[VectorVar, int]]]:
    options = []
    for j in range(u.cols):
        masks: dict[VectorVar, int] = {}
        for i, row in enumerate(u.entries):
            masks[row[j]] = masks.get(row[j], 0) | (1 << i)
        options.append(sorted(masks.items()))
    return options


def find_extension(u: Uom) -> ExtensionWitness | None:
    """Return the lexicographically least extension witness, or None.

    Choices are ordered per column with ``None`` first, then targets in
    :class:`VectorVar` order, and compared column by column. Failed
    ``(column, covered rows)`` states are memoised, so the search visits at
    most ``n * 2**m`` states and in practice far fewer.
    """
    m, n = u.rows, u.cols
    full = (1 << m) - 1
    options = _column_options(u)
    best_gain = [max((mask.bit_count() for _, mask in opts), default=0) for opts in options]
    dead: set[tuple[int, int]] = set()
    picked: list[VectorVar | None] = []

    def bound_ok(j: int, covered: int) -> bool:
        missing = (full & ~covered).bit_count()
        reach = 0
        for jj in range(j, n):
            reach += best_gain[jj]
            if reach >= missing:
                return True
        return False

    def dfs(j: int, covered: int) -> bool:
        if covered == full:
            picked.extend([None] * (n - j))
            return True
        if j == n or (j, covered) in dead or not bound_ok(j, covered):
            return False
        picked.append(None)
        if dfs(j + 1, covered):
            return True
        picked.pop()
        for var, mask in options[j]:
            if mask & ~covered == 0:
                continue
            picked.append(var)
            if dfs(j + 1, covered | mask):
                return True
            picked.pop()
        dead.add((j, covered))
        return False

    if not dfs(0, 0):
        return None
    return witness_from_choices(u, picked)


def is_upb(u: Uom) -> bool:
    """True iff no product state is orthogonal to every row of ``u``."""
    return find_extension(u) is None


def naive_extension_oracle(u: Uom, budget: int = DEFAULT_BUDGET) -> ExtensionWitness | None:
    """Exhaustive enumeration of every choice tuple, without pruning.

    Tuples are visited in the same lexicographic order as
    :func:`find_extension`, so the first hit is directly comparable.
    """
    per_column = []
    for j in range(u.cols):
        values = sorted({row[j] for row in u.entries})
        per_column.append([None] + values)
    total = 1
    for opts in per_column:
        total *= len(opts)
    if total > budget:
        raise BudgetExceeded(f"{total} choice tuples exceed the budget of {budget}")

    full = (1 << u.rows) - 1
    masks = []
    for j, opts in enumerate(per_column):
        col_masks = []
        for t in opts:
            bits = 0
            if t is not None:
                for i, row in enumerate(u.entries):
                    if row[j] == t:
                        bits |= 1 << i
            col_masks.append(bits)
        masks.append(col_masks)

    if u.cols == 0:
        return witness_from_choices(u, ()) if full == 0 else None
    head, last = masks[:-1], masks[-1]
    for idx in itertools.product(*(range(len(c)) for c in head)):
        acc = 0
        for j, k in enumerate(idx):
            acc |= head[j][k]
        for k, bits in enumerate(last):
            if acc | bits == full:
                choice = [per_column[j][kk] for j, kk in enumerate(idx)]
                choice.append(per_column[-1][k])
                return witness_from_choices(u, choice)
    return None


# --------------------------------------------------------------------------
# Forbidden-substructure audit for 11 x 7 matrices
# --------------------------------------------------------------------------

AUDIT_SHAPE = (11, 7)


@dataclass(frozen=True)
class PatternHit:
    kind: str
    columns: tuple[int, ...]
    variables: tuple[VectorVar, ...]
    rows: tuple[tuple[int, ...], ...]
    witness: ExtensionWitness | None = None
    informational: bool = False
    detail: str = ""


def _rows_of(u: Uom) -> list[dict[VectorVar, frozenset[int]]]:
    out = []
    for j in range(u.cols):
        d: dict[VectorVar, set[int]] = {}
        for i, row in enumerate(u.entries):
            d.setdefault(row[j], set()).add(i)
        out.append({v: frozenset(r) for v, r in sorted(d.items())})
    return out


def _pick_disjoint(sets: Sequence[frozenset[int]], demands: Sequence[int]):
    """Disjoint subsets ``A_t`` of ``sets[t]`` with ``|A_t| = demands[t]``."""
    chosen: list[tuple[int, ...]] = []

    def rec(t: int, used: frozenset[int]) -> bool:
        if t == len(sets):
            return True
        pool = sorted(sets[t] - used)
        for combo in itertools.combinations(pool, demands[t]):
            chosen.append(combo)
            if rec(t + 1, used | set(combo)):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if rec(0, frozenset()) else None


def _complete(u: Uom, fixed: dict[int, VectorVar]) -> ExtensionWitness | None:
    """Extend fixed column targets by giving each uncovered row its own column."""
    covered = {
        i for i, row in enumerate(u.entries) if any(row[j] == t for j, t in fixed.items())
    }
    left = [i for i in range(u.rows) if i not in covered]
    free = [j for j in range(u.cols) if j not in fixed]
    if len(left) > len(free):
        return None
    targets = dict(fixed)
    for i, j in zip(left, free):
        targets[j] = u.entries[i][j]
    w = witness_from_choices(u, [targets.get(j) for j in range(u.cols)])
    return w if w.is_valid(u) else None


def _demand_hits(u, rows_of, kind, size, demand_orders):
    hits = []
    for cols in itertools.combinations(range(u.cols), size):
        for demands in demand_orders:
            candidates = [
                [v for v, r in rows_of[j].items() if len(r) >= d]
                for j, d in zip(cols, demands)
            ]
            for vars_ in itertools.product(*candidates):
                picked = _pick_disjoint([rows_of[j][v] for j, v in zip(cols, vars_)], demands)
                if picked is None:
                    continue
                hits.append(
                    PatternHit(
                        kind,
                        cols,
                        tuple(vars_),
                        picked,
                        _complete(u, dict(zip(cols, vars_))),
                        detail="+".join(map(str, demands)),
                    )
                )
    return hits


def lemma3_audit(u: Uom, *, informational: bool = False) -> list[PatternHit]:
    """Locate the forbidden substructures of an 11 x 7 unextendible matrix.

    Each hit of kind ``i``, ``iii``, ``vi`` or ``vii`` carries a constructed
    extension witness; kind ``v`` does too when ``u`` is validated, since its
    construction relies on row orthogonality. With ``informational=True`` the
    column-size check (``ii``) and the orthogonality obligations (``iv``,
    validated input only) are appended as informational entries.
    """
    if u.shape != AUDIT_SHAPE:
        raise ShapeMismatch(f"audit patterns are stated for 11x7 matrices, got {u.rows}x{u.cols}")
    rows_of = _rows_of(u)
    hits: list[PatternHit] = []

    for v, count in sorted(entry_counts(u).items()):
        if count > 4:
            r = rows_of[v.column][v]
            hits.append(
                PatternHit("i", (v.column,), (v,), (tuple(sorted(r)),), _complete(u, {v.column: v}),
                           detail=f"multiplicity {count}")
            )

    hits += _demand_hits(u, rows_of, "iii", 2, [(3, 3), (4, 2), (2, 4)])
    hits += _pattern_v(u, rows_of)
    hits += _demand_hits(u, rows_of, "vi", 3, [(3, 2, 2), (2, 3, 2), (2, 2, 3)])
    hits += _demand_hits(u, rows_of, "vii", 4, [(2, 2, 2, 2)])

    if informational:
        for j in range(u.cols):
            sigma = column_stats(u, j).sigma
            if not 2 <= sigma <= 5:
                hits.append(PatternHit("ii", (j,), (), (), informational=True,
                                       detail=f"sigma={sigma} outside [2, 5]"))
        if u.validated:
            hits += _obligations_iv(u, rows_of)
    return hits


def _pattern_v(u: Uom, rows_of) -> list[PatternHit]:
    # x above every occurrence of y, plus a row holding (x', y')
    hits = []
    for j1, j2 in itertools.permutations(range(u.cols), 2):
        for x, rx in rows_of[j1].items():
            for y, ry in rows_of[j2].items():
                if not ry <= rx:
                    continue
                anchors = [
                    i for i, row in enumerate(u.entries)
                    if row[j1] == x.partner() and row[j2] == y.partner()
                ]
                if not anchors:
                    continue
                r0 = anchors[0]
                witness = None
                if u.validated:
                    targets = {j: u.entries[r0][j].partner() for j in range(u.cols)}
                    targets[j1] = x
                    targets[j2] = y.partner()
                    w = witness_from_choices(u, [targets[j] for j in range(u.cols)])
                    witness = w if w.is_valid(u) else None
                hits.append(
                    PatternHit("v", (j1, j2), (x, y),
                               (tuple(sorted(rx - ry)), tuple(sorted(ry)), (r0,)), witness,
                               detail=f"mu(x)={len(rx)} mu(y)={len(ry)}")
                )
    return hits


def _obligations_iv(u: Uom, rows_of) -> list[PatternHit]:
    notes = []
    for j1, j2 in itertools.permutations(range(u.cols), 2):
        for x, rx in rows_of[j1].items():
            for y, ry in rows_of[j2].items():
                if rx & ry:
                    continue
                outside = [l for l in range(u.rows) if l not in rx and l not in ry]
                for k in sorted(rx | ry):
                    row_k = u.entries[k]
                    met = any(
                        row_k[j1].is_orthogonal(u.entries[l][j1])
                        or row_k[j2].is_orthogonal(u.entries[l][j2])
                        for l in outside
                    )
                    if met:
                        continue
                    targets = {j: row_k[j].partner() for j in range(u.cols)}
                    targets[j1], targets[j2] = x, y
                    w = witness_from_choices(u, [targets[j] for j in range(u.cols)])
                    notes.append(
                        PatternHit("iv", (j1, j2), (x, y), (tuple(sorted(rx)), tuple(sorted(ry)), (k,)),
                                   w if w.is_valid(u) else None, informational=True,
                                   detail=f"row {k} has no orthogonal partner outside the block")
                    )
                    break
    return notes
