"""Symbolic qubit product-state matrices (UOMs) and their column statistics.

A matrix entry is a :class:`VectorVar`: a qubit state drawn from the
orthonormal basis ``{x, x'}`` of one *family*. Families are scoped to a
column, so the token ``a`` in column 0 and the token ``a`` in column 3 are
unrelated bases. Two entries are orthogonal exactly when they sit in the
same column, share a family and differ in the prime flag; distinct families
are generic (never equal, never orthogonal).

The text format is one row per line, whitespace-separated entries, ``#``
comment lines. ``0`` and ``1`` are shorthand for the family ``std`` of the
computational basis (``1`` is the prime of ``0``).
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DomainError,
    FamilyLeak,
    IndexOutOfRange,
    MalformedEntry,
    NotOrthogonal,
    ValidationRequired,
)

STD = "std"
_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(')?")


@dataclass(frozen=True, order=True)
class VectorVar:
    column: int
    family: str
    primed: bool = False

    def partner(self) -> VectorVar:
        """The unique state of the same family orthogonal to this one."""
        return VectorVar(self.column, self.family, not self.primed)

    def is_orthogonal(self, other: VectorVar) -> bool:
        return (
            self.column == other.column
            and self.family == other.family
            and self.primed != other.primed
        )

    @property
    def token(self) -> str:
        if self.family == STD:
            return "1" if self.primed else "0"
        return self.family + ("'" if self.primed else "")

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class Uom:
    """An m x n grid of vector variables.

    ``validated`` records whether row-pair orthogonality was checked at
    construction; it does not take part in equality.
    """

    entries: tuple[tuple[VectorVar, ...], ...]
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        width = len(self.entries[0]) if self.entries else 0
        for i, row in enumerate(self.entries):
            if not row:
                raise MalformedEntry(f"row {i} is empty")
            if len(row) != width:
                raise MalformedEntry(
                    f"row {i} has {len(row)} entries, expected {width}"
                )
            for j, v in enumerate(row):
                if not isinstance(v, VectorVar):
                    raise MalformedEntry(f"entry ({i}, {j}) is not a VectorVar: {v!r}")
                if v.column != j:
                    raise FamilyLeak(
                        f"entry ({i}, {j}) belongs to column {v.column}"
                    )

    @classmethod
    def from_grid(
        cls, grid: Iterable[Iterable[VectorVar]], *, validate: bool = True
    ) -> Uom:
        entries = tuple(tuple(row) for row in grid)
        u = cls(entries)
        if validate:
            pair = u.first_non_orthogonal_pair()
            if pair is not None:
                i, k = pair
                raise NotOrthogonal(
                    f"rows {i} and {k} have no orthogonal column", rows=pair
                )
            object.__setattr__(u, "validated", True)
        return u

    @classmethod
    def from_tokens(
        cls, rows: Sequence[Sequence[str]], *, validate: bool = True
    ) -> Uom:
        """Build from per-column token strings such as ``[["a", "b'"], ...]``."""
        return cls.from_grid(
            ([_parse_entry(tok, j, i) for j, tok in enumerate(row)] for i, row in enumerate(rows)),
            validate=validate,
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> tuple[VectorVar, ...]:
        _check_column(self, j)
        return tuple(row[j] for row in self.entries)

    @cached_property
    def _orth_masks(self) -> tuple[int, ...]:
        # bit j of _orth_masks[i * m + k] is set when column j separates rows i, k
        m, n = self.rows, self.cols
        masks = [0] * (m * m)
        for i, k in itertools.combinations(range(m), 2):
            bits = 0
            for j in range(n):
                if self.entries[i][j].is_orthogonal(self.entries[k][j]):
                    bits |= 1 << j
            masks[i * m + k] = masks[k * m + i] = bits
        return tuple(masks)

    def orth_mask(self, i: int, k: int) -> int:
        """Bitmask of the columns that separate rows ``i`` and ``k``."""
        return self._orth_masks[i * self.rows + k]

    def first_non_orthogonal_pair(self) -> tuple[int, int] | None:
        # rows holding each variable, as bitmasks; then row i is orthogonal to
        # the union of the masks of its entries' partners
        holders: dict[VectorVar, int] = {}
        for i, row in enumerate(self.entries):
            for v in row:
                holders[v] = holders.get(v, 0) | 1 << i
        everyone = (1 << self.rows) - 1
        for i, row in enumerate(self.entries):
            reach = 0
            for v in row:
                reach |= holders.get(v.partner(), 0)
            missing = everyone & ~reach & ~((1 << (i + 1)) - 1)
            if missing:
                return i, (missing & -missing).bit_length() - 1
        return None

    def with_rows(self, keep: Iterable[int], *, validate: bool = True) -> Uom:
        return Uom.from_grid((self.entries[i] for i in keep), validate=validate)

    def __str__(self) -> str:
        return serialize_uom(self)


def require_validated(u: Uom, what: str = "this analysis") -> None:
    if not u.validated:
        raise ValidationRequired(f"{what} needs a matrix validated as orthogonal")


def _check_row(u: Uom, i: int) -> None:
    if not 0 <= i < u.rows:
        raise IndexOutOfRange(f"row {i} out of range for {u.rows} rows")


def _check_column(u: Uom, j: int) -> None:
    if not 0 <= j < u.cols:
        raise IndexOutOfRange(f"column {j} out of range for {u.cols} columns")


def _parse_entry(tok: str, column: int, line: int) -> VectorVar:
    if tok == "0":
        return VectorVar(column, STD, False)
    if tok == "1":
        return VectorVar(column, STD, True)
    match = _TOKEN.fullmatch(tok)
    if match is None:
        raise MalformedEntry(f"line {line + 1}, column {column + 1}: bad entry {tok!r}")
    return VectorVar(column, match.group(1), match.group(2) is not None)


def parse_uom(text: str, *, validate: bool = True) -> Uom:
    """Parse the UOM text format.

    With ``validate=False`` non-orthogonal matrices are accepted (for audit
    tooling); the result is then flagged as unvalidated.
    """
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split())
    return Uom.from_tokens(rows, validate=validate)


def serialize_uom(u: Uom) -> str:
    return "".join(" ".join(v.token for v in row) + "\n" for row in u.entries)


def orthogonal_columns(u: Uom, i: int, k: int) -> frozenset[int]:
    """Columns where rows ``i`` and ``k`` hold an ``{x, x'}`` pair."""
    _check_row(u, i)
    _check_row(u, k)
    if i == k:
        raise IndexOutOfRange(f"a row cannot be compared with itself (row {i})")
    mask = u.orth_mask(i, k)
    return frozenset(j for j in range(u.cols) if mask >> j & 1)


def multiplicity(u: Uom, v: VectorVar) -> int:
    """Number of grid positions holding ``v``."""
    if not 0 <= v.column < u.cols:
        return 0
    return sum(1 for row in u.entries if row[v.column] == v)


def column_families(u: Uom, j: int) -> dict[str, list[int]]:
    """Family -> [unprimed count, primed count], in order of first occurrence."""
    _check_column(u, j)
    fams: dict[str, list[int]] = {}
    for row in u.entries:
        v = row[j]
        fams.setdefault(v.family, [0, 0])[v.primed] += 1
    return fams


@dataclass(frozen=True)
class ColumnStats:
    sigma: int
    pairs: tuple[tuple[int, int], ...]
    p: int


def column_stats(u: Uom, j: int) -> ColumnStats:
    """Independent-family count, per-family (mu(x), mu(x')) and pair count p_j."""
    fams = column_families(u, j)
    pairs = tuple(sorted((tuple(c) for c in fams.values()), reverse=True))
    return ColumnStats(
        sigma=len(pairs),
        pairs=pairs,
        p=sum(a * b for a, b in pairs),
    )


class PairBound(NamedTuple):
    holds: bool
    lhs: int
    rhs: int


def pair_bound_holds(u: Uom) -> PairBound:
    """Compare the total orthogonal-pair count with m(m-1)/2."""
    require_validated(u, "pair_bound_holds")
    lhs = sum(column_stats(u, j).p for j in range(u.cols))
    rhs = u.rows * (u.rows - 1) // 2
    return PairBound(lhs >= rhs, lhs, rhs)


def sigma_p_feasible(sigma: int, m: int = 11, max_multiplicity: int = 4) -> frozenset[int]:
    """All values of p_j compatible with a column of ``sigma`` families.

    Each family contributes a pair (mu(x), mu(x')) with
    ``max_multiplicity >= mu(x) >= mu(x') >= 1`` and the multiplicities of a
    column sum to ``m``.
    """
    lo = -(-m // (2 * max_multiplicity))
    hi = m // 2
    if not lo <= sigma <= hi:
        raise DomainError(f"sigma={sigma} outside the feasible range [{lo}, {hi}] for m={m}")
    shapes = [(a, b) for a in range(1, max_multiplicity + 1) for b in range(1, a + 1)]
    found = set()
    for combo in itertools.combinations_with_replacement(shapes, sigma):
        if sum(a + b for a, b in combo) == m:
            found.add(sum(a * b for a, b in combo))
    return frozenset(found)


def entry_counts(u: Uom) -> Counter:
    """Multiplicity of every variable present in ``u``."""
    return Counter(v for row in u.entries for v in row)
