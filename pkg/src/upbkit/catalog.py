"""Built-in UOM constructions, the minimum-size function and known-size tables.

Matrices are stored in the text format and parsed (with validation) on load;
every recorded fact is then recomputed and compared, so a transcription error
fails loudly instead of corrupting downstream results.

Token ``a3_5`` names family ``a3`` of column 5, so every token is unique
across the whole matrix even though the parser would scope it anyway.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .errors import CatalogError, DomainError, UnknownN, UnknownName
from .uom import STD, Uom, VectorVar, column_stats, parse_uom

UPB_4X3 = """\
0 0 0
1 b c
a 1 c'
a' b' 1
"""

UPB_6X4 = """\
b1_1  b1_2  b1_3  b1_4
b1_1  b2_2  b1_3' b2_4
b1_1' b1_2  b3_3  b3_4
b1_1' b2_2  b4_3  b3_4'
b5_1  b2_2' b3_3' b1_4'
b5_1' b1_2' b4_3' b2_4'
"""

UPB_8X6 = """\
c1_1  c1_2  c1_3  c1_4  c1_5  c1_6
c1_1  c2_2  c2_3  c1_4' c2_5  c2_6
c1_1' c1_2  c2_3  c3_4  c3_5  c3_6
c1_1' c2_2  c1_3  c3_4' c4_5  c4_6
c5_1  c5_2  c2_3' c5_4  c1_5' c4_6'
c5_1' c2_2' c6_3  c6_4  c3_5' c1_6'
c7_1  c1_2' c6_3' c5_4' c4_5' c2_6'
c7_1' c5_2' c1_3' c6_4' c2_5' c3_6'
"""

UPB_11X7 = """\
a1_1  a1_2  a1_3  a1_4  a1_5  a1_6  a1_7
a1_1  a2_2  a2_3  a2_4  a1_5' a2_6  a2_7
a1_1' a2_2  a1_3  a3_4  a3_5  a3_6  a3_7
a1_1' a1_2  a2_3  a4_4  a4_5  a4_6  a3_7'
a4_1  a1_2' a5_3  a2_4' a5_5  a3_6' a5_7
a4_1  a1_2' a1_3  a3_4' a6_5  a2_6' a5_7'
a4_1' a7_2  a2_3' a7_4  a3_5' a1_6' a7_7
a4_1' a7_2' a2_3' a3_4' a6_5  a8_6  a1_7'
a9_1  a7_2' a1_3' a4_4' a5_5' a8_6' a2_7'
a9_1  a7_2  a1_3' a7_4' a4_5' a2_6' a5_7'
a9_1' a2_2' a5_3' a1_4' a6_5' a4_6' a7_7'
"""

UPB_11X8 = """\
d1_1  d1_2  d1_3  d1_4  d1_5  d1_6  d1_7  d1_8
d1_1' d2_2  d2_3  d2_4  d2_5  d2_6  d2_7  d2_8
d3_1  d2_2' d3_3  d3_4  d1_5' d3_6  d3_7  d3_8
d4_1  d3_2  d4_3  d3_4' d3_5  d1_6' d4_7  d2_8'
d5_1  d1_2' d2_3' d4_4  d4_5  d3_6' d4_7' d4_8
d3_1' d3_2' d1_3  d4_4' d5_5  d2_6' d1_7' d5_8
d5_1' d7_2  d4_3' d2_4' d5_5' d4_6  d3_7' d1_8'
d4_1' d7_2  d3_3' d1_4' d4_5' d4_6' d2_7' d5_8'
d4_1' d7_2' d1_3' d4_4' d2_5' d5_6  d5_7  d3_8'
d5_1' d7_2' d3_3' d1_4' d3_5' d5_6' d2_7' d5_8'
d3_1' d3_2' d1_3' d1_4  d5_5  d2_6' d5_7' d4_8'
"""

MAX_STANDARD_BASIS = 12
# catalog entries stay within the 16-vertex limit of graph canonical labelling
MAX_CATALOG_BASIS = 4


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    uom: Uom
    provenance: str
    expected: dict[str, Any] = field(default_factory=dict)


_SOURCES = {
    "upb_4x3": (UPB_4X3, "three-qubit UPB of size 4 (worked example)", {
        "p": (2, 2, 2), "p_sum": 6, "is_upb": True, "complete": True,
        "iso_classes": ((0, 1, 2),), "orbits": ((0, 1, 2),),
    }),
    "upb_6x4": (UPB_6X4, "unique 4-qubit UPB of size 6 (uniqueness cited, not re-verified)", {
        "p": (5, 4, 3, 3), "p_sum": 15, "is_upb": True, "complete": True,
        "iso_classes": ((0,), (1,), (2, 3)), "orbits": ((0,), (1,), (2, 3)),
    }),
    "upb_8x6": (UPB_8X6, "6-qubit UPB of size 8", {
        "p": (6, 5, 5, 4, 4, 4), "p_sum": 28, "is_upb": True, "complete": True,
        "iso_classes": ((0,), (1, 2), (3, 4, 5)), "orbits": ((0,), (1, 2), (3, 4, 5)),
    }),
    "upb_11x7": (UPB_11X7, "7-qubit UPB of size 11", {
        "p": (10, 10, 11, 6, 6, 6, 6), "p_sum": 55, "is_upb": True, "complete": True,
        "iso_classes": ((0, 1), (2,), (3, 4, 5, 6)), "orbits": ((0, 1), (2,), (3, 4, 5, 6)),
        "indistinguishable_k": 2,
    }),
    "upb_11x8": (UPB_11X8, "8-qubit UPB of size 11", {
        "p": (7, 8, 8, 8, 6, 6, 6, 6), "p_sum": 55, "is_upb": True, "complete": True,
        "iso_classes": ((0,), (1, 2, 3), (4, 5, 6, 7)), "orbits": ((0,), (1, 2, 3), (4, 5, 6, 7)),
    }),
}

_STANDARD = re.compile(r"standard_basis_(\d+)")


def names() -> list[str]:
    return sorted(_SOURCES) + [f"standard_basis_<n> (1 <= n <= {MAX_CATALOG_BASIS})"]


def standard_basis(n: int) -> Uom:
    """All 2**n computational basis states of n qubits."""
    if not 1 <= n <= MAX_STANDARD_BASIS:
        raise DomainError(f"standard basis supported for 1 <= n <= {MAX_STANDARD_BASIS}")
    grid = [
        [VectorVar(j, STD, bool(bits >> (n - 1 - j) & 1)) for j in range(n)]
        for bits in range(2**n)
    ]
    return Uom.from_grid(grid)


@lru_cache(maxsize=None)
def builtin(name: str) -> CatalogEntry:
    """Load a built-in matrix and re-derive each of its recorded facts."""
    match = _STANDARD.fullmatch(name)
    if match:
        n = int(match.group(1))
        if not 1 <= n <= MAX_CATALOG_BASIS:
            raise UnknownName(name)
        entry = CatalogEntry(
            name, standard_basis(n), "computational basis",
            {"p": (4 ** (n - 1),) * n, "p_sum": n * 4 ** (n - 1), "is_upb": True,
             "complete": n == 1, "iso_classes": (tuple(range(n)),), "orbits": (tuple(range(n)),)},
        )
    elif name in _SOURCES:
        text, provenance, expected = _SOURCES[name]
        entry = CatalogEntry(name, parse_uom(text), provenance, dict(expected))
    else:
        raise UnknownName(name)
    verify_entry(entry)
    return entry


def verify_entry(entry: CatalogEntry) -> None:
    from .extension import is_upb
    from .graphs import is_complete_single_pair, iso_classes
    from .locc import audit_all_pairs
    from .orbits import orbits

    u, exp = entry.uom, entry.expected
    found: dict[str, Any] = {}
    if "p" in exp or "p_sum" in exp:
        p = tuple(column_stats(u, j).p for j in range(u.cols))
        found["p"], found["p_sum"] = p, sum(p)
    if "is_upb" in exp:
        found["is_upb"] = is_upb(u)
    if "complete" in exp:
        found["complete"] = is_complete_single_pair(u)
    if "iso_classes" in exp:
        found["iso_classes"] = iso_classes(u)
    if "orbits" in exp:
        found["orbits"] = orbits(u)
    if "indistinguishable_k" in exp:
        audit = audit_all_pairs(u, exp["indistinguishable_k"])
        found["indistinguishable_k"] = (
            exp["indistinguishable_k"] if audit.indistinguishable == len(audit.reports) else None
        )
    for key, value in found.items():
        if value != exp[key]:
            raise CatalogError(f"{entry.name}: {key} expected {exp[key]!r}, computed {value!r}")


def gen_odd_q(q: int) -> Uom:
    """The (q+1) x q circulant UOM for odd q >= 3.

    Row 0 is ``0`` in every column. Row ``i >= 1`` is the pattern
    ``[1, psi1, ..., psih, psih', ..., psi1']`` (``h = (q-1)/2``) rotated
    right by ``i - 1``.
    """
    if q < 3 or q % 2 == 0:
        raise DomainError(f"q must be odd and at least 3, got {q}")
    h = (q - 1) // 2
    pattern = ["1"] + [f"psi{k}" for k in range(1, h + 1)] + [f"psi{k}'" for k in range(h, 0, -1)]
    rows = [["0"] * q]
    for i in range(1, q + 1):
        shift = i - 1
        rows.append([pattern[(j - shift) % q] for j in range(q)])
    return Uom.from_tokens(rows)


def min_upb_size(p: int) -> int:
    """Minimum number of states in a p-qubit UPB."""
    if p < 1:
        raise DomainError(f"qubit count must be positive, got {p}")
    if p % 2 == 1:
        return p + 1
    if p == 4 or p % 4 == 2:
        return p + 2
    if p == 8:
        return p + 3
    return p + 4


def known_sizes(n: int) -> frozenset[int]:
    """Sizes m for which an n-qubit UPB is known to exist (n = 7 or 8)."""
    if n == 7:
        return frozenset({8, *range(10, 123), 124, 128})
    if n == 8:
        return frozenset({*range(11, 251), 252, 256})
    raise UnknownN(f"known-size tables exist only for 7 and 8 qubits, got {n}")
