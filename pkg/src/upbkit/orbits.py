"""LU orbits of UOM columns viewed as product vectors.

A column of m entries is an m-qubit product vector. Local unitaries act per
family (a 2 x 2 unitary maps ``{x, x'}`` onto ``{y, y'}`` in either order)
and tensor factors may be permuted, so the only invariant left is the
multiset of per-family multiplicity pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .uom import Uom, VectorVar, column_families, require_validated


@dataclass(frozen=True, order=True)
class OrbitSignature:
    pairs: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "[" + ",".join(f"({a},{b})" for a, b in self.pairs) + "]"


def column_signature(u: Uom, j: int) -> OrbitSignature:
    fams = column_families(u, j)
    pairs = sorted(((max(a, b), min(a, b)) for a, b in fams.values()), reverse=True)
    return OrbitSignature(tuple(pairs))


def orbits(u: Uom) -> tuple[tuple[int, ...], ...]:
    """Columns grouped by signature, groups ordered by first column."""
    require_validated(u, "orbits")
    groups: dict[OrbitSignature, list[int]] = {}
    for j in range(u.cols):
        groups.setdefault(column_signature(u, j), []).append(j)
    return tuple(tuple(cols) for cols in groups.values())


@dataclass(frozen=True)
class OrbitWitness:
    """Maps column ``a`` of one matrix onto column ``b`` of another.

    The entry ``(f, primed)`` at row ``i`` of column ``a`` becomes
    ``(family_map[f], primed ^ (f in swapped))`` at row ``row_map[i]`` of
    column ``b``.
    """

    row_map: tuple[int, ...]
    family_map: dict[str, str]
    swapped: frozenset[str]

    def apply(self, v: VectorVar, column: int) -> VectorVar:
        return VectorVar(column, self.family_map[v.family], v.primed != (v.family in self.swapped))


def orbit_witness(u: Uom, a: int, b: int, v: Uom | None = None) -> OrbitWitness | None:
    """Constructive LU-plus-permutation equivalence of two columns.

    Returns None exactly when the signatures differ.
    """
    v = u if v is None else v
    if u.rows != v.rows or column_signature(u, a) != column_signature(v, b):
        return None
    src, dst = column_families(u, a), column_families(v, b)

    def by_shape(fams):
        buckets: dict[tuple[int, int], list[str]] = {}
        for f, (plain, primed) in fams.items():
            buckets.setdefault((max(plain, primed), min(plain, primed)), []).append(f)
        return buckets

    targets = by_shape(dst)
    family_map, swapped = {}, set()
    for shape, fams in by_shape(src).items():
        for f, g in zip(fams, targets[shape]):
            family_map[f] = g
            # orient so the majority element of f lands on the majority element of g
            if (src[f][0] >= src[f][1]) != (dst[g][0] >= dst[g][1]) or (
                src[f][0] != dst[g][0] and src[f][0] == dst[g][1]
            ):
                swapped.add(f)

    col_a = [row[a] for row in u.entries]
    col_b = [row[b] for row in v.entries]
    free: dict[VectorVar, list[int]] = {}
    for i, x in enumerate(col_b):
        free.setdefault(x, []).append(i)
    row_map = []
    for x in col_a:
        image = VectorVar(b, family_map[x.family], x.primed != (x.family in swapped))
        row_map.append(free[image].pop(0))
    return OrbitWitness(tuple(row_map), family_map, frozenset(swapped))
