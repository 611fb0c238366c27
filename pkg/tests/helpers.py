"""Generators and brute-force oracles shared by the test suite.

The oracles work on plain ``(family, primed)`` tuples read back from the text
serialisation, so they share no code path with the package's search,
refinement or connectivity routines.
"""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from upbkit.uom import Uom, VectorVar, serialize_uom


# --------------------------------------------------------------------------
# plain-tuple view of a matrix
# --------------------------------------------------------------------------

def plain(u: Uom) -> list[list[tuple[str, bool]]]:
    """Rows of (family, primed) read from the serialised text."""
    rows = []
    for line in serialize_uom(u).splitlines():
        row = []
        for tok in line.split():
            if tok in ("0", "1"):
                row.append(("std", tok == "1"))
            else:
                row.append((tok.rstrip("'"), tok.endswith("'")))
        rows.append(row)
    return rows


def orth(a, b) -> bool:
    return a[0] == b[0] and a[1] != b[1]


# --------------------------------------------------------------------------
# random orthogonal matrices
# --------------------------------------------------------------------------

@st.composite
def orthogonal_uoms(draw, max_rows=8, max_cols=5, max_families=3):
    """Random validated orthogonal matrices.

    Each new row starts from random entries; for every earlier row it is not
    yet orthogonal to, one unlocked column is overwritten with the partner of
    that row's entry. A row that cannot be repaired ends the matrix.
    """
    n = draw(st.integers(1, max_cols))
    target = draw(st.integers(1, max_rows))
    fams = draw(st.integers(1, max_families))
    rows: list[list[tuple[str, bool]]] = []
    for _ in range(target):
        row = [(f"f{draw(st.integers(0, fams - 1))}", draw(st.booleans())) for _ in range(n)]
        locked: set[int] = set()
        ok = True
        for prev in rows:
            if any(orth(row[j], prev[j]) for j in range(n)):
                continue
            free = [j for j in range(n) if j not in locked]
            if not free:
                ok = False
                break
            j = draw(st.sampled_from(free))
            row[j] = (prev[j][0], not prev[j][1])
            locked.add(j)
        # a later repair may overwrite the column that separated an earlier row
        if not ok or not all(any(orth(row[j], prev[j]) for j in range(n)) for prev in rows):
            break
        rows.append(row)
    tokens = [[f + ("'" if p else "") for f, p in row] for row in rows]
    return Uom.from_tokens(tokens)


def random_graph_edges(rng: random.Random, n: int, density: float = 0.5):
    return [e for e in itertools.combinations(range(n), 2) if rng.random() < density]


# --------------------------------------------------------------------------
# oracles
# --------------------------------------------------------------------------

def extension_exists(u: Uom):
    """Exhaustive search for a product row orthogonal to every row.

    Per column the candidate local states are a generic state (``None``) or
    any (family, primed) value present there; a candidate state is
    orthogonal to the rows holding its partner. Returns the first state
    tuple found or None.
    """
    rows = plain(u)
    if not rows:
        return None
    n = len(rows[0])
    options = []
    for j in range(n):
        states = sorted({(f, not p) for f, p in (r[j] for r in rows)})
        options.append([None] + states)
    for cand in itertools.product(*options):
        if all(any(c is not None and orth(c, r[j]) for j, c in enumerate(cand)) for r in rows):
            return cand
    return None


def witness_kills_all(u: Uom, states) -> bool:
    """Does the product row with these local states (None = generic) kill every row?"""
    rows = plain(u)
    for r in rows:
        if not any(s is not None and orth((s.family, s.primed), r[j]) for j, s in enumerate(states)):
            return False
    return True


def split_oracle(u: Uom, s) -> bool:
    """Is there a row bipartition (P, Q) with every cross pair orthogonal inside ``s``?"""
    rows = plain(u)
    m = len(rows)
    s = list(s)
    for mask in range(1, 2 ** (m - 1)):
        # row 0 is always in P, so each unordered split is seen once
        q = [i for i in range(1, m) if mask >> (i - 1) & 1]
        p = [i for i in range(m) if i not in q]
        if all(any(orth(rows[a][j], rows[b][j]) for j in s) for a in p for b in q):
            return True
    return False


def brute_canonical(n: int, edges) -> tuple[int, ...]:
    """Smallest upper-triangle adjacency vector over all vertex orders."""
    adj = {(min(a, b), max(a, b)) for a, b in edges}
    best = None
    for perm in itertools.permutations(range(n)):
        bits = tuple(
            int((min(perm[a], perm[b]), max(perm[a], perm[b])) in adj)
            for a in range(n) for b in range(a + 1, n)
        )
        if best is None or bits < best:
            best = bits
    return best


# --------------------------------------------------------------------------
# structure-preserving transformations
# --------------------------------------------------------------------------

def merge_mutation(u: Uom, rng: random.Random, steps: int) -> Uom:
    """Replace a family by another one in the same column, optionally prime-flipped.

    Every orthogonal pair stays orthogonal, so the result is still a
    validated orthogonal matrix, with strictly fewer families.
    """
    grid = [list(r) for r in u.entries]
    for _ in range(steps):
        j = rng.randrange(u.cols)
        fams = sorted({r[j].family for r in grid})
        if len(fams) < 2:
            continue
        f, g = rng.sample(fams, 2)
        flip = rng.random() < 0.5
        for r in grid:
            if r[j].family == g:
                r[j] = VectorVar(j, f, r[j].primed != flip)
    return Uom.from_grid(grid)


def lu_shuffle(u: Uom, rng: random.Random, *, permute_columns: bool = True) -> tuple[Uom, list[int]]:
    """Rename families, swap primes per family, shuffle rows and (optionally) columns.

    Returns the new matrix and ``col_perm`` with new column ``c`` taken from
    old column ``col_perm[c]``.
    """
    m, n = u.rows, u.cols
    row_perm = list(range(m))
    rng.shuffle(row_perm)
    col_perm = list(range(n))
    if permute_columns:
        rng.shuffle(col_perm)
    rename = {}
    for j in range(n):
        fams = sorted({r[j].family for r in u.entries})
        fresh = [f"z{k}" for k in range(len(fams))]
        rng.shuffle(fresh)
        for f, z in zip(fams, fresh):
            rename[(j, f)] = (z, rng.random() < 0.5)
    grid = []
    for i in row_perm:
        row = []
        for c, j in enumerate(col_perm):
            v = u.entries[i][j]
            z, flip = rename[(j, v.family)]
            row.append(VectorVar(c, z, v.primed != flip))
        grid.append(row)
    return Uom.from_grid(grid), col_perm
