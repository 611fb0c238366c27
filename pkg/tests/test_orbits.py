import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import lu_shuffle, orthogonal_uoms
from upbkit.catalog import builtin, gen_odd_q
from upbkit.errors import IndexOutOfRange
from upbkit.graphs import iso_classes
from upbkit.orbits import OrbitSignature, column_signature, orbit_witness, orbits
from upbkit.uom import parse_uom

U117 = builtin("upb_11x7").uom
NAMES = ["upb_4x3", "upb_6x4", "upb_8x6", "upb_11x7", "upb_11x8"]


def test_signatures_catalog():
    assert column_signature(U117, 0).pairs == ((2, 2), (2, 2), (2, 1))
    assert column_signature(U117, 2).pairs == ((3, 2), (2, 2), (1, 1))
    assert str(column_signature(U117, 0)) == "[(2,2),(2,2),(2,1)]"


def test_single_family_column():
    u = parse_uom("a b\na b'\na c\n", validate=False)
    assert column_signature(u, 0) == OrbitSignature(((3, 0),))


def test_bad_column():
    with pytest.raises(IndexOutOfRange):
        column_signature(U117, 9)


@pytest.mark.parametrize("name,expected", [
    ("upb_11x7", ((0, 1), (2,), (3, 4, 5, 6))),
    ("upb_6x4", ((0,), (1,), (2, 3))),
    ("upb_8x6", ((0,), (1, 2), (3, 4, 5))),
    ("upb_11x8", ((0,), (1, 2, 3), (4, 5, 6, 7))),
])
def test_orbits_catalog(name, expected):
    assert orbits(builtin(name).uom) == expected


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_orbits_gen_odd_q(q):
    assert orbits(gen_odd_q(q)) == (tuple(range(q)),)


def test_gen_odd_3_matches_three_qubit_example():
    a, b = gen_odd_q(3), builtin("upb_4x3").uom
    assert sorted(column_signature(a, j) for j in range(3)) == sorted(column_signature(b, j) for j in range(3))


def _refines(fine, coarse):
    return all(any(set(p) <= set(c) for c in coarse) for p in fine)


@pytest.mark.parametrize("name", NAMES)
def test_orbits_refine_iso_classes(name):
    u = builtin(name).uom
    assert _refines(orbits(u), iso_classes(u))


@settings(max_examples=300, deadline=None)
@given(orthogonal_uoms(), st.integers(0, 2**32 - 1))
def test_signature_invariance(u, seed):
    v, col_perm = lu_shuffle(u, random.Random(seed))
    for c, j in enumerate(col_perm):
        assert column_signature(v, c) == column_signature(u, j)
    for part in orbits(u):
        for j in part:
            assert sum(a + b for a, b in column_signature(u, j).pairs) == u.rows


def _apply(u, v, a, b, w):
    """Check the witness maps column a of u onto column b of v entry by entry."""
    for i, row in enumerate(u.entries):
        if v.entries[w.row_map[i]][b] != w.apply(row[a], b):
            return False
    return sorted(w.row_map) == list(range(u.rows))


@pytest.mark.parametrize("name", NAMES)
def test_witnesses_within_orbits(name):
    u = builtin(name).uom
    for a in range(u.cols):
        for b in range(u.cols):
            w = orbit_witness(u, a, b)
            same = column_signature(u, a) == column_signature(u, b)
            assert (w is not None) == same
            if w is not None:
                assert _apply(u, u, a, b, w)


@settings(max_examples=300, deadline=None)
@given(orthogonal_uoms(), st.integers(0, 2**32 - 1))
def test_witness_after_shuffle(u, seed):
    v, col_perm = lu_shuffle(u, random.Random(seed))
    for c, j in enumerate(col_perm):
        w = orbit_witness(u, j, c, v)
        assert w is not None and _apply(u, v, j, c, w)
