import pytest

from upbkit import catalog
from upbkit.catalog import (
    CatalogEntry, builtin, gen_odd_q, known_sizes, min_upb_size, names, standard_basis, verify_entry,
)
from upbkit.errors import CatalogError, DomainError, UnknownN, UnknownName
from upbkit.uom import VectorVar, column_stats, parse_uom, serialize_uom

# minimum p-qubit UPB sizes written out by hand from the piecewise rule
MIN_SIZES = {1: 2, 2: 4, 3: 4, 4: 6, 5: 6, 6: 8, 7: 8, 8: 11, 9: 10, 10: 12, 11: 12, 12: 16,
             13: 14, 14: 16, 15: 16, 16: 20}


@pytest.mark.parametrize("name", ["upb_4x3", "upb_6x4", "upb_8x6", "upb_11x7", "upb_11x8",
                                  "standard_basis_1", "standard_basis_4"])
def test_builtin_loads(name):
    entry = builtin(name)
    assert entry.uom.validated
    assert entry.provenance


def test_shapes_and_first_rows():
    u = builtin("upb_11x7").uom
    assert u.shape == (11, 7)
    assert u.entries[0] == tuple(VectorVar(j, f"a1_{j + 1}") for j in range(7))
    assert builtin("upb_8x6").uom.entries[0] == tuple(VectorVar(j, f"c1_{j + 1}") for j in range(6))
    assert builtin("standard_basis_2").uom.shape == (4, 2)


def test_unknown_names():
    for bad in ("nope", "standard_basis_0", "standard_basis_5", "upb_11X7"):
        with pytest.raises(UnknownName):
            builtin(bad)


def test_names_listing():
    listed = names()
    assert "upb_11x7" in listed and any(n.startswith("standard_basis") for n in listed)


def test_standard_basis_bounds():
    assert standard_basis(12).rows == 4096
    with pytest.raises(DomainError):
        standard_basis(0)


def test_verification_catches_a_wrong_fact():
    u = parse_uom(catalog.UPB_6X4)
    bad = CatalogEntry("bad", u, "test", {"p": (5, 4, 3, 2)})
    with pytest.raises(CatalogError):
        verify_entry(bad)


def test_transcription_errors_surface():
    text = catalog.UPB_11X7.replace("a9_1'", "a9_1", 1)
    with pytest.raises(Exception):
        parse_uom(text)


def test_p_vector_11x7():
    u = builtin("upb_11x7").uom
    assert tuple(column_stats(u, j).p for j in range(7)) == (10, 10, 11, 6, 6, 6, 6)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_gen_odd_q_shape_and_pairs(q):
    u = gen_odd_q(q)
    assert u.shape == (q + 1, q)
    assert all(column_stats(u, j).p == (q + 1) // 2 for j in range(q))


def test_gen_odd_q_text():
    assert serialize_uom(gen_odd_q(3)) == "0 0 0\n1 psi1 psi1'\npsi1' 1 psi1\npsi1 psi1' 1\n"


@pytest.mark.parametrize("q", [1, 2, 4, 10, -3])
def test_gen_odd_q_domain(q):
    with pytest.raises(DomainError):
        gen_odd_q(q)


@pytest.mark.parametrize("p", sorted(MIN_SIZES))
def test_min_upb_size(p):
    assert min_upb_size(p) == MIN_SIZES[p]


def test_min_upb_size_domain():
    with pytest.raises(DomainError):
        min_upb_size(0)


def test_known_sizes():
    seven = known_sizes(7)
    assert seven == {8} | set(range(10, 123)) | {124, 128}
    assert 11 in seven and 9 not in seven
    assert known_sizes(8) == set(range(11, 251)) | {252, 256}
    for n in (7, 8):
        assert min_upb_size(n) <= min(known_sizes(n))
    with pytest.raises(UnknownN):
        known_sizes(9)


def test_minimum_sizes_realised():
    # 7 qubits: the odd-q circulant has 8 rows; 8 qubits: the 11 x 8 catalog entry
    assert gen_odd_q(7).rows == min_upb_size(7) == 8
    assert builtin("upb_11x8").uom.rows == min_upb_size(8) == 11
