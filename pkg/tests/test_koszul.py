from math import comb

import pytest

from helpers import small_specs, table_numerator
from toricbetti.errors import ResourceLimit
from toricbetti.exact_betti import hilbert_numerator
from toricbetti.koszul import (MAX_ENTRIES_ENV, check_complex, entry_count, exterior_basis,
                               koszul_matrix, oracle_kpq, oracle_table, stratum)
from toricbetti.lattice import SurfaceSpec, ehrhart_count
from toricbetti.modp import ALT_PRIME, rank_mod_p

SCROLL = SurfaceSpec(0, 1)
TINY = small_specs(8)


def test_tiny_specs():
    assert TINY == [SurfaceSpec(0, 1), SurfaceSpec(0, 2), SurfaceSpec(1, 1), SurfaceSpec(2, 1)]


def test_exterior_basis_colex():
    assert exterior_basis(4, 2) == ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))
    assert exterior_basis(3, 0) == ((),)
    assert exterior_basis(3, 4) == ()


def test_multiplication_map_rank():
    m = koszul_matrix(SCROLL, 0, 1)
    assert (m.rows, m.cols) == (15, 36)
    assert rank_mod_p(m) == 15


def test_top_wedge_is_empty():
    m = koszul_matrix(SCROLL, 6, 1)
    assert m.cols == 0 and m.nnz == 0


def test_columns_have_at_most_p_plus_one_entries():
    m = koszul_matrix(SurfaceSpec(1, 1), 3, 1)
    counts = {}
    for c in m.col_idx.tolist():
        counts[c] = counts.get(c, 0) + 1
    assert max(counts.values()) == 4
    assert m.nnz == entry_count(SurfaceSpec(1, 1), 3, 1)


def test_argument_checks():
    with pytest.raises(ValueError):
        koszul_matrix(SCROLL, 7, 1)
    with pytest.raises(ValueError):
        koszul_matrix(SCROLL, 1, 4)
    with pytest.raises(ResourceLimit):
        oracle_kpq(SurfaceSpec(0, 5), 1, 1)


def test_entry_limit_from_environment(monkeypatch):
    monkeypatch.setenv(MAX_ENTRIES_ENV, "10")
    with pytest.raises(ResourceLimit):
        koszul_matrix(SCROLL, 2, 2)


def test_stratum_dimensions():
    s = stratum(SurfaceSpec(0, 2), 3, 1)
    n = 9
    assert s.mid_dim == comb(n, 3) * ehrhart_count(SurfaceSpec(0, 2), 1)
    assert s.left_dim == comb(n, 4)
    assert s.right_dim == comb(n, 2) * ehrhart_count(SurfaceSpec(0, 2), 2)
    assert stratum(SCROLL, 0, 0).left_dim == 0


@pytest.mark.parametrize("p,q,expected", [(0, 0, 1), (1, 0, 0), (1, 1, 6), (2, 1, 8),
                                          (3, 1, 3), (2, 2, 0), (3, 2, 0)])
def test_scroll_cells(p, q, expected):
    assert oracle_kpq(SCROLL, p, q) == expected


def test_scroll_table():
    t = oracle_table(SCROLL)
    assert t.row(1) == [0, 6, 8, 3, 0, 0]
    assert t.row(2) == [0] * 6


def test_p1xp1_degree_two():
    t = oracle_table(SurfaceSpec(0, 2))
    assert t[6, 2] == 1
    assert t.row(1) == [0, 20, 64, 90, 64, 20, 0, 0, 0]


@pytest.mark.parametrize("spec", TINY, ids=str)
def test_complex_property(spec):
    oracle_table(spec, verify=True)
    r = ehrhart_count(spec, 1) - 1
    assert all(check_complex(spec, p, q) for p in range(r + 1) for q in range(4))


def test_broken_complex_detected():
    # flipping one sign breaks d^2 = 0
    spec = SCROLL
    after = koszul_matrix(spec, 0, 1)
    before = koszul_matrix(spec, 1, 0)
    vals = before.values.copy()
    vals[0] = (-vals[0]) % before.prime
    from toricbetti.modp import SparseMatrix, compose_is_zero
    bad = SparseMatrix.from_arrays(before.rows, before.cols, before.row_idx,
                                   before.col_idx, vals, before.prime)
    assert compose_is_zero(after, before)
    assert not compose_is_zero(after, bad)


@pytest.mark.parametrize("spec", TINY, ids=str)
def test_prime_independence(spec):
    assert oracle_table(spec).same_entries(oracle_table(spec, prime=ALT_PRIME))


@pytest.mark.parametrize("spec", TINY, ids=str)
def test_euler_characteristic(spec):
    t = oracle_table(spec)
    a = hilbert_numerator(spec)
    assert table_numerator(t, t.r + 4) == list(a.a)
