"""Exact rank over a prime field for sparse integer matrices.

Matrices are split into connected components of their row/column incidence
graph first; for Koszul differentials this recovers the torus grading, so the
blocks handed to elimination stay small.  Small blocks are eliminated densely
with numpy, large ones with a fraction-free sparse elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

DEFAULT_PRIME = 32003
ALT_PRIME = 65521
# components with fewer stored entries than this are eliminated densely
DENSE_ENTRY_LIMIT = 100_000
# ... provided the dense array stays reasonably sized
DENSE_CELL_LIMIT = 25_000_000


@dataclass(frozen=True)
class SparseMatrix:
    """COO matrix over Z/P with nonzero values in [1, P)."""

    rows: int
    cols: int
    row_idx: np.ndarray = field(repr=False)
    col_idx: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    prime: int = DEFAULT_PRIME

    @classmethod
    def from_entries(cls, rows, cols, entries, prime=DEFAULT_PRIME):
        """Build from an iterable of (row, col, value); duplicates are summed."""
        entries = list(entries)
        if entries:
            r, c, v = (np.asarray(a, dtype=np.int64) for a in zip(*entries))
        else:
            r = c = v = np.zeros(0, dtype=np.int64)
        return cls.from_arrays(rows, cols, r, c, v, prime)

    @classmethod
    def from_arrays(cls, rows, cols, row_idx, col_idx, values, prime=DEFAULT_PRIME):
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        values = np.asarray(values, dtype=np.int64) % prime
        if row_idx.size:
            if row_idx.min() < 0 or row_idx.max() >= rows:
                raise IndexError("row index out of range")
            if col_idx.min() < 0 or col_idx.max() >= cols:
                raise IndexError("column index out of range")
            # canonicalize: sum duplicates, drop zeros
            m = coo_matrix((values, (row_idx, col_idx)), shape=(rows, cols)).tocsr()
            m.sum_duplicates()
            m = m.tocoo()
            keep = (m.data % prime) != 0
            row_idx, col_idx, values = m.row[keep], m.col[keep], m.data[keep] % prime
        return cls(rows, cols, row_idx.astype(np.int64), col_idx.astype(np.int64),
                   values.astype(np.int64), prime)

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    def to_scipy(self):
        return coo_matrix((self.values, (self.row_idx, self.col_idx)),
                          shape=(self.rows, self.cols)).tocsr()

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        a[self.row_idx, self.col_idx] = self.values
        return a

    def reduce(self, prime: int) -> SparseMatrix:
        """Reinterpret the entries (read as signed integers) modulo another prime."""
        signed = np.where(self.values > self.prime // 2, self.values - self.prime, self.values)
        return SparseMatrix.from_arrays(self.rows, self.cols, self.row_idx, self.col_idx,
                                        signed, prime)


def compose_is_zero(after: SparseMatrix, before: SparseMatrix) -> bool:
    """True when after @ before vanishes mod P."""
    if after.cols != before.rows:
        raise ValueError(f"shape mismatch: {after.cols} vs {before.rows}")
    if after.nnz == 0 or before.nnz == 0:
        return True
    prod = after.to_scipy() @ before.to_scipy()
    return not np.any(prod.data % after.prime)


PANEL = 96


def _fmod(x: np.ndarray, prime: int) -> np.ndarray:
    # exact for integer-valued float64 below 2**53 in magnitude
    return x - prime * np.floor(x * (1.0 / prime))


def _inverse_mod(a: np.ndarray, prime: int) -> np.ndarray:
    """Inverse of a small invertible matrix over GF(prime) by Gauss-Jordan."""
    k = a.shape[0]
    aug = np.concatenate([a, np.eye(k)], axis=1)
    for c in range(k):
        piv = c + np.flatnonzero(aug[c:, c])[0]
        if piv != c:
            aug[[c, piv]] = aug[[piv, c]]
        aug[c] = _fmod(aug[c] * pow(int(aug[c, c]), -1, prime), prime)
        others = np.flatnonzero(aug[:, c])
        others = others[others != c]
        if others.size:
            aug[others] = _fmod(aug[others] - np.outer(aug[others, c], aug[c]), prime)
    return aug[:, k:]


def _panel_pivots(panel: np.ndarray, prime: int) -> tuple[list[int], list[int]]:
    """Unblocked elimination on a column panel; returns (pivot rows, pivot cols)."""
    a = panel.copy()
    rows, cols = [], []
    free = np.ones(a.shape[0], dtype=bool)
    for c in range(a.shape[1]):
        cand = np.flatnonzero(free & (a[:, c] != 0))
        if cand.size == 0:
            continue
        piv = cand[0]
        free[piv] = False
        rows.append(int(piv))
        cols.append(c)
        below = cand[1:]
        if below.size and c + 1 < a.shape[1]:
            prow = _fmod(a[piv, c + 1:] * pow(int(a[piv, c]), -1, prime), prime)
            a[below, c + 1:] = _fmod(a[below, c + 1:] - np.outer(a[below, c], prow), prime)
            a[below, c] = 0
    return rows, cols


def _dense_rank(a: np.ndarray, prime: int) -> int:
    """Blocked elimination over GF(prime) in float64.

    Pivots are found panel by panel; the trailing columns are then updated
    with one matrix product.  Every intermediate stays an integer below
    PANEL * prime**2 < 2**53, so the arithmetic is exact.
    """
    a = np.asarray(a, dtype=np.float64)
    a = _fmod(a, prime)
    if a.shape[0] < a.shape[1]:
        a = a.T.copy()
    rank = 0
    while a.shape[0] and a.shape[1]:
        b = min(PANEL, a.shape[1])
        rows, cols = _panel_pivots(a[:, :b], prime)
        k = len(rows)
        rank += k
        if b == a.shape[1]:
            break
        if k == 0:
            a = a[:, b:]
            continue
        keep = np.ones(a.shape[0], dtype=bool)
        keep[rows] = False
        rest = a[keep]
        piv = a[rows]
        mult = _fmod(rest[:, cols] @ _inverse_mod(piv[:, cols], prime), prime)
        a = _fmod(rest[:, b:] - mult @ piv[:, b:], prime)
    return rank


def _sparse_rank(rows_of: list[dict[int, int]], prime: int) -> int:
    """Fraction-free elimination on dict rows with a Markowitz-style pivot choice.

    The pivot row is a shortest remaining row; inside it the pivot column is
    the one touching the fewest remaining rows.
    """
    rows = {i: dict(r) for i, r in enumerate(rows_of) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in rows.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    rank = 0
    while rows:
        pi = min(rows, key=lambda i: len(rows[i]))
        prow = rows.pop(pi)
        for c in prow:
            col_rows[c].discard(pi)
        pc = min(prow, key=lambda c: len(col_rows[c]))
        pval = prow[pc]
        rank += 1
        for i in list(col_rows[pc]):
            row = rows[i]
            f = row[pc]
            # row <- pval*row - f*prow, no inverses needed
            for c in row:
                row[c] = (row[c] * pval) % prime
            for c, v in prow.items():
                nv = (row.get(c, 0) - f * v) % prime
                if nv:
                    if c not in row:
                        col_rows[c].add(i)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    col_rows[c].discard(i)
            if not row:
                del rows[i]
    return rank


def rank_mod_p(m: SparseMatrix, dense_entry_limit: int = DENSE_ENTRY_LIMIT) -> int:
    """Exact rank of ``m`` over GF(m.prime)."""
    if m.nnz == 0:
        return 0
    prime = m.prime
    # bipartite graph: rows are nodes 0..R-1, columns R..R+C-1
    used_r, r_loc = np.unique(m.row_idx, return_inverse=True)
    used_c, c_loc = np.unique(m.col_idx, return_inverse=True)
    nr, nc = used_r.size, used_c.size
    graph = coo_matrix((np.ones(m.nnz, dtype=np.int8), (r_loc, nr + c_loc)),
                       shape=(nr + nc, nr + nc))
    ncomp, labels = connected_components(graph, directed=False)
    entry_comp = labels[r_loc]
    order = np.argsort(entry_comp, kind="stable")
    bounds = np.searchsorted(entry_comp[order], np.arange(ncomp + 1))

    total = 0
    for k in range(ncomp):
        sel = order[bounds[k]:bounds[k + 1]]
        if sel.size == 0:
            continue
        rr, cc, vv = r_loc[sel], c_loc[sel], m.values[sel]
        if sel.size == 1:
            total += 1
            continue
        ur, rr = np.unique(rr, return_inverse=True)
        uc, cc = np.unique(cc, return_inverse=True)
        if sel.size < dense_entry_limit and ur.size * uc.size <= DENSE_CELL_LIMIT:
            block = np.zeros((ur.size, uc.size), dtype=np.int64)
            block[rr, cc] = vv
            total += _dense_rank(block, prime)
        else:
            rows_of: list[dict[int, int]] = [dict() for _ in range(ur.size)]
            for i, j, v in zip(rr.tolist(), cc.tolist(), vv.tolist()):
                rows_of[i][j] = v
            total += _sparse_rank(rows_of, prime)
    return total
