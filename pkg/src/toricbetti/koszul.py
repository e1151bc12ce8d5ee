"""Ground-truth Betti numbers from Koszul cohomology over a prime field.

With V = H^0(L_d) and S_k = H^0(k L_d), the Koszul complex

    wedge^{p+1} V (x) S_{q-1}  ->  wedge^p V (x) S_q  ->  wedge^{p-1} V (x) S_{q+1}

has middle cohomology K_{p,q}.  Monomial bases are lattice points of dilates
of Delta_d and multiplication of monomials is addition of points.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import ResourceLimit
from .lattice import SurfaceSpec, ehrhart_count, lattice_points, point_index
from .modp import DEFAULT_PRIME, SparseMatrix, compose_is_zero, rank_mod_p
from .tables import BettiTable, Provenance

MAX_ENTRIES_ENV = "TORICBETTI_ORACLE_MAX_ENTRIES"
DEFAULT_MAX_ENTRIES = 5_000_000
MAX_ORACLE_R = 15


def max_entries() -> int:
    raw = os.environ.get(MAX_ENTRIES_ENV)
    return int(raw) if raw else DEFAULT_MAX_ENTRIES


@dataclass(frozen=True)
class KoszulStratum:
    spec: SurfaceSpec
    p: int
    q: int
    left_dim: int
    mid_dim: int
    right_dim: int
    left_rank: int
    right_rank: int

    @property
    def dimension(self) -> int:
        return self.mid_dim - self.right_rank - self.left_rank


@lru_cache(maxsize=64)
def exterior_basis(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Strictly increasing m-tuples from range(n) in colex order."""
    if m < 0 or m > n:
        return ()
    return tuple(sorted(combinations(range(n), m), key=lambda t: t[::-1]))


@lru_cache(maxsize=64)
def _exterior_index(n: int, m: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(exterior_basis(n, m))}


@lru_cache(maxsize=64)
def _shift_table(spec: SurfaceSpec, q: int) -> np.ndarray:
    """table[i, j] = index in (q+1)Delta of v_i + m_j, with m_j in q*Delta."""
    v = lattice_points(spec, 1)
    src = lattice_points(spec, q)
    dst = point_index(spec, q + 1)
    return np.array([[dst[(a.x + b.x, a.y + b.y)] for b in src] for a in v], dtype=np.int64)


def entry_count(spec: SurfaceSpec, p: int, q: int) -> int:
    """Stored entries of ``koszul_matrix(spec, p, q)``."""
    n = ehrhart_count(spec, 1)
    return comb(n, p + 1) * ehrhart_count(spec, q) * (p + 1) if p + 1 <= n else 0


def koszul_matrix(spec: SurfaceSpec, p: int, q: int, prime: int = DEFAULT_PRIME,
                  limit: int | None = None) -> SparseMatrix:
    """Matrix of wedge^{p+1} V (x) S_q -> wedge^p V (x) S_{q+1}.

    e_{i_0..i_p} (x) m  maps to  sum_j (-1)^j e_{i_0..^i_j..i_p} (x) v_{i_j} m.
    Columns are indexed by (wedge index) * dim S_q + (monomial index), rows
    likewise with S_{q+1}; wedge tuples are in colex order.
    """
    n = ehrhart_count(spec, 1)
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}, got {p}")
    if q not in (0, 1, 2, 3):
        raise ValueError(f"q must be one of 0..3, got {q}")
    limit = max_entries() if limit is None else limit
    size = entry_count(spec, p, q)
    if size > limit:
        raise ResourceLimit(f"koszul_matrix{spec, p, q} needs {size} entries (limit {limit})")

    h_src, h_dst = ehrhart_count(spec, q), ehrhart_count(spec, q + 1)
    rows = comb(n, p) * h_dst
    cols = comb(n, p + 1) * h_src
    if size == 0:
        return SparseMatrix.from_arrays(rows, cols, [], [], [], prime)

    shift = _shift_table(spec, q)
    target = _exterior_index(n, p)
    mono = np.arange(h_src, dtype=np.int64)
    r_parts, c_parts, v_parts = [], [], []
    for w_idx, wedge in enumerate(exterior_basis(n, p + 1)):
        col_block = w_idx * h_src + mono
        for j, i in enumerate(wedge):
            t_idx = target[wedge[:j] + wedge[j + 1:]]
            r_parts.append(t_idx * h_dst + shift[i])
            c_parts.append(col_block)
            v_parts.append(np.full(h_src, 1 if j % 2 == 0 else -1, dtype=np.int64))
    return SparseMatrix.from_arrays(rows, cols, np.concatenate(r_parts),
                                    np.concatenate(c_parts), np.concatenate(v_parts), prime)


@lru_cache(maxsize=4096)
def _differential_rank(spec: SurfaceSpec, p: int, q: int, prime: int, limit: int) -> int:
    n = ehrhart_count(spec, 1)
    if p < 0 or p + 1 > n or q < 0:
        return 0
    return rank_mod_p(koszul_matrix(spec, p, q, prime, limit))


def _check_feasible(spec: SurfaceSpec, p: int, q: int, max_r: int):
    r = ehrhart_count(spec, 1) - 1
    if r > max_r:
        raise ResourceLimit(f"oracle limited to r <= {max_r}; {spec} has r = {r}")
    if not 0 <= p <= r:
        raise ValueError(f"p must lie in 0..{r}, got {p}")
    if q not in (0, 1, 2, 3):
        raise ValueError(f"q must be one of 0..3, got {q}")


def stratum(spec: SurfaceSpec, p: int, q: int, prime: int = DEFAULT_PRIME,
            max_r: int = MAX_ORACLE_R) -> KoszulStratum:
    _check_feasible(spec, p, q, max_r)
    n = ehrhart_count(spec, 1)
    limit = max_entries()
    return KoszulStratum(
        spec=spec, p=p, q=q,
        left_dim=comb(n, p + 1) * ehrhart_count(spec, q - 1),
        mid_dim=comb(n, p) * ehrhart_count(spec, q),
        right_dim=comb(n, p - 1) * ehrhart_count(spec, q + 1) if p >= 1 else 0,
        left_rank=_differential_rank(spec, p, q - 1, prime, limit),
        right_rank=_differential_rank(spec, p - 1, q, prime, limit),
    )


def oracle_kpq(spec: SurfaceSpec, p: int, q: int, prime: int = DEFAULT_PRIME,
               max_r: int = MAX_ORACLE_R) -> int:
    """dim K_{p,q}(X_delta; L_d) computed over GF(prime)."""
    return stratum(spec, p, q, prime, max_r).dimension


def check_complex(spec: SurfaceSpec, p: int, q: int, prime: int = DEFAULT_PRIME) -> bool:
    """The two differentials around stratum (p, q) compose to zero."""
    n = ehrhart_count(spec, 1)
    if p < 1 or q < 1 or p + 1 > n:
        return True
    limit = max_entries()
    return compose_is_zero(koszul_matrix(spec, p - 1, q, prime, limit),
                           koszul_matrix(spec, p, q - 1, prime, limit))


def oracle_table(spec: SurfaceSpec, prime: int = DEFAULT_PRIME, verify: bool = False,
                 max_r: int = MAX_ORACLE_R) -> BettiTable:
    """Full Betti table from Koszul cohomology.

    Row q = 3 is computed too; it must vanish and is left out of the result.
    With ``verify`` every pair of consecutive differentials is checked to
    compose to zero.
    """
    r = ehrhart_count(spec, 1) - 1
    _check_feasible(spec, 0, 0, max_r)
    entries = {}
    for q in range(4):
        for p in range(r + 1):
            if verify and not check_complex(spec, p, q, prime):
                raise AssertionError(f"d^2 != 0 at stratum {(p, q)} of {spec}")
            s = stratum(spec, p, q, prime, max_r)
            if s.left_rank > s.mid_dim - s.right_rank:
                raise AssertionError(f"image exceeds kernel at stratum {(p, q)} of {spec}")
            if q == 3:
                if s.dimension:
                    raise AssertionError(f"row 3 nonzero at p = {p} for {spec}")
            else:
                entries[(p, q)] = s.dimension
    return BettiTable(r=r, entries=entries, provenance=Provenance.ORACLE)
