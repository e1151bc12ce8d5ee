"""Lattice-point geometry of the trapezoids Delta_d and their dilates.

The surface X_delta has fan rays (1,0), (0,1), (0,-1), (-2,delta); the divisor
L_d = d*D_1 + D_2 has polytope

    Delta_d = conv{(0,0), (d,0), (0,2), (d+delta,2)}.

Every quantity the rest of the package needs (bases of H^0(kL_d), Hilbert
function values, r_d and friends) is read off from these polygons.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple


@dataclass(frozen=True, order=True)
class SurfaceSpec:
    """The pair (delta, d) selecting the surface X_delta and the bundle L_d."""

    delta: int
    d: int

    def __post_init__(self):
        if not isinstance(self.delta, int) or not isinstance(self.d, int):
            raise TypeError("delta and d must be integers")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1 (very ampleness), got {self.d}")

    def __str__(self):
        return f"(delta={self.delta}, d={self.d})"


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class PolytopeConstants:
    r: int
    n: int
    c_delta: Fraction
    e_delta: Fraction
    n1_paper: Fraction
    interior: int
    height_one: int


def gcd2(delta: int) -> int:
    # gcd(0, 2) = 2 by convention, which makes C_0 = 2 and matches P^1 x P^1.
    return gcd(delta, 2)


def _row_end(spec: SurfaceSpec, k: int, y: int) -> int:
    """Largest x with (x, y) in k*Delta_d (slanted edge 2x <= 2kd + y*delta)."""
    return (2 * k * spec.d + y * spec.delta) // 2


@lru_cache(maxsize=256)
def _points(spec: SurfaceSpec, k: int) -> tuple[LatticePoint, ...]:
    return tuple(
        LatticePoint(x, y)
        for y in range(2 * k + 1)
        for x in range(_row_end(spec, k, y) + 1)
    )


def lattice_points(spec: SurfaceSpec, k: int = 1) -> list[LatticePoint]:
    """Integer points of k*Delta_d in lexicographic (y, x) order.

    k = 0 gives the single point (0, 0).
    """
    if k < 0:
        raise ValueError(f"dilation factor must be >= 0, got {k}")
    return list(_points(spec, k))


def point_index(spec: SurfaceSpec, k: int) -> dict[LatticePoint, int]:
    """Map each point of k*Delta_d to its position in ``lattice_points``."""
    return {pt: i for i, pt in enumerate(_points(spec, k))}


def ehrhart_count(spec: SurfaceSpec, k: int) -> int:
    """#(k*Delta_d cap Z^2) from the Ehrhart polynomial A k^2 + (B/2) k + 1.

    A = 2d + delta is the area and B = 2d + delta + 2 + gcd(delta, 2) the
    number of boundary lattice points.  Negative k gives 0 (H^0 of a negative
    multiple of an ample bundle vanishes), which the Koszul code relies on.
    """
    if k < 0:
        return 0
    area = 2 * spec.d + spec.delta
    boundary = 2 * spec.d + spec.delta + 2 + gcd2(spec.delta)
    # boundary is always even here, so the division is exact
    return area * k * k + (boundary // 2) * k + 1


def constants(spec: SurfaceSpec) -> PolytopeConstants:
    """All polytope constants of Delta_d, cross-checking enumeration against closed forms."""
    d, delta = spec.d, spec.delta
    pts = _points(spec, 1)
    n = len(pts)
    if n != ehrhart_count(spec, 1):
        raise AssertionError(f"enumeration {n} != Ehrhart count for {spec}")
    r = n - 1

    g = gcd2(delta)
    c_delta = Fraction(3 * delta, 2) + Fraction(g, 2) + 1
    e_delta = Fraction(g, 3) - Fraction(1, 3)
    if c_delta.denominator != 1 or r != 3 * d + c_delta:
        raise AssertionError(f"r = {r} disagrees with 3d + C_delta = {3 * d + c_delta}")

    # strictly inside: 0 < y < 2, x > 0 and 2x < 2d + y*delta
    interior = sum(1 for x, y in pts if 0 < y < 2 and x > 0 and 2 * x < 2 * d + y * delta)
    height_one = sum(1 for _, y in pts if y == 1)
    return PolytopeConstants(
        r=r,
        n=n,
        c_delta=c_delta,
        e_delta=e_delta,
        n1_paper=Fraction(r, 3) + e_delta,
        interior=interior,
        height_one=height_one,
    )
