"""Independent oracles shared by the test modules."""
from math import gcd

from toricbetti.lattice import SurfaceSpec


def small_specs(max_r):
    """All (delta, d) with r = 3d + C_delta at most max_r."""
    out = []
    for delta in range(0, 2 * max_r):
        c = (3 * delta + gcd(delta, 2)) // 2 + 1
        for d in range(1, max_r):
            if 3 * d + c <= max_r:
                out.append(SurfaceSpec(delta, d))
    return out


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hstar_numerator(spec, n, interior):
    """(1 + (n-3) t + interior t^2) (1 - t)^(r-2), from the h*-vector of the polygon."""
    poly = [1, n - 3, interior]
    for _ in range(n - 3):
        poly = poly_mul(poly, [1, -1])
    return poly


def table_numerator(table, length):
    """sum_p (-1)^p sum_q k_{p,q} t^{p+q}."""
    out = [0] * length
    for p in range(table.r + 1):
        for q in range(3):
            v = table[p, q]
            if v:
                out[p + q] += -v if p % 2 else v
    return out


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def unimodal(values):
    """Nondecreasing then nonincreasing, ignoring the zero tails."""
    nz = [i for i, v in enumerate(values) if v]
    vals = values[nz[0]:nz[-1] + 1]
    i = 0
    while i + 1 < len(vals) and vals[i + 1] >= vals[i]:
        i += 1
    while i + 1 < len(vals) and vals[i + 1] <= vals[i]:
        i += 1
    return i == len(vals) - 1
