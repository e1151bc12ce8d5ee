"""Convergence of Betti rows to a Gaussian profile.

Column p of a row of width r sits at the normal coordinate
a_eff = (2p - r)/sqrt(r), and row 1 scaled by

    F1(r) = 3 sqrt(2 pi) / (2^r sqrt(r))

should approach exp(-a_eff^2/2) with an O(1/sqrt(r)) error.  Everything here
works in log space so rows with r in the thousands stay representable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, InsufficientData
from .exact_betti import (VALIDATED_VARIANT, FormulaVariant, N1Interpretation, binomial,
                          betti_table, n1_value, row1_from_numerator, row2)
from .lattice import SurfaceSpec, constants

LN2 = math.log(2.0)
# above this r, scaled_row only evaluates the window |a_eff| <= FULL_ROW_WINDOW
FULL_ROW_MAX_R = 1000
FULL_ROW_WINDOW = 6.0


def log_bigint(n: int) -> float:
    """Natural log of a positive integer from its top 64 bits and binary exponent."""
    if n <= 0:
        raise ValueError("log_bigint needs a positive integer")
    shift = max(n.bit_length() - 64, 0)
    return math.log(n >> shift) + shift * LN2


def effective_a(r: int, p: int) -> float:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return (2 * p - r) / math.sqrt(r)


@dataclass(frozen=True)
class ScaleFactor:
    log_value: float
    value: float | None  # None when exp underflows


def scale_factor_F1(r: int) -> ScaleFactor:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    log_f = math.log(3.0) + 0.5 * math.log(2 * math.pi) - r * LN2 - 0.5 * math.log(r)
    value = math.exp(log_f)
    return ScaleFactor(log_f, value if value > 0.0 else None)


def _scaled(raw: int, log_scale: float) -> float:
    return math.exp(log_bigint(raw) + log_scale) if raw > 0 else 0.0


# -- scaled rows --------------------------------------------------------------

@dataclass(frozen=True)
class RowSample:
    p: int
    a_eff: float
    raw: int
    scaled: float


@dataclass(frozen=True)
class RowDistribution:
    spec: SurfaceSpec
    q: int
    samples: tuple[RowSample, ...]
    scale_description: str

    @property
    def r(self) -> int:
        return constants(self.spec).r


def _row_value(spec, p, q, variant):
    if q == 1:
        return row1_from_numerator(spec, p, variant) if p >= 1 else 0
    return row2(spec, p, variant)


def scaled_row(spec: SurfaceSpec, q: int, variant: FormulaVariant = None,
               window: float | None = None) -> RowDistribution:
    """Row q of the exact table, scaled by F1(r) and paired with a_eff.

    Both rows use F1 so row 2 can be compared against row 1 on one axis.
    """
    if q not in (1, 2):
        raise ValueError(f"q must be 1 or 2, got {q}")
    variant = variant or VALIDATED_VARIANT
    r = constants(spec).r
    if window is None and r > FULL_ROW_MAX_R:
        window = FULL_ROW_WINDOW
    if window is None:
        table = betti_table(spec, variant)
        ps = range(r + 1)
        raw = {p: table[p, q] for p in ps}
    else:
        half = window * math.sqrt(r) / 2
        ps = range(max(0, math.ceil(r / 2 - half)), min(r, math.floor(r / 2 + half)) + 1)
        raw = {p: _row_value(spec, p, q, variant) for p in ps}
    log_f = scale_factor_F1(r).log_value
    samples = tuple(RowSample(p, effective_a(r, p), raw[p], _scaled(raw[p], log_f)) for p in ps)
    return RowDistribution(spec, q, samples, "F1(r) = 3*sqrt(2*pi)/(2^r*sqrt(r))")


# -- local limit theorem ------------------------------------------------------

@dataclass(frozen=True)
class CltSample:
    r: int
    p: int
    c1: int
    c2: int
    value: float
    target: float

    @property
    def a_eff(self) -> float:
        return effective_a(self.r, self.p)

    @property
    def ratio(self) -> float:
        return self.value / self.target


def clt_value(r: int, p: int, c1: int = 0, c2: int = 0) -> CltSample:
    """sqrt(2 pi r)/2^(r+1) * C(r+c1, p+c2) against 2^c1 exp(-a_eff^2/2)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    a = effective_a(r, p)
    target = 2.0 ** c1 * math.exp(-a * a / 2)
    b = binomial(r + c1, p + c2)
    value = 0.0
    if b:
        value = math.exp(0.5 * math.log(2 * math.pi * r) - (r + 1) * LN2 + log_bigint(b))
    return CltSample(r, p, c1, c2, value, target)


def lemma_lhs(r: int, a: float) -> float:
    """(r/(r + a sqrt r))^((r + a sqrt r)/2) * (r/(r - a sqrt r))^((r - a sqrt r)/2)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if abs(a) >= math.sqrt(r):
        raise DomainError(f"need |a| < sqrt(r); got a={a}, r={r}")
    if a == 0:
        return 1.0
    x = a / math.sqrt(r)
    log_val = -(r / 2) * ((1 + x) * math.log1p(x) + (1 - x) * math.log1p(-x))
    return math.exp(log_val)


# -- error decay --------------------------------------------------------------

@dataclass(frozen=True)
class DecayFit:
    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float


def decay_fit(samples: Sequence[tuple[float, float]]) -> DecayFit:
    """Least-squares slope of log|error| against log r."""
    samples = list(samples)
    if len(samples) < 4:
        raise InsufficientData(f"need at least 4 samples, got {len(samples)}")
    if any(r <= 0 or err <= 0 for r, err in samples):
        raise InsufficientData("r and error must be positive")
    pts = tuple((math.log(r), math.log(err)) for r, err in samples)
    x, y = np.array(pts).T
    slope, intercept = np.polyfit(x, y, 1)
    return DecayFit(pts, float(slope), float(intercept))


# -- desk-scale theorem checks ------------------------------------------------

@dataclass(frozen=True)
class Row1Result:
    d: int
    r: int
    max_error: float
    worst_a: float
    samples: int


@dataclass(frozen=True)
class Row2Result:
    d: int
    r: int
    support: tuple[int, int] | None
    central_zero: bool
    predicted_zero: bool
    peak_p: int | None


@dataclass(frozen=True)
class TheoremReport:
    delta: int
    a_window: float
    variant: FormulaVariant
    row1: tuple[Row1Result, ...] = ()
    row1_fit: DecayFit | None = None
    row2: tuple[Row2Result, ...] = ()
    row2_threshold: int | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def row1_decreasing(self) -> bool:
        errs = [x.max_error for x in self.row1]
        return all(b < a for a, b in zip(errs, errs[1:]))

    @property
    def row2_central_vanishing(self) -> bool:
        """Row 2 vanishes on the window for every tested d past the threshold."""
        past = [x for x in self.row2 if self.row2_threshold is not None
                and x.d >= self.row2_threshold]
        return all(x.central_zero for x in past)

    def format(self) -> str:
        lines = [f"delta={self.delta}  |a_eff| <= {self.a_window}  variant {self.variant}"]
        if self.row1:
            lines.append("row 1: d, r, max |F1*k - exp(-a^2/2)|, worst a_eff, K = err*sqrt(r)")
            for x in self.row1:
                lines.append(f"  {x.d:>5} {x.r:>6} {x.max_error:.6e} {x.worst_a:+.4f} "
                             f"{x.max_error * math.sqrt(x.r):.4f}")
            if self.row1_fit is not None:
                lines.append(f"  decay slope in log r: {self.row1_fit.slope:.4f}")
        if self.row2:
            lines.append(f"row 2: vanishing threshold d >= {self.row2_threshold}")
            for x in self.row2:
                sup = f"[{x.support[0]}, {x.support[1]}]" if x.support else "empty"
                lines.append(f"  d={x.d:>5} r={x.r:>6} support {sup} peak {x.peak_p} "
                             f"central zero {x.central_zero}")
        lines.extend(self.notes)
        return "\n".join(lines)

    __str__ = format


def _window(r: int, a_window: float) -> range:
    half = a_window * math.sqrt(r) / 2
    return range(max(0, math.ceil(r / 2 - half)), min(r, math.floor(r / 2 + half)) + 1)


def row1_error(spec: SurfaceSpec, a_window: float, variant: FormulaVariant = None) -> Row1Result:
    variant = variant or VALIDATED_VARIANT
    r = constants(spec).r
    log_f = scale_factor_F1(r).log_value
    worst, worst_a, count = -1.0, 0.0, 0
    for p in _window(r, a_window):
        a = effective_a(r, p)
        if abs(a) > a_window:
            continue
        raw = row1_from_numerator(spec, p, variant) if p >= 1 else 0
        err = abs(_scaled(raw, log_f) - math.exp(-a * a / 2))
        count += 1
        if err > worst:
            worst, worst_a = err, a
    return Row1Result(spec.d, r, worst, worst_a, count)


def _row2_max_term(spec: SurfaceSpec, p: int, variant: FormulaVariant) -> int:
    c = constants(spec)
    return p - c.n + n1_value(spec, variant.n1_interpretation) + variant.q2_max_shift


def _edge_p(r: int, a_window: float) -> int | None:
    """Largest p in 0..r with |a_eff| <= a_window, or None."""
    p = min(r, math.floor((r + a_window * math.sqrt(r)) / 2) + 1)
    while p >= 0 and effective_a(r, p) > a_window:
        p -= 1
    return p if p >= 0 and effective_a(r, p) >= -a_window else None


def row2_predicted_zero(spec: SurfaceSpec, a_window: float, variant: FormulaVariant = None) -> bool:
    """The max-term is <= 0 at the right end of the window, so row 2 vanishes there."""
    variant = variant or VALIDATED_VARIANT
    edge = _edge_p(constants(spec).r, a_window)
    return edge is None or _row2_max_term(spec, edge, variant) <= 0


def _closed_edge_term(delta: int, d: int, a_window: float, variant: FormulaVariant):
    # closed forms for r and nu (checked against enumeration in the lattice tests),
    # so the threshold scan never enumerates large polygons
    g = math.gcd(delta, 2)
    r = 3 * d + (3 * delta + g) // 2 + 1
    height_one = d + delta // 2 + 1
    nu = {
        N1Interpretation.GEOMETRIC_INTERIOR: height_one - (2 if delta % 2 == 0 else 1),
        N1Interpretation.HEIGHT_ONE: height_one,
        N1Interpretation.PAPER_ALGEBRAIC: height_one,
    }[variant.n1_interpretation]
    edge = _edge_p(r, a_window)
    return None if edge is None else edge - (r + 1) + nu + variant.q2_max_shift


def row2_threshold(delta: int, a_window: float, variant: FormulaVariant = None,
                   search_limit: int = 1_000_000) -> int:
    """Smallest d0 with the window vanishing predicted for every d in [d0, search_limit].

    The max-term at the right window edge behaves like -r/6 + a_window*sqrt(r)/2,
    so once it is negative it stays negative; the scan just makes that explicit.
    """
    variant = variant or VALIDATED_VARIANT
    last_bad = 0
    for d in range(1, search_limit + 1):
        term = _closed_edge_term(delta, d, a_window, variant)
        if term is not None and term > 0:
            last_bad = d
        elif d > 4 * last_bad + 100:
            break
    return last_bad + 1


def row2_profile(spec: SurfaceSpec, a_window: float, variant: FormulaVariant = None) -> Row2Result:
    variant = variant or VALIDATED_VARIANT
    r = constants(spec).r
    values = [row2(spec, p, variant) for p in range(r + 1)]
    nonzero = [p for p, v in enumerate(values) if v]
    central = [p for p in _window(r, a_window) if abs(effective_a(r, p)) <= a_window]
    return Row2Result(
        d=spec.d,
        r=r,
        support=(nonzero[0], nonzero[-1]) if nonzero else None,
        central_zero=all(values[p] == 0 for p in central),
        predicted_zero=row2_predicted_zero(spec, a_window, variant),
        peak_p=max(nonzero, key=lambda p: values[p]) if nonzero else None,
    )


def theorem_check(delta: int, d_list: Sequence[int], a_window: float = 2.0,
                  variant: FormulaVariant = None, rows: Sequence[int] = (1, 2)) -> TheoremReport:
    """Row-1 Gaussian convergence and row-2 central vanishing over ``d_list``."""
    variant = variant or VALIDATED_VARIANT
    d_list = list(d_list)
    if any(b < a for a, b in zip(d_list, d_list[1:])):
        raise ValueError("d_list must be nondecreasing")
    row1_results, fit, notes = (), None, []
    if 1 in rows:
        row1_results = tuple(row1_error(SurfaceSpec(delta, d), a_window, variant) for d in d_list)
        usable = [(x.r, x.max_error) for x in row1_results if x.max_error > 0]
        if len(usable) >= 4:
            fit = decay_fit(usable)
        else:
            notes.append("row 1: fewer than 4 values of d, no decay fit")
    row2_results, threshold = (), None
    if 2 in rows:
        row2_results = tuple(row2_profile(SurfaceSpec(delta, d), a_window, variant) for d in d_list)
        threshold = row2_threshold(delta, a_window, variant)
    return TheoremReport(delta, a_window, variant, row1_results, fit, row2_results,
                         threshold, tuple(notes))
