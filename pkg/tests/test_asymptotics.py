import math

import pytest
from hypothesis import given, settings, strategies as st

from toricbetti.asymptotics import (clt_value, decay_fit, effective_a, lemma_lhs, log_bigint,
                                    row2_threshold, scale_factor_F1, scaled_row, theorem_check)
from toricbetti.errors import DomainError, InsufficientData
from toricbetti.lattice import SurfaceSpec, constants


def test_effective_a():
    assert effective_a(100, 50) == 0.0
    assert effective_a(100, 55) == 1.0
    assert effective_a(11, 7) == pytest.approx(0.904534, abs=1e-6)


def test_f1_values():
    assert scale_factor_F1(11).value == pytest.approx(0.0011071, rel=1e-4)
    assert scale_factor_F1(1).value == pytest.approx(3.7599, rel=1e-4)
    big = scale_factor_F1(100_000)
    assert big.value is None
    assert big.log_value == pytest.approx(-100_000 * math.log(2), rel=1e-3)


@settings(max_examples=200)
@given(st.integers(1, 2 ** 53 - 1), st.integers(1, 60))
def test_log_space_fidelity(raw, r):
    f = scale_factor_F1(r)
    direct = raw * f.value
    via_log = math.exp(log_bigint(raw) + f.log_value)
    assert via_log == pytest.approx(direct, rel=1e-10)


def test_log_bigint_huge():
    n = 3 ** 5000
    assert log_bigint(n) == pytest.approx(5000 * math.log(3), rel=1e-14)


def test_scaled_scroll_rows():
    row = scaled_row(SurfaceSpec(0, 1), 2)
    assert all(s.scaled == 0 for s in row.samples)
    row1 = scaled_row(SurfaceSpec(0, 1), 1)
    assert row1.samples[0].p == 0 and row1.samples[0].scaled == 0
    for s in row1.samples:
        assert s.a_eff == (2 * s.p - row1.r) / math.sqrt(row1.r)
        assert (s.scaled == 0) == (s.raw == 0)


def test_scaled_center_d200():
    spec = SurfaceSpec(0, 200)
    r = constants(spec).r
    row = scaled_row(spec, 1, window=1.0)
    s = next(x for x in row.samples if x.p == round(r / 2))
    assert abs(s.scaled - math.exp(-s.a_eff ** 2 / 2)) <= 0.2


def test_large_r_restricts_window():
    row = scaled_row(SurfaceSpec(0, 400), 1)
    assert all(abs(s.a_eff) <= 6 for s in row.samples)


@pytest.mark.parametrize("d", [50, 100, 200])
def test_gaussian_dominance(d):
    spec = SurfaceSpec(0, d)
    r = constants(spec).r
    row = scaled_row(spec, 1, window=4.0)
    center = min(row.samples, key=lambda s: abs(s.a_eff)).scaled
    assert all(s.scaled <= center * (1 + 10 / math.sqrt(r)) for s in row.samples)


def test_clt_examples():
    assert clt_value(100, 50).value == pytest.approx(0.99751, abs=1e-4)
    s = clt_value(100, 50, -2, 0)
    assert s.target == 0.25 and abs(s.value / 0.25 - 1) < 0.1
    assert clt_value(10, 30).value == 0.0


@pytest.mark.parametrize("r", [1, 2, 17, 100, 499, 500])
def test_clt_symmetry(r):
    assert all(clt_value(r, p).value == clt_value(r, r - p).value for p in range(r + 1))


def test_lemma_examples():
    assert lemma_lhs(12345, 0.0) == 1.0
    assert lemma_lhs(10_000, 1.0) == pytest.approx(math.exp(-0.5), rel=0.01)
    assert lemma_lhs(100, 2.0) == pytest.approx(math.exp(-2), rel=0.25)
    with pytest.raises(DomainError):
        lemma_lhs(4, 2.0)


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_lemma_monotone_convergence(a):
    rs = [10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5]
    vals = [lemma_lhs(r, a) for r in rs]
    assert all(0 < v <= 1 for v in vals)
    errs = [abs(v - math.exp(-a * a / 2)) for v in vals]
    assert all(b < e for e, b in zip(errs, errs[1:]))
    assert errs[-1] <= 5 * 10 / math.sqrt(rs[-1])


def test_decay_fit_power_laws():
    rs = [100, 400, 1600, 6400, 25600]
    assert decay_fit([(r, 3 / math.sqrt(r)) for r in rs]).slope == pytest.approx(-0.5, abs=1e-6)
    assert decay_fit([(r, 7 / r) for r in rs]).slope == pytest.approx(-1.0, abs=1e-6)


def test_decay_fit_clt_center():
    # the 1/sqrt(r) term cancels at a = 0, leaving O(1/r)
    errs = [(r, abs(clt_value(r, r // 2).ratio - 1)) for r in (100, 400, 1600, 6400)]
    assert -1.3 <= decay_fit(errs).slope <= -0.7


def test_decay_fit_errors():
    with pytest.raises(InsufficientData):
        decay_fit([(1, 1), (2, 1), (3, 1)])
    with pytest.raises(InsufficientData):
        decay_fit([(1, 1), (2, 1), (3, 1), (4, 0)])


def test_theorem_check_small():
    rep = theorem_check(0, [3, 30], rows=(2,))
    by_d = {x.d: x for x in rep.row2}
    assert by_d[3].support == (8, 9) and by_d[3].r - 2 == 9
    assert by_d[30].central_zero and by_d[30].support == (62, 90)
    assert "no decay fit" not in str(rep)
    with pytest.raises(ValueError):
        theorem_check(0, [5, 3])


def test_row2_threshold_is_exact():
    t = row2_threshold(0, 2.0)
    assert t == 9
    assert not theorem_check(0, [t - 1], rows=(2,)).row2[0].predicted_zero


@pytest.mark.parametrize("delta", range(6))
def test_closed_edge_term_matches_enumeration(delta):
    from toricbetti.asymptotics import _closed_edge_term, _edge_p, _row2_max_term
    from toricbetti.exact_betti import ALL_VARIANTS
    for d in range(1, 60, 7):
        spec = SurfaceSpec(delta, d)
        for v in ALL_VARIANTS:
            for w in (0.5, 2.0, 5.0):
                edge = _edge_p(constants(spec).r, w)
                assert _closed_edge_term(delta, d, w, v) == _row2_max_term(spec, edge, v)


def test_wide_window_threshold_is_fast():
    # max-term ~ -d/2 + w sqrt(3d)/2 turns negative near d = 3 w^2
    t = row2_threshold(0, 100.0)
    assert 29_000 < t < 31_000


@settings(max_examples=200)
@given(st.integers(1, 5000), st.floats(0.01, 50))
def test_edge_p(r, w):
    from toricbetti.asymptotics import _edge_p
    ps = [p for p in range(r + 1) if abs(effective_a(r, p)) <= w]
    assert _edge_p(r, w) == (max(ps) if ps else None)
