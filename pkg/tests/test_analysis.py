import math

import numpy as np
import pytest

from chtg.analysis import (OUT_OF_CRITERION, TYPE_B, TYPE_B_PRODUCT_BOUND,
                           Certificate, NotInFamily, alpha_of_t, bisect,
                           cos_of_t, family_c_a_printed, family_c_a_report,
                           family_membership, family_quartic, family_type,
                           non_discreteness_certificate, rho_123_weighted,
                           scan_elliptic, sigma_lower_bound_check, t_of_alpha,
                           t_of_cos, thresholds)
from chtg.classify import HYPERBOLIC, REGULAR_ELLIPTIC
from chtg.traces import sigma_closed
from chtg.triangle import TriangleParams

from helpers import draw_params


def test_t_alpha_conversions():
    assert t_of_alpha(math.pi) == pytest.approx(0.0, abs=1e-12)
    assert t_of_alpha(math.pi / 2) == pytest.approx(1.0)
    assert t_of_alpha(0.0) == math.inf
    p = TriangleParams(1, 1, 1).with_cos_alpha(61 / 64)
    assert t_of_alpha(p.alpha) ** 2 == pytest.approx(125 / 3)
    for t in (-3.0, -0.5, 0.0, 0.7, 4.0):
        assert t_of_alpha(alpha_of_t(t)) == pytest.approx(t, abs=1e-12)
        assert cos_of_t(t) == pytest.approx(math.cos(alpha_of_t(t)))
    assert t_of_cos(1.0) == math.inf
    assert t_of_cos(-1.5) == -math.inf
    assert t_of_cos(0.0) == pytest.approx(1.0)


def test_thresholds_ideal():
    th = thresholds(TriangleParams(1, 1, 1))
    assert th.c_inf == pytest.approx(1.0)
    assert th.t_inf == math.inf
    assert th.c_a == pytest.approx(1.0)
    assert th.t_a == math.inf
    assert th.family_member
    a4, a2, a0 = th.f_b
    assert a4 == pytest.approx(0.0)
    assert a2 == pytest.approx(1024 * (-3))
    assert a0 == pytest.approx(1024 * 125)
    assert th.t_b_minus == pytest.approx(math.sqrt(125 / 3))
    assert th.t_b_plus == math.inf


def test_thresholds_44inf():
    th = thresholds(TriangleParams.from_signature(4, 4, math.inf))
    assert th.c_a == pytest.approx(0.5)
    assert th.t_a == pytest.approx(math.sqrt(3.0))
    assert th.c_inf == pytest.approx(1.0)
    assert th.family_member


def test_sigma3_crosses_three_at_c_a(rng):
    # the trace of the test word crosses the elliptic bound 3 exactly at c_A
    for _ in range(20):
        p = draw_params(rng, lo=0.6, hi=0.95)
        th = thresholds(p)
        if not -1.0 < th.c_a < 1.0:
            continue
        at = p.with_cos_alpha(th.c_a)
        assert sigma_closed(at, 3) == pytest.approx(3.0, abs=1e-9)


def test_family_double_root_at_seven_eighths():
    r = math.sqrt(7 / 8)
    th = thresholds(TriangleParams(r, r, 1.0))
    assert th.family_member
    assert abs(th.r_product - 7 / 8) < 1e-12
    assert th.t_b_minus == pytest.approx(math.sqrt(27.0), rel=1e-9)
    assert th.t_b_plus == pytest.approx(math.sqrt(27.0), rel=1e-9)
    assert family_quartic(7 / 8, math.sqrt(27.0)) == pytest.approx(0.0, abs=1e-6)


def test_family_quartic_against_rho_route(rng):
    for big_r in (0.8, 0.95, 1.2):
        r = math.sqrt(big_r)
        for t in np.linspace(-15, 15, 121):
            got = rho_123_weighted((r, r, 1.0), float(t))
            want = family_quartic(big_r, float(t))
            assert abs(got - want) <= 1e-8 * max(1.0, abs(want))


def test_family_sign_patterns():
    grid = np.linspace(-12, 12, 241)
    # R < 7/8: positive everywhere
    assert all(family_quartic(0.8, float(t)) > 0 for t in grid)
    # 7/8 < R < 1: positive inside t_b-, negative between, positive beyond t_b+
    th = thresholds(TriangleParams(math.sqrt(0.95), math.sqrt(0.95), 1.0))
    tm, tp = th.t_b_minus, th.t_b_plus
    for t in grid:
        f = family_quartic(0.95, float(t))
        if abs(abs(t) - tm) < 0.1 or abs(abs(t) - tp) < 0.1:
            continue
        if abs(t) < tm or abs(t) > tp:
            assert f > 0
        else:
            assert f < 0
    # R > 1: positive inside t_b+, negative beyond
    th = thresholds(TriangleParams(math.sqrt(1.2), math.sqrt(1.2), 1.0))
    assert th.t_b_minus is None
    tp = th.t_b_plus
    for t in grid:
        f = family_quartic(1.2, float(t))
        if abs(abs(t) - tp) < 0.1:
            continue
        assert (f > 0) == (abs(t) < tp)


def test_goldman_parker_root_by_bisection():
    t_star = bisect(lambda t: rho_123_weighted((1.0, 1.0, 1.0), t), 6.0, 7.0,
                    tol=1e-14)
    assert abs(cos_of_t(t_star) - 61 / 64) < 1e-10
    assert abs(t_star ** 2 - 125 / 3) < 1e-8


def test_type_b_proof_identity():
    # f_B at the degenerate threshold point t_A° = sqrt((1+R)/(1-R))
    for big_r in np.linspace(0.88, 0.999, 25):
        t_a0 = math.sqrt((1 + big_r) / (1 - big_r))
        got = family_quartic(float(big_r), t_a0)
        want = -2048.0 * big_r / (1 - big_r) * (16 * big_r ** 2 - 13 * big_r - 2)
        assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_sigma_lower_bound(rng):
    for _ in range(20):
        p = draw_params(rng)
        assert sigma_lower_bound_check(p.r)
    # exceptional boundary: 2 r1 r2 = r3 at alpha = 0 gives sigma_3 = -1
    r = (0.8, 0.7, 2 * 0.8 * 0.7)
    assert sigma_lower_bound_check(r)
    p0 = TriangleParams(*r, alpha=0.0)
    assert sigma_closed(p0, 3) == pytest.approx(-1.0)
    # ideal radii: sigma_k = 19 - 16 cos(alpha) >= 3
    for alpha in np.linspace(0.1, 2 * math.pi - 0.1, 20):
        p = TriangleParams(1, 1, 1, alpha=float(alpha))
        for k in (1, 2, 3):
            s = sigma_closed(p, k)
            assert s == pytest.approx(19 - 16 * math.cos(float(alpha)))
            assert s >= 3.0 - 1e-9


def test_family_membership_and_types():
    assert family_membership((1.0, 1.0, 1.0))
    p14 = TriangleParams.from_signature(14, 14, math.inf)
    assert family_membership(p14.r)
    assert family_type(p14) == TYPE_B
    assert p14.r_product >= TYPE_B_PRODUCT_BOUND
    p12 = TriangleParams.from_signature(12, 24, 24)
    assert family_type(p12) == TYPE_B
    p13 = TriangleParams.from_signature(13, 13, math.inf)
    assert family_type(p13) == OUT_OF_CRITERION
    assert p13.r_product < TYPE_B_PRODUCT_BOUND
    ultra = TriangleParams.from_lengths(1.0, 1.0, 2.0)
    assert family_membership(ultra.r)
    assert family_type(ultra) == TYPE_B
    assert family_type(TriangleParams(1, 1, 1)) == TYPE_B
    with pytest.raises(NotInFamily):
        family_type(TriangleParams.from_signature(4, 4, 4))


def test_family_c_a_shortcut():
    # angle case: the printed shortcut matches the general formula
    for sig in ((14, 14, math.inf), (12, 24, 24), (8, 16, 16)):
        p = TriangleParams.from_signature(*sig)
        rep = family_c_a_report(p)
        assert rep["consistent"]
    # ultra-parallel case: the printed formula disagrees (unhalved argument);
    # the mismatch is surfaced and the half-argument variant matches
    u = TriangleParams.from_lengths(0.8, 1.3, 2.1)
    assert family_membership(u.r)
    rep = family_c_a_report(u)
    assert not rep["consistent"]
    assert rep["half_argument"] == pytest.approx(rep["general"], abs=1e-9)
    # equal distances make the printed and general values both 1
    eq = TriangleParams.from_lengths(1.0, 1.0, 2.0)
    rep = family_c_a_report(eq)
    assert rep["consistent"]
    assert rep["general"] == pytest.approx(1.0)


def test_certificate_ideal_never():
    p = TriangleParams(1, 1, 1).with_cos_alpha(0.95)
    assert non_discreteness_certificate(p) is None


def test_certificate_44inf_threshold():
    base = TriangleParams.from_signature(4, 4, math.inf)
    above = non_discreteness_certificate(base.with_cos_alpha(0.6))
    assert isinstance(above, Certificate)
    assert above.word == (3, 2, 3, 1)
    assert above.rho < 0
    assert abs(above.tau - sigma_closed(base.with_cos_alpha(0.6), 3)) < 1e-9
    assert non_discreteness_certificate(base.with_cos_alpha(0.49)) is None


def test_scan_ideal_below_threshold():
    p = TriangleParams(1, 1, 1).with_cos_alpha(17 / 18 - 1e-3)
    report = scan_elliptic(p, 4)
    by_word = {r.word: r for r in report.rows}
    assert by_word[(1, 2, 3)].verdict != REGULAR_ELLIPTIC
    assert by_word[(1, 3, 2, 3)].verdict != REGULAR_ELLIPTIC
    assert not report.hits


def test_scan_ideal_t_zero_hyperbolic():
    p = TriangleParams(1, 1, 1, alpha=math.pi)
    report = scan_elliptic(p, 3)
    by_word = {r.word: r for r in report.rows}
    assert by_word[(1, 2, 3)].verdict == HYPERBOLIC
    assert family_quartic(1.0, 0.0) == pytest.approx(1024.0 * 125.0)


def test_scan_44inf_flags_w_a():
    p = TriangleParams.from_signature(4, 4, math.inf).with_cos_alpha(0.6)
    report = scan_elliptic(p, 4)
    hits = {r.word for r in report.hits}
    assert (1, 3, 2, 3) in hits  # the canonical rotation of (3, 2, 3, 1)
    # alternation powers of finite-order pairs are listed but filtered
    alt = {r.word: r for r in report.rows}[(1, 3)]
    assert alt.filtered and alt.verdict == REGULAR_ELLIPTIC


def test_scan_parallel_deterministic():
    p = TriangleParams(1, 1, 1).with_cos_alpha(0.9)
    serial = scan_elliptic(p, 5)
    parallel = scan_elliptic(p, 5, jobs=2)
    assert [r.word for r in serial.rows] == [r.word for r in parallel.rows]
    assert all(abs(a.tau - b.tau) < 1e-12
               for a, b in zip(serial.rows, parallel.rows))


def test_scan_length_cap():
    with pytest.raises(ValueError):
        scan_elliptic(TriangleParams(1, 1, 1, alpha=2.0), 25)
