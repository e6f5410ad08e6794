import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nfres.array_model import ArrayConfig, UserLocation
from nfres.regime import (
    Regime,
    angle_domain_bound,
    beta_threshold_ula,
    beta_threshold_upa,
    classify,
    distance_threshold,
    remark1_bound,
)
from nfres.resolution import delta_closed_form, pair_params

HALF_PI = math.pi / 2
angles = st.floats(0.05, math.pi - 0.05)


def _bound_again(a, b, M, N):
    # independent transcription of the angle-domain bound
    t = (2 * M + 1) * (2 * N + 1)
    first = 2 * M * (2 * M + 1) / (t ** 2 * math.sin(math.pi * b) ** 2)
    second = 2 * N * (2 * N + 1) / (t ** 2 * math.sin(math.pi * a) ** 2)
    return (1 + 2 * M + 2 * N) / t + (first if first > second else second)


class TestAngleBound:
    def test_value(self):
        v = angle_domain_bound(0.25, 0.25, 10, 10)
        assert v == pytest.approx(_bound_again(0.25, 0.25, 10, 10), rel=1e-15)
        assert v == pytest.approx(0.097289709534607493791, rel=1e-14)

    def test_not_applicable(self):
        assert angle_domain_bound(0.0, 0.3, 4, 4) is None
        assert angle_domain_bound(0.2, 1e-13, 4, 4) is None
        u1 = UserLocation(3, 1.0, HALF_PI)
        u2 = UserLocation(4, 2.0, HALF_PI)
        assert remark1_bound(ArrayConfig(2, 2), u1, u2) is None  # a == 0

    def test_decays_with_size(self):
        assert angle_domain_bound(0.2, 0.3, 512, 512) < angle_domain_bound(0.2, 0.3, 64, 64)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 20), st.integers(1, 20), st.floats(0.5, 50), st.floats(0.5, 50),
           angles, angles, angles, angles)
    def test_bounds_delta(self, M, N, r1, r2, t1, p1, t2, p2):
        cfg = ArrayConfig(M, N)
        u1, u2 = UserLocation(r1, t1, p1), UserLocation(r2, t2, p2)
        p = pair_params(cfg, u1, u2)
        bound = remark1_bound(cfg, u1, u2)
        if bound is None:
            assert abs(p.a) < 1e-12 or abs(p.b) < 1e-12
        else:
            assert delta_closed_form(cfg, u1, u2).raw <= bound + 1e-9


class TestThresholds:
    def test_distance_threshold_values(self):
        assert distance_threshold(ArrayConfig(0, 0), 1.0, 1.0) == 0
        v = distance_threshold(ArrayConfig(0, 128, lam=0.01), HALF_PI, HALF_PI)
        assert v == pytest.approx(math.pi * 0.01 * 128 * 129, rel=1e-14)
        assert v == pytest.approx(518.74, abs=0.01)

    @settings(max_examples=60)
    @given(st.integers(0, 600), st.integers(0, 600), angles, angles)
    def test_distance_equals_beta_times_rayleigh(self, M, N, theta, phi):
        if M == N == 0:
            return
        cfg = ArrayConfig(M, N)
        lhs = distance_threshold(cfg, theta, phi)
        rhs = beta_threshold_upa(M, N, theta, phi) * cfg.rayleigh_distance
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)

    def test_asymptotic_square(self):
        assert beta_threshold_upa(7, 7, HALF_PI, HALF_PI, asymptotic=True) == pytest.approx(math.pi / 4)

    @pytest.mark.parametrize("theta, phi", [(HALF_PI, HALF_PI), (0.6, 1.1), (2.0, 0.4)])
    def test_finite_converges_to_asymptotic(self, theta, phi):
        fin = beta_threshold_upa(512, 512, theta, phi)
        asy = beta_threshold_upa(512, 512, theta, phi, asymptotic=True)
        assert abs(fin - asy) <= 0.01 * asy

    def test_asymptotic_needs_m(self):
        with pytest.raises(ValueError):
            beta_threshold_upa(0, 10, 1.0, 1.0, asymptotic=True)

    def test_ula_threshold(self):
        assert beta_threshold_ula(HALF_PI) == pytest.approx(math.pi / 2)
        assert beta_threshold_ula(math.pi / 6) == pytest.approx(math.pi / 8)
        assert beta_threshold_ula(1e-9) < 1e-17


class TestClassify:
    def test_identical_users_degenerate(self):
        u = UserLocation(5, 1.0, 1.0)
        rep = classify(ArrayConfig(3, 3), u, u)
        assert rep.delta == 1.0 and rep.classification is Regime.NEAR_DEGENERATE
        assert rep.equal_angles

    def test_fixed_users_large_ula_orthogonal(self):
        cfg = ArrayConfig(0, 512, lam=0.01)
        rep = classify(cfg, UserLocation(5, HALF_PI, HALF_PI), UserLocation(10, HALF_PI, HALF_PI))
        assert rep.delta < 0.1
        assert rep.classification is Regime.NEAR_ORTHOGONAL
        assert rep.remark1_bound is None
        assert rep.beta_threshold == pytest.approx(math.pi / 2)
        assert not rep.beta_threshold_reachable

    def test_beta_above_threshold_degenerate(self):
        cfg = ArrayConfig(64, 64)
        beta_thr = beta_threshold_upa(64, 64, HALF_PI, HALF_PI)
        assert beta_thr < 0.85
        d_ray = cfg.rayleigh_distance
        rep = classify(cfg, UserLocation(0.85 * d_ray, HALF_PI, HALF_PI), UserLocation(d_ray, HALF_PI, HALF_PI))
        assert rep.beta == pytest.approx(0.85)
        assert rep.threshold_margin_m >= 0
        assert rep.classification is Regime.NEAR_DEGENERATE

    def test_intermediate_and_cutoffs(self):
        cfg = ArrayConfig(0, 128)
        u1, u2 = UserLocation(0.2 * 327.68, HALF_PI, HALF_PI), UserLocation(327.68, HALF_PI, HALF_PI)
        assert classify(cfg, u1, u2).classification is Regime.INTERMEDIATE
        assert classify(cfg, u1, u2, lo=0.1, hi=0.5).classification is Regime.NEAR_DEGENERATE
        with pytest.raises(ValueError):
            classify(cfg, u1, u2, lo=0.6, hi=0.5)
