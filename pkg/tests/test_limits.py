"""Unit tests for the degenerate limits and their asymptotic tables."""

import math

import numpy as np
import pytest
from scipy.special import ellipj

from thetawave.curve import build_solution_params
from thetawave.elliptic import CurveParams, curve_integrals
from thetawave.limits import (
    LimitCase,
    asymptotic_constants,
    dn_fit,
    dn_wave_theta,
    jacobi_dn,
    plane_wave_ab,
    plane_wave_cb,
)
from thetawave.solution import eval_p


class TestLimitCase:
    def test_small_parameter(self):
        case = LimitCase("c_to_b", CurveParams(0.0, 3.0, 5.0, 5.01))
        assert case.small == pytest.approx(0.01)

    def test_invalid_kind(self):
        with pytest.raises(ValueError):
            LimitCase("b_to_c", CurveParams(0.0, 1.0, 2.0, 3.0))


class TestJacobiDn:
    @pytest.mark.parametrize("k", [0.0, 0.3, 0.9, 0.999])
    def test_against_scipy(self, k):
        us = np.linspace(-4.0, 4.0, 41)
        ref = ellipj(us, k * k)[2]
        assert np.max(np.abs(jacobi_dn(us, k) - ref)) < 1e-9

    def test_bounds(self):
        with pytest.raises(ValueError):
            jacobi_dn(0.5, 1.0)


class TestDegenerateFields:
    def test_plane_wave_cb_satisfies_equation(self):
        # i p_t + p_xx + 2|p|^2 p = 0 holds exactly for the plane wave
        lam, a = 0.4, 3.0
        x, t, h = 0.37, 0.12, 1e-5
        p = plane_wave_cb(x, t, lam, a)
        pt = (plane_wave_cb(x, t + h, lam, a)
              - plane_wave_cb(x, t - h, lam, a)) / (2 * h)
        pxx = (plane_wave_cb(x + h, t, lam, a) - 2 * p
               + plane_wave_cb(x - h, t, lam, a)) / h ** 2
        assert abs(1j * pt + pxx + 2 * abs(p) ** 2 * p) < 1e-4

    def test_plane_wave_ab_amplitude_and_phase(self):
        b, c = 5.0, 7.0
        p = plane_wave_ab(0.0, 0.0, 0.0, b, c)
        assert abs(p) == pytest.approx(c, rel=1e-14)
        phi = math.acos((c * c - 2 * b * b) / (c * c))
        assert np.angle(p) == pytest.approx(-phi / 2.0, rel=1e-12)

    def test_dn_wave_profile(self):
        # the a -> 0 field is a traveling dn-type wave of max b + c, min c - b
        b, c = 8.0, 9.0
        xs = np.linspace(-1.0, 1.0, 801)
        f = np.abs(dn_wave_theta(xs, 0.0, 0.0, b, c))
        assert float(np.max(f)) == pytest.approx(b + c, abs=1e-3)
        assert float(np.min(f)) == pytest.approx(c - b, abs=1e-3)


class TestConvergence:
    def test_a_to_0_linear(self):
        b, c = 8.0, 9.0
        xs = np.linspace(-0.2, 0.2, 15)[:, None]
        ts = np.linspace(-0.01, 0.01, 5)[None, :]
        ref = dn_wave_theta(xs, ts, 0.0, b, c)
        sups = []
        for a in (1e-2, 1e-3, 1e-4):
            sp = build_solution_params(CurveParams(0.0, a, b, c))
            sups.append(float(np.max(np.abs(eval_p(xs, ts, sp) - ref))))
        assert sups[0] > sups[1] > sups[2]
        # linear rate in a
        assert sups[1] / sups[0] == pytest.approx(0.1, rel=0.3)

    def test_c_to_b_monotone(self):
        a, b = 6.0, 8.0
        xs = np.linspace(-0.1, 0.1, 11)[:, None]
        ts = np.linspace(-0.005, 0.005, 3)[None, :]
        ref = plane_wave_cb(xs, ts, 0.0, a)
        sups = []
        for eps in (1e-2, 1e-3, 1e-4):
            sp = build_solution_params(CurveParams(0.0, a, b, b + eps),
                                       np.array([0.0, 0.25]))
            sups.append(float(np.max(np.abs(eval_p(xs, ts, sp) - ref))))
        assert sups[0] > sups[1] > sups[2]


class TestDnFit:
    def test_recovers_known_profile(self):
        A, B, kt, x0 = 17.0, 17.0, 0.485, 0.03
        xs = np.linspace(-0.3, 0.3, 401)
        fs = A * jacobi_dn(B * (xs - x0), kt)
        Af, Bf, ktf, x0f = dn_fit(xs, fs)
        assert Af == pytest.approx(A, rel=1e-8)
        assert Bf == pytest.approx(B, rel=1e-8)
        assert ktf == pytest.approx(kt, rel=1e-6)
        assert x0f == pytest.approx(x0, abs=1e-8)

    def test_relation_check_rejects_wrong_k20(self):
        xs = np.linspace(-0.3, 0.3, 401)
        fs = 17.0 * jacobi_dn(17.0 * xs, 0.485)
        with pytest.raises(AssertionError):
            dn_fit(xs, fs, k20=200.0)


class TestAsymptoticTables:
    def test_c_to_b_power_entries(self):
        a, b, eps = 3.0, 5.0, 1e-6
        case = LimitCase("c_to_b", CurveParams(0.0, a, b, b + eps))
        ap = asymptotic_constants(case)
        ell = curve_integrals(case.params)
        # b1_minus and f_minus approach their leading order only
        # logarithmically; the rest converge at a power-law rate
        tols = {"b1_minus": 1e-1, "f_minus": 1e-1}
        for name in ("a_plus", "b_plus", "a_minus", "b_minus", "b1_minus",
                     "d_minus", "f_minus"):
            num = getattr(ell, name)
            asy = getattr(ap.ell, name)
            assert abs(num - asy) / abs(num) < tols.get(name, 1e-4), name
        sp = build_solution_params(case.params)
        assert abs(ap.K0 - sp.K0) / abs(sp.K0) < 1e-1

    def test_a_to_b_finite_entries(self):
        b, c, rel_gap = 5.0, 7.0, 1e-5
        case = LimitCase("a_to_b", CurveParams(0.0, b * (1 - rel_gap), b, c))
        ap = asymptotic_constants(case)
        ell = curve_integrals(case.params)
        for name in ("a_plus", "b_minus", "b1_minus", "f_minus"):
            num = getattr(ell, name)
            assert abs(num - getattr(ap.ell, name)) / abs(num) < 1e-3, name
        assert ap.ell.b_plus == math.inf
        assert ap.ell.a_minus == math.inf

    def test_a_to_0_entries(self):
        b, c, a = 8.0, 9.0, 1e-4
        case = LimitCase("a_to_0", CurveParams(0.0, a, b, c))
        ap = asymptotic_constants(case)
        ell = curve_integrals(case.params)
        for name in ("a_plus", "b_plus", "a_minus", "b1_minus", "f_minus"):
            num = getattr(ell, name)
            assert abs(num - getattr(ap.ell, name)) / abs(num) < 1e-6, name
        assert ap.ell.b_minus == math.inf
        assert ap.ell.d_minus == 0.0
        assert ell.d_minus < 1e-3
