"""Unit tests for the curve-to-solution-parameter pipeline."""

import math

import numpy as np
import pytest

from thetawave.curve import (
    b_period_errors,
    build_solution_params,
    connector_calibration,
    period_lattice,
    period_matrix,
    phase_constants,
    reality_check,
    second_kind_constants,
    wave_vectors,
)
from thetawave.elliptic import CurveParams

P689 = CurveParams(0.0, 6.0, 8.0, 9.0)

# frozen from an independent high-precision evaluation
REF_689 = {
    "frb_minus": 1.3383752627675033,
    "frb_plus": 0.8926650610238481,
    "kappa1": 64.42525162402758,
    "k": 3.3977125156136352,
    "delta": 0.7812104723356435,
    "K0": 2.1247502378811971j,
    "K2": 138.70313520261662,
}


class TestBuildSolutionParams:
    def test_reference_point(self):
        sp = build_solution_params(P689)
        for name, ref in REF_689.items():
            got = getattr(sp, name)
            assert got == pytest.approx(ref, rel=1e-9), name

    def test_lambda0_shifts(self):
        lam = 0.5
        sp = build_solution_params(CurveParams(lam, 6.0, 8.0, 9.0))
        sp0 = build_solution_params(P689)
        assert sp.K1 == pytest.approx(-lam, abs=1e-12)
        assert sp.K2 == pytest.approx(sp0.K2 - 2.0 * lam * lam, rel=1e-9)
        assert sp.kappa2 == pytest.approx(8.0 * lam / sp.ell.a_plus,
                                          rel=1e-12)
        # the centred quantities are unchanged
        assert sp.frb_minus == sp0.frb_minus
        assert sp.delta == sp0.delta

    def test_K0_purely_imaginary_positive(self):
        sp = build_solution_params(P689)
        assert sp.K0.real == 0.0
        assert sp.K0.imag > 0.0


class TestSecondKindConstants:
    def test_first_constant_vanishes(self):
        k1, _ = second_kind_constants(6.0, 8.0, 9.0)
        assert abs(k1) < 1e-10

    def test_small_a_closed_form(self):
        # at a -> 0 the second constant tends to b**2 + c**2
        k2 = phase_constants(1e-4, 8.0, 9.0)
        assert k2 == pytest.approx(145.0, abs=1e-3)


class TestBPeriods:
    @pytest.mark.parametrize("abc", [(6.0, 8.0, 9.0), (1.0, 3.0, 9.0),
                                     (0.5, 2.0, 2.5)])
    def test_contour_vs_closed_form(self, abc):
        errs = b_period_errors(CurveParams(0.0, *abc))
        assert max(errs.values()) < 1e-8, errs


class TestConnector:
    def test_lattice_decomposition(self):
        D, n, m, resid = connector_calibration(6.0, 8.0, 9.0)
        assert resid < 1e-10
        assert tuple(n) == (0, 0)
        assert tuple(m) == (0, 0)
        sp = build_solution_params(P689)
        assert D[0] == pytest.approx(-0.5j * sp.delta, rel=1e-10)
        assert D[1] == pytest.approx(-0.5, rel=1e-10)


class TestPeriodLattice:
    def test_lattice_solves_linear_system(self):
        lat = period_lattice(P689)
        wv = wave_vectors(P689)
        e1 = lat.X1 * wv.U + lat.T1 * wv.V
        e2 = lat.X2 * wv.U + lat.T2 * wv.V
        assert np.allclose(e1, [1.0, 0.0], atol=1e-12)
        assert np.allclose(e2, [0.0, 1.0], atol=1e-12)

    def test_basic_periods(self):
        lat = period_lattice(P689)
        sp = build_solution_params(P689)
        assert lat.X == pytest.approx(sp.ell.a_plus / 2.0)
        assert lat.T == pytest.approx(sp.ell.a_minus / 4.0)
        assert lat.Tprime is None

    def test_tprime_equals_T_at_special_lambda0(self):
        ell = build_solution_params(P689).ell
        lam = ell.a_plus / (2.0 * ell.a_minus)
        lat = period_lattice(CurveParams(lam, 6.0, 8.0, 9.0))
        assert lat.Tprime == pytest.approx(lat.T, rel=1e-14)


class TestRealityCheck:
    def setup_method(self):
        self.B = period_matrix(P689)
        self.sp = build_solution_params(P689)

    def test_real_Z_passes(self):
        ok, n = reality_check(np.array([0.3, -0.2]), self.B)
        assert ok and tuple(n) == (0, 0)

    def test_half_b_period_passes(self):
        z = np.array([0.0, 0.5j * self.sp.frb_plus])
        ok, n = reality_check(z, self.B)
        assert ok
        assert tuple(n) == (0, 2)

    def test_generic_complex_rejected(self):
        ok, n = reality_check(np.array([0.0, 0.3j]), self.B)
        assert not ok and n is None
