"""Coefficient routes, Q-curvature duality, master relations, critical suite."""

from fractions import Fraction

import numpy as np
import pytest

from holoq.conformal import curvature
from holoq.grid import TorusChart
from holoq.holographic import (
    EinsteinModel,
    UnsupportedModeError,
    conformal_covariance_q4,
    critical_n4_suite,
    critical_suite_n4,
    einstein_checks,
    example_2_3_checks,
    expansion_traces,
    holo_coeffs,
    holo_coeffs_from_expansion,
    master_check_numeric,
    numeric_suite,
    poly_checks,
    q2,
    q4_direct,
    q4_holographic,
    q6_holographic,
    qres_and_v_polys,
)
from holoq.presets import preset_phi


def bundle(n=4, size=64, preset="trig1", seed=7):
    ch = TorusChart(n, (size, size))
    return curvature(ch, preset_phi(ch, preset, seed=seed))


def flat_bundle(n=4, size=32):
    ch = TorusChart(n, (size, size))
    return curvature(ch, np.zeros(ch.shape))


class TestCoefficients:
    def test_flat_values(self):
        v = holo_coeffs(flat_bundle())
        assert np.all(v[0] == 1.0)
        assert np.all(v[1] == 0.0)
        assert np.all(v[2] == 0.0)

    def test_expansion_route_matches_closed_form(self):
        b = bundle(n=6, preset="trig2")
        v = holo_coeffs(b)
        v2, v4 = holo_coeffs_from_expansion(*expansion_traces(b))
        assert np.max(np.abs(v2 - v[1])) < 1e-12
        assert np.max(np.abs(v4 - v[2])) < 1e-12

    def test_expansion_route_zero_traces(self):
        v2, v4 = holo_coeffs_from_expansion(0.0, 0.0, 0.0)
        assert v2 == 0.0 and v4 == 0.0


class TestQCurvature:
    def test_flat_vanishes(self):
        b = flat_bundle()
        assert np.all(q2(b) == 0.0)
        assert np.all(q4_direct(b) == 0.0)
        assert np.max(np.abs(q4_holographic(b))) < 1e-15

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_dual_route_agreement(self, n):
        b = bundle(n=n)
        gap = np.max(np.abs(q4_holographic(b) - q4_direct(b)))
        assert gap < 1e-6 * max(1.0, np.max(np.abs(q4_direct(b))))

    def test_q6_numeric_mode_unsupported(self):
        with pytest.raises(UnsupportedModeError):
            q6_holographic(bundle(n=6))


class TestEinsteinModel:
    def test_sphere_specialization_q4(self):
        model = EinsteinModel(4, Fraction(2))
        assert model.q4() == 6
        assert model.v(1) == -1
        assert model.v(2) == Fraction(3, 8)

    def test_sphere_specialization_q6(self):
        assert q6_holographic(EinsteinModel(6, Fraction(3))) == 120
        assert q6_holographic(EinsteinModel(8, Fraction(4))) == 720

    def test_off_sphere_value_is_rational(self):
        q6 = q6_holographic(EinsteinModel(6, Fraction(1, 2)))
        assert q6 == Fraction(40, 9) * Fraction(1, 8)

    def test_checks_all_pass(self):
        for n, J in ((4, Fraction(2)), (6, Fraction(3)), (6, Fraction(1, 3)), (8, Fraction(4))):
            for rep in einstein_checks(n, J):
                assert rep.passed, rep.id


class TestMasterRelation:
    def test_flat_exact_zero(self):
        rep = master_check_numeric(flat_bundle(n=5), 1, Fraction(1, 3))
        assert rep.passed and rep.residual == 0.0

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_first_order(self, n):
        rep = master_check_numeric(bundle(n=n), 1, Fraction(1, 3))
        assert rep.passed, rep.residual

    @pytest.mark.parametrize("lam", [Fraction(0), Fraction(1, 3), Fraction(5)])
    def test_second_order_n4(self, lam):
        rep = master_check_numeric(bundle(n=4), 2, lam)
        assert rep.passed, (str(lam), rep.residual)

    def test_second_order_n6(self):
        rep = master_check_numeric(bundle(n=6), 2, Fraction(7, 2))
        assert rep.passed, rep.residual

    @pytest.mark.parametrize("n", [4, 6])
    def test_displayed_identities(self, n):
        lam = Fraction(5)
        for rep in example_2_3_checks(bundle(n=n), lam):
            assert rep.passed, (rep.id, rep.residual)


class TestPolynomials:
    def test_first_order_slope_is_q2(self):
        b = bundle(n=5)
        qc, vc, meta = qres_and_v_polys(b, 1)
        assert abs(qc[0]) < 1e-8 * meta["scale"]
        assert abs(qc[1] - float(b.J[meta["point"]])) < 1e-8 * meta["scale"]

    def test_flat_second_order_zero(self):
        qc, vc, _ = qres_and_v_polys(flat_bundle(n=6), 2)
        assert max(abs(c) for c in qc) == 0.0
        assert max(abs(c) for c in vc) == 0.0

    @pytest.mark.parametrize("n,N", [(4, 1), (4, 2), (6, 1), (6, 2)])
    def test_invariants(self, n, N):
        for rep in poly_checks(bundle(n=n), N):
            assert rep.passed, (rep.id, rep.residual, rep.tol)


class TestCriticalSuite:
    def test_all_checks_pass(self):
        reports = critical_suite_n4(bundle(n=4))
        assert [r.id for r in reports] == ["crit-a", "crit-b", "crit-c", "crit-d", "crit-e"]
        for rep in reports:
            assert rep.passed, (rep.id, rep.residual, rep.tol)

    def test_star_convention_recorded(self):
        reports = {r.id: r for r in critical_suite_n4(bundle(n=4, preset="trig2"))}
        assert reports["crit-c"].details["matched"] == "unstarred"
        assert reports["crit-d"].details["matched_sign"] == "+"

    def test_flat_degenerate(self):
        for rep in critical_suite_n4(flat_bundle(n=4)):
            assert rep.passed, rep.id

    def test_wrong_dimension_rejected(self):
        with pytest.raises(ValueError):
            critical_suite_n4(bundle(n=6))


class TestConformalCovariance:
    def test_zero_shift_trivial(self):
        ch = TorusChart(4, (32, 32))
        phi = preset_phi(ch, "trig1", seed=7)
        rep = conformal_covariance_q4(ch, phi, np.zeros(ch.shape))
        assert rep.passed and rep.residual < 1e-14

    def test_constant_shift(self):
        ch = TorusChart(4, (32, 32))
        phi = preset_phi(ch, "trig1", seed=7)
        rep = conformal_covariance_q4(ch, phi, 0.3 * np.ones(ch.shape))
        assert rep.passed, rep.residual

    def test_generic_shift(self):
        ch = TorusChart(4, (128, 128))
        phi = preset_phi(ch, "trig1", seed=7)
        omega = preset_phi(ch, "trig3", seed=12)
        rep = conformal_covariance_q4(ch, phi, omega)
        assert rep.passed, (rep.residual, rep.tol)

    def test_fourth_order_refinement(self):
        gaps = []
        for size in (48, 96):
            ch = TorusChart(4, (size, size))
            phi = preset_phi(ch, "trig1", seed=7)
            omega = preset_phi(ch, "trig3", seed=12)
            gaps.append(conformal_covariance_q4(ch, phi, omega).residual)
        assert gaps[0] / gaps[1] > 8.0


class TestSuites:
    def test_numeric_suite_passes(self):
        reports = numeric_suite(n_values=(4, 6))
        assert len(reports) > 40
        for rep in reports:
            assert rep.passed, (rep.id, rep.residual, rep.tol)

    def test_critical_suite_passes(self):
        for rep in critical_n4_suite():
            assert rep.passed, (rep.id, rep.residual, rep.tol)
