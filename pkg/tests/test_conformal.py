"""Curvature formulas against the Christoffel oracle, plus adjoint exactness."""

import numpy as np
import pytest

from holoq.conformal import (
    curvature,
    grad_pair_J,
    grad_pair_direct_transpose,
    inner,
    integrate,
    laplacian,
    oracle_curvature,
    schouten_div_grad,
)
from holoq.grid import TorusChart
from holoq.presets import preset_phi


def bundle(n=4, size=64, preset="trig1", seed=7):
    ch = TorusChart(n, (size, size))
    return curvature(ch, preset_phi(ch, preset, seed=seed))


def rel(a, b):
    scale = max(np.max(np.abs(b)), 1e-30)
    return np.max(np.abs(a - b)) / scale


class TestCurvature:
    def test_flat_metric_is_flat(self):
        b = bundle(preset="flat")
        assert np.all(b.J == 0.0)
        assert np.all(b.Psq == 0.0)

    def test_single_mode_matches_analytic(self):
        n, a = 5, 0.1
        ch = TorusChart(n, (64, 64))
        x1, _ = ch.mesh()
        phi = a * np.cos(x1)
        b = curvature(ch, phi)
        grad2 = (a * np.sin(x1)) ** 2
        expected = -np.exp(-2 * phi) * (-a * np.cos(x1) + 0.5 * (n - 2) * grad2)
        assert rel(b.J, expected) < 1e-5

    @pytest.mark.parametrize("n", [4, 6])
    @pytest.mark.parametrize("preset", ["trig1", "trig2"])
    def test_against_christoffel_oracle(self, n, preset):
        b = bundle(n=n, preset=preset)
        oracle = oracle_curvature(b.chart, b.phi)
        assert rel(b.J, oracle["J"]) < 1e-6
        assert rel(b.Psq, oracle["Psq"]) < 1e-6
        for i in range(2):
            for k in range(2):
                assert np.max(np.abs(b.P[i][k] - oracle["P_active"][i][k])) < 1e-6

    @pytest.mark.parametrize("n", [4, 6])
    def test_against_metric_route_oracle(self, n):
        b = bundle(n=n, preset="trig1")
        oracle = oracle_curvature(b.chart, b.phi, route="metric")
        assert rel(b.J, oracle["J"]) < 1e-4
        assert rel(b.Psq, oracle["Psq"]) < 1e-4

    def test_metric_route_gap_shrinks_with_resolution(self):
        gaps = []
        for size in (32, 64):
            b = bundle(n=4, size=size, preset="trig1")
            oracle = oracle_curvature(b.chart, b.phi, route="metric")
            gaps.append(np.max(np.abs(b.J - oracle["J"])))
        assert gaps[0] / max(gaps[1], 1e-30) > 8 or gaps[1] < 1e-11


class TestOperators:
    def test_flat_laplacian_eigenfunction(self):
        ch = TorusChart(4, (64, 64))
        b = curvature(ch, np.zeros(ch.shape))
        x1, x2 = ch.mesh()
        f = np.sin(x1) + np.cos(x2)
        assert np.max(np.abs(laplacian(b, f) + f)) < 1e-4

    def test_laplacian_self_adjoint_exactly(self):
        b = bundle(n=6, preset="trig2")
        rng = np.random.default_rng(9)
        f = rng.standard_normal(b.chart.shape)
        g = rng.standard_normal(b.chart.shape)
        lhs = inner(b, laplacian(b, f), g)
        rhs = inner(b, f, laplacian(b, g))
        assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)

    def test_schouten_div_grad_self_adjoint_exactly(self):
        b = bundle(n=4, preset="trig1")
        rng = np.random.default_rng(10)
        f = rng.standard_normal(b.chart.shape)
        g = rng.standard_normal(b.chart.shape)
        lhs = inner(b, schouten_div_grad(b, f), g)
        rhs = inner(b, f, schouten_div_grad(b, g))
        assert abs(lhs - rhs) < 1e-10 * max(abs(lhs), 1.0)

    def test_grad_pair_adjoint_rule_exact(self):
        # The commutator form satisfies G* = -G - (lap J) exactly on the grid.
        b = bundle(n=4, preset="trig2")
        rng = np.random.default_rng(11)
        f = rng.standard_normal(b.chart.shape)
        g = rng.standard_normal(b.chart.shape)
        res = (inner(b, grad_pair_J(b, f), g) + inner(b, f, grad_pair_J(b, g))
               + inner(b, f, b.lapJ * g))
        assert abs(res) < 1e-10

    def test_grad_pair_forms_agree(self):
        b = bundle(n=4, preset="trig1")
        x1, x2 = b.chart.mesh()
        f = np.cos(x1) * np.sin(x2)
        diff = grad_pair_J(b, f, "commutator") - grad_pair_J(b, f, "direct")
        assert np.max(np.abs(diff)) < 1e-4

    def test_direct_transpose_is_exact_transpose(self):
        b = bundle(n=6, preset="trig1")
        rng = np.random.default_rng(12)
        f = rng.standard_normal(b.chart.shape)
        g = rng.standard_normal(b.chart.shape)
        lhs = inner(b, grad_pair_J(b, f, "direct"), g)
        rhs = inner(b, f, grad_pair_direct_transpose(b, g))
        assert abs(lhs - rhs) < 1e-10

    def test_direct_transpose_near_analytic_adjoint(self):
        b = bundle(n=4, preset="trig1")
        x1, x2 = b.chart.mesh()
        g = np.sin(x1 + x2)
        analytic = -grad_pair_J(b, g, "direct") - g * b.lapJ
        assert np.max(np.abs(grad_pair_direct_transpose(b, g) - analytic)) < 1e-4


class TestIntegration:
    def test_flat_volume(self):
        ch = TorusChart(4, (32, 32))
        b = curvature(ch, np.zeros(ch.shape))
        assert integrate(b, np.ones(ch.shape)) == pytest.approx(4 * np.pi**2)

    def test_conformal_volume_bessel(self):
        # For phi = a cos(x1) the volume is (2 pi)^2 I_0(n a), and the
        # periodic trapezoid rule is spectrally accurate on it.
        n, a = 6, 0.1
        ch = TorusChart(n, (64, 64))
        x1, _ = ch.mesh()
        b = curvature(ch, a * np.cos(x1))
        vol = integrate(b, np.ones(ch.shape))
        assert vol == pytest.approx(4 * np.pi**2 * np.i0(n * a), rel=1e-10)
