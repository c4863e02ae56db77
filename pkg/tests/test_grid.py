"""Stencil, preset, and field-file tests."""

import numpy as np
import pytest

from holoq.grid import TorusChart, d1, d2, hessian, load_field, save_field
from holoq.presets import MAX_AMPLITUDE, preset_names, preset_phi


def chart(n=4, size=64):
    return TorusChart(n, (size, size))


class TestStencils:
    def test_d1_antisymmetric_exactly(self):
        ch = chart()
        rng = np.random.default_rng(3)
        u = rng.standard_normal(ch.shape)
        v = rng.standard_normal(ch.shape)
        for axis in range(2):
            res = np.sum(d1(ch, u, axis) * v) + np.sum(u * d1(ch, v, axis))
            assert abs(res) < 1e-10

    def test_d2_symmetric_exactly(self):
        ch = chart()
        rng = np.random.default_rng(4)
        u = rng.standard_normal(ch.shape)
        v = rng.standard_normal(ch.shape)
        for axis in range(2):
            res = np.sum(d2(ch, u, axis) * v) - np.sum(u * d2(ch, v, axis))
            assert abs(res) < 1e-8

    def test_d1_fourth_order(self):
        errs = []
        for size in (32, 64):
            ch = chart(size=size)
            x1, _ = ch.mesh()
            errs.append(np.max(np.abs(d1(ch, np.sin(3 * x1), 0) - 3 * np.cos(3 * x1))))
        ratio = errs[0] / errs[1]
        assert 12 < ratio < 20

    def test_d2_fourth_order(self):
        errs = []
        for size in (32, 64):
            ch = chart(size=size)
            _, x2 = ch.mesh()
            errs.append(np.max(np.abs(d2(ch, np.cos(2 * x2), 1) + 4 * np.cos(2 * x2))))
        ratio = errs[0] / errs[1]
        assert 12 < ratio < 20

    def test_cross_derivatives_commute(self):
        ch = chart(size=32)
        rng = np.random.default_rng(5)
        u = rng.standard_normal(ch.shape)
        diff = d1(ch, d1(ch, u, 0), 1) - d1(ch, d1(ch, u, 1), 0)
        assert np.max(np.abs(diff)) < 1e-10

    def test_hessian_symmetric(self):
        ch = chart(size=32)
        rng = np.random.default_rng(6)
        h = hessian(ch, rng.standard_normal(ch.shape))
        assert np.array_equal(h[0][1], h[1][0])

    def test_chart_validation(self):
        with pytest.raises(ValueError):
            TorusChart(2, (16, 16))
        with pytest.raises(ValueError):
            TorusChart(4, (4, 16))


class TestPresets:
    def test_names(self):
        assert set(preset_names()) >= {"flat", "trig1", "trig2", "trig3"}

    def test_flat_is_zero(self):
        assert np.all(preset_phi(chart(), "flat", seed=1) == 0.0)

    def test_deterministic_in_seed(self):
        ch = chart()
        a = preset_phi(ch, "trig2", seed=11)
        b = preset_phi(ch, "trig2", seed=11)
        c = preset_phi(ch, "trig2", seed=12)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_refines_same_function(self):
        coarse = preset_phi(chart(size=32), "trig1", seed=7)
        fine = preset_phi(chart(size=64), "trig1", seed=7)
        assert np.allclose(fine[::2, ::2], coarse, rtol=0, atol=1e-13)

    def test_amplitude_bound(self):
        with pytest.raises(ValueError):
            preset_phi(chart(), "trig1", seed=1, amplitude=MAX_AMPLITUDE * 1.5)
        phi = preset_phi(chart(), "trig1", seed=1, amplitude=0.02)
        assert np.max(np.abs(phi)) <= 0.05

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            preset_phi(chart(), "ripple", seed=1)


class TestFieldFiles:
    def test_round_trip(self, tmp_path):
        ch = chart(n=6, size=16)
        rng = np.random.default_rng(8)
        f = rng.standard_normal(ch.shape)
        path = tmp_path / "field.hqf"
        save_field(path, ch, f)
        ch2, g = load_field(path)
        assert ch2 == ch
        assert np.array_equal(f, g)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "junk.hqf"
        path.write_bytes(b"NOPE" + b"\x00" * 32)
        with pytest.raises(ValueError):
            load_field(path)

    def test_shape_mismatch(self, tmp_path):
        ch = chart(size=16)
        with pytest.raises(ValueError):
            save_field(tmp_path / "f.hqf", ch, np.zeros((8, 8)))
