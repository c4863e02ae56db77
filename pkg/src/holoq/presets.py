"""Seeded conformal-factor presets on the 2-torus.

Each preset is a small trigonometric polynomial with per-axis wavenumbers at
most 1 and modest amplitude, so curvature stays well resolved at the grid
sizes the checks run on. Coefficients are drawn from the seed alone; sampling
the same preset on a finer grid refines the same underlying function.
"""

from __future__ import annotations

import numpy as np

from .grid import TorusChart

# Per-axis wavenumber is capped at 1 to keep stencil truncation error far
# below the comparison tolerances on a 64^2 grid.
_MODES = ((1, 0), (0, 1), (1, 1), (1, -1))

_PRESETS = {
    "flat": dict(modes=(), amplitude=0.0),
    "trig1": dict(modes=((1, 0), (0, 1)), amplitude=0.1),
    "trig2": dict(modes=_MODES, amplitude=0.05),
    "trig3": dict(modes=((1, 0), (1, 1), (1, -1)), amplitude=0.08),
}

MAX_AMPLITUDE = 1.0


def preset_names():
    return tuple(_PRESETS)


def preset_phi(chart: TorusChart, name: str, seed: int = 7, amplitude=None):
    """Sample the named preset on the chart; deterministic in (name, seed)."""
    if name not in _PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(_PRESETS)}")
    spec = _PRESETS[name]
    amp = spec["amplitude"] if amplitude is None else float(amplitude)
    if amp < 0 or amp > MAX_AMPLITUDE:
        raise ValueError(f"preset amplitude {amp} outside [0, {MAX_AMPLITUDE}]")
    modes = spec["modes"]
    if len(modes) > 4:
        raise ValueError("presets are limited to 4 modes")
    rng = np.random.default_rng(seed)
    # Draw one (coefficient, phase) pair per mode before touching the mesh so
    # the function is independent of resolution.
    coeffs = rng.uniform(0.5, 1.0, size=len(modes)) * rng.choice([-1.0, 1.0], size=len(modes))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=len(modes))
    x1, x2 = chart.mesh()
    phi = chart.zeros()
    for (k1, k2), c, theta in zip(modes, coeffs, phases):
        phi += amp * c * np.cos(k1 * x1 + k2 * x2 + theta)
    return phi
