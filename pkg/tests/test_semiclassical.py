import math

import numpy as np
import pytest

from curvedatom.curvature import CurvatureTensor, schwarzschild_curvature
from curvedatom.semiclassical import (
    RootSelectionError,
    curvature_radius,
    curvature_radius_from,
    orbit_radius,
)
from oracles import orbit_quartic_roots


def _tensor(s):
    return CurvatureTensor((-2 * s, s, s), {(1, 2, 1, 2): -s, (1, 3, 1, 3): -s, (2, 3, 2, 3): 2 * s})


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_flat_bohr_radius(ctx, n):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    res = orbit_radius(ctx, flat, 0.0, n)
    assert res.rho == pytest.approx(n * n * ctx.bohr_radius(), rel=1e-10)
    assert res.residual <= 1e-12
    assert math.isinf(res.r_a)


def test_weak_b_matches_quartic_oracle(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    B0 = 1e7
    res = orbit_radius(ctx, flat, B0, 1)
    b = ctx.e_charge * B0 / (2 * ctx.c * ctx.hbar)
    alpha = ctx.m_electron * ctx.qe / ctx.hbar**2
    roots = orbit_quartic_roots(b, alpha, 0.0, b * b, 1)
    nearest = roots[np.argmin(np.abs(roots - res.rho))]
    assert res.rho == pytest.approx(nearest, rel=1e-10)
    assert res.residual <= 1e-12


def test_curved_matches_quartic_oracle(ctx):
    s = 1e3  # cm^-2: exaggerated so the shift is visible
    res = orbit_radius(ctx, _tensor(s), 0.0, 2)
    alpha = ctx.m_electron * ctx.qe / ctx.hbar**2
    gamma = alpha * s / 4
    delta = ctx.m_electron**2 * ctx.c**2 * s / ctx.hbar**2
    roots = orbit_quartic_roots(0.0, alpha, gamma, delta, 2)
    nearest = roots[np.argmin(np.abs(roots - res.rho))]
    assert res.rho == pytest.approx(nearest, rel=1e-10)
    assert res.rho < 4 * ctx.bohr_radius()


def test_continuation_is_monotone(ctx):
    res = orbit_radius(ctx, _tensor(1e3), 1e6, 2)
    steps = np.diff(res.path)
    assert np.all(steps <= 0) or np.all(steps >= 0)
    assert len(res.path) == 9


def test_landau_limit(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    for n, B0 in [(1, 1e5), (2, 3e5), (3, 1e6)]:
        res = orbit_radius(ctx, flat, B0, n, charge_scale=0.0)
        assert res.rho**2 == pytest.approx(n * ctx.c * ctx.hbar / (ctx.e_charge * B0), rel=1e-10)


def test_free_charge_needs_field(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    with pytest.raises(ValueError):
        orbit_radius(ctx, flat, 0.0, 1, charge_scale=0.0)


def test_root_outside_bracket(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    with pytest.raises(RootSelectionError):
        orbit_radius(ctx, flat, 1e-2, 1, charge_scale=0.0)


def test_bad_inputs(ctx, solar):
    with pytest.raises(ValueError):
        orbit_radius(ctx, solar, -1.0, 1)
    with pytest.raises(ValueError):
        orbit_radius(ctx, solar, 0.0, 0)


def test_ra_scaling(ctx):
    R = 1e-6
    assert curvature_radius_from(ctx, 8 * R) == pytest.approx(curvature_radius_from(ctx, R) / 2, rel=1e-14)


def test_ra_direct(ctx):
    expected = (4 * ctx.hbar**2 / (3 * ctx.m_electron * ctx.e_charge**2 * 1e-6)) ** (1 / 3)
    assert curvature_radius_from(ctx, 1e-6) == pytest.approx(expected, rel=1e-14)


def test_ra_infinite_at_zero_or_negative(ctx):
    assert math.isinf(curvature_radius_from(ctx, 0.0))
    assert math.isinf(curvature_radius_from(ctx, -1e-6))
    assert math.isinf(curvature_radius(ctx, schwarzschild_curvature(ctx, 0.0, 1.0)))


def test_ra_uses_r0202(ctx, solar):
    assert curvature_radius(ctx, solar) == curvature_radius_from(ctx, solar.r0i0j[1])
    # radial axis moved onto lab y: R_0202 becomes negative
    assert math.isinf(curvature_radius(ctx, solar, axes=(2, 1, 3)))
