import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvedatom.constants import SOLAR_MASS_G, SOLAR_RADIUS_CM, make_context
from curvedatom.curvature import schwarzschild_curvature
from curvedatom.eigen import eigenvalues
from curvedatom.hydrogenic import AtomState, manifold, radial_expectation
from curvedatom.perturbation import (
    TermTag,
    angular_cos,
    angular_quadratic,
    angular_quadratic_cos,
    bare_atom_matrix,
    bare_atom_result,
    beta,
    first_order_levels,
    pinto_ratio,
    stark_matrix,
    zeeman_bracket,
    zeeman_bracket_exact,
    zeeman_correction,
)
from oracles import sphere_matrix


def _lm(l):
    return [(l, m) for m in range(-l, l + 1)]


def test_angular_quadratic_against_sphere_quadrature():
    w = (-2.0, 1.0, 1.0)
    states = [(l, m) for l in range(4) for m in range(-l, l + 1)]
    ours = angular_quadratic(states, states, w)
    ref = sphere_matrix(lambda x, y, z: w[0] * x * x + w[1] * y * y + w[2] * z * z, states)
    assert np.max(np.abs(ours - ref)) <= 1e-13


def test_angular_cos_and_chain_against_quadrature():
    w = (0.3, -1.1, 0.8)
    states = [(l, m) for l in range(4) for m in range(-l, l + 1)]
    assert np.max(np.abs(angular_cos(states, states) - sphere_matrix(lambda x, y, z: z, states))) <= 1e-13
    ref = sphere_matrix(lambda x, y, z: (w[0] * x * x + w[1] * y * y + w[2] * z * z) * z, states)
    assert np.max(np.abs(angular_quadratic_cos(states, states, w) - ref)) <= 1e-13


def test_x_squared_p_block():
    m = angular_quadratic(_lm(1), _lm(1), (1.0, 0.0, 0.0))
    assert np.allclose(m, [[0.4, 0, -0.2], [0, 0.2, 0], [-0.2, 0, 0.4]], rtol=0, atol=1e-15)


def test_s_states_vanish(ctx, solar):
    for n in range(1, 6):
        for block in bare_atom_matrix(ctx, solar, n, 0):
            assert block.entries.shape == (1, 1)
            assert abs(block.entries[0, 0]) <= 1e-14 * abs(beta(ctx, solar, n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_printed_p_matrix(ctx, solar, n):
    b = beta(ctx, solar, n)
    nuclear = bare_atom_matrix(ctx, solar, n, 1)[1].entries
    printed = b * np.array([[-0.25, 0, 0.75], [0, 0.5, 0], [0.75, 0, -0.25]])
    assert np.max(np.abs(nuclear - printed)) <= 1e-12 * abs(b)


def test_beta_formula(ctx, solar):
    a = ctx.hbar**2 / (ctx.m_electron * ctx.e_charge**2)
    assert beta(ctx, solar, 3) == pytest.approx(0.1 * ctx.qe * solar.r0i0j[2] * a * 25, rel=1e-14)


def test_p_eigenvalues(ctx, solar):
    res = bare_atom_result(ctx, solar, 2)
    (v1, m1), (v2, m2) = res.eigenvalues
    assert (m1, m2) == (1, 2)
    assert v1 == pytest.approx(-res.beta, rel=1e-12)
    assert v2 == pytest.approx(res.beta / 2, rel=1e-12)


def test_diagonal_consistency_form(ctx, solar):
    # (1/4) Q e R <r> (1 - 3 <x^2/r^2>) diagonal entries
    n = 3
    b = beta(ctx, solar, n)
    nuclear = bare_atom_matrix(ctx, solar, n, 1)[1].entries
    assert nuclear[1, 1] == pytest.approx(b / 2, rel=1e-12)
    assert nuclear[0, 0] == pytest.approx(-b / 4, rel=1e-12)
    assert nuclear[2, 2] == pytest.approx(-b / 4, rel=1e-12)


@pytest.mark.parametrize("n,l", [(2, 1), (3, 1), (3, 2), (4, 3), (5, 2)])
def test_traceless_and_hermitian(ctx, solar, n, l):
    for block in bare_atom_matrix(ctx, solar, n, l):
        norm = np.linalg.norm(block.entries)
        assert abs(block.trace()) <= 1e-14 * norm
        assert block.hermiticity_error() <= 1e-14


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.data(), st.lists(st.floats(0, 2 * math.pi), min_size=9, max_size=9))
def test_rephasing_invariance(n, data, phases):
    c = make_context()
    curv = schwarzschild_curvature(c, SOLAR_MASS_G, SOLAR_RADIUS_CM)
    l = data.draw(st.integers(1, n - 1))
    for block in bare_atom_matrix(c, curv, n, l):
        U = np.diag(np.exp(1j * np.array(phases[: 2 * l + 1])))
        A = block.entries
        B = U.conj().T @ A @ U
        scale = np.max(np.abs(A))
        assert np.max(np.abs(eigenvalues(A) - eigenvalues(B))) <= 1e-12 * scale


def test_axis_permutation_changes_matrix_not_spectrum(ctx, solar):
    a = bare_atom_matrix(ctx, solar, 2, 1)[1]
    b = bare_atom_matrix(ctx, solar, 2, 1, axes=(3, 2, 1))[1]
    assert not np.allclose(a.entries, b.entries, rtol=1e-6, atol=0)
    assert np.allclose(eigenvalues(a), eigenvalues(b), rtol=1e-12, atol=0)
    # radial along z makes the block diagonal in m
    assert np.count_nonzero(b.entries - np.diag(np.diag(b.entries))) == 0


def test_mass_block_scale(ctx, solar):
    mass = bare_atom_matrix(ctx, solar, 2, 1, axes=(3, 2, 1))[0].entries
    # radial along z: m = 0 entry is (m c^2 / 2) R_rr <r^2> <z^2/r^2>_{10}
    r2 = radial_expectation(ctx, AtomState(2, 1), 2)
    expected = 0.5 * ctx.m_electron * ctx.c**2 * r2 * (solar.r0i0j[0] * 0.6 + 2 * solar.r0i0j[1] * 0.2)
    assert mass[1, 1] == pytest.approx(expected, rel=1e-13)


def test_pinto(ctx, solar):
    res = pinto_ratio(ctx, solar, 2, 1)
    s = AtomState(2, 1)
    direct = ctx.qe * radial_expectation(ctx, s, 1) / (
        2 * ctx.m_electron * ctx.c**2 * radial_expectation(ctx, s, 2))
    assert res.direct_ratio == pytest.approx(direct, rel=1e-12)
    with pytest.raises(ValueError):
        pinto_ratio(ctx, solar, 2, 0)


def test_pinto_scaling_shape(ctx, solar):
    vals = [pinto_ratio(ctx, solar, n, 1).printed_scaling for n in range(2, 6)]
    shape = [(3 * n * n - 2) / (n**3 * 3) for n in range(2, 6)]
    ratios = [v / s for v, s in zip(vals, shape)]
    assert max(ratios) == pytest.approx(min(ratios), rel=1e-14)


def test_pinto_independent_of_mass(ctx):
    a = pinto_ratio(ctx, schwarzschild_curvature(ctx, 1e20, 1e10), 3, 2)
    b = pinto_ratio(ctx, schwarzschild_curvature(ctx, 7e25, 1e10), 3, 2)
    assert a.direct_ratio == pytest.approx(b.direct_ratio, rel=1e-12)
    assert a.printed_formula == b.printed_formula


def test_zeeman_brackets():
    from fractions import Fraction

    assert zeeman_bracket_exact(1, 1) == zeeman_bracket_exact(1, -1) == Fraction(6, 5)
    assert zeeman_bracket_exact(1, 0) == Fraction(3, 5)
    # l = 0: C(2 0 0 0|0 0) = 0, so the bracket is 1; the m_l factor kills the term
    assert zeeman_bracket(0, 0) == 1.0


def test_zeeman_s_state_zero(ctx, solar):
    res = zeeman_correction(ctx, solar, 1e-3, AtomState(1, 0, 0))
    assert all(v == 0.0 for v in res.terms.values())


def test_zeeman_flat_limit(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    B0 = 1e-3
    res = zeeman_correction(ctx, flat, B0, AtomState(2, 1, 1))
    assert res.terms[TermTag.ZEEMAN_FLAT] == pytest.approx(
        -ctx.e_charge * B0 * ctx.hbar / (2 * ctx.m_electron * ctx.c), rel=1e-15)
    assert res.terms[TermTag.ZEEMAN_CURVATURE] == 0.0
    assert res.total == pytest.approx(res.flat_energy + res.terms[TermTag.ZEEMAN_FLAT], rel=1e-15)


def test_stark_n1_parity(ctx, solar):
    blocks = stark_matrix(ctx, solar, 1.0, 1)
    assert all(b.entries.shape == (1, 1) for b in blocks)
    assert blocks[0].entries[0, 0] == 0.0 and blocks[1].entries[0, 0] == 0.0


def test_stark_n2_flat_eigenvalues(ctx):
    flat = schwarzschild_curvature(ctx, 0.0, 1.0)
    E0 = 2.5
    vals = eigenvalues(stark_matrix(ctx, flat, E0, 2)[0])
    unit = 3 * ctx.e_charge * E0 * ctx.bohr_radius()
    assert np.allclose(vals / unit, [-1, 0, 0, 1], rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_stark_parity_zero_diagonals(ctx, solar, n):
    for b in stark_matrix(ctx, solar, 1.0, n)[:2]:
        assert not np.any(np.diag(b.entries))
        ls = [s.l for s in b.basis]
        for i, j in zip(*np.nonzero(b.entries)):
            assert (ls[i] - ls[j]) % 2 == 1


def test_stark_limits(ctx, solar):
    with pytest.raises(ValueError):
        stark_matrix(ctx, solar, 1.0, 5)
    with pytest.raises(ValueError):
        stark_matrix(ctx, solar, -1.0, 2)


@pytest.mark.parametrize("mode,n,l", [("bare", 3, 2), ("zeeman", 2, 1), ("stark", 3, None)])
def test_levels_linear_in_mass(ctx, mode, n, l):
    r = 1e9
    one = first_order_levels(ctx, schwarzschild_curvature(ctx, 1e30, r), mode, n, l, B0=1e-3, E0=1e-2)
    two = first_order_levels(ctx, schwarzschild_curvature(ctx, 2e30, r), mode, n, l, B0=1e-3, E0=1e-2)
    for a, b in zip(one, two):
        assert a.state == b.state
        for tag in TermTag:
            if tag in (TermTag.ZEEMAN_FLAT, TermTag.STARK_FLAT):
                assert a.terms[tag] == pytest.approx(b.terms[tag], rel=1e-12, abs=1e-300)
            else:
                assert b.terms[tag] == pytest.approx(2 * a.terms[tag], rel=1e-10, abs=1e-300)


def test_levels_linear_in_fields(ctx, solar):
    one = first_order_levels(ctx, solar, "stark", 2, E0=1.0)
    two = first_order_levels(ctx, solar, "stark", 2, E0=2.0)
    for a, b in zip(one, two):
        for tag in (TermTag.STARK_FLAT, TermTag.STARK_CURVATURE):
            assert b.terms[tag] == pytest.approx(2 * a.terms[tag], rel=1e-10, abs=1e-300)


def test_bare_levels_reproduce_spectrum(ctx, solar):
    levels = first_order_levels(ctx, solar, "bare", 2, 1)
    vals = sorted(e.terms[TermTag.NUCLEAR_CURVATURE] for e in levels)
    b = beta(ctx, solar, 2)
    assert np.allclose(np.array(vals) / b, [-1, 0.5, 0.5], rtol=0, atol=1e-12)
    assert sorted(e.state.m_l for e in levels) == [-1, 0, 1]


def test_zeeman_levels_keep_m_labels(ctx, solar):
    for e in first_order_levels(ctx, solar, "zeeman", 3, 2, B0=1e-3):
        direct = zeeman_correction(ctx, solar, 1e-3, e.state)
        assert e.terms[TermTag.ZEEMAN_FLAT] == direct.terms[TermTag.ZEEMAN_FLAT]
        assert e.terms[TermTag.ZEEMAN_CURVATURE] == pytest.approx(
            direct.terms[TermTag.ZEEMAN_CURVATURE], rel=1e-12, abs=1e-300)


def test_bad_mode(ctx, solar):
    with pytest.raises(ValueError):
        first_order_levels(ctx, solar, "weird", 2, 1)
    with pytest.raises(ValueError):
        first_order_levels(ctx, solar, "bare", 2)
