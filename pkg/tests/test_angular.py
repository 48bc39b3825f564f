import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvedatom.angular import (
    CGCoefficient,
    clebsch_gordan,
    quadratic_decomposition,
    triple_y_integral,
)
from oracles import cg_ladder, load_frozen, triple_y_quadrature, ylm


def test_scalar_coupling():
    for l in range(4):
        for m in range(-l, l + 1):
            assert clebsch_gordan(0, 0, l, m, l, m) == CGCoefficient(Fraction(1), 1)


def test_known_values():
    c = clebsch_gordan(2, 0, 1, 0, 1, 0)
    assert c.squared == Fraction(2, 5) and c.value < 0
    c = clebsch_gordan(1, 1, 1, -1, 2, 0)
    assert c.squared == Fraction(1, 6) and c.value > 0


def test_selection_rules_give_exact_zero():
    assert not clebsch_gordan(1, 1, 1, 1, 2, 0)
    assert not clebsch_gordan(1, 0, 1, 0, 3, 0)
    assert not clebsch_gordan(1, 0, 1, 0, 1, 0)  # parity-forbidden stretched zero


def test_half_integers_rejected():
    with pytest.raises(ValueError):
        clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0)


def test_matches_frozen_ladder_oracle():
    frozen = load_frozen()["clebsch_gordan"]
    worst = max(abs(clebsch_gordan(*map(int, k.split(","))).value - v) for k, v in frozen.items())
    assert worst <= 1e-13


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_orthogonality_exact(l1, l2, data):
    l = data.draw(st.integers(abs(l1 - l2), l1 + l2))
    lp = data.draw(st.integers(abs(l1 - l2), l1 + l2))
    m = data.draw(st.integers(-min(l, lp), min(l, lp)))
    total: dict = {}
    for m1 in range(-l1, l1 + 1):
        m2 = m - m1
        if abs(m2) > l2:
            continue
        prod = clebsch_gordan(l1, m1, l2, m2, l, m) * clebsch_gordan(l1, m1, l2, m2, lp, m)
        if prod:
            total[prod.radicand] = total.get(prod.radicand, 0) + prod.rational
    total = {k: v for k, v in total.items() if v}
    assert total == ({1: Fraction(1)} if l == lp else {})


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_ladder_oracle_live(l1, l2, data):
    l = data.draw(st.integers(abs(l1 - l2), l1 + l2))
    m1 = data.draw(st.integers(-l1, l1))
    m2 = data.draw(st.integers(-l2, l2))
    assert clebsch_gordan(l1, m1, l2, m2, l, m1 + m2).value == pytest.approx(
        cg_ladder(l1, m1, l2, m2, l, m1 + m2), abs=1e-13)


def test_magnitude_bounded():
    for l1 in range(4):
        for l2 in range(4):
            for l in range(abs(l1 - l2), l1 + l2 + 1):
                for m1 in range(-l1, l1 + 1):
                    for m2 in range(-l2, l2 + 1):
                        assert clebsch_gordan(l1, m1, l2, m2, l, m1 + m2).squared <= 1


def test_triple_y_examples():
    assert triple_y_integral(0, 0, 0, 0, 0, 0) == pytest.approx(1 / math.sqrt(4 * math.pi), rel=1e-15)
    assert triple_y_integral(2, 0, 1, 0, 1, 0) == pytest.approx(
        0.4 * math.sqrt(5 / (4 * math.pi)), rel=1e-14)
    assert triple_y_integral(1, 1, 1, 1, 2, 2) != 0.0


def test_triple_y_frozen_quadrature():
    for k, v in load_frozen()["gaunt"].items():
        assert triple_y_integral(*map(int, k.split(","))) == pytest.approx(v, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_triple_y_sign_flip(l1, l2, data):
    l = data.draw(st.integers(abs(l1 - l2), l1 + l2))
    m1 = data.draw(st.integers(-l1, l1))
    m2 = data.draw(st.integers(-l2, l2))
    if abs(m1 + m2) > l:
        return
    a = triple_y_integral(l1, m1, l2, m2, l, m1 + m2)
    b = triple_y_integral(l1, -m1, l2, -m2, l, -m1 - m2)
    assert b == pytest.approx((-1) ** (l1 + l2 + l) * a, abs=1e-15)


def test_printed_z_coefficient():
    z = quadratic_decomposition("z").coefficients
    assert z[(2, 0)] == pytest.approx(math.sqrt(16 * math.pi / 5) / 3, rel=1e-15)
    assert z[(0, 0)] == pytest.approx(math.sqrt(4 * math.pi) / 3, rel=1e-15)


def test_decompositions_sum_to_one():
    total: dict = {}
    for axis in "xyz":
        for k, c in quadratic_decomposition(axis).coefficients.items():
            total[k] = total.get(k, 0.0) + c
    assert total[(0, 0)] == pytest.approx(math.sqrt(4 * math.pi), rel=1e-15)
    assert all(abs(v) < 1e-15 for k, v in total.items() if k != (0, 0))


def _directions_26():
    out = []
    for v in np.ndindex(3, 3, 3):
        d = np.array(v) - 1
        if np.any(d):
            out.append(d / np.linalg.norm(d))
    return out


@pytest.mark.parametrize("axis", "xyz")
def test_reconstruct_on_26_directions(axis):
    dec = quadratic_decomposition(axis)
    idx = "xyz".index(axis)
    worst = 0.0
    for d in _directions_26():
        theta, phi = math.acos(d[2]), math.atan2(d[1], d[0])
        value = dec.evaluate(lambda l, m: ylm(l, m, theta, phi))
        worst = max(worst, abs(value - d[idx] ** 2))
    assert worst <= 1e-14


def test_unknown_axis():
    with pytest.raises(ValueError):
        quadratic_decomposition("w")
