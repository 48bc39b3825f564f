"""Exact angular-momentum algebra for integer angular momenta.

Clebsch-Gordan coefficients follow the Condon-Shortley convention and are
evaluated from the Racah sum in exact rational arithmetic.  Each value is
kept as ``rational * sqrt(radicand)`` with a square-free integer radicand,
so products and sums of coefficients stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

__all__ = [
    "CGCoefficient",
    "clebsch_gordan",
    "triple_y_integral",
    "quadratic_decomposition",
    "QuadraticHarmonicDecomposition",
    "surd_sum",
]


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [i for i, flag in enumerate(sieve) if flag]


def _split_square(num: int, max_prime: int) -> tuple[int, int]:
    """Write ``num`` as outside**2 * inside with ``inside`` square-free.

    All prime factors of ``num`` must be <= ``max_prime``.
    """
    outside, inside = 1, 1
    for p in _primes_upto(max_prime):
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        outside *= p ** (e // 2)
        inside *= p ** (e % 2)
    if num != 1:
        raise ArithmeticError("radicand has a prime factor above the expected bound")
    return outside, inside


@dataclass(frozen=True)
class CGCoefficient:
    """Exact value ``rational * sqrt(radicand)``; radicand is square-free."""

    rational: Fraction
    radicand: int = 1

    def __post_init__(self):
        if self.rational == 0 and self.radicand != 1:
            object.__setattr__(self, "radicand", 1)

    @property
    def value(self) -> float:
        return float(self.rational) * math.sqrt(self.radicand)

    def __float__(self) -> float:
        return self.value

    @property
    def squared(self) -> Fraction:
        return self.rational**2 * self.radicand

    def __bool__(self) -> bool:
        return self.rational != 0

    def __neg__(self) -> "CGCoefficient":
        return CGCoefficient(-self.rational, self.radicand)

    def __mul__(self, other):
        if isinstance(other, CGCoefficient):
            g = math.gcd(self.radicand, other.radicand)
            return CGCoefficient(self.rational * other.rational * g,
                                 (self.radicand // g) * (other.radicand // g))
        if isinstance(other, (int, Fraction)):
            return CGCoefficient(self.rational * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.radicand == 1:
            return f"CG({self.rational})"
        return f"CG({self.rational}*sqrt({self.radicand}))"


ZERO = CGCoefficient(Fraction(0))


def surd_sum(values) -> dict[int, Fraction]:
    """Exact sum of CGCoefficient-like values grouped by radicand (zeros dropped)."""
    out: dict[int, Fraction] = {}
    for v in values:
        out[v.radicand] = out.get(v.radicand, Fraction(0)) + v.rational
    return {k: v for k, v in out.items() if v != 0}


def _as_int(value, name: str) -> int:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, (float, Fraction)) and value == int(value):
        return int(value)
    raise ValueError(f"{name} must be an integer (half-integers are not supported), got {value!r}")


def clebsch_gordan(l1, m1, l2, m2, l, m) -> CGCoefficient:
    """<l1 m1; l2 m2 | l m> for integer angular momenta.

    Selection-rule violations (m1 + m2 != m, triangle, |m| > l) give exact zero.
    """
    args = [_as_int(v, n) for v, n in zip((l1, m1, l2, m2, l, m),
                                          ("l1", "m1", "l2", "m2", "l", "m"))]
    l1, m1, l2, m2, l, m = args
    if l1 < 0 or l2 < 0 or l < 0:
        raise ValueError("angular momenta must be non-negative")
    if abs(m1) > l1 or abs(m2) > l2:
        raise ValueError(f"|m| exceeds l in ({l1},{m1}) or ({l2},{m2})")
    return _cg(l1, m1, l2, m2, l, m)


@lru_cache(maxsize=None)
def _cg(l1: int, m1: int, l2: int, m2: int, l: int, m: int) -> CGCoefficient:
    if m1 + m2 != m or abs(m) > l or not abs(l1 - l2) <= l <= l1 + l2:
        return ZERO
    kmin = max(0, l2 - l - m1, l1 - l + m2)
    kmax = min(l1 + l2 - l, l1 - m1, l2 + m2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (factorial(k) * factorial(l1 + l2 - l - k) * factorial(l1 - m1 - k)
               * factorial(l2 + m2 - k) * factorial(l - l2 + m1 + k)
               * factorial(l - l1 - m2 + k))
        total += Fraction((-1) ** k, den)
    if total == 0:
        return ZERO
    radicand = Fraction(
        (2 * l + 1) * factorial(l + l1 - l2) * factorial(l - l1 + l2) * factorial(l1 + l2 - l)
        * factorial(l + m) * factorial(l - m) * factorial(l1 - m1) * factorial(l1 + m1)
        * factorial(l2 - m2) * factorial(l2 + m2),
        factorial(l1 + l2 + l + 1),
    )
    # sqrt(p/q) = sqrt(p*q)/q
    outside, inside = _split_square(radicand.numerator * radicand.denominator,
                                    l1 + l2 + l + 1)
    return CGCoefficient(total * Fraction(outside, radicand.denominator), inside)


def triple_y_integral(l1, m1, l2, m2, l, m) -> float:
    """Integral of conj(Y_lm) Y_l1m1 Y_l2m2 over the unit sphere."""
    gaunt = clebsch_gordan(l1, 0, l2, 0, l, 0) * clebsch_gordan(l1, m1, l2, m2, l, m)
    if not gaunt:
        return 0.0
    weight = Fraction((2 * l1 + 1) * (2 * l2 + 1), 2 * l + 1)
    return gaunt.value * math.sqrt(weight) / math.sqrt(4.0 * math.pi)


@dataclass(frozen=True)
class QuadraticHarmonicDecomposition:
    """x_axis^2 / r^2 = sum of coefficients[(l, m)] * Y_lm."""

    axis: str
    coefficients: dict

    def evaluate(self, ylm) -> complex:
        """Recombine with a callable ``ylm(l, m)`` returning Y_lm values."""
        return sum(c * ylm(l, m) for (l, m), c in self.coefficients.items() if c)


def quadratic_decomposition(axis: str) -> QuadraticHarmonicDecomposition:
    s00 = math.sqrt(4.0 * math.pi) / 3.0
    s20 = math.sqrt(16.0 * math.pi / 5.0)
    s22 = math.sqrt(32.0 * math.pi / 15.0) / 4.0
    if axis == "x":
        coeffs = {(0, 0): s00, (2, 0): -s20 / 6.0, (2, 2): s22, (2, -2): s22}
    elif axis == "y":
        coeffs = {(0, 0): s00, (2, 0): -s20 / 6.0, (2, 2): -s22, (2, -2): -s22}
    elif axis == "z":
        coeffs = {(0, 0): s00, (2, 0): s20 / 3.0, (2, 2): 0.0, (2, -2): 0.0}
    else:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return QuadraticHarmonicDecomposition(axis, coeffs)
