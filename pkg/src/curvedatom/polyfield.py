"""Sparse polynomials in the local coordinates (x, y, z).

Coefficients are kept exact (``int``/``Fraction``) and a separate float
``scale`` carries the physical prefactor, so Laplacian residual checks run
in rational arithmetic.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

Exponent = tuple[int, int, int]
AXES = {"x": 0, "y": 1, "z": 2}


def _axis(axis) -> int:
    if isinstance(axis, str):
        return AXES[axis]
    if axis not in (0, 1, 2):
        raise ValueError(f"axis must be 0, 1, 2 or 'x', 'y', 'z', got {axis!r}")
    return axis


def _exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


class PolyField:
    __slots__ = ("_terms", "scale")

    def __init__(self, terms: dict | None = None, scale: float = 1.0):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 3 or min(exp) < 0:
                raise ValueError(f"bad exponent triple {exp!r}")
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self._terms = clean
        self.scale = scale

    # construction helpers
    @classmethod
    def constant(cls, c=1) -> "PolyField":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, axis) -> "PolyField":
        exp = [0, 0, 0]
        exp[_axis(axis)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def zero(cls) -> "PolyField":
        return cls()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms or self.scale == 0

    def is_exact(self) -> bool:
        return all(_exact(c) for c in self._terms.values())

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def expanded(self) -> "PolyField":
        """Fold ``scale`` into the coefficients."""
        if self.scale == 1:
            return PolyField(self._terms)
        return PolyField({e: c * self.scale for e, c in self._terms.items()})

    def with_scale(self, scale: float) -> "PolyField":
        return PolyField(self._terms, scale)

    # arithmetic
    def _coerce(self, other) -> "PolyField":
        if isinstance(other, PolyField):
            return other
        if isinstance(other, numbers.Number):
            return PolyField.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.scale == other.scale:
            out = dict(self._terms)
            for e, c in other._terms.items():
                out[e] = out.get(e, 0) + c
            return PolyField(out, self.scale)
        return self.expanded() + other.expanded()

    __radd__ = __add__

    def __neg__(self):
        return PolyField({e: -c for e, c in self._terms.items()}, self.scale)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            if _exact(other):
                return PolyField({e: c * other for e, c in self._terms.items()}, self.scale)
            return PolyField(self._terms, self.scale * other)
        if not isinstance(other, PolyField):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return PolyField(out, self.scale * other.scale)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if int(power) != power or power < 0:
            raise ValueError("only non-negative integer powers")
        out = PolyField.constant(1)
        for _ in range(power):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = PolyField.constant(other)
        if not isinstance(other, PolyField):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.scale == other.scale:
            return self._terms == other._terms
        return self.expanded()._terms == other.expanded()._terms

    def __hash__(self):
        return hash(frozenset(self.expanded()._terms.items()))

    # calculus
    def diff(self, axis) -> "PolyField":
        ax = _axis(axis)
        out = {}
        for e, c in self._terms.items():
            if e[ax]:
                new = list(e)
                new[ax] -= 1
                out[tuple(new)] = c * e[ax]
        return PolyField(out, self.scale)

    def laplacian(self) -> "PolyField":
        return self.diff(0).diff(0) + self.diff(1).diff(1) + self.diff(2).diff(2)

    def gradient(self) -> tuple["PolyField", "PolyField", "PolyField"]:
        return self.diff(0), self.diff(1), self.diff(2)

    def __call__(self, x, y, z):
        total = 0
        for (i, j, k), c in self._terms.items():
            total = total + c * x**i * y**j * z**k
        return self.scale * total

    evaluate = __call__

    def __repr__(self) -> str:
        if not self._terms:
            return "PolyField(0)"
        parts = []
        for (i, j, k), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(f"{v}^{p}" if p > 1 else v
                            for v, p in zip("xyz", (i, j, k)) if p)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        body = " + ".join(parts)
        return f"PolyField({body})" if self.scale == 1 else f"PolyField({self.scale!r} * ({body}))"


def divergence(vec) -> PolyField:
    return vec[0].diff(0) + vec[1].diff(1) + vec[2].diff(2)


def curl(vec) -> tuple[PolyField, PolyField, PolyField]:
    ax, ay, az = vec
    return (az.diff(1) - ay.diff(2), ax.diff(2) - az.diff(0), ay.diff(0) - ax.diff(1))


X = PolyField.variable("x")
Y = PolyField.variable("y")
Z = PolyField.variable("z")
