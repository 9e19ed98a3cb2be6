"""Univariate polynomials with coefficients in a FieldSpec."""

from __future__ import annotations

from typing import Sequence

from .fields import FieldElement, FieldSpec


class Polynomial:
    """Immutable polynomial, coefficients stored low degree first with no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, field: FieldSpec, c) -> "Polynomial":
        return cls(field, [c])

    @classmethod
    def x(cls, field: FieldSpec) -> "Polynomial":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero
        return Polynomial(self.field, [
            (self.coeffs[i] if i < len(self.coeffs) else zero)
            + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        ])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead_inv = other.coeffs[-1].inverse()
        quot = [self.field.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        while len(rem) >= len(other.coeffs) and rem:
            c = rem[-1] * lead_inv
            shift = len(rem) - len(other.coeffs)
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def powmod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial.constant(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while b.coeffs:
            a, b = b, a % b
        if a.coeffs:
            a = a * a.coeffs[-1].inverse()
        return a

    def __call__(self, x) -> FieldElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        terms = [f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"
