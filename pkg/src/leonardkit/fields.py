"""Exact scalar fields: the rationals, prime fields GF(p) and extensions GF(p^k).

Elements of GF(p^k) are coefficient tuples ``(a_0, ..., a_{k-1})`` of a
polynomial in the generator, reduced modulo a monic irreducible polynomial
given low-to-high (so ``(1, 1, 1)`` is x^2 + x + 1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Tuple

from .errors import DivisionByZero, InvalidFieldSpec, MismatchedField

__all__ = [
    "FieldSpec",
    "FieldElement",
    "QQ",
    "GF",
    "field_arith",
    "from_integer",
    "characteristic",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


# --- polynomials over GF(p) as int lists, low degree first -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return a


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Ben-Or test: f of degree k is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    x = [0, 1]
    power = x
    for _ in range(k // 2):
        power = _ppowmod(power, p, f, p)
        if len(_pgcd(f, _psub(power, x, p), p)) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Description of one exact field; calling it coerces a value into the field."""

    kind: str
    p: Optional[int] = None
    modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None or self.modulus is not None:
                raise InvalidFieldSpec("the rational field takes no modulus")
            return
        if self.kind not in ("prime", "extension"):
            raise InvalidFieldSpec(f"unknown field kind {self.kind!r}")
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidFieldSpec(f"p={self.p!r} is not prime")
        if self.kind == "prime":
            if self.modulus is not None:
                raise InvalidFieldSpec("a prime field takes no modulus")
            return
        if self.modulus is None:
            raise InvalidFieldSpec("an extension field needs a modulus")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) < 3 or mod[-1] != 1:
            raise InvalidFieldSpec("modulus must be monic of degree >= 2")
        if not is_irreducible(mod, self.p):
            raise InvalidFieldSpec(f"modulus {list(mod)} is reducible over GF({self.p})")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def extension(cls, p: int, modulus) -> "FieldSpec":
        return cls("extension", p, tuple(modulus))

    # -- properties --------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.p

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1 if self.kind == "extension" else 1

    @property
    def order(self) -> Optional[int]:
        """Number of elements, or None for the rationals."""
        if self.kind == "rational":
            return None
        return self.p ** self.degree

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x in GF(p)[x]/(modulus); extension fields only."""
        if self.kind != "extension":
            raise InvalidFieldSpec("only extension fields have a generator")
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))

    def elements(self) -> Iterator["FieldElement"]:
        if self.kind == "rational":
            raise InvalidFieldSpec("the rational field is infinite")
        if self.kind == "prime":
            for a in range(self.p):
                yield FieldElement(self, a)
        else:
            for coeffs in product(range(self.p), repeat=self.degree):
                yield FieldElement(self, coeffs)

    def describe(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}

    def __str__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "prime":
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree})"

    # -- coercion ----------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MismatchedField(f"{value!r} is not an element of {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, str):
            text = value.strip().replace("−", "-")
            if text.startswith("["):
                value = json.loads(text)
            else:
                value = Fraction(text)
        if isinstance(value, (list, tuple)):
            if self.kind != "extension":
                if len(value) == 1:
                    return self(value[0])
                raise TypeError(f"coefficient vector given for {self}")
            if len(value) > self.degree:
                raise ValueError(f"too many coefficients for {self}")
            coeffs = [int(c) % self.p for c in value]
            coeffs += [0] * (self.degree - len(coeffs))
            return FieldElement(self, tuple(coeffs))
        if isinstance(value, int):
            return self._from_int(value)
        if isinstance(value, Fraction):
            if self.kind == "rational":
                return FieldElement(self, value)
            return self._from_int(value.numerator) / self._from_int(value.denominator)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def _from_int(self, n: int) -> "FieldElement":
        if self.kind == "rational":
            return FieldElement(self, Fraction(n))
        if self.kind == "prime":
            return FieldElement(self, n % self.p)
        return FieldElement(self, (n % self.p,) + (0,) * (self.degree - 1))


def GF(p: int, modulus=None) -> FieldSpec:
    if modulus is None:
        return FieldSpec.prime(p)
    return FieldSpec.extension(p, modulus)


class FieldElement:
    """An immutable exact scalar; arithmetic mixes freely with Python ints and Fractions."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MismatchedField(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        if f.kind == "rational":
            return FieldElement(f, self.value + other.value)
        if f.kind == "prime":
            return FieldElement(f, (self.value + other.value) % f.p)
        return FieldElement(f, tuple((a + b) % f.p for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "rational":
            return FieldElement(f, -self.value)
        if f.kind == "prime":
            return FieldElement(f, -self.value % f.p)
        return FieldElement(f, tuple(-a % f.p for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        if f.kind == "rational":
            return FieldElement(f, self.value * other.value)
        if f.kind == "prime":
            return FieldElement(f, self.value * other.value % f.p)
        prod = _pmod(_pmul(list(self.value), list(other.value), f.p), list(f.modulus), f.p)
        prod += [0] * (f.degree - len(prod))
        return FieldElement(f, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero(f"0 has no inverse in {self.field}")
        f = self.field
        if f.kind == "rational":
            return FieldElement(f, 1 / self.value)
        if f.kind == "prime":
            return FieldElement(f, pow(self.value, -1, f.p))
        return self ** (f.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __bool__(self):
        if self.field.kind == "extension":
            return any(self.value)
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        if self.field.kind == "extension":
            return "[" + ",".join(str(c) for c in self.value) + "]"
        return str(self.value)

    def __repr__(self):
        return f"{self.field}({self})"


QQ = FieldSpec.rational()


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two elements of one field."""
    if a.field != b.field:
        raise MismatchedField(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def from_integer(n: int, spec: FieldSpec) -> FieldElement:
    return spec(n)


def characteristic(spec: FieldSpec) -> int:
    return spec.characteristic
