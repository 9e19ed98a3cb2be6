"""Parameter arrays, the eight parametric families, and their derived scalars."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .errors import (
    CaseConstraintViolated,
    DiameterTooSmall,
    DivisionByZero,
    InfeasibleParameters,
)
from .fields import FieldElement, FieldSpec
from .polynomial import Polynomial

CASE_TAGS = ("I", "IA", "II", "IIA", "IIB", "IIC", "III", "IV")

CASE_PARAMETERS: Dict[str, Tuple[str, ...]] = {
    "I": ("q", "h", "h_star", "r1", "r2", "s", "s_star", "theta0", "theta0_star"),
    "IA": ("q", "h_star", "r", "s", "theta0", "theta0_star"),
    "II": ("h", "h_star", "r1", "r2", "s", "s_star", "theta0", "theta0_star"),
    "IIA": ("h", "r", "s", "s_star", "theta0", "theta0_star"),
    "IIB": ("h_star", "r", "s", "s_star", "theta0", "theta0_star"),
    "IIC": ("r", "s", "s_star", "theta0", "theta0_star"),
    "III": ("h", "h_star", "r1", "r2", "s", "s_star", "theta0", "theta0_star"),
    "IV": ("h", "h_star", "r", "s", "s_star", "theta0", "theta0_star"),
}

# Families reported by case_family_of_beta.
I_FAMILY = "I-family"
II_FAMILY = "II-family"


@dataclass(frozen=True)
class ParameterArray:
    """The data (theta; theta*; varphi; phi) of a Leonard system of diameter d.

    ``varphi[i-1]`` and ``phi[i-1]`` hold the entries with index i, 1 <= i <= d.
    """

    theta: Tuple[FieldElement, ...]
    theta_star: Tuple[FieldElement, ...]
    varphi: Tuple[FieldElement, ...]
    phi: Tuple[FieldElement, ...]

    def __post_init__(self):
        for name in ("theta", "theta_star", "varphi", "phi"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        d = len(self.theta) - 1
        if d < 1 or len(self.theta_star) != d + 1 or len(self.varphi) != d or len(self.phi) != d:
            raise ValueError("inconsistent parameter array lengths")

    @classmethod
    def make(cls, field: FieldSpec, theta, theta_star, varphi, phi) -> "ParameterArray":
        conv = lambda xs: tuple(field(x) for x in xs)  # noqa: E731
        return cls(conv(theta), conv(theta_star), conv(varphi), conv(phi))

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    @property
    def field(self) -> FieldSpec:
        return self.theta[0].field

    def describe(self) -> dict:
        return {key: [str(x) for x in getattr(self, key)]
                for key in ("theta", "theta_star", "varphi", "phi")}


@dataclass(frozen=True)
class CaseParams:
    """One of the eight parametric families together with its free scalars."""

    tag: str
    d: int
    values: Mapping[str, FieldElement] = dc_field(hash=False)

    def __post_init__(self):
        if self.tag not in CASE_PARAMETERS:
            raise CaseConstraintViolated(f"unknown case tag {self.tag!r}")
        expected = set(CASE_PARAMETERS[self.tag])
        got = set(self.values)
        if got != expected:
            raise CaseConstraintViolated(
                f"case {self.tag} needs parameters {sorted(expected)}, got {sorted(got)}")
        if self.d < 1:
            raise CaseConstraintViolated("the diameter must be positive")

    @property
    def field(self) -> FieldSpec:
        return next(iter(self.values.values())).field

    def __getitem__(self, key: str) -> FieldElement:
        return self.values[key]

    def replace(self, d: Optional[int] = None, **values) -> "CaseParams":
        merged = dict(self.values)
        merged.update({k: self.field(v) for k, v in values.items()})
        return CaseParams(self.tag, self.d if d is None else d, merged)

    def describe(self) -> dict:
        out = {"tag": self.tag, "d": self.d}
        out.update({k: str(self.values[k]) for k in CASE_PARAMETERS[self.tag]})
        return out


def make_case(tag: str, field: FieldSpec, d: int = 3, **values) -> CaseParams:
    """Build CaseParams, coercing every scalar into ``field``; theta0/theta0_star default to 0."""
    values.setdefault("theta0", 0)
    values.setdefault("theta0_star", 0)
    return CaseParams(tag, d, {k: field(v) for k, v in values.items()})


# --------------------------------------------------------------------------
# evaluation of the appendix formulas
# --------------------------------------------------------------------------

def _check_case_constraint(cp: CaseParams) -> None:
    v, d, F = cp.values, cp.d, cp.field
    if cp.tag in ("I", "IA") and not v["q"]:
        raise CaseConstraintViolated("q must be nonzero")
    if cp.tag == "I" and v["r1"] * v["r2"] != v["s"] * v["s_star"] * v["q"] ** (d + 1):
        raise CaseConstraintViolated("case I requires r1*r2 = s*s_star*q^(d+1)")
    if cp.tag == "II" and v["r1"] + v["r2"] != v["s"] + v["s_star"] + (d + 1):
        raise CaseConstraintViolated("case II requires r1+r2 = s+s_star+d+1")
    if cp.tag == "III" and v["r1"] + v["r2"] != -v["s"] - v["s_star"] + (d + 1):
        raise CaseConstraintViolated("case III requires r1+r2 = -s-s_star+d+1")
    if cp.tag == "IV" and (F.characteristic != 2 or d != 3):
        raise CaseConstraintViolated("case IV requires characteristic 2 and d = 3")


def evaluate_case(cp: CaseParams) -> ParameterArray:
    """Evaluate the displayed formulas without validating the result."""
    _check_case_constraint(cp)
    v, d, F = cp.values, cp.d, cp.field
    t0, ts0 = v["theta0"], v["theta0_star"]
    idx = range(d + 1)
    ids = range(1, d + 1)
    tag = cp.tag
    if tag == "I":
        q, h, hs, r1, r2, s, ss = (v[k] for k in ("q", "h", "h_star", "r1", "r2", "s", "s_star"))
        theta = [t0 + h * (1 - q ** i) * (1 - s * q ** (i + 1)) * q ** (-i) for i in idx]
        theta_s = [ts0 + hs * (1 - q ** i) * (1 - ss * q ** (i + 1)) * q ** (-i) for i in idx]
        base = [h * hs * (1 - q ** i) * (1 - q ** (i - d - 1)) for i in ids]
        varphi = [b * q ** (1 - 2 * i) * (1 - r1 * q ** i) * (1 - r2 * q ** i)
                  for b, i in zip(base, ids)]
        if ss:
            phi = [b * q ** (1 - 2 * i) * (r1 - ss * q ** i) * (r2 - ss * q ** i) / ss
                   for b, i in zip(base, ids)]
        else:
            phi = [b * q ** (d + 2 - 2 * i) * (s - r1 * q ** (i - d - 1) - r2 * q ** (i - d - 1))
                   for b, i in zip(base, ids)]
    elif tag == "IA":
        q, hs, r, s = (v[k] for k in ("q", "h_star", "r", "s"))
        theta = [t0 - s * q * (1 - q ** i) for i in idx]
        theta_s = [ts0 + hs * (1 - q ** i) * q ** (-i) for i in idx]
        varphi = [-r * hs * q ** (1 - i) * (1 - q ** i) * (1 - q ** (i - d - 1)) for i in ids]
        phi = [hs * q ** (d + 2 - 2 * i) * (1 - q ** i) * (1 - q ** (i - d - 1))
               * (s - r * q ** (i - d - 1)) for i in ids]
    elif tag == "II":
        h, hs, r1, r2, s, ss = (v[k] for k in ("h", "h_star", "r1", "r2", "s", "s_star"))
        theta = [t0 + h * i * (i + 1 + s) for i in idx]
        theta_s = [ts0 + hs * i * (i + 1 + ss) for i in idx]
        varphi = [h * hs * i * (i - d - 1) * (i + r1) * (i + r2) for i in ids]
        phi = [h * hs * i * (i - d - 1) * (i + ss - r1) * (i + ss - r2) for i in ids]
    elif tag == "IIA":
        h, r, s, ss = (v[k] for k in ("h", "r", "s", "s_star"))
        theta = [t0 + h * i * (i + 1 + s) for i in idx]
        theta_s = [ts0 + ss * i for i in idx]
        varphi = [h * ss * i * (i - d - 1) * (i + r) for i in ids]
        phi = [h * ss * i * (i - d - 1) * (i + r - s - d - 1) for i in ids]
    elif tag == "IIB":
        hs, r, s, ss = (v[k] for k in ("h_star", "r", "s", "s_star"))
        theta = [t0 + s * i for i in idx]
        theta_s = [ts0 + hs * i * (i + 1 + ss) for i in idx]
        varphi = [hs * s * i * (i - d - 1) * (i + r) for i in ids]
        phi = [-hs * s * i * (i - d - 1) * (i + ss - r) for i in ids]
    elif tag == "IIC":
        r, s, ss = (v[k] for k in ("r", "s", "s_star"))
        theta = [t0 + s * i for i in idx]
        theta_s = [ts0 + ss * i for i in idx]
        varphi = [r * i * (i - d - 1) for i in ids]
        phi = [(r - s * ss) * i * (i - d - 1) for i in ids]
    elif tag == "III":
        h, hs, r1, r2, s, ss = (v[k] for k in ("h", "h_star", "r1", "r2", "s", "s_star"))
        sign = lambda i: 1 if i % 2 == 0 else -1  # noqa: E731
        theta = [t0 + h * (s - 1 + (1 - s + 2 * i) * sign(i)) for i in idx]
        theta_s = [ts0 + hs * (ss - 1 + (1 - ss + 2 * i) * sign(i)) for i in idx]
        hh = h * hs
        varphi, phi = [], []
        for i in ids:
            if d % 2 == 0 and i % 2 == 0:
                varphi.append(-4 * hh * i * (i + r1))
                phi.append(4 * hh * i * (i - ss - r1))
            elif d % 2 == 0:
                varphi.append(-4 * hh * (i - d - 1) * (i + r2))
                phi.append(4 * hh * (i - d - 1) * (i - ss - r2))
            elif i % 2 == 0:
                varphi.append(-4 * hh * i * (i - d - 1))
                phi.append(-4 * hh * i * (i - d - 1))
            else:
                varphi.append(-4 * hh * (i + r1) * (i + r2))
                phi.append(-4 * hh * (i - ss - r1) * (i - ss - r2))
    else:  # IV
        h, hs, r, s, ss = (v[k] for k in ("h", "h_star", "r", "s", "s_star"))
        theta = [t0, t0 + h * (s + 1), t0 + h, t0 + h * s]
        theta_s = [ts0, ts0 + hs * (ss + 1), ts0 + hs, ts0 + hs * ss]
        hh = h * hs
        varphi = [hh * r, hh, hh * (r + s + ss)]
        phi = [hh * (r + s * (1 + ss)), hh, hh * (r + ss * (1 + s))]
    conv = lambda xs: tuple(F(x) for x in xs)  # noqa: E731
    return ParameterArray(conv(theta), conv(theta_s), conv(varphi), conv(phi))


def instantiate(cp: CaseParams) -> ParameterArray:
    """Evaluate the case formulas and refuse arrays that fail (PA1)-(PA5)."""
    try:
        pa = evaluate_case(cp)
    except DivisionByZero as exc:
        raise CaseConstraintViolated(f"a denominator vanishes: {exc}") from exc
    report = validate(pa)
    if not report.ok:
        bad = report.first_failure()
        raise InfeasibleParameters(
            f"case {cp.tag} parameters fail {bad.name} at index {bad.index}", report)
    return pa


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    index: Optional[int] = None
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    conditions: Tuple[ConditionResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def first_failure(self) -> Optional[ConditionResult]:
        return next((c for c in self.conditions if not c.passed), None)


def _vartheta(pa: ParameterArray) -> List[FieldElement]:
    th, d = pa.theta, pa.d
    denom = (th[0] - th[d]).inverse()
    out, acc = [], pa.field.zero
    for i in range(1, d + 1):
        acc = acc + (th[i - 1] - th[d - i + 1]) * denom
        out.append(acc)
    return out


def _pa5_value(pa: ParameterArray):
    """Return (ok, failing index, common value) for the three-term ratio condition."""
    th, ts, d = pa.theta, pa.theta_star, pa.d
    common = None
    for i in range(2, d):
        a = (th[i - 2] - th[i + 1]) / (th[i - 1] - th[i])
        b = (ts[i - 2] - ts[i + 1]) / (ts[i - 1] - ts[i])
        if a != b or (common is not None and a != common):
            return False, i, None
        common = a
    return True, None, common


def validate(pa: ParameterArray) -> ValidationReport:
    d = pa.d
    out = []

    bad = next((i for i in range(1, d + 1) if not pa.varphi[i - 1] or not pa.phi[i - 1]), None)
    out.append(ConditionResult("PA1", bad is None, bad,
                               "" if bad is None else "varphi_i or phi_i vanishes"))

    bad = None
    for seq in (pa.theta, pa.theta_star):
        for j in range(d + 1):
            if any(seq[i] == seq[j] for i in range(j)):
                bad = j if bad is None else min(bad, j)
    distinct = bad is None
    out.append(ConditionResult("PA2", distinct, bad,
                               "" if distinct else "repeated eigenvalue"))

    if not distinct:
        for name in ("PA3", "PA4", "PA5"):
            out.append(ConditionResult(name, False, None, "not evaluable without PA2"))
        return ValidationReport(tuple(out))

    th, ts = pa.theta, pa.theta_star
    vt = _vartheta(pa)
    bad3 = bad4 = None
    for i in range(1, d + 1):
        rhs3 = pa.phi[0] * vt[i - 1] + (ts[i] - ts[0]) * (th[i - 1] - th[d])
        rhs4 = pa.varphi[0] * vt[i - 1] + (ts[i] - ts[0]) * (th[d - i + 1] - th[0])
        if bad3 is None and pa.varphi[i - 1] != rhs3:
            bad3 = i
        if bad4 is None and pa.phi[i - 1] != rhs4:
            bad4 = i
    out.append(ConditionResult("PA3", bad3 is None, bad3))
    out.append(ConditionResult("PA4", bad4 is None, bad4))
    ok5, bad5, _ = _pa5_value(pa)
    out.append(ConditionResult("PA5", ok5, bad5, "vacuous" if d < 3 else ""))
    return ValidationReport(tuple(out))


# --------------------------------------------------------------------------
# derived scalars
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivedScalars:
    vartheta: Tuple[FieldElement, ...]
    beta: Optional[FieldElement]  # None: undetermined (d < 3)


def derived_scalars(pa: ParameterArray) -> DerivedScalars:
    vt = tuple(_vartheta(pa))
    beta = None
    if pa.d >= 3:
        ok, _, common = _pa5_value(pa)
        if not ok:
            raise InfeasibleParameters("the three-term ratios are not constant")
        beta = common - 1
    return DerivedScalars(vt, beta)


def closed_form_vartheta(cp: CaseParams) -> Tuple[FieldElement, ...]:
    """The tabulated closed forms of vartheta_1..vartheta_d for each family."""
    _check_case_constraint(cp)
    F, d = cp.field, cp.d
    out = []
    for i in range(1, d + 1):
        if cp.tag in ("I", "IA"):
            q = cp["q"]
            out.append((q ** i - 1) * (q ** (d - i + 1) - 1) / ((q - 1) * (q ** d - 1)))
        elif cp.tag in ("II", "IIA", "IIB", "IIC"):
            out.append(F(i * (d - i + 1)) / d)
        elif cp.tag == "III" and d % 2 == 0:
            out.append(F(i) / d if i % 2 == 0 else F(d - i + 1) / d)
        else:  # III with d odd, or IV
            out.append(F(0) if i % 2 == 0 else F(1))
    return tuple(out)


def how_related_check(pa: ParameterArray) -> bool:
    """varphi_i - phi_i == (th*_i - th*_{i-1})(th_0 - th_d) vartheta_i for all i."""
    vt = _vartheta(pa)
    th, ts, d = pa.theta, pa.theta_star, pa.d
    return all(
        pa.varphi[i - 1] - pa.phi[i - 1] == (ts[i] - ts[i - 1]) * (th[0] - th[d]) * vt[i - 1]
        for i in range(1, d + 1)
    )


def _q_family_admissible(beta: FieldElement, d: int) -> bool:
    """Is there q in the field with q + 1/q = beta and q^i != 1 for 1 <= i <= d?

    The roots of x^2 - beta x + 1 are q and 1/q, so either both or neither
    satisfy q^i = 1.
    """
    F = beta.field
    if F.kind == "rational":
        from fractions import Fraction
        import math
        disc = beta.value ** 2 - 4
        if disc < 0:
            return False
        rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
        if rn * rn != disc.numerator or rd * rd != disc.denominator:
            return False
        q = (beta.value + Fraction(rn, rd)) / 2
        return all(q ** i != 1 for i in range(1, d + 1))
    f = Polynomial(F, [1, -beta, 1])
    x = Polynomial.x(F)
    split = f.gcd(x.powmod(F.order, f) - x)
    if split.degree <= 0:
        return False
    if split.degree == 1:
        q = -split.coeffs[0]
        return all(q ** i != 1 for i in range(1, d + 1))
    one = Polynomial.constant(F, 1)
    return all(x.powmod(i, f) != one for i in range(1, d + 1))


def case_family_of_beta(pa: ParameterArray) -> FrozenSet[str]:
    """Every family whose beta value matches; ambiguous in small characteristic."""
    if pa.d < 3:
        raise DiameterTooSmall("beta is undetermined for d < 3")
    beta = derived_scalars(pa).beta
    F = pa.field
    out = set()
    if beta == 2:
        out.add(II_FAMILY)
    if beta == -2:
        out.add("III")
    if not beta and F.characteristic == 2 and pa.d == 3:
        out.add("IV")
    if _q_family_admissible(beta, pa.d):
        out.add(I_FAMILY)
    return frozenset(out)


def dual_array(pa: ParameterArray) -> ParameterArray:
    """Parameter array of the dual system: (theta*; theta; varphi; phi reversed)."""
    return ParameterArray(pa.theta_star, pa.theta, pa.varphi, tuple(reversed(pa.phi)))
