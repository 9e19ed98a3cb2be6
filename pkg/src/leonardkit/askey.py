"""The polynomial layer: u_i polynomials, orthogonality sums and the Krawtchouk case."""

from __future__ import annotations

from math import comb
from typing import List, Optional, Sequence, Tuple

from .descent import is_descendent
from .errors import DenominatorVanishes, NotADescendent
from .fields import FieldElement
from .leonard import LeonardSystem, d4_apply, extract_parameter_array, from_parameter_array, nu_and_k, standard_form
from .params import ParameterArray, dual_array
from .polynomial import Polynomial

__all__ = [
    "u_polynomials",
    "expansion_identity_check",
    "orthogonality_sum",
    "orthogonality_table",
    "in_window",
    "hypergeometric_2F1",
    "krawtchouk_sum",
    "krawtchouk_table",
    "krawtchouk_identity_check",
    "proportional",
]


def u_polynomials(pa: ParameterArray) -> List[Polynomial]:
    """u_0, ..., u_d with u_i(theta_0) = 1 and deg u_i = i."""
    F, d = pa.field, pa.d
    x = Polynomial.x(F)
    out = []
    for i in range(d + 1):
        total = Polynomial.constant(F, F.one)
        coeff, basis = F.one, Polynomial.constant(F, F.one)
        for l in range(1, d + 1):
            coeff = coeff * (pa.theta_star[i] - pa.theta_star[l - 1]) / pa.varphi[l - 1]
            basis = basis * (x - Polynomial.constant(F, pa.theta[l - 1]))
            if not coeff:
                break
            total = total + basis * Polynomial.constant(F, coeff)
        out.append(total)
    return out


def expansion_identity_check(ls: LeonardSystem) -> bool:
    """E_i v = k*_i (<u,v>/||u||^2) sum_j u*_i(theta*_j) E*_j u for every i.

    u spans E_0 V, v spans E*_0 V, the u*_i are the polynomials of the dual
    array and k*_i the weights of the dual system.
    """
    sf = standard_form(ls)
    G = sf.standard_gram
    u = sf.u
    v = ls.E_star[0].first_nonzero_column()
    F = ls.field
    pair = lambda a, b: sum((x * y for x, y in zip(a, G.apply(b))), F.zero)  # noqa: E731
    scale = pair(u, v) / pair(u, u)
    _, k_star = nu_and_k(d4_apply(ls, "*"))
    pa = extract_parameter_array(ls)
    u_star = u_polynomials(dual_array(pa))
    star_cols = [Es.apply(u) for Es in ls.E_star]
    for i, E in enumerate(ls.E):
        rhs = [F.zero] * (ls.d + 1)
        for j, col in enumerate(star_cols):
            c = k_star[i] * scale * u_star[i](pa.theta_star[j])
            rhs = [r + c * y for r, y in zip(rhs, col)]
        if list(E.apply(v)) != rhs:
            return False
    return True


def in_window(i: int, j: int, d: int, d_prime: int) -> bool:
    return j <= i <= j + d - d_prime


def _ortho_data(pa: ParameterArray, pa_prime: ParameterArray, rho: int):
    if is_descendent(pa, pa_prime, rho) is None:
        raise NotADescendent(f"no {rho}-descendent relation between the arrays")
    _, k_prime = nu_and_k(from_parameter_array(pa_prime))
    return u_polynomials(dual_array(pa)), u_polynomials(dual_array(pa_prime)), k_prime


def _ortho_entry(pa, pa_prime, rho, i, j, data) -> FieldElement:
    us, usp, kp = data
    F = pa.field
    return sum((us[i](pa.theta_star[rho + l]) * usp[j](pa_prime.theta_star[l]) * kp[l]
                for l in range(pa_prime.d + 1)), F.zero)


def orthogonality_sum(pa: ParameterArray, pa_prime: ParameterArray, rho: int, i: int, j: int) -> FieldElement:
    """sum_l u*_i(theta*_{rho+l}) u*'_j(theta*'_l) k'_l."""
    return _ortho_entry(pa, pa_prime, rho, i, j, _ortho_data(pa, pa_prime, rho))


def orthogonality_table(pa: ParameterArray, pa_prime: ParameterArray, rho: int) -> List[List[FieldElement]]:
    data = _ortho_data(pa, pa_prime, rho)
    return [[_ortho_entry(pa, pa_prime, rho, i, j, data) for j in range(pa_prime.d + 1)]
            for i in range(pa.d + 1)]


# --------------------------------------------------------------------------
# terminating 2F1 and the Krawtchouk specialization
# --------------------------------------------------------------------------

def hypergeometric_2F1(a: int, b: int, c: int, z: FieldElement) -> FieldElement:
    """Terminating 2F1(a, b; c; z) for integers a, b <= 0.

    Pochhammer products are formed in the integers and mapped into the field
    of ``z`` term by term, so a denominator that vanishes in the field (or in
    the integers) before the series stops raises DenominatorVanishes.
    """
    if a > 0 and b > 0:
        raise ValueError("at least one upper parameter must be a non-positive integer")
    F = z.field
    stop = min(n for n in (a, b) if n <= 0)
    total, num, den = F.one, 1, 1
    power = F.one
    for l in range(1, -stop + 1):
        num *= (a + l - 1) * (b + l - 1)
        den *= (c + l - 1) * l
        power = power * z
        den_image = F(den)
        if not den_image:
            raise DenominatorVanishes(f"(c)_l l! vanishes in {F} at l={l}")
        total = total + F(num) / den_image * power
    return total


def _weight_base(p: FieldElement) -> Tuple[FieldElement, FieldElement]:
    F = p.field
    if not p or p == F.one:
        raise DenominatorVanishes(f"p={p} makes p/(1-p) or 1/p undefined")
    return p / (F.one - p), F.one / p


def krawtchouk_sum(d: int, d_prime: int, rho: int, p: FieldElement, i: int, j: int) -> FieldElement:
    """sum_l C(d',l) (p/(1-p))^l 2F1(-i,-rho-l;-d;1/p) 2F1(-j,-l;-d';1/p)."""
    ratio, inv = _weight_base(p)
    F = p.field
    total = F.zero
    for l in range(d_prime + 1):
        w = F(comb(d_prime, l)) * ratio ** l
        total = total + (w * hypergeometric_2F1(-i, -rho - l, -d, inv)
                         * hypergeometric_2F1(-j, -l, -d_prime, inv))
    return total


def krawtchouk_table(d: int, d_prime: int, rho: int, p: FieldElement) -> List[List[FieldElement]]:
    if not (1 <= d_prime <= d and 0 <= rho <= d - d_prime):
        raise ValueError(f"need 1 <= d' <= d and 0 <= rho <= d-d', got {(d, d_prime, rho)}")
    return [[krawtchouk_sum(d, d_prime, rho, p, i, j) for j in range(d_prime + 1)]
            for i in range(d + 1)]


def krawtchouk_identity_check(d: int, d_prime: int, rho: int, p: FieldElement) -> bool:
    """Every sum outside the window j <= i <= j+d-d' vanishes."""
    table = krawtchouk_table(d, d_prime, rho, p)
    return all(not table[i][j] for i in range(d + 1) for j in range(d_prime + 1)
               if not in_window(i, j, d, d_prime))


def proportional(t1: Sequence[Sequence[FieldElement]], t2: Sequence[Sequence[FieldElement]]) -> Optional[FieldElement]:
    """The nonzero c with t1 = c * t2 entrywise, or None."""
    c = None
    for r1, r2 in zip(t1, t2):
        for x, y in zip(r1, r2):
            if not y:
                if x:
                    return None
                continue
            if c is None:
                c = x / y
            elif x != c * y:
                return None
    return c if c is not None and c else None
