"""The descendent relation at the level of parameter arrays and case parameters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import (
    CaseConstraintViolated,
    EndpointOutOfRange,
    FreeParameterConstraintViolated,
    InfeasibleParameters,
    NotAdmissible,
)
from .fields import FieldElement
from .params import CaseParams, ParameterArray, derived_scalars, instantiate

__all__ = [
    "DescentWitness",
    "is_descendent",
    "descendent_endpoints",
    "witness_identities",
    "admissible",
    "construct_descendent",
    "existence_probe",
]


@dataclass(frozen=True)
class DescentWitness:
    rho: int
    xi_star: FieldElement
    zeta_star: FieldElement


def _check_endpoint(d: int, d_prime: int, rho: int) -> None:
    if d_prime < 1 or d_prime > d:
        raise EndpointOutOfRange(f"need 1 <= d' <= d, got d'={d_prime}, d={d}")
    if not 0 <= rho <= d - d_prime:
        raise EndpointOutOfRange(f"need 0 <= rho <= {d - d_prime}, got rho={rho}")


def is_descendent(pa: ParameterArray, pa_prime: ParameterArray, rho: int) -> Optional[DescentWitness]:
    """Witness that pa' is a rho-descendent of pa, or None.

    Checks the affine relation th*'_i = xi* th*_{rho+i} + zeta* and the ratio
    condition phi'_i / varphi'_i = phi_{rho+i} / varphi_{rho+i}.
    """
    d, dp = pa.d, pa_prime.d
    _check_endpoint(d, dp, rho)
    ts, tsp = pa.theta_star, pa_prime.theta_star
    xi = (tsp[1] - tsp[0]) / (ts[rho + 1] - ts[rho])
    zeta = tsp[0] - xi * ts[rho]
    if any(tsp[i] != xi * ts[rho + i] + zeta for i in range(dp + 1)):
        return None
    for i in range(1, dp + 1):
        if pa_prime.phi[i - 1] * pa.varphi[rho + i - 1] != pa.phi[rho + i - 1] * pa_prime.varphi[i - 1]:
            return None
    return DescentWitness(rho, xi, zeta)


def descendent_endpoints(pa: ParameterArray, pa_prime: ParameterArray) -> List[int]:
    """All rho for which pa' is a rho-descendent of pa."""
    return [rho for rho in range(pa.d - pa_prime.d + 1) if is_descendent(pa, pa_prime, rho)]


def witness_identities(pa: ParameterArray, pa_prime: ParameterArray, w: DescentWitness) -> bool:
    """The three scalar identities a descent witness implies, checked for 1 <= i <= d'.

    Each relates the split sequences of the pair through xi*, the eigenvalue
    spans theta_d - theta_0 and the telescoped ratios vartheta_i.
    """
    th, ts, thp = pa.theta, pa.theta_star, pa_prime.theta
    d, dp, rho, xi = pa.d, pa_prime.d, w.rho, w.xi_star
    vt = (None,) + derived_scalars(pa).vartheta
    vtp = (None,) + derived_scalars(pa_prime).vartheta
    vp = (None,) + pa.varphi
    ph = (None,) + pa.phi
    vpp = (None,) + pa_prime.varphi
    php = (None,) + pa_prime.phi
    span, span_p = th[d] - th[0], thp[dp] - thp[0]
    for i in range(1, dp + 1):
        if span * vt[rho + i] * vpp[i] != xi * span_p * vtp[i] * vp[rho + i]:
            return False
        if span * vt[rho + i] * php[i] != xi * span_p * vtp[i] * ph[rho + i]:
            return False
        lhs = span * vt[rho + 1] * vt[rho + i] * (ts[rho + i] - ts[rho]) * (thp[dp - i + 1] - thp[0])
        rhs = span_p * vtp[i] * (vt[rho + 1] * ph[rho + i] - vt[rho + i] * vp[rho + 1])
        if lhs != rhs:
            return False
    return True


def admissible(case_tag: str, d: int, d_prime: int, rho: int) -> Tuple[bool, str]:
    """Whether a rho-descendent of diameter d' can exist, with the reason when not."""
    _check_endpoint(d, d_prime, rho)
    if case_tag == "III":
        if d % 2 == 0 and not (d_prime == 1 or d_prime % 2 == 0):
            return False, "case III with d even requires d'=1 or d' even"
        if d % 2 == 1 and not (d_prime % 2 == 1 and rho % 2 == 0):
            return False, "case III with d odd requires d' odd and rho even"
    if case_tag == "IV" and (d_prime, rho) not in ((1, 0), (1, 2), (3, 0)):
        return False, "case IV requires (d', rho) in {(1,0), (1,2), (3,0)}: does not occur"
    return True, ""


# --------------------------------------------------------------------------
# the parametric classification
# --------------------------------------------------------------------------

def _target_free_keys(cp: CaseParams, d_prime: int, rho: int) -> Tuple[str, Tuple[str, ...]]:
    """Target case tag and the free scale parameters the existence search varies.

    For IA and IIC targets one more scalar is fixed by the ratio constraint.
    """
    tag, d = cp.tag, cp.d
    if tag == "I":
        return "I", ("h", "h_star")
    if tag == "IA":
        return "IA", ("h_star", "r")
    if tag == "II":
        return "II", ("h", "h_star")
    if tag == "IIA":
        return "IIA", ("h", "s_star")
    if tag == "IIB":
        return "IIB", ("h_star", "s")
    if tag == "IIC":
        return "IIC", ("s", "s_star")
    if tag == "III" and d % 2 == 0 and d_prime == 1:
        return "IIC", ("s", "s_star")
    if tag == "III":
        return "III", ("h", "h_star")
    if d_prime == 1:
        return "IIC", ("s", "s_star")
    return "IV", ("h", "h_star")


def _ratio_solve(free: Dict[str, FieldElement], ratio: FieldElement, defaults: Dict[str, FieldElement],
                 numerator: Tuple[str, ...], denominator: str) -> Dict[str, FieldElement]:
    """Fill the numerator/denominator keys so prod(numerator)/denominator = ratio."""
    out = dict(free)
    missing = [k for k in numerator + (denominator,) if k not in out]
    if denominator in missing:
        for k in numerator:
            out.setdefault(k, defaults[k])
        num = out[numerator[0]]
        for k in numerator[1:]:
            num = num * out[k]
        out[denominator] = num / ratio
    else:
        for k in missing:
            out[k] = defaults[k]
        num = out[numerator[0]]
        for k in numerator[1:]:
            num = num * out[k]
        # solve for the last missing numerator key, if any
        if missing:
            last = missing[-1]
            others = out[denominator] * ratio
            rest = num / out[last]
            out[last] = others / rest
        elif num != ratio * out[denominator]:
            raise FreeParameterConstraintViolated(
                f"free parameters give ratio {num / out[denominator]}, need {ratio}")
    return out


def construct_descendent(cp: CaseParams, d_prime: int, rho: int,
                         free: Optional[Mapping[str, object]] = None) -> CaseParams:
    """Case parameters of a rho-descendent of diameter d' per the classification table.

    ``free`` supplies the unconstrained scalars of the target (``h``, ``h_star``,
    ``theta0``, ``theta0_star`` and, depending on the case, ``r``, ``s``,
    ``s_star``); missing ones take canonical defaults.  The result is
    instantiated and checked against the descendent criterion before returning.
    """
    ok, reason = admissible(cp.tag, cp.d, d_prime, rho)
    if not ok:
        raise NotAdmissible(reason)
    F = cp.field
    v, d = cp.values, cp.d
    target, _ = _target_free_keys(cp, d_prime, rho)
    free = {k: F(x) for k, x in (free or {}).items()}
    vals: Dict[str, FieldElement] = {"theta0": free.pop("theta0", F.zero),
                                     "theta0_star": free.pop("theta0_star", F.zero)}
    one = F.one
    tag = cp.tag

    def scale(name):
        return free.get(name, v.get(name, one))

    if tag == "I":
        q = v["q"]
        vals.update(q=q, h=scale("h"), h_star=scale("h_star"), r1=v["r1"] * q ** rho,
                    r2=v["r2"] * q ** rho, s=v["s"] * q ** (d - d_prime),
                    s_star=v["s_star"] * q ** (2 * rho))
    elif tag == "IA":
        q = v["q"]
        ratio = q ** (d - d_prime - rho) * v["s"] / v["r"]
        filled = _ratio_solve({k: free[k] for k in ("r", "s") if k in free}, ratio,
                              {"r": v["r"], "s": v["s"]}, ("s",), "r")
        vals.update(q=q, h_star=scale("h_star"), r=filled["r"], s=filled["s"])
    elif tag == "II":
        vals.update(h=scale("h"), h_star=scale("h_star"), r1=v["r1"] + rho, r2=v["r2"] + rho,
                    s=v["s"] + (d - d_prime), s_star=v["s_star"] + 2 * rho)
    elif tag == "IIA":
        vals.update(h=scale("h"), r=v["r"] + rho, s=v["s"] + (d - d_prime),
                    s_star=free.get("s_star", v["s_star"]))
    elif tag == "IIB":
        vals.update(h_star=scale("h_star"), r=v["r"] + rho, s=free.get("s", v["s"]),
                    s_star=v["s_star"] + 2 * rho)
    elif target == "IIC":
        if tag == "IIC":
            ratio = v["s"] * v["s_star"] / v["r"]
            defaults = {"r": v["r"], "s": v["s"], "s_star": v["s_star"]}
        else:
            src = instantiate(cp)
            ratio = 1 - src.phi[rho] / src.varphi[rho]
            defaults = {"r": one, "s": one, "s_star": one}
        filled = _ratio_solve({k: free[k] for k in ("r", "s", "s_star") if k in free}, ratio,
                              defaults, ("s", "s_star"), "r")
        vals.update(r=filled["r"], s=filled["s"], s_star=filled["s_star"])
    elif tag == "III":
        r1, r2 = v["r1"] + rho, v["r2"] + rho
        if d % 2 == 0 and rho % 2 == 1:
            r1, r2 = r2, r1
        vals.update(h=scale("h"), h_star=scale("h_star"), r1=r1, r2=r2,
                    s=v["s"] - (d - d_prime), s_star=v["s_star"] - 2 * rho)
    else:  # IV with (d', rho) = (3, 0)
        vals.update(h=scale("h"), h_star=scale("h_star"), r=v["r"], s=v["s"], s_star=v["s_star"])

    out = CaseParams(target, d_prime, vals)
    pa = instantiate(cp)
    pa_prime = instantiate(out)
    if is_descendent(pa, pa_prime, rho) is None:
        raise InfeasibleParameters(
            f"emitted case {target} array is not a {rho}-descendent of the source")
    return out


def _search_values(F) -> Iterator[FieldElement]:
    if F.kind == "rational":
        for n in (1, 2, -1, 3, -2, 4, -3, 5):
            yield F(n)
    else:
        for x in F.elements():
            if x:
                yield x


def existence_probe(cp: CaseParams, d_prime: int, rho: int,
                    bound: int = 256) -> Optional[CaseParams]:
    """Search the free parameters for a feasible rho-descendent of diameter d'.

    Canonical defaults come first, then small values for the scale
    parameters in lexicographic order; at most ``bound`` candidates are tried.
    """
    ok, reason = admissible(cp.tag, cp.d, d_prime, rho)
    if not ok:
        raise NotAdmissible(reason)
    _, keys = _target_free_keys(cp, d_prime, rho)
    candidates = itertools.chain(
        [{}], (dict(zip(keys, combo))
               for combo in itertools.product(list(_search_values(cp.field)), repeat=len(keys))))
    for n, free in enumerate(candidates):
        if n >= bound:
            break
        try:
            return construct_descendent(cp, d_prime, rho, free)
        except (InfeasibleParameters, CaseConstraintViolated, ZeroDivisionError):
            continue
    return None
