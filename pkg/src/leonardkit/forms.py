"""Balanced bilinear forms between two Leonard systems.

A form V x V' -> K is held as its Gram matrix ``B`` in the bases {E*_i u}
of V and {E*'_j u'} of V'.  ``standard_matrix`` gives the same form in
standard coordinates, (x|y) = x^T M y, which is what the subspace checks use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .descent import (
    _check_endpoint,
    admissible,
    construct_descendent,
    existence_probe,
    is_descendent,
)
from .errors import (
    HypothesisViolated,
    LeonardError,
    MiddleSystemMismatch,
    NotADescendent,
    NotAdmissible,
)
from .fields import FieldElement
from .leonard import (
    LeonardSystem,
    d4_apply,
    dual_switching_element,
    extract_parameter_array,
    from_parameter_array,
    nu_and_k,
    standard_form,
    star_basis,
    switching_coefficients,
)
from .linalg import Matrix, Subspace, inverse, kernel_basis, rank, solve, sum_of
from .params import CaseParams, instantiate


@dataclass(frozen=True)
class BalancedForm:
    B: Matrix
    rho: int
    source: LeonardSystem
    target: LeonardSystem

    @property
    def standard_matrix(self) -> Matrix:
        _, P = star_basis(self.source)
        _, Pp = star_basis(self.target)
        return inverse(P).T * self.B * inverse(Pp)

    @classmethod
    def from_standard(cls, M: Matrix, rho: int, source: LeonardSystem,
                      target: LeonardSystem) -> "BalancedForm":
        _, P = star_basis(source)
        _, Pp = star_basis(target)
        return cls(P.T * M * Pp, rho, source, target)

    def scaled(self, c) -> "BalancedForm":
        return BalancedForm(self.B * c, self.rho, self.source, self.target)


def build_balanced_form(ls: LeonardSystem, ls_prime: LeonardSystem, rho: int) -> BalancedForm:
    """The form (E*_i u | E*'_j u') = delta_{i-rho,j} k'_j."""
    pa, pa_prime = extract_parameter_array(ls), extract_parameter_array(ls_prime)
    if is_descendent(pa, pa_prime, rho) is None:
        raise NotADescendent(f"the target is not a {rho}-descendent of the source")
    _, k = nu_and_k(ls_prime)
    F = ls.field
    rows = [[k[j] if i - rho == j else F.zero for j in range(ls_prime.d + 1)]
            for i in range(ls.d + 1)]
    return BalancedForm(Matrix(F, rows, ls_prime.d + 1), rho, ls, ls_prime)


# --------------------------------------------------------------------------
# (B1)/(B2)
# --------------------------------------------------------------------------

def _lines(idempotents: Sequence[Matrix]) -> List[Tuple[FieldElement, ...]]:
    return [E.first_nonzero_column() for E in idempotents]


def _pairing(M: Matrix, x, y) -> FieldElement:
    return sum((a * b for a, b in zip(x, M.apply(y))), M.field.zero)


def _pattern_violations(M: Matrix, left: Sequence, right: Sequence, allowed) -> List[Tuple[int, int]]:
    return [(i, j) for i, x in enumerate(left) for j, y in enumerate(right)
            if not allowed(i, j) and _pairing(M, x, y)]


def b1_violations(M: Matrix, ls: LeonardSystem, ls_prime: LeonardSystem, rho: int):
    return _pattern_violations(M, _lines(ls.E_star), _lines(ls_prime.E_star),
                               lambda i, j: i - rho == j)


def b2_violations(M: Matrix, ls: LeonardSystem, ls_prime: LeonardSystem):
    gap = ls.d - ls_prime.d
    return _pattern_violations(M, _lines(ls.E), _lines(ls_prime.E),
                               lambda i, j: j <= i <= j + gap)


@dataclass(frozen=True)
class BalanceReport:
    nonzero: bool
    b1: Tuple[Tuple[int, int], ...]
    b2: Tuple[Tuple[int, int], ...]
    rank: int
    full_rank: bool
    remark_pairs: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return (self.nonzero and not self.b1 and not self.b2 and self.full_rank
                and all(self.remark_pairs.values()))


# Reversal pairs under which a rho-balanced form stays balanced, with the new endpoint.
REVERSAL_PAIRS = (("", False), ("↓", True), ("⇓", False), ("↓⇓", True))


def check_balanced(form: BalancedForm) -> BalanceReport:
    M = form.standard_matrix
    ls, lsp, rho = form.source, form.target, form.rho
    pairs = {}
    for word, flips in REVERSAL_PAIRS:
        g, gp = d4_apply(ls, word), d4_apply(lsp, word)
        end = ls.d - lsp.d - rho if flips else rho
        pairs[word or "id"] = (not b1_violations(M, g, gp, end) and not b2_violations(M, g, gp))
    r = rank(form.B)
    return BalanceReport(
        nonzero=not form.B.is_zero(),
        b1=tuple(b1_violations(M, ls, lsp, rho)),
        b2=tuple(b2_violations(M, ls, lsp)),
        rank=r,
        full_rank=r == lsp.d + 1,
        remark_pairs=pairs,
    )


def _sigma(ls_prime: LeonardSystem, i: int, rho: int) -> Matrix:
    j = i - rho
    if 0 <= j <= ls_prime.d:
        return ls_prime.E_star[j]
    return Matrix.zeros(ls_prime.field, ls_prime.d + 1, ls_prime.d + 1)


def sigma_intertwine_check(form: BalancedForm) -> bool:
    """(Xv|v') = (v|X^sigma v') for X = I and every E*_i."""
    M = form.standard_matrix
    ls, lsp, rho = form.source, form.target, form.rho
    if ls.identity.T * M != M * lsp.identity:
        return False
    return all(Es.T * M == M * _sigma(lsp, i, rho) for i, Es in enumerate(ls.E_star))


# --------------------------------------------------------------------------
# projections and the dual objects
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Projections:
    """proj: V -> V' and proj': V' -> V in the E*-bases, with the scalar epsilon."""

    proj: Matrix
    proj_prime: Matrix
    epsilon: Optional[FieldElement]
    maps_e0: bool
    injective: bool


def projection_maps(form: BalancedForm) -> Projections:
    ls, lsp = form.source, form.target
    G = standard_form(ls).G
    Gp = standard_form(lsp).G
    proj = inverse(Gp) * form.B.T
    proj_prime = inverse(G) * form.B
    F = ls.field
    # u and u' have coordinates (1, ..., 1) in their E*-bases
    image = proj.apply([F.one] * (ls.d + 1))
    eps = image[0]
    is_multiple = all(x == eps for x in image)
    e0_image = Subspace.span(F, lsp.d + 1, [image])
    e0_target = Subspace.span(F, lsp.d + 1, [[F.one] * (lsp.d + 1)])
    return Projections(
        proj=proj,
        proj_prime=proj_prime,
        epsilon=eps if is_multiple and eps else None,
        maps_e0=e0_image == e0_target,
        injective=rank(proj_prime) == lsp.d + 1,
    )


@dataclass(frozen=True)
class DualObjects:
    ok: bool
    xi_star: Optional[FieldElement]
    zeta_star: Optional[FieldElement]
    factor: FieldElement

    def __bool__(self):
        return self.ok


def dual_objects_check(form: BalancedForm) -> DualObjects:
    """A*' = xi* A*^sigma + zeta* I' and S*' = (varphi_1..varphi_rho / phi_1..phi_rho) S*^sigma."""
    ls, lsp, rho = form.source, form.target, form.rho
    F, n = ls.field, lsp.d + 1
    A_sig = Matrix.zeros(F, n, n)
    for i, t in enumerate(ls.eigen_star):
        A_sig = A_sig + _sigma(lsp, i, rho) * t
    vec = lambda X: [x for row in X.rows for x in row]  # noqa: E731
    system = Matrix.from_columns(F, [vec(A_sig), vec(lsp.identity)])
    rhs = Matrix(F, [[x] for x in vec(lsp.A_star)], 1)
    sol = solve(system, rhs)
    pa, pa_prime = extract_parameter_array(ls), extract_parameter_array(lsp)
    witness = is_descendent(pa, pa_prime, rho)
    xi = zeta = None
    ok_a = False
    if sol is not None:
        xi, zeta = sol[0, 0], sol[1, 0]
        ok_a = (A_sig * xi + lsp.identity * zeta == lsp.A_star and witness is not None
                and (xi, zeta) == (witness.xi_star, witness.zeta_star))
    coeffs = switching_coefficients(pa)
    S_sig = Matrix.zeros(F, n, n)
    for i, c in enumerate(coeffs):
        S_sig = S_sig + _sigma(lsp, i, rho) * c
    factor = F.one
    for i in range(rho):
        factor = factor * pa.varphi[i] / pa.phi[i]
    ok_s = dual_switching_element(lsp) == S_sig * factor
    return DualObjects(ok_a and ok_s, xi, zeta, factor)


# --------------------------------------------------------------------------
# uniqueness, composition, induction
# --------------------------------------------------------------------------

def uniqueness_dimension(ls: LeonardSystem, ls_prime: LeonardSystem, rho: int) -> int:
    """Dimension of the space of forms satisfying (B1), sigma-intertwining and (B2)."""
    F = ls.field
    n, m = ls.d + 1, ls_prime.d + 1
    rows = []

    def pairing_row(x, y):
        return [x[a] * y[b] for a in range(n) for b in range(m)]

    for i, x in enumerate(_lines(ls.E_star)):
        for j, y in enumerate(_lines(ls_prime.E_star)):
            if i - rho != j:
                rows.append(pairing_row(x, y))
    gap = ls.d - ls_prime.d
    for i, x in enumerate(_lines(ls.E)):
        for j, y in enumerate(_lines(ls_prime.E)):
            if not j <= i <= j + gap:
                rows.append(pairing_row(x, y))
    # (E*_i)^T M - M E*'_{i-rho} = 0, entrywise
    for i, Es in enumerate(ls.E_star):
        S = _sigma(ls_prime, i, rho)
        for a in range(n):
            for b in range(m):
                row = [F.zero] * (n * m)
                for c in range(n):
                    row[c * m + b] = row[c * m + b] + Es[c, a]
                for c in range(m):
                    row[a * m + c] = row[a * m + c] - S[c, b]
                rows.append(row)
    return len(kernel_basis(Matrix(F, rows, n * m)))


def compose(form1: BalancedForm, form2: BalancedForm) -> BalancedForm:
    """(v, v'') -> (v | proj'' v'') with proj'' taken from form2."""
    if form1.target != form2.source:
        raise MiddleSystemMismatch("the middle Leonard systems differ")
    Gp = standard_form(form1.target).standard_gram
    M = form1.standard_matrix * inverse(Gp) * form2.standard_matrix
    return BalancedForm.from_standard(M, form1.rho + form2.rho, form1.source, form2.target)


def intersection_dimensions(ls: LeonardSystem, d_prime: int, rho: int) -> List[int]:
    """dim((E*_rho V + ... + E*_{rho+d'} V) ∩ (E_i V + ... + E_{i+d-d'} V)) for 0 <= i <= d'."""
    F, n, gap = ls.field, ls.d + 1, ls.d - d_prime
    star = sum_of([ls.dual_eigenspace(j) for j in range(rho, rho + d_prime + 1)], F, n)
    return [(star & sum_of([ls.eigenspace(j) for j in range(i, i + gap + 1)], F, n)).dim
            for i in range(d_prime + 1)]


def _check_decomposition(spaces: Sequence[Subspace], n: int, label: str) -> None:
    if len(spaces) != n:
        raise HypothesisViolated("decomposition", f"{label} has {len(spaces)} parts, need {n}")
    if any(s.ambient_dim != n or s.dim != 1 for s in spaces):
        raise HypothesisViolated("decomposition", f"{label} parts must be lines in K^{n}")
    if sum_of(spaces, spaces[0].field, n).dim != n:
        raise HypothesisViolated("decomposition", f"{label} is not a direct sum")


def induce_descendent(ls: LeonardSystem, U_decomp: Sequence[Subspace],
                      U_star_decomp: Sequence[Subspace], B_raw: Matrix, rho: int,
                      cp: CaseParams, free=None) -> LeonardSystem:
    """Build the rho-descendent on V' = K^(d'+1) whose eigenspaces are the given lines.

    ``B_raw`` is the form in standard coordinates of V and V'.  ``cp`` must be
    case parameters of ``ls``; they decide admissibility and supply the
    auxiliary descendent (from ``free`` via construct_descendent, otherwise
    from existence_probe).
    """
    d, n = ls.d, B_raw.nrows
    dp = B_raw.ncols - 1
    if n != d + 1 or dp < 1:
        raise HypothesisViolated("iii", f"form of shape {B_raw.shape} for d={d}")
    _check_endpoint(d, dp, rho)
    ok, reason = admissible(cp.tag, d, dp, rho)
    if not ok:
        raise NotAdmissible(reason)
    if extract_parameter_array(ls) != instantiate(cp):
        raise ValueError("the case parameters do not describe the given system")
    _check_decomposition(U_decomp, dp + 1, "U")
    _check_decomposition(U_star_decomp, dp + 1, "U*")

    u_lines = [U.vectors()[0] for U in U_decomp]
    us_lines = [U.vectors()[0] for U in U_star_decomp]
    bad = _pattern_violations(B_raw, _lines(ls.E_star), us_lines, lambda i, j: i - rho == j)
    if bad:
        raise HypothesisViolated("i", f"(E*_i V | U*_j) nonzero at {bad}")
    gap = d - dp
    bad = _pattern_violations(B_raw, _lines(ls.E), u_lines, lambda i, j: j <= i <= j + gap)
    if bad:
        raise HypothesisViolated("ii", f"(E_i V | U_j) nonzero at {bad}")
    if rank(B_raw) != dp + 1:
        raise HypothesisViolated("iii", "the form is not of full rank")

    aux_cp = construct_descendent(cp, dp, rho, free) if free is not None else existence_probe(cp, dp, rho)
    if aux_cp is None:
        raise LeonardError("no auxiliary descendent found within the search bound")
    aux = from_parameter_array(instantiate(aux_cp))
    M0 = build_balanced_form(ls, aux, rho).standard_matrix
    Gi = inverse(standard_form(ls).standard_gram)
    proj_raw = Gi * B_raw
    proj_aux = Gi * M0
    C = solve(proj_raw, proj_aux)
    if C is None or inverse(C) is None:
        raise LeonardError("no invertible intertwiner between the two projections")
    result = aux.conjugate(C)

    if any(result.eigenspace(i) != U_decomp[i] or result.dual_eigenspace(i) != U_star_decomp[i]
           for i in range(dp + 1)):
        raise LeonardError("induced system does not reproduce the decompositions")
    if not check_balanced(BalancedForm.from_standard(B_raw, rho, ls, result)).ok:
        raise LeonardError("the given form is not balanced for the induced system")
    if any(k != 1 for k in intersection_dimensions(ls, dp, rho)):
        raise LeonardError("an intersection in the window is not a line")
    return result
