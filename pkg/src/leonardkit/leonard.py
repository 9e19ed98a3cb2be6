"""Leonard systems as explicit matrices.

Systems act on column vectors of K^(d+1).  D4 words are read left to right:
``d4_apply(ls, "⇓*")`` applies ⇓ first, then *.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

from .errors import (
    DegenerateBasis,
    InvalidParameterArray,
    NotMultiplicityFree,
    ZeroScale,
    ZeroTrace,
)
from .fields import FieldElement, FieldSpec
from .linalg import (
    Matrix,
    Subspace,
    inverse,
    kernel_basis,
    lagrange_idempotents,
    sum_of,
)
from .params import ParameterArray, validate


@dataclass(frozen=True)
class LeonardSystem:
    A: Matrix
    A_star: Matrix
    E: Tuple[Matrix, ...]
    E_star: Tuple[Matrix, ...]
    eigen: Tuple[FieldElement, ...]
    eigen_star: Tuple[FieldElement, ...]

    def __post_init__(self):
        for name in ("E", "E_star", "eigen", "eigen_star"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def d(self) -> int:
        return self.A.nrows - 1

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.d + 1)

    def eigenspace(self, i: int) -> Subspace:
        return Subspace.column_space(self.E[i])

    def dual_eigenspace(self, i: int) -> Subspace:
        return Subspace.column_space(self.E_star[i])

    def conjugate(self, C: Matrix) -> "LeonardSystem":
        """The image of the system under X -> C X C^-1."""
        Ci = inverse(C)
        if Ci is None:
            raise DegenerateBasis("conjugating matrix is singular")
        conj = lambda X: C * X * Ci  # noqa: E731
        return LeonardSystem(conj(self.A), conj(self.A_star),
                             [conj(E) for E in self.E], [conj(E) for E in self.E_star],
                             self.eigen, self.eigen_star)


def _split_matrices(pa: ParameterArray) -> Tuple[Matrix, Matrix]:
    F, d = pa.field, pa.d
    n = d + 1
    z = F.zero
    A = [[z] * n for _ in range(n)]
    As = [[z] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = pa.theta[i]
        As[i][i] = pa.theta_star[i]
        if i > 0:
            A[i][i - 1] = F.one
            As[i - 1][i] = pa.varphi[i - 1]
    return Matrix(F, A, n), Matrix(F, As, n)


def from_parameter_array(pa: ParameterArray) -> LeonardSystem:
    """Realize ``pa`` in split form: A lower bidiagonal, A* upper bidiagonal."""
    report = validate(pa)
    if not report.ok:
        bad = report.first_failure()
        raise InvalidParameterArray(f"{bad.name} fails at index {bad.index}")
    A, As = _split_matrices(pa)
    return LeonardSystem(A, As, lagrange_idempotents(A, pa.theta),
                         lagrange_idempotents(As, pa.theta_star), pa.theta, pa.theta_star)


# --------------------------------------------------------------------------
# axioms
# --------------------------------------------------------------------------

class AxiomResult(NamedTuple):
    name: str
    passed: bool
    violations: Tuple = ()


class AxiomReport(NamedTuple):
    axioms: Tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.axioms)

    def __getitem__(self, name):
        if isinstance(name, int):
            return self.axioms[name]
        return next(a for a in self.axioms if a.name == name)


def _multiplicity_free(X: Matrix, eigen) -> bool:
    try:
        lagrange_idempotents(X, eigen)
    except NotMultiplicityFree:
        return False
    return True


def _idempotents_match(X: Matrix, E: Sequence[Matrix], eigen) -> bool:
    try:
        expected = lagrange_idempotents(X, eigen)
    except NotMultiplicityFree:
        return False
    return len(E) == len(expected) and all(a == b for a, b in zip(E, expected))


def _tridiagonal_violations(X: Matrix, E: Sequence[Matrix]) -> List[Tuple[int, int]]:
    bad = []
    n = len(E)
    for i in range(n):
        for j in range(n):
            gap = abs(i - j)
            if gap <= 0:
                continue
            block_zero = (E[i] * X * E[j]).is_zero()
            if (gap > 1 and not block_zero) or (gap == 1 and block_zero):
                bad.append((i, j))
    return bad


def check_axioms(ls: LeonardSystem) -> AxiomReport:
    lf = [name for name, X, ev in (("A", ls.A, ls.eigen), ("A*", ls.A_star, ls.eigen_star))
          if not _multiplicity_free(X, ev)]
    ls4 = _tridiagonal_violations(ls.A, ls.E_star)
    ls5 = _tridiagonal_violations(ls.A_star, ls.E)
    return AxiomReport((
        AxiomResult("LS1", not lf, tuple(lf)),
        AxiomResult("LS2", _idempotents_match(ls.A, ls.E, ls.eigen)),
        AxiomResult("LS3", _idempotents_match(ls.A_star, ls.E_star, ls.eigen_star)),
        AxiomResult("LS4", not ls4, tuple(ls4)),
        AxiomResult("LS5", not ls5, tuple(ls5)),
    ))


# --------------------------------------------------------------------------
# D4 and affine actions
# --------------------------------------------------------------------------

_D4_ALIASES = {"*": "*", "↓": "↓", "d": "↓", "⇓": "⇓", "D": "⇓"}


def _d4_step(ls: LeonardSystem, g: str) -> LeonardSystem:
    if g == "*":
        return LeonardSystem(ls.A_star, ls.A, ls.E_star, ls.E, ls.eigen_star, ls.eigen)
    if g == "↓":
        return LeonardSystem(ls.A, ls.A_star, ls.E, ls.E_star[::-1], ls.eigen, ls.eigen_star[::-1])
    return LeonardSystem(ls.A, ls.A_star, ls.E[::-1], ls.E_star, ls.eigen[::-1], ls.eigen_star)


def d4_apply(ls: LeonardSystem, word: str) -> LeonardSystem:
    """Apply a word in *, ↓ (alias ``d``) and ⇓ (alias ``D``), left to right."""
    for ch in word:
        if ch.isspace():
            continue
        if ch not in _D4_ALIASES:
            raise ValueError(f"unknown D4 generator {ch!r}")
        ls = _d4_step(ls, _D4_ALIASES[ch])
    return ls


def affine_transform(ls: LeonardSystem, xi, zeta, xi_star, zeta_star) -> LeonardSystem:
    F = ls.field
    xi, zeta, xi_star, zeta_star = (F(x) for x in (xi, zeta, xi_star, zeta_star))
    if not xi or not xi_star:
        raise ZeroScale("affine scale factors must be nonzero")
    I = ls.identity
    return LeonardSystem(ls.A * xi + I * zeta, ls.A_star * xi_star + I * zeta_star, ls.E, ls.E_star,
                         [xi * t + zeta for t in ls.eigen],
                         [xi_star * t + zeta_star for t in ls.eigen_star])


# --------------------------------------------------------------------------
# parameter array extraction
# --------------------------------------------------------------------------

def _split_varphi(ls: LeonardSystem) -> List[FieldElement]:
    F, d = ls.field, ls.d
    v = ls.E_star[0].first_nonzero_column()
    basis = [v]
    I = ls.identity
    for i in range(d):
        v = (ls.A - I * ls.eigen[i]).apply(v)
        basis.append(v)
    P = Matrix.from_columns(F, basis)
    Pi = inverse(P)
    if Pi is None:
        raise DegenerateBasis("the split vectors do not form a basis")
    At = Pi * ls.A * P
    Ast = Pi * ls.A_star * P
    for i in range(d + 1):
        for j in range(d + 1):
            want_a = ls.eigen[i] if i == j else (F.one if i == j + 1 else F.zero)
            if At[i, j] != want_a:
                raise DegenerateBasis("A is not lower bidiagonal in the split basis")
            if j != i and j != i + 1 and Ast[i, j]:
                raise DegenerateBasis("A* is not upper bidiagonal in the split basis")
        if Ast[i, i] != ls.eigen_star[i]:
            raise DegenerateBasis("A* has the wrong diagonal in the split basis")
    return [Ast[i - 1, i] for i in range(1, d + 1)]


def extract_parameter_array(ls: LeonardSystem) -> ParameterArray:
    varphi = _split_varphi(ls)
    phi = _split_varphi(d4_apply(ls, "⇓"))
    return ParameterArray(ls.eigen, ls.eigen_star, varphi, phi)


# --------------------------------------------------------------------------
# nu, k, dual switching element, standard form
# --------------------------------------------------------------------------

def nu_and_k(ls: LeonardSystem) -> Tuple[FieldElement, Tuple[FieldElement, ...]]:
    traces = [(Es * ls.E[0]).trace() for Es in ls.E_star]
    bad = [i for i, t in enumerate(traces) if not t]
    if bad:
        raise ZeroTrace(f"trace(E*_i E_0) vanishes for i in {bad}")
    nu = traces[0].inverse()
    return nu, tuple(t * nu for t in traces)


def switching_coefficients(pa: ParameterArray) -> List[FieldElement]:
    """(phi_1...phi_l)/(varphi_1...varphi_l) for l = 0..d."""
    out = [pa.field.one]
    for vp, p in zip(pa.varphi, pa.phi):
        out.append(out[-1] * p / vp)
    return out


def dual_switching_element(ls: LeonardSystem) -> Matrix:
    pa = extract_parameter_array(ls)
    S = Matrix.zeros(ls.field, ls.d + 1, ls.d + 1)
    for c, Es in zip(switching_coefficients(pa), ls.E_star):
        S = S + Es * c
    return S


def switching_solution_dimension(ls: LeonardSystem) -> int:
    """dim of {X in span(E*_l) : X E_0 V ⊆ E_d V}, computed as a kernel dimension."""
    u = ls.E[0].first_nonzero_column()
    off = ls.identity - ls.E[ls.d]
    cols = [off.apply(Es.apply(u)) for Es in ls.E_star]
    return len(kernel_basis(Matrix.from_columns(ls.field, cols)))


@dataclass(frozen=True)
class StandardForm:
    """Gram data of the bilinear form <,> in the basis {E*_i u}, normalized so ||u||^2 = nu."""

    G: Matrix
    u: Tuple[FieldElement, ...]
    nu: FieldElement
    k: Tuple[FieldElement, ...]
    basis: Matrix  # columns E*_i u, in standard coordinates

    @property
    def standard_gram(self) -> Matrix:
        """Gram matrix of <,> in standard coordinates: P^-T G P^-1."""
        Pi = inverse(self.basis)
        return Pi.T * self.G * Pi


def star_basis(ls: LeonardSystem) -> Tuple[Tuple[FieldElement, ...], Matrix]:
    u = ls.E[0].first_nonzero_column()
    cols = [Es.apply(u) for Es in ls.E_star]
    if any(not any(c) for c in cols):
        raise DegenerateBasis("some E*_i u vanishes")
    P = Matrix.from_columns(ls.field, cols)
    if inverse(P) is None:
        raise DegenerateBasis("{E*_i u} is not a basis")
    return u, P


def standard_form(ls: LeonardSystem) -> StandardForm:
    u, P = star_basis(ls)
    nu, k = nu_and_k(ls)
    G = Matrix.diag(ls.field, k)
    Pi = inverse(P)
    for X in (ls.A, ls.A_star):
        Xt = Pi * X * P
        if G * Xt != Xt.T * G:
            raise DegenerateBasis("the Gram matrix is not compatible with the antiautomorphism")
    return StandardForm(G, u, nu, k, P)


def span_filtration_check(ls: LeonardSystem) -> bool:
    F, n = ls.field, ls.d + 1
    base = ls.dual_eigenspace(0)
    v = base.vectors()[0]
    krylov = [v]
    for _ in range(ls.d):
        krylov.append(ls.A.apply(krylov[-1]))
    for i in range(n):
        lhs = sum_of([ls.dual_eigenspace(j) for j in range(i + 1)], F, n)
        rhs = Subspace.span(F, n, krylov[: i + 1])
        if lhs != rhs:
            return False
    return sum_of([ls.dual_eigenspace(j) for j in range(n)], F, n) == Subspace.full(F, n)
