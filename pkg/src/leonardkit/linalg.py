"""Dense exact matrices and subspaces over a FieldSpec.

Vectors are plain tuples of FieldElements.  Row reduction always picks the
first nonzero entry of a column (scanning top to bottom) as pivot; with exact
arithmetic no other strategy is needed and results are reproducible.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import MismatchedField, NotMultiplicityFree, ShapeMismatch
from .fields import FieldElement, FieldSpec

Vector = Tuple[FieldElement, ...]


class Matrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls.diag(field, [1] * n)

    @classmethod
    def diag(cls, field: FieldSpec, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field.zero
        return cls(field, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence]) -> "Matrix":
        if not columns:
            raise ShapeMismatch("no columns given")
        return cls(field, list(zip(*columns)), len(columns))

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)) if self.nrows else [], self.nrows)

    def trace(self) -> FieldElement:
        self._require_square()
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def first_nonzero_column(self) -> Vector:
        for j in range(self.ncols):
            col = self.column(j)
            if any(col):
                return col
        raise ValueError("zero matrix has no nonzero column")

    def _require_square(self):
        if self.nrows != self.ncols:
            raise ShapeMismatch(f"matrix is {self.nrows}x{self.ncols}, not square")

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise MismatchedField(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, [[a + b for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise ShapeMismatch(f"{self.shape} * {other.shape}")
            cols = other.columns()
            zero = self.field.zero
            out = []
            for r in self.rows:
                out_row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    out_row.append(acc)
                out.append(out_row)
            return Matrix(self.field, out, other.ncols)
        c = self.field(other)
        return Matrix(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int) -> "Matrix":
        self._require_square()
        result = Matrix.identity(self.field, self.nrows)
        for _ in range(e):
            result = result * self
        return result

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def tolist(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "Matrix(" + repr(self.tolist()) + ")"


def mat_arith(A: Matrix, B: Matrix, op: str) -> Matrix:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown operation {op!r}")


def rref(A: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [list(r) for r in A.rows]
    pivots = []
    r = 0
    for c in range(A.ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return Matrix(A.field, rows, A.ncols), pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def kernel_basis(A: Matrix) -> List[Vector]:
    """Basis of {x : Ax = 0}, one vector per free column."""
    R, pivots = rref(A)
    field = A.field
    free = [c for c in range(A.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * A.ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -R.rows[i][f]
        basis.append(tuple(v))
    return basis


def inverse(A: Matrix) -> Optional[Matrix]:
    if A.nrows != A.ncols:
        return None
    n = A.nrows
    I = Matrix.identity(A.field, n)
    aug = Matrix(A.field, [ra + ri for ra, ri in zip(A.rows, I.rows)], 2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix(A.field, [row[n:] for row in R.rows], n)


def solve(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """A solution X of AX = B, or None if the system is inconsistent.

    The solution is unique when A has full column rank; otherwise free
    variables are set to zero.
    """
    if A.nrows != B.nrows:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    aug = Matrix(A.field, [ra + rb for ra, rb in zip(A.rows, B.rows)], A.ncols + B.ncols)
    R, pivots = rref(aug)
    if any(p >= A.ncols for p in pivots):
        return None
    field = A.field
    X = [[field.zero] * B.ncols for _ in range(A.ncols)]
    for i, p in enumerate(pivots):
        X[p] = list(R.rows[i][A.ncols:])
    return Matrix(field, X, B.ncols)


class RankKernelInverse(NamedTuple):
    rank: int
    kernel: "Subspace"
    inverse: Optional[Matrix]


def rank_kernel_inverse(A: Matrix) -> RankKernelInverse:
    r = rank(A)
    ker = Subspace.span(A.field, A.ncols, kernel_basis(A))
    return RankKernelInverse(r, ker, inverse(A))


class Subspace:
    """A subspace of K^n held by the nonzero rows of its reduced echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Matrix):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        vectors = [tuple(field(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ShapeMismatch("vector length differs from ambient dimension")
        if not vectors:
            return cls(field, ambient_dim, Matrix(field, [], ambient_dim))
        R, pivots = rref(Matrix(field, vectors, ambient_dim))
        return cls(field, ambient_dim, Matrix(field, R.rows[: len(pivots)], ambient_dim))

    @classmethod
    def column_space(cls, A: Matrix) -> "Subspace":
        return cls.span(A.field, A.nrows, A.columns())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> List[Vector]:
        return list(self.basis.rows)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")
        if self.field != other.field:
            raise MismatchedField(f"{self.field} vs {other.field}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.span(self.field, self.ambient_dim, [])
        # a.U = b.W  <=>  (a, -b) in the kernel of the stacked columns
        cols = self.vectors() + [tuple(-x for x in w) for w in other.vectors()]
        M = Matrix.from_columns(self.field, cols)
        out = []
        for k in kernel_basis(M):
            a = k[: self.dim]
            v = [self.field.zero] * self.ambient_dim
            for coef, u in zip(a, self.vectors()):
                if coef:
                    v = [x + coef * y for x, y in zip(v, u)]
            out.append(v)
        return Subspace.span(self.field, self.ambient_dim, out)

    __and__ = intersect

    def contains(self, v: Sequence) -> bool:
        return (self + Subspace.span(self.field, self.ambient_dim, [v])).dim == self.dim

    def image(self, A: Matrix) -> "Subspace":
        return Subspace.span(self.field, A.nrows, [A.apply(v) for v in self.vectors()])

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.tolist()})"


def subspace_ops(U: Subspace, W: Subspace, op: str):
    if op == "sum":
        return U + W
    if op == "intersect":
        return U & W
    if op == "equal":
        U._check(W)
        return U == W
    raise ValueError(f"unknown operation {op!r}")


def sum_of(spaces: Sequence[Subspace], field: FieldSpec, n: int) -> Subspace:
    vectors = [v for s in spaces for v in s.vectors()]
    return Subspace.span(field, n, vectors)


def lagrange_idempotents(A: Matrix, eigenvalues: Sequence[FieldElement]) -> List[Matrix]:
    """Primitive idempotents E_i = prod_{j != i} (A - th_j I)/(th_i - th_j)."""
    A._require_square()
    n = A.nrows
    th = [A.field(t) for t in eigenvalues]
    if len(th) != n:
        raise NotMultiplicityFree(f"{len(th)} eigenvalues given for a {n}x{n} matrix")
    if len(set(th)) != n:
        raise NotMultiplicityFree("eigenvalues are not pairwise distinct")
    I = Matrix.identity(A.field, n)
    shifted = [A - I * t for t in th]
    annihilator = I
    for S in shifted:
        annihilator = annihilator * S
    if not annihilator.is_zero():
        raise NotMultiplicityFree("the product of (A - th_i I) is not zero")
    out = []
    for i in range(n):
        E = I
        for j in range(n):
            if j != i:
                E = E * (shifted[j] * (th[i] - th[j]).inverse())
        out.append(E)
    return out
