"""Exact rational scalars, dense matrices and the linear-algebra kernel.

Scalars are `fractions.Fraction` (arbitrary-precision, always reduced,
positive denominator), so every operation in the package is exact; no
floating point appears anywhere.  Elimination runs on a sparse row
representation because the constraint systems assembled by the cohomology
and derivation modules are large but very sparse.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError, PreconditionError

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(value) -> Fraction:
    """Parse a rational literal: an int, or a string 'p' / 'p/q' with q > 0."""
    if isinstance(value, bool):
        raise InputError(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise InputError(f"not a rational literal: {value!r}")
        return Fraction(value)
    raise InputError(f"not a rational literal: {value!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vector(entries) -> tuple[Fraction, ...]:
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(u) -> bool:
    return all(a == 0 for a in u)


def support(u) -> list[tuple[int, Fraction]]:
    """Nonzero coordinates of a vector, for zero-skipping contractions."""
    return [(i, a) for i, a in enumerate(u) if a != 0]


class Matrix:
    """Immutable dense matrix of Fractions acting on column vectors."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(e) for e in row) for row in rows)
        if not rows:
            raise InputError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise InputError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Matrix":
        return Matrix([[ZERO] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(entries) -> "Matrix":
        entries = [Fraction(e) for e in entries]
        n = len(entries)
        return Matrix([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            raise InputError("cannot build a matrix from an empty column list")
        return Matrix(zip(*cols))

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in row) for row in self.rows)
        return f"Matrix[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(-a for a in row) for row in self.rows)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix(tuple(c * a for a in row) for row in self.rows)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        ocols = other.ncols
        out = []
        for row in self.rows:
            acc = [ZERO] * ocols
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = other.rows[k]
                for j in range(ocols):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            out.append(acc)
        return Matrix(out)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.ncols:
            raise InputError(f"vector length {len(vec)} does not match {self.nrows}x{self.ncols}")
        acc = [ZERO] * self.nrows
        for j, a in enumerate(vec):
            if a == 0:
                continue
            for i in range(self.nrows):
                b = self.rows[i][j]
                if b != 0:
                    acc[i] += b * a
        return tuple(acc)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.rows for a in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def commutes_with(self, other: "Matrix") -> bool:
        return self * other == other * self

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise PreconditionError("only square matrices can be inverted")
        n = self.nrows
        cols = []
        for j in range(n):
            sol = solve(self, unit_vector(n, j))
            if sol is None:
                raise PreconditionError("matrix is singular")
            cols.append(sol)
        return Matrix(zip(*cols))

    def power(self, k: int) -> "Matrix":
        """Integer power; negative exponents require invertibility."""
        if not self.is_square():
            raise PreconditionError("only square matrices have powers")
        base = self if k >= 0 else self.inverse()
        result = Matrix.identity(self.nrows)
        for _ in range(abs(k)):
            result = result * base
        return result

    def _same_shape(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise InputError(f"shape mismatch: {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")


def _sparse_rows(matrix_rows) -> list[dict[int, Fraction]]:
    out = []
    for row in matrix_rows:
        d = {j: a for j, a in enumerate(row) if a != 0}
        out.append(d)
    return out


class _Eliminator:
    """Incremental sparse row reduction keeping one normalized row per pivot column."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}
        self.pivot_aug: dict[int, Fraction] = {}

    def reduce(self, row: dict[int, Fraction], aug: Fraction = ZERO):
        """Reduce a row against the current pivots; returns the residual (row, aug)."""
        while True:
            hit = None
            for col in row:
                if col in self.pivot_rows:
                    hit = col
                    break
            if hit is None:
                return row, aug
            factor = row[hit]
            prow = self.pivot_rows[hit]
            for col, val in prow.items():
                new = row.get(col, ZERO) - factor * val
                if new == 0:
                    row.pop(col, None)
                else:
                    row[col] = new
            aug = aug - factor * self.pivot_aug[hit]

    def insert(self, row: dict[int, Fraction], aug: Fraction = ZERO) -> tuple[Optional[int], Fraction]:
        """Reduce and, if nonzero, store the row normalized at its minimal column.

        Returns (pivot column or None, residual augment).  A None pivot with a
        nonzero augment means the augmented system is inconsistent.
        """
        row, aug = self.reduce(dict(row), aug)
        if not row:
            return None, aug
        pivot = min(row)
        inv = ONE / row[pivot]
        row = {c: v * inv for c, v in row.items()}
        aug = aug * inv
        # keep stored rows fully reduced against the new pivot
        for col, prow in self.pivot_rows.items():
            if pivot in prow:
                f = prow[pivot]
                for c, v in row.items():
                    new = prow.get(c, ZERO) - f * v
                    if new == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = new
                self.pivot_aug[col] = self.pivot_aug[col] - f * aug
        self.pivot_rows[pivot] = row
        self.pivot_aug[pivot] = aug
        return pivot, aug

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        pivots = self.pivot_rows
        free_cols = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free_cols:
            vec = [ZERO] * self.ncols
            vec[f] = ONE
            for p, row in pivots.items():
                c = row.get(f, ZERO)
                if c != 0:
                    vec[p] = -c
            basis.append(tuple(vec))
        return basis


def _eliminate(rows: Iterable[dict[int, Fraction]], ncols: int) -> _Eliminator:
    elim = _Eliminator(ncols)
    for row in rows:
        elim.insert(row)
    return elim


def rank_nullspace(m: Matrix) -> tuple[int, "Subspace"]:
    """Exact rank and a kernel basis; rank + dim(kernel) = ncols."""
    elim = _eliminate(_sparse_rows(m.rows), m.ncols)
    return elim.rank, Subspace(m.ncols, elim.kernel_basis())


def nullspace_of_sparse_rows(rows: Iterable[dict[int, Fraction]], ncols: int) -> "Subspace":
    """Kernel of a system given as sparse {column: coefficient} rows."""
    elim = _eliminate(rows, ncols)
    return Subspace(ncols, elim.kernel_basis(), check=False)


def independent_subset_indices(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy maximal linearly independent subset, in order."""
    if not vectors:
        return []
    elim = _Eliminator(len(vectors[0]))
    kept = []
    for i, v in enumerate(vectors):
        pivot, _ = elim.insert({j: Fraction(a) for j, a in enumerate(v) if a != 0})
        if pivot is not None:
            kept.append(i)
    return kept


def solve(m: Matrix, b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """One particular solution of m·x = b, or None when b is outside the column space."""
    if len(b) != m.nrows:
        raise InputError(f"right-hand side length {len(b)} does not match {m.nrows} rows")
    b = [Fraction(e) for e in b]
    elim = _Eliminator(m.ncols)
    for i, row in enumerate(_sparse_rows(m.rows)):
        pivot, aug = elim.insert(row, b[i])
        if pivot is None and aug != 0:
            return None
    # rows are kept in fully reduced form, so with free variables set to zero
    # each pivot coordinate reads off its augment directly
    sol = [ZERO] * m.ncols
    for p in elim.pivot_rows:
        sol[p] = elim.pivot_aug[p]
    return tuple(sol)


def solve_columns(cols: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Solve Σ x_j cols[j] = b; convenience for membership in a span."""
    if not cols:
        return None if any(e != 0 for e in b) else tuple()
    return solve(Matrix(zip(*cols)), b)


class Subspace:
    """A subspace of Q^n given by a linearly independent list of basis vectors.

    Bases are not canonical; equality of subspaces is decided by mutual
    containment, never by comparing bases.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence], *, check: bool = True):
        basis = tuple(vector(v) for v in basis)
        for v in basis:
            if len(v) != ambient_dim:
                raise InputError("basis vector length does not match ambient dimension")
        if check and basis:
            elim = _eliminate(({j: a for j, a in enumerate(v) if a != 0} for v in basis), ambient_dim)
            if elim.rank != len(basis):
                raise InputError("basis vectors are linearly dependent")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *_):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_spanning(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Reduce an arbitrary spanning set to an independent basis."""
        elim = _Eliminator(ambient_dim)
        kept = []
        for v in vectors:
            v = vector(v)
            if len(v) != ambient_dim:
                raise InputError("vector length does not match ambient dimension")
            pivot, _ = elim.insert({j: a for j, a in enumerate(v) if a != 0})
            if pivot is not None:
                kept.append(v)
        return Subspace(ambient_dim, kept, check=False)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)], check=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def coefficients_of(self, v: Sequence) -> Optional[tuple[Fraction, ...]]:
        """Coordinates of v in this basis, or None when v is outside the span."""
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise InputError("vector length does not match ambient dimension")
        if not self.basis:
            return tuple() if vec_is_zero(v) else None
        return solve_columns(self.basis, v)

    def contains_vector(self, v: Sequence) -> bool:
        return self.coefficients_of(v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.from_spanning(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if not self.basis or not other.basis:
            return Subspace(self.ambient_dim, [])
        # kernel of [A | -B]: A-part coefficients span the intersection
        cols = [list(v) for v in self.basis] + [[-e for e in v] for v in other.basis]
        combined = Matrix(zip(*cols))
        _, ker = rank_nullspace(combined)
        vecs = []
        na = len(self.basis)
        for k in ker.basis:
            acc = [ZERO] * self.ambient_dim
            for j in range(na):
                if k[j] != 0:
                    for i in range(self.ambient_dim):
                        acc[i] += k[j] * self.basis[j][i]
            vecs.append(tuple(acc))
        return Subspace.from_spanning(self.ambient_dim, vecs)

    def _same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise InputError("ambient dimensions differ")


def subspace_ops(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace, bool]:
    """(sum, intersection, a ⊇ b) in one call."""
    return a.sum(b), a.intersection(b), a.contains(b)
