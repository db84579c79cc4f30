"""The cochain complex of a left BiHom-alternative algebra in a bimodule.

An n-cochain is an n-linear map A^n -> V intertwining the twists:
phi∘f = f∘alpha^(n) and psi∘f = f∘beta^(n).  Coordinates are stored flat,
ordered lexicographically by (i_1, ..., i_n, output index); that ordering
is shared with the cochain file format.

The complex is truncated above degree three: degree-4 cochains exist only
as the codomain of the degree-3 operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import BiHomAlgebra
from .errors import InputError, PreconditionError
from .exactnum import (
    Matrix,
    Subspace,
    nullspace_of_sparse_rows,
    rank_nullspace,
    support,
    vector,
)
from .representation import Representation

ZERO = Fraction(0)


class Cochain:
    """An n-linear map A^n -> V as a flat tuple of rationals."""

    __slots__ = ("degree", "alg_dim", "mod_dim", "data")

    def __init__(self, degree: int, alg_dim: int, mod_dim: int, data):
        if degree < 1 or degree > 4:
            raise InputError("cochain degree must be between 1 and 4")
        data = vector(data)
        if len(data) != mod_dim * alg_dim**degree:
            raise InputError(
                f"cochain needs {mod_dim * alg_dim ** degree} coordinates, got {len(data)}"
            )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "alg_dim", alg_dim)
        object.__setattr__(self, "mod_dim", mod_dim)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *_):
        raise AttributeError("Cochain is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and (self.degree, self.alg_dim, self.mod_dim) == (other.degree, other.alg_dim, other.mod_dim)
            and self.data == other.data
        )

    def __repr__(self):
        return f"Cochain(degree={self.degree}, alg_dim={self.alg_dim}, mod_dim={self.mod_dim})"

    @staticmethod
    def zero(degree: int, alg_dim: int, mod_dim: int) -> "Cochain":
        return Cochain(degree, alg_dim, mod_dim, (ZERO,) * (mod_dim * alg_dim**degree))

    @staticmethod
    def from_function(degree: int, alg_dim: int, mod_dim: int, fn: Callable) -> "Cochain":
        """Tabulate fn(basis index tuple) -> V-vector into the flat layout."""
        data = []
        for idx in itertools.product(range(alg_dim), repeat=degree):
            val = fn(*idx)
            if len(val) != mod_dim:
                raise InputError("cochain function returned a vector of the wrong length")
            data.extend(val)
        return Cochain(degree, alg_dim, mod_dim, data)

    def _offset(self, idx: Sequence[int]) -> int:
        flat = 0
        for i in idx:
            flat = flat * self.alg_dim + i
        return flat * self.mod_dim

    def value(self, *idx: int) -> tuple[Fraction, ...]:
        """The V-vector at a basis index tuple."""
        if len(idx) != self.degree:
            raise InputError("index tuple length must equal the degree")
        off = self._offset(idx)
        return self.data[off : off + self.mod_dim]

    def evaluate(self, *args: Sequence) -> tuple[Fraction, ...]:
        """Multilinear extension to arbitrary coordinate vectors."""
        if len(args) != self.degree:
            raise InputError("argument count must equal the degree")
        supports = []
        for a in args:
            if len(a) != self.alg_dim:
                raise InputError("argument length does not match the algebra dimension")
            supports.append(support(a))
        acc = [ZERO] * self.mod_dim
        for combo in itertools.product(*supports):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            off = self._offset([i for i, _ in combo])
            for k in range(self.mod_dim):
                v = self.data[off + k]
                if v != 0:
                    acc[k] += coeff * v
        return tuple(acc)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def nested(self) -> list:
        """Nested-list form, innermost = output coordinates (the file layout)."""

        def build(prefix):
            if len(prefix) == self.degree:
                off = self._offset(prefix)
                return list(self.data[off : off + self.mod_dim])
            return [build(prefix + (i,)) for i in range(self.alg_dim)]

        return build(())

    @staticmethod
    def from_nested(degree: int, alg_dim: int, mod_dim: int, nested) -> "Cochain":
        data = []

        def walk(node, depth):
            if depth == degree:
                if len(node) != mod_dim:
                    raise InputError("tensor output length is inconsistent")
                data.extend(node)
                return
            if len(node) != alg_dim:
                raise InputError("tensor axis length does not match the algebra dimension")
            for child in node:
                walk(child, depth + 1)

        walk(nested, 0)
        return Cochain(degree, alg_dim, mod_dim, data)


def compatibility_witness(
    alg: BiHomAlgebra, rep: Representation, cochain: Cochain
) -> Optional[tuple]:
    """First basis tuple where phi/psi-compatibility breaks, or None."""
    n, deg = alg.dim, cochain.degree
    acols = [alg.alpha.column(i) for i in range(n)]
    bcols = [alg.beta.column(i) for i in range(n)]
    for idx in itertools.product(range(n), repeat=deg):
        val = cochain.value(*idx)
        if rep.phi.apply(val) != cochain.evaluate(*[acols[i] for i in idx]):
            return idx
        if rep.psi.apply(val) != cochain.evaluate(*[bcols[i] for i in idx]):
            return idx
    return None


def _require_cochain(alg: BiHomAlgebra, rep: Representation, f: Cochain, degree: int):
    if f.degree != degree:
        raise InputError(f"expected a degree-{degree} cochain")
    if f.alg_dim != alg.dim or f.mod_dim != rep.mod_dim:
        raise InputError("cochain shape does not match algebra and coefficients")
    w = compatibility_witness(alg, rep, f)
    if w is not None:
        raise PreconditionError(f"not a twist-compatible cochain (fails at {w})")


def cochain_space(alg: BiHomAlgebra, rep: Representation, degree: int) -> Subspace:
    """Basis of the twist-compatible n-linear maps inside the full coordinate space."""
    if degree not in (1, 2, 3):
        raise InputError("cochain spaces are built for degrees 1, 2, 3")
    n, m = alg.dim, rep.mod_dim
    total = m * n**degree
    rows = []
    tuples = list(itertools.product(range(n), repeat=degree))
    offsets = {t: i * m for i, t in enumerate(tuples)}
    for twist, tcols in ((rep.phi, alg.alpha), (rep.psi, alg.beta)):
        cols = [tcols.column(i) for i in range(n)]
        for t in tuples:
            base = offsets[t]
            # phi(f(e_t)) - f(twisted basis vectors) = 0, one row per output coordinate
            transformed = []
            for combo in itertools.product(*[support(cols[i]) for i in t]):
                coeff = Fraction(1)
                for _, c in combo:
                    coeff *= c
                transformed.append((offsets[tuple(i for i, _ in combo)], coeff))
            for c_out in range(m):
                row = {}
                for c_in in range(m):
                    e = twist.rows[c_out][c_in]
                    if e != 0:
                        row[base + c_in] = row.get(base + c_in, ZERO) + e
                for off, coeff in transformed:
                    key = off + c_out
                    row[key] = row.get(key, ZERO) - coeff
                rows.append({k: v for k, v in row.items() if v != 0})
    return nullspace_of_sparse_rows(rows, total)


def _delta1_raw(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    n = alg.dim

    def at(i, j):
        lv = rep.left_apply(_unit(n, i), f.value(j))
        rv = rep.right_apply(_unit(n, j), f.value(i))
        fv = f.evaluate(alg.basis_product(i, j))
        return tuple(a + b - c for a, b, c in zip(lv, rv, fv))

    return Cochain.from_function(2, n, f.mod_dim, at)


def _delta2_raw(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    n = alg.dim
    acols = [alg.alpha.column(i) for i in range(n)]
    bcols = [alg.beta.column(i) for i in range(n)]
    abcols = [(alg.alpha * alg.beta).column(i) for i in range(n)]
    units = [_unit(n, i) for i in range(n)]

    def at(i, j, k):
        terms = []
        for x, y in ((i, j), (j, i)):
            terms.append(rep.right_apply(bcols[k], f.evaluate(bcols[x], acols[y])))
            terms.append(tuple(-a for a in rep.left_apply(abcols[x], f.evaluate(acols[y], units[k]))))
            terms.append(f.evaluate(alg.product(bcols[x], acols[y]), bcols[k]))
            terms.append(tuple(-a for a in f.evaluate(abcols[x], alg.product(acols[y], units[k]))))
        return tuple(sum(t[c] for t in terms) for c in range(f.mod_dim))

    return Cochain.from_function(3, n, f.mod_dim, at)


def _delta3_raw(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    n = alg.dim
    acols = [alg.alpha.column(i) for i in range(n)]
    bcols = [alg.beta.column(i) for i in range(n)]
    units = [_unit(n, i) for i in range(n)]

    def at(x1, x2, x3, x4):
        a = acols
        b = bcols
        e = units
        terms = [
            rep.left_apply(a[x1], f.evaluate(b[x2], b[x3], b[x4])),
            _neg(rep.left_apply(a[x1], f.evaluate(b[x3], b[x2], b[x4]))),
            rep.right_apply(b[x4], f.evaluate(a[x1], a[x2], a[x3])),
            _neg(rep.right_apply(b[x4], f.evaluate(a[x2], a[x1], a[x3]))),
            _neg(f.evaluate(alg.product(a[x1], b[x2]), e[x3], e[x4])),
            _neg(f.evaluate(alg.product(a[x2], b[x3]), e[x1], e[x4])),
            f.evaluate(e[x1], alg.product(a[x2], b[x3]), e[x4]),
            f.evaluate(e[x3], alg.product(a[x1], b[x2]), e[x4]),
            _neg(f.evaluate(e[x1], e[x2], alg.product(a[x3], b[x4]))),
            f.evaluate(e[x2], e[x1], alg.product(a[x3], b[x4])),
        ]
        return tuple(sum(t[c] for t in terms) for c in range(f.mod_dim))

    return Cochain.from_function(4, n, f.mod_dim, at)


def _unit(n, i):
    return tuple(Fraction(1) if p == i else ZERO for p in range(n))


def _neg(v):
    return tuple(-a for a in v)


def delta1(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """(d f)(x,y) = l(x)f(y) + r(y)f(x) − f(x·y)."""
    _require_cochain(alg, rep, f, 1)
    return _delta1_raw(alg, rep, f)


def delta2(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """The eight-term degree-2 operator, symmetric under swapping its first two inputs."""
    _require_cochain(alg, rep, f, 2)
    return _delta2_raw(alg, rep, f)


def delta3(alg: BiHomAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """The ten-term degree-3 operator; composed with delta2 it vanishes."""
    _require_cochain(alg, rep, f, 3)
    return _delta3_raw(alg, rep, f)


DELTAS = {1: _delta1_raw, 2: _delta2_raw, 3: _delta3_raw}


@dataclass(frozen=True)
class ComplexReport:
    degree: int
    dim_C: int
    dim_Z: int
    dim_B: int
    dim_H: int

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "dim_C": self.dim_C,
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H": self.dim_H,
        }


def delta_matrix_on_basis(
    alg: BiHomAlgebra, rep: Representation, degree: int, basis: Subspace
) -> tuple[Matrix, list[Cochain]]:
    """Matrix of delta_degree from given cochain coordinates into the ambient codomain."""
    n, m = alg.dim, rep.mod_dim
    out_dim = m * n ** (degree + 1)
    images = []
    for vec in basis.basis:
        f = Cochain(degree, n, m, vec)
        images.append(DELTAS[degree](alg, rep, f))
    if not images:
        return Matrix.zero(out_dim, 1), []
    cols = [img.data for img in images]
    return Matrix(zip(*cols)), images


def complex_report(alg: BiHomAlgebra, rep: Representation, degree: int) -> ComplexReport:
    """Dimensions of cochains, cocycles, coboundaries and cohomology at degree 2 or 3."""
    if degree not in (2, 3):
        raise InputError("cohomology reports exist for degrees 2 and 3 only")
    space = cochain_space(alg, rep, degree)
    prev_space = cochain_space(alg, rep, degree - 1)
    dim_c = space.dim

    if space.dim:
        matrix, _ = delta_matrix_on_basis(alg, rep, degree, space)
        rank, _kernel = rank_nullspace(matrix)
        dim_z = space.dim - rank
    else:
        dim_z = 0

    if prev_space.dim:
        prev_matrix, images = delta_matrix_on_basis(alg, rep, degree - 1, prev_space)
        dim_b = rank_nullspace(prev_matrix)[0]
        # coboundaries must be cocycles: exactness guard, not a user-facing check
        for img in images:
            coeffs = space.coefficients_of(img.data)
            assert coeffs is not None, "coboundary escaped the compatible cochain space"
            if space.dim:
                next_img = DELTAS[degree](alg, rep, img)
                assert next_img.is_zero(), "coboundary is not a cocycle"
    else:
        dim_b = 0

    return ComplexReport(degree, dim_c, dim_z, dim_b, dim_z - dim_b)
