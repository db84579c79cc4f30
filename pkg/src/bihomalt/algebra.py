"""BiHom-alternative algebras given by rational structure constants.

An algebra is a space with a bilinear product and two commuting,
multiplicative twist maps alpha and beta.  The twisted associator is

    as(x, y, z) = (x·y)·beta(z) − alpha(x)·(y·z)

and the left identity demands as(beta(x), alpha(y), z) symmetrized in
(x, y) to vanish; the right identity symmetrizes as(x, beta(y), alpha(z))
in (y, z).  Both quadratic forms are checked through their polarized
bilinear versions on basis pairs, which is equivalent over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, MathCheckError
from .exactnum import Matrix, support, vec_add, vec_is_zero, vec_sub, vector, zero_vector

BilinearTensor = tuple[tuple[tuple[Fraction, ...], ...], ...]


def bilinear_tensor(entries, dim_in: int, dim_out: Optional[int] = None) -> BilinearTensor:
    """Normalize a nested [i][j][k] table; entry [i][j][k] is the e_k-coefficient of e_i·e_j."""
    if dim_out is None:
        dim_out = dim_in
    tensor = tuple(tuple(vector(cell) for cell in row) for row in entries)
    if len(tensor) != dim_in or any(len(row) != dim_in for row in tensor):
        raise InputError("structure tensor does not match the declared dimension")
    for row in tensor:
        for cell in row:
            if len(cell) != dim_out:
                raise InputError("structure tensor output length is inconsistent")
    return tensor


def zero_bilinear(dim_in: int, dim_out: Optional[int] = None) -> BilinearTensor:
    if dim_out is None:
        dim_out = dim_in
    return tuple(tuple(zero_vector(dim_out) for _ in range(dim_in)) for _ in range(dim_in))


def apply_bilinear(tensor: BilinearTensor, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    """Evaluate the bilinear map on coordinate vectors, skipping zero coefficients."""
    dim_out = len(tensor[0][0])
    acc = [Fraction(0)] * dim_out
    for i, a in support(x):
        row = tensor[i]
        for j, b in support(y):
            cell = row[j]
            ab = a * b
            for k, c in enumerate(cell):
                if c != 0:
                    acc[k] += ab * c
    return tuple(acc)


class BiHomAlgebra:
    """Structure constants plus the two twist matrices.

    Construction only checks shapes: an object may hold an algebra that
    violates the defining identities, and `validate` reports exactly which
    ones fail.  All values are immutable.
    """

    __slots__ = ("dim", "mu", "alpha", "beta")

    def __init__(self, dim: int, mu, alpha: Matrix, beta: Matrix):
        if dim < 1:
            raise InputError("algebra dimension must be positive")
        mu = bilinear_tensor(mu, dim)
        for m, name in ((alpha, "alpha"), (beta, "beta")):
            if not isinstance(m, Matrix) or m.nrows != dim or m.ncols != dim:
                raise InputError(f"{name} must be a {dim}x{dim} matrix")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, *_):
        raise AttributeError("BiHomAlgebra is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BiHomAlgebra)
            and self.dim == other.dim
            and self.mu == other.mu
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __repr__(self):
        return f"BiHomAlgebra(dim={self.dim})"

    def product(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.dim or len(y) != self.dim:
            raise InputError("vector length does not match algebra dimension")
        return apply_bilinear(self.mu, x, y)

    def basis_product(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.mu[i][j]


@dataclass(frozen=True)
class AlgebraMap:
    """A linear map between algebras, candidate for being a morphism."""

    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.target_dim or self.matrix.ncols != self.source_dim:
            raise InputError("morphism matrix shape does not match declared dimensions")


@dataclass(frozen=True)
class AlgebraReport:
    """Per-identity validation flags with a witness index tuple for each failure."""

    commuting: bool
    alpha_multiplicative: bool
    beta_multiplicative: bool
    left_alternative: bool
    right_alternative: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.commuting
            and self.alpha_multiplicative
            and self.beta_multiplicative
            and self.left_alternative
            and self.right_alternative
        )

    def as_dict(self) -> dict:
        return {
            "commuting": self.commuting,
            "alpha_multiplicative": self.alpha_multiplicative,
            "beta_multiplicative": self.beta_multiplicative,
            "left_alternative": self.left_alternative,
            "right_alternative": self.right_alternative,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def associator(alg: BiHomAlgebra, x: Sequence, y: Sequence, z: Sequence) -> tuple[Fraction, ...]:
    """(x·y)·beta(z) − alpha(x)·(y·z), trilinear in its arguments."""
    if len(x) != alg.dim or len(y) != alg.dim or len(z) != alg.dim:
        raise InputError("vector length does not match algebra dimension")
    left = alg.product(alg.product(x, y), alg.beta.apply(z))
    right = alg.product(alg.alpha.apply(x), alg.product(y, z))
    return vec_sub(left, right)


def _multiplicativity_witness(alg: BiHomAlgebra, twist: Matrix) -> Optional[tuple[int, int]]:
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = twist.apply(alg.basis_product(i, j))
            rhs = alg.product(twist.column(i), twist.column(j))
            if lhs != rhs:
                return (i, j)
    return None


def _left_alternative_witness(alg: BiHomAlgebra) -> Optional[tuple[int, int, int]]:
    n = alg.dim
    bcols = [alg.beta.column(i) for i in range(n)]
    acols = [alg.alpha.column(i) for i in range(n)]
    basis = [tuple(Fraction(1) if p == i else Fraction(0) for p in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                total = vec_add(
                    associator(alg, bcols[i], acols[j], basis[k]),
                    associator(alg, bcols[j], acols[i], basis[k]),
                )
                if not vec_is_zero(total):
                    return (i, j, k)
    return None


def _right_alternative_witness(alg: BiHomAlgebra) -> Optional[tuple[int, int, int]]:
    n = alg.dim
    bcols = [alg.beta.column(i) for i in range(n)]
    acols = [alg.alpha.column(i) for i in range(n)]
    basis = [tuple(Fraction(1) if p == i else Fraction(0) for p in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                total = vec_add(
                    associator(alg, basis[i], bcols[j], acols[k]),
                    associator(alg, basis[i], bcols[k], acols[j]),
                )
                if not vec_is_zero(total):
                    return (i, j, k)
    return None


def validate(alg: BiHomAlgebra) -> AlgebraReport:
    """Check commuting twists, multiplicativity, and both alternative identities."""
    witnesses = {}
    commuting = alg.alpha.commutes_with(alg.beta)
    if not commuting:
        witnesses["commuting"] = ()
    w = _multiplicativity_witness(alg, alg.alpha)
    alpha_mult = w is None
    if w is not None:
        witnesses["alpha_multiplicative"] = w
    w = _multiplicativity_witness(alg, alg.beta)
    beta_mult = w is None
    if w is not None:
        witnesses["beta_multiplicative"] = w
    w = _left_alternative_witness(alg)
    left = w is None
    if w is not None:
        witnesses["left_alternative"] = w
    w = _right_alternative_witness(alg)
    right = w is None
    if w is not None:
        witnesses["right_alternative"] = w
    return AlgebraReport(commuting, alpha_mult, beta_mult, left, right, witnesses)


def is_morphism(f: AlgebraMap, a: BiHomAlgebra, b: BiHomAlgebra) -> bool:
    """True iff f carries the product and both twists of a to those of b."""
    if f.source_dim != a.dim or f.target_dim != b.dim:
        raise InputError("morphism dimensions do not match the algebras")
    m = f.matrix
    if m * a.alpha != b.alpha * m or m * a.beta != b.beta * m:
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            if m.apply(a.basis_product(i, j)) != b.product(m.column(i), m.column(j)):
                return False
    return True


def yau_twist(alg: BiHomAlgebra, a2: Matrix, b2: Matrix) -> BiHomAlgebra:
    """Twist the product into mu~(x,y) = mu(a2·x, b2·y) with twists a2∘alpha, b2∘beta.

    The candidate is validated before being returned; a rejection carries the
    full report so callers can see which identity broke.
    """
    n = alg.dim
    mu = [[alg.product(a2.column(i), b2.column(j)) for j in range(n)] for i in range(n)]
    candidate = BiHomAlgebra(n, mu, a2 * alg.alpha, b2 * alg.beta)
    report = validate(candidate)
    if not report.ok:
        failed = [k for k, v in report.as_dict().items() if v is False]
        raise MathCheckError(
            f"twisted product is not a BiHom-alternative algebra (failed: {', '.join(failed)})",
            condition=failed[0] if failed else None,
            witness=report.witnesses,
            report=report,
        )
    return candidate
