"""Truncated one-parameter formal deformations of the product.

A deformation of order m is the family d_t = mu + d_1 t + ... + d_m t^m of
bilinear products, each term commuting with both twists.  Collecting the
left-alternativity of d_t by powers of t gives one trilinear condition per
order k:

    sum_{i+j=k} d_i ⋄ d_j = 0

where ⋄ is the four-term diamond pairing.  The k = 0 condition is the
alternativity of mu itself, and since mu ⋄ f + f ⋄ mu is exactly the
degree-2 coboundary operator with adjoint coefficients, the order-k
condition reads  delta2(d_k) + sum_{i+j=k, i,j>=1} d_i ⋄ d_j = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import BiHomAlgebra
from .cohomology import Cochain, cochain_space, compatibility_witness, delta_matrix_on_basis
from .errors import InputError, PreconditionError
from .exactnum import Matrix, solve, vector
from .representation import adjoint

ZERO = Fraction(0)


def term_from_nested(alg_dim: int, nested) -> Cochain:
    """A bilinear deformation term in the degree-2 cochain layout."""
    return Cochain.from_nested(2, alg_dim, alg_dim, nested)


def _twist_compat_witness(alg: BiHomAlgebra, term: Cochain) -> Optional[tuple]:
    """First basis pair where d(alpha x, alpha y) != alpha d(x,y) (or beta)."""
    n = alg.dim
    for twist in (alg.alpha, alg.beta):
        cols = [twist.column(i) for i in range(n)]
        for i in range(n):
            for j in range(n):
                if term.evaluate(cols[i], cols[j]) != twist.apply(term.value(i, j)):
                    return (i, j)
    return None


class TruncatedDeformation:
    """The base algebra plus the ordered bilinear terms d_1 ... d_m."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: BiHomAlgebra, terms: Sequence[Cochain]):
        terms = tuple(terms)
        for t in terms:
            if t.degree != 2 or t.alg_dim != alg.dim or t.mod_dim != alg.dim:
                raise InputError("deformation terms must be bilinear maps A x A -> A")
        object.__setattr__(self, "alg", alg)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *_):
        raise AttributeError("TruncatedDeformation is immutable")

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> Cochain:
        """d_i with d_0 = mu."""
        if i == 0:
            return Cochain.from_function(2, self.alg.dim, self.alg.dim, self.alg.basis_product)
        return self.terms[i - 1]

    def padded(self, order: int) -> "TruncatedDeformation":
        """The same deformation viewed at a higher truncation order."""
        if order < self.order:
            raise InputError("cannot truncate below the stored order")
        extra = order - self.order
        zero = Cochain.zero(2, self.alg.dim, self.alg.dim)
        return TruncatedDeformation(self.alg, self.terms + (zero,) * extra)


@dataclass(frozen=True)
class FormalIsomorphism:
    """phi_t = id + phi_1 t + ... + phi_m t^m; each term commutes with the twists."""

    terms: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int, dim: int) -> Matrix:
        if i == 0:
            return Matrix.identity(dim)
        if i <= len(self.terms):
            return self.terms[i - 1]
        return Matrix.zero(dim, dim)


@dataclass(frozen=True)
class DeformationReport:
    """Per-order residual check of the deformation equations."""

    order_ok: tuple[bool, ...]
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.order_ok)

    def ok_through(self, k: int) -> bool:
        return all(self.order_ok[: k + 1])

    def as_dict(self) -> dict:
        return {
            "order_ok": list(self.order_ok),
            "witnesses": {str(k): list(v) for k, v in self.witnesses.items()},
        }


def _require_compatible_terms(defm: TruncatedDeformation):
    for i, t in enumerate(defm.terms, start=1):
        w = _twist_compat_witness(defm.alg, t)
        if w is not None:
            raise PreconditionError(
                f"deformation term {i} does not commute with the twists (fails at {w})"
            )


def diamond(alg: BiHomAlgebra, a: Cochain, b: Cochain) -> Cochain:
    """The four-term trilinear pairing of two bilinear terms.

    a ⋄ b (x,y,z) = a(b(βx,αy), βz) − a(αβx, b(αy,z))
                  + a(b(βy,αx), βz) − a(αβy, b(αx,z))
    """
    n = alg.dim
    acols = [alg.alpha.column(i) for i in range(n)]
    bcols = [alg.beta.column(i) for i in range(n)]
    abcols = [(alg.alpha * alg.beta).column(i) for i in range(n)]
    units = [tuple(Fraction(int(p == i)) for p in range(n)) for i in range(n)]

    def at(i, j, k):
        total = [ZERO] * n
        for x, y in ((i, j), (j, i)):
            for sign, val in (
                (1, a.evaluate(b.evaluate(bcols[x], acols[y]), bcols[k])),
                (-1, a.evaluate(abcols[x], b.evaluate(acols[y], units[k]))),
            ):
                for c in range(n):
                    total[c] += sign * val[c]
        return tuple(total)

    return Cochain.from_function(3, n, n, at)


def order_residual(defm: TruncatedDeformation, k: int) -> Cochain:
    """sum_{i+j=k} d_i ⋄ d_j; zero iff the order-k deformation equation holds."""
    alg = defm.alg
    total = Cochain.zero(3, alg.dim, alg.dim)
    data = list(total.data)
    for i in range(0, k + 1):
        j = k - i
        if i > defm.order or j > defm.order:
            continue
        piece = diamond(alg, defm.term(i), defm.term(j))
        data = [x + y for x, y in zip(data, piece.data)]
    return Cochain(3, alg.dim, alg.dim, data)


def check_deformation(defm: TruncatedDeformation) -> DeformationReport:
    """Check the deformation equations at every order k = 0 ... m."""
    _require_compatible_terms(defm)
    flags = []
    witnesses = {}
    n = defm.alg.dim
    for k in range(defm.order + 1):
        residual = order_residual(defm, k)
        if residual.is_zero():
            flags.append(True)
        else:
            flags.append(False)
            witness = next(
                idx
                for idx in _triples(n)
                if any(v != 0 for v in residual.value(*idx))
            )
            witnesses[k] = witness
    return DeformationReport(tuple(flags), witnesses)


def _triples(n):
    for i in range(n):
        for j in range(n):
            for k in range(n):
                yield (i, j, k)


def obstruction(defm: TruncatedDeformation, m: int) -> Cochain:
    """sum_{i=1}^{m-1} d_i ⋄ d_{m-i}, defined once the deformation holds through m−1."""
    if m < 1:
        raise InputError("obstruction order must be at least 1")
    report = check_deformation(defm.padded(max(defm.order, m - 1)))
    if not report.ok_through(m - 1):
        bad = next(k for k, ok in enumerate(report.order_ok) if not ok and k <= m - 1)
        raise PreconditionError(
            f"deformation equations fail at order {bad} (witness {report.witnesses[bad]})"
        )
    alg = defm.alg
    data = list(Cochain.zero(3, alg.dim, alg.dim).data)
    for i in range(1, m):
        j = m - i
        if i > defm.order or j > defm.order:
            continue
        piece = diamond(alg, defm.term(i), defm.term(j))
        data = [x + y for x, y in zip(data, piece.data)]
    return Cochain(3, alg.dim, alg.dim, data)


def extend_one_order(defm: TruncatedDeformation) -> Optional[Cochain]:
    """A term d_m completing a valid order-(m−1) deformation to order m, if one exists.

    Solves delta2(d_m) = −obstruction over the twist-compatible bilinear maps;
    None means the obstruction class in degree-3 cohomology is nonzero.
    """
    alg = defm.alg
    m = defm.order + 1
    obs = obstruction(defm, m)
    rep = adjoint(alg)
    space = cochain_space(alg, rep, 2)
    target = vector(-x for x in obs.data)
    if not space.dim:
        return Cochain.zero(2, alg.dim, alg.dim) if obs.is_zero() else None
    matrix, _ = delta_matrix_on_basis(alg, rep, 2, space)
    coeffs = solve(matrix, target)
    if coeffs is None:
        return None
    data = [ZERO] * space.ambient_dim
    for c, vec in zip(coeffs, space.basis):
        if c != 0:
            data = [d + c * v for d, v in zip(data, vec)]
    return Cochain(2, alg.dim, alg.dim, data)


def check_equivalence(
    d: TruncatedDeformation,
    d_prime: TruncatedDeformation,
    phi: FormalIsomorphism,
    order: int,
) -> bool:
    """Whether phi_t carries d_t to d'_t through the given order.

    Order-k condition on basis pairs:
        sum_{i+j=k} phi_i(d_j(x,y)) = sum_{i+p+q=k} d'_i(phi_p x, phi_q y).
    The terms of phi must commute with both twists.
    """
    alg = d.alg
    if d_prime.alg.dim != alg.dim:
        raise InputError("deformations live over algebras of different dimensions")
    if phi.order < order:
        raise InputError("isomorphism truncation order is too small")
    n = alg.dim
    for t in phi.terms:
        if t.nrows != n or t.ncols != n:
            raise InputError("isomorphism term shape does not match the algebra")
    for t in phi.terms:
        if not (t.commutes_with(alg.alpha) and t.commutes_with(alg.beta)):
            return False
    units = [tuple(Fraction(int(p == i)) for p in range(n)) for i in range(n)]
    phis = [phi.term(i, n) for i in range(order + 1)]
    for k in range(order + 1):
        for a in range(n):
            for b in range(n):
                lhs = [ZERO] * n
                for i in range(k + 1):
                    j = k - i
                    if j > d.order and j != 0:
                        continue
                    val = phis[i].apply(d.term(j).value(a, b))
                    lhs = [x + y for x, y in zip(lhs, val)]
                rhs = [ZERO] * n
                for i in range(k + 1):
                    if i > d_prime.order and i != 0:
                        continue
                    di = d_prime.term(i)
                    for p in range(k - i + 1):
                        q = k - i - p
                        val = di.evaluate(phis[p].column(a), phis[q].column(b))
                        rhs = [x + y for x, y in zip(rhs, val)]
                if lhs != rhs:
                    return False
    return True


def gauge(defm: TruncatedDeformation, f: Matrix, level: int, order: int) -> TruncatedDeformation:
    """Conjugate by chi_t = id − t^level f, truncated at the given order.

    New terms: d'_t = chi_t^{-1} ∘ d_t ∘ (chi_t ⊗ chi_t), with
    chi_t^{-1} = sum_i f^i t^{i·level} (finite below the truncation).
    """
    alg = defm.alg
    n = alg.dim
    if level < 1:
        raise InputError("gauge level must be at least 1")
    if not (f.commutes_with(alg.alpha) and f.commutes_with(alg.beta)):
        raise PreconditionError("gauge generator must commute with both twists")
    padded = defm.padded(max(defm.order, order))
    chi = {0: Matrix.identity(n), level: f.scale(-1)}
    chi_inv = {}
    power = Matrix.identity(n)
    i = 0
    while i * level <= order:
        chi_inv[i * level] = power
        power = power * f
        i += 1
    new_terms = []
    for k in range(1, order + 1):
        acc = [ZERO] * (n * n * n)
        for inv_ord, inv_mat in chi_inv.items():
            for term_ord in range(0, k - inv_ord + 1):
                if term_ord > padded.order:
                    continue
                term = padded.term(term_ord)
                for left_ord, chi_left in chi.items():
                    right_ord = k - inv_ord - term_ord - left_ord
                    chi_right = chi.get(right_ord)
                    if chi_right is None:
                        continue
                    piece = Cochain.from_function(
                        2,
                        n,
                        n,
                        lambda i_, j_: inv_mat.apply(
                            term.evaluate(chi_left.column(i_), chi_right.column(j_))
                        ),
                    )
                    acc = [x + y for x, y in zip(acc, piece.data)]
        new_terms.append(Cochain(2, n, n, acc))
    return TruncatedDeformation(alg, new_terms)


def trivialize(defm: TruncatedDeformation, max_order: int) -> Optional[FormalIsomorphism]:
    """Gauge away a deformation step by step, or None at the first non-coboundary term.

    At each stage n is the lowest order with d_n ≠ 0; when d_n is a degree-2
    coboundary delta1(f_n), conjugating by id − t^n f_n clears every order
    through n.  The composite isomorphism maps the original deformation to
    the null one.
    """
    alg = defm.alg
    n_dim = alg.dim
    report = check_deformation(defm.padded(max(defm.order, max_order)))
    if not report.ok_through(max_order):
        bad = next(k for k, ok in enumerate(report.order_ok) if not ok)
        raise PreconditionError(f"deformation equations fail at order {bad}")
    current = defm.padded(max(defm.order, max_order))
    rep = adjoint(alg)
    c1 = cochain_space(alg, rep, 1)
    d1_matrix, _ = delta_matrix_on_basis(alg, rep, 1, c1) if c1.dim else (None, None)
    total = {0: Matrix.identity(n_dim)}  # composed map original -> current, by order
    while True:
        level = next((k for k in range(1, max_order + 1) if not current.term(k).is_zero()), None)
        if level is None:
            break
        target = current.term(level).data
        coeffs = solve(d1_matrix, target) if d1_matrix is not None else None
        if coeffs is None:
            return None
        f_data = [ZERO] * c1.ambient_dim
        for c, vec in zip(coeffs, c1.basis):
            if c != 0:
                f_data = [x + c * v for x, v in zip(f_data, vec)]
        f_cochain = Cochain(1, n_dim, n_dim, f_data)
        f_mat = Matrix([[f_cochain.value(j)[i] for j in range(n_dim)] for i in range(n_dim)])
        current = gauge(current, f_mat, level, max_order)
        # step map old -> new is chi^{-1} = sum_i f^i t^{i·level}
        step = {}
        power = Matrix.identity(n_dim)
        i = 0
        while i * level <= max_order:
            step[i * level] = power
            power = power * f_mat
            i += 1
        total = {
            k: _sum_matrices(
                [step[a] * total[b] for a in step for b in total if a + b == k], n_dim
            )
            for k in range(max_order + 1)
        }
    assert all(current.term(k).is_zero() for k in range(1, max_order + 1))
    return FormalIsomorphism(tuple(total.get(k, Matrix.zero(n_dim, n_dim)) for k in range(1, max_order + 1)))


def _sum_matrices(mats, dim):
    acc = Matrix.zero(dim, dim)
    for m in mats:
        acc = acc + m
    return acc


def null_deformation(alg: BiHomAlgebra) -> TruncatedDeformation:
    return TruncatedDeformation(alg, ())
