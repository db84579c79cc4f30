import itertools
from fractions import Fraction

import pytest

from bihomalt.errors import InputError, PreconditionError
from bihomalt.exactnum import Matrix
from bihomalt.genderiv import (
    OperatorSpace,
    bracket,
    centroid_space,
    commutant,
    derivation_space,
    generalized_derivation_space,
    quasi_centroid_space,
    quasi_derivation_space,
    sgder_decompose,
    sgder_space,
    space_of_kind,
    twist_power,
)

from conftest import base_corpus, make_d2, make_e1, make_z1
from oracle_naive import dense_nullity


EXPONENT_GRID = [(-1, -1), (-1, 0), (0, -1), (0, 0), (0, 1), (1, 0), (1, 1), (-1, 1), (1, -1)]


def naive_derivation_dim(alg, k, l):
    """Independent dense assembly of the commutation + product-rule system."""
    n = alg.dim
    w = alg.alpha.power(k) * alg.beta.power(l)
    unknowns = n * n  # D[i][j]
    rows = []

    def d_entry(i, j):
        row = [Fraction(0)] * unknowns
        row[i * n + j] = Fraction(1)
        return row

    def add_rows(expr_rows):
        rows.extend(expr_rows)

    # [D, alpha] = 0 and [D, beta] = 0, entrywise
    for mat in (alg.alpha, alg.beta):
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * unknowns
                for p in range(n):
                    row[i * n + p] += mat.rows[p][j]
                    row[p * n + j] -= mat.rows[i][p]
                rows.append(row)
    # D(e_i e_j) - D(e_i) W(e_j) - W(e_i) D(e_j) = 0, output coordinate c
    for i in range(n):
        for j in range(n):
            for c in range(n):
                row = [Fraction(0)] * unknowns
                for kk in range(n):
                    row[c * n + kk] += alg.mu[i][j][kk]
                for p in range(n):
                    acc = Fraction(0)
                    for q in range(n):
                        acc += w.rows[q][j] * alg.mu[p][q][c]
                    row[p * n + i] -= acc
                for q in range(n):
                    acc = Fraction(0)
                    for p in range(n):
                        acc += w.rows[p][i] * alg.mu[p][q][c]
                    row[q * n + j] -= acc
                rows.append(row)
    return dense_nullity(rows, unknowns)


def test_commutant_identity_twists(z1):
    assert commutant(z1).dim == 4


def test_commutant_d2_is_diagonal(d2):
    u = commutant(d2)
    assert u.dim == 2
    for m in u.basis:
        assert m.rows[0][1] == 0 and m.rows[1][0] == 0


def test_derivations_z1_all_of_u(z1):
    for k, l in ((0, 0), (1, 2), (0, 3)):
        assert derivation_space(z1, k, l).dim == 4


def test_derivations_e1_dim0(e1):
    assert derivation_space(e1, 0, 0).dim == 0


def test_derivations_d2_dim1(d2):
    space = derivation_space(d2, 0, 0)
    assert space.dim == 1
    basis = space.basis[0]
    # spanned by 1 -> 0, x -> x
    assert basis.rows[0][0] == 0
    assert basis.rows[1][1] != 0


def test_derivation_dims_match_naive_solver():
    for _, alg in base_corpus():
        for k, l in EXPONENT_GRID:
            assert derivation_space(alg, k, l).dim == naive_derivation_dim(alg, k, l), (k, l)


def test_qder_e1_dim1(e1):
    assert quasi_derivation_space(e1, 0, 0).dim == 1


def test_qder_z1_dim4(z1):
    assert quasi_derivation_space(z1, 0, 0).dim == 4


def test_gder_e1_dim1(e1):
    assert generalized_derivation_space(e1, 0, 0).dim == 1
    assert sgder_space(e1, 0, 0).dim == 1


def test_gder_z1_dim4(z1):
    assert generalized_derivation_space(z1, 0, 0).dim == 4
    assert sgder_space(z1, 0, 0).dim == 4


def test_centroid_e1_dim1(e1):
    assert centroid_space(e1, 0, 0).dim == 1


def test_centroid_z1_is_u(z1):
    assert centroid_space(z1, 0, 0).dim == 4


def test_centroid_d2_scalars(d2):
    space = centroid_space(d2, 0, 0)
    assert space.dim == 1
    m = space.basis[0]
    assert m.rows[0][0] == m.rows[1][1] != 0
    assert m.rows[0][1] == 0 and m.rows[1][0] == 0


def test_inclusion_chain_on_corpus():
    for name, alg in base_corpus():
        n = alg.dim
        for k, l in EXPONENT_GRID:
            der = derivation_space(alg, k, l).as_subspace(n)
            qder = quasi_derivation_space(alg, k, l).as_subspace(n)
            sg = sgder_space(alg, k, l).as_subspace(n)
            gder = generalized_derivation_space(alg, k, l).as_subspace(n)
            cent = centroid_space(alg, k, l).as_subspace(n)
            qcent = quasi_centroid_space(alg, k, l).as_subspace(n)
            assert qder.contains(der), (name, k, l)
            assert sg.contains(qder), (name, k, l)
            assert gder.contains(sg), (name, k, l)
            assert qcent.contains(cent), (name, k, l)


def test_der_bracket_closure():
    for _, alg in base_corpus():
        for (k, l), (s, t) in itertools.product([(0, 0), (1, 0), (0, 1)], repeat=2):
            d1_space = derivation_space(alg, k, l)
            d2_space = derivation_space(alg, s, t)
            target = derivation_space(alg, k + s, l + t)
            for a in d1_space.basis:
                for b in d2_space.basis:
                    assert target.contains_matrix(bracket(a, b))


def test_der_centroid_bracket_lands_in_centroid():
    for _, alg in base_corpus():
        for (k, l), (s, t) in itertools.product([(0, 0), (1, 1)], repeat=2):
            for d in derivation_space(alg, k, l).basis:
                for theta in centroid_space(alg, s, t).basis:
                    assert centroid_space(alg, k + s, l + t).contains_matrix(bracket(d, theta))


def test_centroid_inside_qder_with_doubling_witness():
    for _, alg in base_corpus():
        for k, l in ((0, 0), (1, 0)):
            qder = quasi_derivation_space(alg, k, l)
            for theta in centroid_space(alg, k, l).basis:
                assert qder.contains_matrix(theta)


def test_qc_bracket_in_qder():
    for _, alg in base_corpus():
        for (k, l), (s, t) in itertools.product([(0, 0), (0, 1)], repeat=2):
            qc1 = quasi_centroid_space(alg, k, l)
            qc2 = quasi_centroid_space(alg, s, t)
            target = quasi_derivation_space(alg, k + s, l + t)
            for a in qc1.basis:
                for b in qc2.basis:
                    assert target.contains_matrix(bracket(a, b))


def test_bracket_closure_of_gder_qder_centroid():
    # the three families are closed under the commutator, with exponents adding
    pairs = [((0, 0), (1, 0)), ((0, 1), (1, 0)), ((0, 0), (0, 0))]
    for _, alg in base_corpus():
        for space_fn in (generalized_derivation_space, quasi_derivation_space, centroid_space):
            for (k, l), (s, t) in pairs:
                left = space_fn(alg, k, l)
                right = space_fn(alg, s, t)
                target = space_fn(alg, k + s, l + t)
                for a in left.basis:
                    for b in right.basis:
                        assert target.contains_matrix(bracket(a, b)), space_fn.__name__


def test_subalgebra_closure_under_twist_shifts():
    for _, alg in base_corpus():
        for k, l in ((0, 0), (1, 0)):
            for space_fn in (generalized_derivation_space, quasi_derivation_space, centroid_space):
                space = space_fn(alg, k, l)
                shifted_a = space_fn(alg, k + 1, l)
                shifted_b = space_fn(alg, k, l + 1)
                for m in space.basis:
                    assert shifted_a.contains_matrix(alg.alpha * m)
                    assert shifted_b.contains_matrix(alg.beta * m)


def test_commutant_closed_under_twist_composition():
    for _, alg in base_corpus():
        u = commutant(alg)
        for m in u.basis:
            assert u.contains_matrix(alg.alpha * m)
            assert u.contains_matrix(alg.beta * m)


def test_sgder_equals_qder_plus_qc():
    for _, alg in base_corpus():
        n = alg.dim
        for k, l in ((0, 0), (1, 1), (-1, 0)):
            sg = sgder_space(alg, k, l).as_subspace(n)
            qder = quasi_derivation_space(alg, k, l).as_subspace(n)
            qc = quasi_centroid_space(alg, k, l).as_subspace(n)
            total = qder.sum(qc)
            assert total.contains(sg) and sg.contains(total)


def test_sgder_decompose_derivation_gives_zero_centroid_part(d2):
    der = derivation_space(d2, 0, 0)
    d = der.basis[0]
    q, c = sgder_decompose(d2, 0, 0, d)
    assert q + c == d
    assert quasi_derivation_space(d2, 0, 0).contains_matrix(q)
    assert quasi_centroid_space(d2, 0, 0).contains_matrix(c)


def test_sgder_decompose_on_zero_algebra(z1):
    d = Matrix([[1, 2], [3, 4]])
    q, c = sgder_decompose(z1, 0, 0, d)
    assert q + c == d


def test_sgder_decompose_rejects_outsiders(d2):
    # anything outside the twist commutant cannot be a symmetric generalized derivation
    with pytest.raises(PreconditionError):
        sgder_decompose(d2, 0, 0, Matrix([[0, 1], [0, 0]]))


def test_bracket_properties():
    u = Matrix([[1, 0], [0, 2]])
    v = Matrix([[0, 1], [0, 0]])
    assert bracket(u, u).is_zero()
    assert bracket(Matrix.identity(2), v).is_zero()
    assert bracket(u, v) == Matrix([[0, -1], [0, 0]])
    with pytest.raises(InputError):
        bracket(u, Matrix([[1]]))


def test_negative_exponents_require_invertible_twists():
    alg = make_z1()
    singular = Matrix([[1, 0], [0, 0]])
    from bihomalt.algebra import BiHomAlgebra, zero_bilinear

    degen = BiHomAlgebra(2, zero_bilinear(2), singular, Matrix.identity(2))
    with pytest.raises(PreconditionError):
        derivation_space(degen, -1, 0)
    assert derivation_space(degen, 1, 0).dim > 0


def test_space_of_kind_dispatch(e1):
    assert space_of_kind(e1, "Der", 0, 0).dim == 0
    assert space_of_kind(e1, "U", 0, 0).dim == 1
    with pytest.raises(InputError):
        space_of_kind(e1, "Bogus", 0, 0)
