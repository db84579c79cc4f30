from fractions import Fraction
from random import Random

import pytest

from bihomalt.algebra import validate
from bihomalt.cohomology import Cochain, cochain_space, delta2
from bihomalt.errors import InputError, MathCheckError, PreconditionError
from bihomalt.exactnum import Matrix
from bihomalt.extension import (
    annihilator,
    assemble_t_theta,
    central_extension,
    left_cocycle_residual,
    right_cocycle_residual,
    t_star_theta_extension,
    t_theta_extension,
)
from bihomalt.representation import (
    Representation,
    adjoint,
    coadjoint,
    dual,
    semidirect,
    validate_representation,
)

from conftest import base_corpus, make_d2, make_e1, random_fraction


def test_annihilator_of_zero_algebra(z1):
    assert annihilator(z1).dim == 2


def test_annihilator_of_e1(e1):
    assert annihilator(e1).dim == 0


def test_annihilator_of_central_extension(e1):
    ext = central_extension(e1, 1, [[[0]]])
    ann = annihilator(ext)
    assert ann.dim == 1
    assert ann.contains_vector((0, 1))


def test_central_extension_zero_omega(e1):
    ext = central_extension(e1, 1, [[[0]]])
    assert ext.dim == 2
    assert validate(ext).ok


def test_central_extension_e1_nontrivial(e1):
    ext = central_extension(e1, 1, [[[1]]])
    assert validate(ext).ok
    # (e+u)(e+v) = e + 1: the A-part is idempotent, the V-part carries omega
    assert ext.product((1, 0), (1, 0)) == (1, 1)
    assert annihilator(ext).contains_vector((0, 1))


def test_central_extension_d2_rejects_bad_omega(d2):
    omega = [[[1], [0]], [[0], [1]]]  # omega(x^, x^) = 1 breaks alpha-invariance
    with pytest.raises(MathCheckError) as err:
        central_extension(d2, 1, omega)
    assert err.value.condition == "alpha_invariance"
    assert err.value.witness == (1, 1)


def test_central_extension_d2_accepts_unit_supported_omega(d2):
    omega = [[[1], [0]], [[0], [0]]]
    ext = central_extension(d2, 1, omega)
    assert validate(ext).ok
    assert annihilator(ext).contains_vector((0, 0, 1))


def test_central_conditions_match_trivial_coefficient_cocycles():
    """With V acted on trivially, the twist-invariance plus the left mixed condition
    are exactly membership in the degree-2 cocycle space with trivial coefficients."""
    rng = Random(71)
    for _, alg in base_corpus():
        n = alg.dim
        zero = Matrix.zero(1, 1)
        trivial = Representation(n, 1, [zero] * n, [zero] * n, Matrix.identity(1), Matrix.identity(1))
        space = cochain_space(alg, trivial, 2)
        for trial in range(12):
            data = [random_fraction(rng) for _ in range(n * n)]
            omega = Cochain(2, n, 1, data)
            compatible = all(
                omega.evaluate(alg.alpha.column(i), alg.alpha.column(j)) == omega.value(i, j)
                and omega.evaluate(alg.beta.column(i), alg.beta.column(j)) == omega.value(i, j)
                for i in range(n)
                for j in range(n)
            )
            in_z2 = compatible and delta2(alg, trivial, omega).is_zero()
            left_family_passes = True
            try:
                central_extension(alg, 1, omega.nested())
            except MathCheckError as err:
                if err.condition in ("alpha_invariance", "beta_invariance", "left_condition"):
                    left_family_passes = False
            assert left_family_passes == in_z2


def test_t_theta_zero_theta_is_semidirect(d2):
    rep = adjoint(d2)
    theta = Cochain.zero(2, 2, 2)
    ext = t_theta_extension(d2, rep, theta)
    assert ext == semidirect(d2, rep)
    assert validate(ext).ok


def test_t_theta_coboundary_theta(e1):
    from bihomalt.cohomology import delta1

    rep = adjoint(e1)
    g = Cochain(1, 1, 1, (Fraction(3),))
    theta = delta1(e1, rep, g)
    ext = t_theta_extension(e1, rep, theta)
    assert validate(ext).ok


def test_t_theta_e1_hand_case(e1):
    rep = adjoint(e1)
    theta = Cochain(2, 1, 1, (Fraction(1),))
    ext = t_theta_extension(e1, rep, theta)
    assert validate(ext).ok
    # (e+0)∘(e+0) = e·e + theta(e,e) = e + 1
    assert ext.product((1, 0), (1, 0)) == (1, 1)


def test_t_theta_left_residual_equals_delta2():
    rng = Random(73)
    for _, alg in base_corpus():
        rep = adjoint(alg)
        space = cochain_space(alg, rep, 2)
        for _ in range(10):
            data = [Fraction(0)] * space.ambient_dim
            for vec in space.basis:
                c = random_fraction(rng)
                data = [d + c * v for d, v in zip(data, vec)]
            theta = Cochain(2, alg.dim, rep.mod_dim, data)
            assert left_cocycle_residual(alg, rep, theta) == delta2(alg, rep, theta)


def test_t_theta_validity_equivalence():
    """Acceptance of (alg, rep, theta) coincides with full validation of the assembled algebra."""
    rng = Random(79)
    for _, alg in base_corpus():
        rep = adjoint(alg)
        space = cochain_space(alg, rep, 2)
        for _ in range(10):
            data = [Fraction(0)] * space.ambient_dim
            for vec in space.basis:
                c = random_fraction(rng)
                data = [d + c * v for d, v in zip(data, vec)]
            # randomly also break compatibility sometimes
            if rng.random() < 0.4 and data:
                idx = rng.randrange(len(data))
                data[idx] += Fraction(1)
            theta = Cochain(2, alg.dim, rep.mod_dim, data)
            accepted = True
            try:
                t_theta_extension(alg, rep, theta)
            except MathCheckError:
                accepted = False
            assembled_ok = validate(assemble_t_theta(alg, rep, theta)).ok
            assert accepted == assembled_ok


def test_t_theta_rejects_invalid_rep(e1):
    rep = adjoint(e1)
    bad = Representation(1, 1, rep.l, (Matrix([[2]]),), rep.phi, rep.psi)
    with pytest.raises(PreconditionError):
        t_theta_extension(e1, bad, Cochain.zero(2, 1, 1))


def test_t_star_zero_theta_is_coadjoint_semidirect(e1):
    ext = t_star_theta_extension(e1, adjoint(e1), Cochain.zero(2, 1, 1))
    assert ext == semidirect(e1, coadjoint(e1))
    assert validate(ext).ok


def test_t_star_e1_dual_basis_theta(e1):
    theta = Cochain(2, 1, 1, (Fraction(1),))
    ext = t_star_theta_extension(e1, adjoint(e1), theta)
    assert validate(ext).ok


def test_t_star_d2_zero_theta(d2):
    ext = t_star_theta_extension(d2, adjoint(d2), Cochain.zero(2, 2, 2))
    assert ext.dim == 4
    assert validate(ext).ok
    assert ext == semidirect(d2, dual(d2, adjoint(d2)))


def test_t_star_rejects_noninvertible_twists(z1):
    rep = adjoint(z1)
    singular = Representation(2, 2, rep.l, rep.r, Matrix.zero(2, 2), rep.psi)
    with pytest.raises(PreconditionError):
        t_star_theta_extension(z1, singular, Cochain.zero(2, 2, 2))


def test_central_extension_input_errors(e1):
    with pytest.raises(InputError):
        central_extension(e1, 0, [[[]]])
