"""Shared fixtures: the fixed desk-scale corpus and random-object helpers.

Corpus algebras:
  Z1    dim-2 zero multiplication, identity twists
  E1    dim-1 idempotent e·e = e, identity twists
  P2    dim-2 truncated polynomials Q[x]/(x^2) in basis (1, x), identity twists
  D2    twist of P2 by diag(1,2) / diag(1,3): nontrivial invertible twists
  ZERO1 dim-1 zero multiplication (nonzero second cohomology)
"""

from fractions import Fraction
from random import Random

import pytest

from bihomalt.algebra import BiHomAlgebra, zero_bilinear, yau_twist
from bihomalt.exactnum import Matrix
from bihomalt.representation import Representation, adjoint, semidirect


def make_z1():
    return BiHomAlgebra(2, zero_bilinear(2), Matrix.identity(2), Matrix.identity(2))


def make_e1():
    return BiHomAlgebra(1, [[[1]]], Matrix.identity(1), Matrix.identity(1))


def make_p2():
    mu = [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ]
    return BiHomAlgebra(2, mu, Matrix.identity(2), Matrix.identity(2))


def make_d2():
    return yau_twist(make_p2(), Matrix.diagonal([1, 2]), Matrix.diagonal([1, 3]))


def make_zero1():
    return BiHomAlgebra(1, [[[0]]], Matrix.identity(1), Matrix.identity(1))


@pytest.fixture
def z1():
    return make_z1()


@pytest.fixture
def e1():
    return make_e1()


@pytest.fixture
def p2():
    return make_p2()


@pytest.fixture
def d2():
    return make_d2()


@pytest.fixture
def zero1():
    return make_zero1()


def base_corpus():
    return [("Z1", make_z1()), ("E1", make_e1()), ("D2", make_d2())]


def product_corpus():
    """Base corpus plus semidirect and extension products of it."""
    from bihomalt.extension import central_extension, t_theta_extension
    from bihomalt.cohomology import Cochain

    e1 = make_e1()
    d2 = make_d2()
    items = base_corpus()
    items.append(("SD(E1)", semidirect(e1, adjoint(e1))))
    items.append(("SD(D2)", semidirect(d2, adjoint(d2))))
    items.append(("CE(E1)", central_extension(e1, 1, [[[1]]])))
    theta = Cochain(2, 1, 1, (Fraction(1),))
    items.append(("TT(E1)", t_theta_extension(e1, adjoint(e1), theta)))
    return items


# ---------------------------------------------------------------------------
# random generators (all deterministic via seeded Random instances)


def random_fraction(rng: Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice([1, 1, 2]))


def random_matrix(rng: Random, n: int, m=None, span: int = 3) -> Matrix:
    m = n if m is None else m
    return Matrix([[random_fraction(rng, span) for _ in range(m)] for _ in range(n)])


def random_unimodular(rng: Random, n: int) -> Matrix:
    """Product of unit triangular matrices: invertible with integer inverse."""
    if n == 1:
        return Matrix.identity(1)
    result = Matrix.identity(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        elem = [[Fraction(1) if a == b else Fraction(0) for b in range(n)] for a in range(n)]
        elem[i][j] = Fraction(rng.randint(-2, 2))
        result = result * Matrix(elem)
    return result


def random_commuting_invertible_pair(rng: Random, n: int) -> tuple[Matrix, Matrix]:
    """Two commuting invertible matrices (conjugated diagonal pair)."""
    s = random_unimodular(rng, n)
    s_inv = s.inverse()
    d1 = Matrix.diagonal([rng.choice([1, 1, 2, 3, -1]) for _ in range(n)])
    d2 = Matrix.diagonal([rng.choice([1, 1, 2, 5, -1]) for _ in range(n)])
    return s * d1 * s_inv, s * d2 * s_inv


def conjugate_representation(rep: Representation, s: Matrix) -> Representation:
    s_inv = s.inverse()
    return Representation(
        rep.alg_dim,
        rep.mod_dim,
        [s_inv * m * s for m in rep.l],
        [s_inv * m * s for m in rep.r],
        s_inv * rep.phi * s,
        s_inv * rep.psi * s,
    )


def argument_twisted_adjoint(alg: BiHomAlgebra, a_pow: int, b_pow: int) -> Representation:
    """Adjoint with both actions precomposed with alpha^a beta^b; stays a representation."""
    base = adjoint(alg)
    sigma = alg.alpha.power(a_pow) * alg.beta.power(b_pow)
    lmats = [_action_at(base.l, sigma.column(i)) for i in range(alg.dim)]
    rmats = [_action_at(base.r, sigma.column(i)) for i in range(alg.dim)]
    return Representation(alg.dim, alg.dim, lmats, rmats, base.phi, base.psi)


def _action_at(mats, vec):
    acc = Matrix.zero(mats[0].nrows, mats[0].ncols)
    for p, c in enumerate(vec):
        if c != 0:
            acc = acc + mats[p].scale(c)
    return acc


def trivial_representation(rng: Random, alg_dim: int, mod_dim: int) -> Representation:
    phi = Matrix.diagonal([rng.choice([1, 2, 3, -1]) for _ in range(mod_dim)])
    psi = Matrix.diagonal([rng.choice([1, 2, 5, -1]) for _ in range(mod_dim)])
    zero = Matrix.zero(mod_dim, mod_dim)
    return Representation(alg_dim, mod_dim, [zero] * alg_dim, [zero] * alg_dim, phi, psi)


def random_valid_representation(alg: BiHomAlgebra, rng: Random) -> Representation:
    """A genuinely valid representation built from adjoints, trivial blocks and conjugation."""
    kind = rng.choice(["adjoint", "twisted", "trivial", "conjugated", "conjugated_trivial"])
    if kind == "adjoint":
        rep = adjoint(alg)
    elif kind == "twisted":
        rep = argument_twisted_adjoint(alg, rng.randint(0, 2), rng.randint(0, 2))
    elif kind == "trivial":
        rep = trivial_representation(rng, alg.dim, rng.randint(1, 2))
    elif kind == "conjugated":
        rep = conjugate_representation(adjoint(alg), random_unimodular(rng, alg.dim))
    else:
        base = trivial_representation(rng, alg.dim, 2)
        rep = conjugate_representation(base, random_unimodular(rng, 2))
    return rep


def perturb_representation(rep: Representation, rng: Random) -> Representation:
    """Change a single entry of one action matrix by a random nonzero amount."""
    which = rng.choice(["l", "r"])
    mats = list(rep.l if which == "l" else rep.r)
    idx = rng.randrange(len(mats))
    rows = [list(row) for row in mats[idx].rows]
    i = rng.randrange(rep.mod_dim)
    j = rng.randrange(rep.mod_dim)
    rows[i][j] += rng.choice([Fraction(1), Fraction(-1), Fraction(1, 2)])
    mats[idx] = Matrix(rows)
    if which == "l":
        return Representation(rep.alg_dim, rep.mod_dim, mats, rep.r, rep.phi, rep.psi)
    return Representation(rep.alg_dim, rep.mod_dim, rep.l, mats, rep.phi, rep.psi)
