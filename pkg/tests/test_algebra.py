import random

import pytest
from hypothesis import given, settings, strategies as st

from ncdef.algebra import (AlgebraError, AlgebraHom, BoundQuiver, ConjugacyStatus, Quiver, are_conjugate,
                           build_algebra, check_hom, free_algebra_dim_check, loewy_length,
                           radical_power_basis)
from ncdef.linalg import GF, QQ
from ncdef.obstruction_example import ExampleData
from ncdef.samples import nakayama_algebra, random_algebra, truncated_polynomial

F5 = GF(5)


def two_loops(f, rels):
    q = Quiver.build([1], [("x", 1, 1), ("y", 1, 1)])
    return build_algebra(BoundQuiver.build(q, rels, f))


def test_path_algebra_of_linear_quiver():
    D = ExampleData(QQ)
    assert D.B.dim == 6
    assert len(radical_power_basis(D.B, 1)) == 3
    assert radical_power_basis(D.B, 3) == []
    assert loewy_length(D.B) == 2


def test_trivial_algebras():
    A = build_algebra(BoundQuiver.build(Quiver.build([1], []), [], QQ))
    assert A.dim == 1 and A.loewy_length() == 0
    assert radical_power_basis(A, 1) == []
    S = build_algebra(BoundQuiver.build(Quiver.build([1, 2, 3], []), [], QQ))
    assert S.loewy_length() == 0


def test_truncated_polynomials():
    A = truncated_polynomial(QQ, 2)
    assert A.dim == 2
    x = A.arrow("x")
    assert not any(A.mul(x, x))
    assert truncated_polynomial(QQ, 3).loewy_length() == 2


def test_rejects_bad_relations():
    q = Quiver.build([1], [("x", 1, 1)])
    with pytest.raises(AlgebraError):
        build_algebra(BoundQuiver.build(q, ["x"], QQ))
    with pytest.raises(AlgebraError):
        build_algebra(BoundQuiver.build(q, [], QQ))  # infinite-dimensional


def test_unit_and_idempotents():
    A = nakayama_algebra(QQ, 3, 2)
    one = A.one()
    for j in range(A.dim):
        e = A.unit_vector(j)
        assert A.mul(one, e) == e == A.mul(e, one)
    for i in range(A.n):
        for k in range(A.n):
            prod = A.mul(A.idempotent(i), A.idempotent(k))
            assert prod == (A.idempotent(i) if i == k else A.zero())


def test_associativity_of_tables():
    rng = random.Random(3)
    for _ in range(10):
        assert free_algebra_dim_check(random_algebra(rng, F5))


def test_radical_powers_multiply():
    A = nakayama_algebra(QQ, 4)
    for j in range(4):
        for k in range(4):
            target = set(radical_power_basis(A, j + k))
            for a in radical_power_basis(A, j):
                for b in radical_power_basis(A, k):
                    prod = A.basis_product(a, b)
                    assert all(i in target for i, c in enumerate(prod) if c)


def test_check_hom_examples():
    D = ExampleData(QQ)
    assert check_hom(AlgebraHom.identity(D.B))
    assert check_hom(D.alpha)
    bad = AlgebraHom(D.B, D.B, AlgebraHom.identity(D.B).images, (1, 0, 2))
    r = check_hom(bad)
    assert not r and "q-compatibility" in r.witness


def test_conjugacy_of_identity():
    A = truncated_polynomial(QQ, 3)
    r = are_conjugate(AlgebraHom.identity(A), AlgebraHom.identity(A))
    assert r.status is ConjugacyStatus.CONJUGATE
    assert A.is_invertible(r.witness)


@pytest.mark.parametrize("f", [QQ, F5])
def test_inner_twist_is_conjugate(f):
    B = two_loops(f, ["x x", "x x x", "x x y", "x y x", "x y y", "y x x", "y x y", "y y x", "y y y"])
    A = truncated_polynomial(f, 2)
    alpha = AlgebraHom.from_generators(A, B, {"x": [(1, "x")]})
    beta = AlgebraHom.from_generators(A, B, {"x": [(1, "x"), (1, "x y"), (-1, "y x")]})
    assert check_hom(alpha) and check_hom(beta)
    r = are_conjugate(alpha, beta)
    assert r.status is ConjugacyStatus.CONJUGATE
    u = r.witness
    x = alpha.image_of_basis(A.index[(0, (0,))])
    assert B.mul(B.mul(B.inverse(u), beta.image_of_basis(A.index[(0, (0,))])), u) == x
    gamma = AlgebraHom.from_generators(A, B, {"x": [(1, "x y")]})
    assert check_hom(gamma)
    assert are_conjugate(alpha, gamma).status is ConjugacyStatus.NOT_CONJUGATE


def test_square_zero_generator_cannot_go_to_x_in_cubic_quotient():
    A, B = truncated_polynomial(QQ, 2), truncated_polynomial(QQ, 3)
    h = AlgebraHom.from_generators(A, B, {"x": [(1, "x")]})
    assert not check_hom(h)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_conjugating_by_random_unit(seed):
    rng = random.Random(seed)
    B = random_algebra(rng, F5)
    u = [F5.random(rng) for _ in range(B.dim)]
    for i in range(B.n):
        u[B.index[(i, ())]] = F5(rng.randrange(1, 5))
    alpha = AlgebraHom.identity(B)
    r = are_conjugate(alpha, alpha.conjugate(u))
    assert r.status is ConjugacyStatus.CONJUGATE


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_conjugacy_is_symmetric_and_transitive(seed):
    rng = random.Random(seed)
    B = random_algebra(rng, F5)

    def unit():
        u = [F5.random(rng) for _ in range(B.dim)]
        for i in range(B.n):
            u[B.index[(i, ())]] = F5(rng.randrange(1, 5))
        return u

    a = AlgebraHom.identity(B)
    b = a.conjugate(unit())
    c = b.conjugate(unit())
    assert are_conjugate(b, a)
    assert are_conjugate(a, c)
