import random

import pytest
from hypothesis import given, settings, strategies as st

from ncdef.algebra import AlgebraError, BoundQuiver, Quiver, build_algebra
from ncdef.linalg import GF, QQ, Matrix
from ncdef.obstruction_example import ExampleData
from ncdef.rep import (IsoStatus, Rep, RepMap, cokernel, direct_sum, hom_space, image, is_isomorphic, kernel,
                       loewy_length_of, projective, projective_cover, radical, radical_on_map, simple, socle, top)
from ncdef.samples import nakayama_algebra, random_algebra, random_hom, random_module, submodule_generated

F5 = GF(5)


@pytest.fixture(scope="module")
def D():
    return ExampleData(QQ)


def test_convention_projective_of_linear_quiver(D):
    # the vertex-1 projective of B is uniserial with all three vertices
    P1 = projective(D.B, 0)
    assert P1.dims == (1, 1, 1)
    assert top(P1)[0].dims == (1, 0, 0)
    # over A (arrow 3 -> 2 only) the vertex-1 simple is projective
    assert projective(D.A, 0).dims == (1, 0, 0)


def test_simples(D):
    assert simple(D.B.bound, 0).dims == (1, 0, 0)
    assert D.L2 == simple(D.Z, 1)
    for i in range(3):
        for j in range(3):
            assert hom_space(simple(D.Z, i), simple(D.Z, j)).dim == (i == j)


def test_semisimple_projectives():
    A = build_algebra(BoundQuiver.build(Quiver.build([1, 2, 3], []), [], QQ))
    for i in range(3):
        assert projective(A, i) == simple(A.bound, i)


def test_end_N_is_dual_numbers(D):
    H = hom_space(D.N, D.N)
    assert H.dim == 2
    assert D.bac @ D.bac == RepMap.zero(D.N, D.N)
    assert not D.bac.is_zero()
    assert H.coords(D.bac) is not None


def test_hom_from_projective_is_component():
    rng = random.Random(5)
    A = nakayama_algebra(F5, 3)
    for _ in range(10):
        m = random_module(A, rng)
        for i in range(A.n):
            assert hom_space(projective(A, i), m).dim == m.dims[i]


def test_kernel_image_cokernel_basics(D):
    idN = RepMap.identity(D.N)
    assert kernel(idN)[0].is_zero() and image(idN)[0].dims == D.N.dims
    zero = RepMap.zero(D.N, D.M)
    assert kernel(zero)[0].dims == D.N.dims and cokernel(zero)[0].dims == D.M.dims


def test_cover_of_simple_has_projective_kernel(D):
    P1 = projective(D.B, 0)
    pc = projective_cover(simple(D.B.bound, 0), D.B)
    assert pc.rep.dims == P1.dims
    K, _ = kernel(pc.cover)
    assert is_isomorphic(K, projective(D.B, 1)).status is IsoStatus.ISOMORPHIC


def test_projective_cover_needs_finite_algebra(D):
    with pytest.raises(AlgebraError):
        projective_cover(D.N)


def test_radical_examples(D):
    P1 = projective(D.B, 0)
    r, _ = radical(P1)
    assert is_isomorphic(r, projective(D.B, 1))
    assert radical(D.N)[0].dims == (0, 1, 1)
    assert radical(D.L1)[0].is_zero()
    assert loewy_length_of(P1) == 2
    assert loewy_length_of(D.N) == 2
    assert loewy_length_of(D.L3) == 0


def test_radical_on_map_examples(D):
    P1 = projective(D.B, 0)
    cover = projective_cover(simple(D.B.bound, 0), D.B).cover
    rf = radical_on_map(cover)
    assert rf.source.dims == (0, 1, 1) and rf.target.is_zero()
    rid = radical_on_map(RepMap.identity(D.N))
    assert rid == RepMap.identity(rid.source)
    assert radical_on_map(RepMap.identity(P1)).is_iso()


def test_socle_and_top(D):
    s, _ = socle(D.N)
    assert s.dims == (0, 0, 1)
    t, _ = top(D.N)
    assert t.dims == (0, 0, 1)


def test_isomorphism_examples():
    A = nakayama_algebra(QQ, 2)
    S1, S2 = simple(A.bound, 0), simple(A.bound, 1)
    assert is_isomorphic(direct_sum([S1, S2]), direct_sum([S2, S1]))
    assert is_isomorphic(S1, S1).status is IsoStatus.ISOMORPHIC
    assert is_isomorphic(direct_sum([S1, S2]), projective(A, 1)).status is IsoStatus.NOT_ISOMORPHIC


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rank_nullity_through_kernel_image_cokernel(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, F5)
    m, n = random_module(A, rng), random_module(A, rng)
    g = random_hom(m, n, rng)
    K, I, C = kernel(g)[0], image(g)[0], cokernel(g)[0]
    for v in range(A.n):
        assert m.dims[v] == K.dims[v] + I.dims[v]
        assert n.dims[v] == I.dims[v] + C.dims[v]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_hom_dims_additive(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, F5)
    a, b, c = (random_module(A, rng, max_dim=5) for _ in range(3))
    assert hom_space(direct_sum([a, b]), c).dim == hom_space(a, c).dim + hom_space(b, c).dim


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cover_is_minimal(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, F5)
    m = random_module(A, rng)
    pc = projective_cover(m, A)
    assert pc.cover.is_epi()
    K, inc = kernel(pc.cover)
    r, rinc = radical(pc.rep)
    for v in range(A.n):
        both = Matrix.hstack(rinc.blocks[v], inc.blocks[v])
        assert both.rank() == r.dims[v]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_submodule_closure_is_subrep(seed):
    rng = random.Random(seed)
    A = random_algebra(rng, F5)
    m = random_module(A, rng)
    v = rng.randrange(A.n)
    if m.dims[v] == 0:
        return
    sub, inc = submodule_generated(m, [(v, [F5.random(rng) for _ in range(m.dims[v])])])
    inc.validate()
    assert inc.is_mono()
