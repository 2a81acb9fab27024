import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_truncated_loop
from ncdef.algebra import BoundQuiver, Quiver, build_algebra
from ncdef.config import BudgetExceeded
from ncdef.deformation import (AddClass, Collection, DeformationError, EquivalenceStatus, FFStatus, LaudalFrame,
                               ListClass, Star, count_subspaces, deformations_equivalent, ex_membership,
                               ff_criterion, gabriel_associativity_check, is_simple_collection, ncdef_enumerate,
                               star_member, subspaces, verify_certificate)
from ncdef.linalg import GF, QQ, Matrix
from ncdef.obstruction_example import ExampleData
from ncdef.rep import Rep, cokernel, direct_sum, kernel, simple, zero_rep
from ncdef.samples import nakayama_algebra, one_loop, random_hom, random_module, truncated_polynomial

F2, F3, F5 = GF(2), GF(3), GF(5)


def loop_module(f, rows):
    return Rep(one_loop(f), [len(rows)], [Matrix.from_rows(f, rows)])


# simple collections -------------------------------------------------------------

def test_simple_collection_examples():
    D = ExampleData(QQ)
    assert is_simple_collection([simple(D.B.bound, i) for i in range(3)])
    r = is_simple_collection([D.L1, D.M, D.L3])
    assert not r and r.offending == (1, 2)
    assert r.hom_dims[1][2] == 1
    assert is_simple_collection([simple(one_loop(QQ), 0)])


def test_collection_rejects_zero_and_mixed_bases():
    D = ExampleData(QQ)
    with pytest.raises(DeformationError):
        Collection((D.L1, zero_rep(D.Z)))
    with pytest.raises(DeformationError):
        Collection((D.L1, simple(one_loop(QQ), 0)))


@pytest.mark.parametrize("p,d,k", [(2, 3, 1), (2, 4, 2), (3, 3, 2), (5, 2, 1), (2, 3, 0), (3, 2, 3)])
def test_subspace_enumeration_count(p, d, k):
    f = GF(p)
    subs = list(subspaces(f, d, k))
    assert len(subs) == count_subspaces(p, d, k)
    keys = {tuple(map(tuple, s)) for s in subs}
    assert len(keys) == len(subs)


# extension closure ---------------------------------------------------------------

def test_membership_of_collection_object():
    D = ExampleData(F5)
    sig = [D.L1, D.L2, D.L3]
    cert = ex_membership(D.L2, sig, 0)
    assert cert is not None and cert.depth == 1 and cert.level == 0
    assert verify_certificate(cert, sig)


def test_N_is_in_second_extension_power_of_simples():
    D = ExampleData(F5)
    sig = [D.L1, D.L2, D.L3]
    assert ex_membership(D.N, sig, 1) is None
    cert = ex_membership(D.N, sig, 2)
    assert cert is not None and cert.level == 2
    assert verify_certificate(cert, sig)


def test_search_mode_for_non_simple_collection():
    D = ExampleData(F5)
    sig = [D.L1, D.M, D.L3]
    cert = ex_membership(D.N, sig, 1)
    assert cert is not None and cert.mode == "search"
    assert verify_certificate(cert, sig)
    assert ex_membership(D.L2, sig, 3) is None


def test_foreign_composition_factor_never_member():
    D = ExampleData(F5)
    for k in range(3):
        assert ex_membership(D.M, [D.L1, D.L3], k) is None


def test_q_mode_refuses_large_hom_spaces():
    D = ExampleData(QQ)
    big = direct_sum([D.L3, D.L3])
    with pytest.raises(DeformationError):
        ex_membership(direct_sum([big, D.N]), [big, D.N], 1)


def test_gabriel_zero_class():
    A = nakayama_algebra(F2, 3)
    Z = zero_rep(A.bound)
    zero = ListClass([Z])
    prod = Star(Star(zero, zero), zero)
    assert star_member(Z, prod)
    assert not star_member(simple(A.bound, 0), prod)
    assert not star_member(simple(A.bound, 0), Star(zero, Star(zero, zero)))


def test_gabriel_powers_match_ex2():
    rng = random.Random(7)
    A = nakayama_algebra(F2, 3)
    sig = [simple(A.bound, i) for i in range(3)]
    add = AddClass(sig)
    ex1 = Star(add, add)
    for _ in range(15):
        m = random_module(A, rng, 5)
        ex2 = ex_membership(m, sig, 2) is not None
        assert star_member(m, Star(ex1, add)) == ex2
        assert star_member(m, Star(add, ex1)) == ex2


def test_gabriel_associativity_on_a3():
    rng = random.Random(8)
    A = nakayama_algebra(F2, 3)
    S = [simple(A.bound, i) for i in range(3)]
    samples = [random_module(A, rng, 5) for _ in range(20)]
    rep = gabriel_associativity_check([S[0], S[1]], [S[1], S[2]], [S[0], S[2]], samples)
    assert rep.ok and rep.samples == 20


def test_budget_is_enforced():
    D = ExampleData(F5)
    with pytest.raises(BudgetExceeded):
        ex_membership(D.N, [D.L1, D.M, D.L3], 2, budget=3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_membership_is_monotone(seed):
    rng = random.Random(seed)
    A = nakayama_algebra(F3, 3)
    sig = [simple(A.bound, i) for i in range(3)]
    m = random_module(A, rng, 6)
    for k in range(4):
        if ex_membership(m, sig, k) is not None:
            assert ex_membership(m, sig, k + 1) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_membership_monotone_in_search_mode(seed):
    rng = random.Random(seed)
    A = nakayama_algebra(F2, 3)
    P = [direct_sum([simple(A.bound, 0), simple(A.bound, 1)]), simple(A.bound, 2)]
    m = random_module(A, rng, 4)
    for k in range(3):
        if ex_membership(m, P, k) is not None:
            assert ex_membership(m, P, k + 1) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_abelianness_probe(seed):
    rng = random.Random(seed)
    A = nakayama_algebra(F3, 3)
    sig = [simple(A.bound, i) for i in range(3)]
    m, n = random_module(A, rng, 5), random_module(A, rng, 5)
    cm, cn = ex_membership(m, sig, 6), ex_membership(n, sig, 6)
    assert cm is not None and cn is not None
    g = random_hom(m, n, rng)
    bound = cm.depth + cn.depth
    for obj in (kernel(g)[0], cokernel(g)[0]):
        c = ex_membership(obj, sig, bound)
        assert c is not None and c.depth <= bound


# enumeration -----------------------------------------------------------------------

def test_semisimple_base_has_one_element():
    f = F3
    A = build_algebra(BoundQuiver.build(Quiver.build([1], []), [], f))
    e = ncdef_enumerate(A, [loop_module(f, [[1]])])
    assert e.orbit_count == 1 and e.orbit_sizes == [1]


@pytest.mark.parametrize("n,sigma", [(2, [[0]]), (3, [[0]]), (2, [[1]]), (2, [[0, 1], [0, 0]])])
def test_enumeration_matches_brute_force(n, sigma):
    raw, orbits = brute_force_truncated_loop(2, n, sigma)
    A = truncated_polynomial(F2, n)
    e = ncdef_enumerate(A, [loop_module(F2, sigma)])
    assert e.orbit_count == orbits
    assert sum(e.orbit_sizes) == e.valid_count == raw


def test_enumeration_budget():
    A = truncated_polynomial(F5, 3)
    with pytest.raises(BudgetExceeded):
        ncdef_enumerate(A, [loop_module(F5, [[0, 1], [0, 0]])], budget=10)


def test_enumeration_elements_are_valid():
    A = truncated_polynomial(F3, 2)
    e = ncdef_enumerate(A, [loop_module(F3, [[1]])])
    for d in e.elements:
        d.validate()


def test_self_equivalence():
    A = truncated_polynomial(F5, 2)
    fr = LaudalFrame(A, [loop_module(F5, [[2]])])
    d = fr.element([F5(3)])
    r = deformations_equivalent(d, d)
    assert r.status is EquivalenceStatus.EQUIVALENT


def test_distinct_parameters_not_equivalent_over_commutative_base():
    A = truncated_polynomial(F5, 2)
    fr = LaudalFrame(A, [loop_module(F5, [[2]])])
    r = deformations_equivalent(fr.element([F5(1)]), fr.element([F5(2)]))
    assert r.status is EquivalenceStatus.NOT_EQUIVALENT


# fully faithful criterion -----------------------------------------------------------

def test_ff_semisimple_base():
    A = build_algebra(BoundQuiver.build(Quiver.build([1, 2], []), [], QQ))
    fr = LaudalFrame(A, [loop_module(QQ, [[0]]), loop_module(QQ, [[1]])])
    assert ff_criterion(fr.element([]).obj).status is FFStatus.FULLY_FAITHFUL


def test_ff_jordan_deformation():
    A = truncated_polynomial(QQ, 2)
    fr = LaudalFrame(A, [loop_module(QQ, [[0]])])
    v = ff_criterion(fr.element([QQ.one]).obj)
    assert v.status is FFStatus.FULLY_FAITHFUL
    assert v.ext_ranks[(0, 0)] == (1, 1)


def test_ff_trivial_deformation_fails_ext():
    A = truncated_polynomial(QQ, 2)
    fr = LaudalFrame(A, [loop_module(QQ, [[0]])])
    v = ff_criterion(fr.element([QQ.zero]).obj)
    assert v.status is FFStatus.FAILS_EXT_INJECTIVITY


def test_ff_two_vertex_collapse():
    A = nakayama_algebra(QQ, 2)
    fr = LaudalFrame(A, [loop_module(QQ, [[0]]), loop_module(QQ, [[1]])])
    v = ff_criterion(fr.element([QQ.one] * fr.param_count).obj)
    assert v.status is FFStatus.FAILS_EXT_INJECTIVITY
    assert v.pair is not None and len(v.witness) == 1 and v.witness[0] != 0


def test_ff_hom_failure():
    A = build_algebra(BoundQuiver.build(Quiver.build([1, 2], []), [], QQ))
    fr = LaudalFrame(A, [loop_module(QQ, [[0]]), loop_module(QQ, [[0]])])
    v = ff_criterion(fr.element([]).obj)
    assert v.status is FFStatus.FAILS_HOM and v.pair == (0, 1)


def test_ff_needs_flat_input():
    from ncdef.aobjects import AObject
    from ncdef.rep import RepMap
    A = truncated_polynomial(QQ, 2)
    S = simple(one_loop(QQ), 0)
    with pytest.raises(DeformationError):
        ff_criterion(AObject(A, S.base, [S], [RepMap.zero(S, S)]))
