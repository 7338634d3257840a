import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dual_numbers, random_module
from oracles import BruteModule, brute_homs, is_iso_brute
from purity_lab.algcore import (
    FiniteAlgebra,
    FModule,
    FPModule,
    HomSpace,
    LatticeHom,
    LatticeModule,
    ModuleMap,
    annihilator_exponent,
    composition_series,
    direct_sum,
    endolength,
    ext1,
    find_iso,
    is_indecomposable,
    is_split_mono,
    iso_test,
    lattice_indecomposable,
    lattice_iso,
    lattice_sum,
    length,
    pushout,
    quotient,
    simplify,
    torsionfree_quotient,
)
from purity_lab.errors import AmbientMismatch, InputError, RingMismatch, ValidationFailure
from purity_lab.exactlin import ResidueRing, Subgroup

Z4 = FiniteAlgebra.scalars(ResidueRing(2, 2), "Z4")
Z8 = FiniteAlgebra.scalars(ResidueRing(2, 3), "Z8")


def cyclic(alg, order, q):
    return FModule.build(alg, 1, [[[1]]], [[order]] if order != q else [], f"Z{order}")


def test_algebra_laws_and_radical():
    A = dual_numbers(2, 1)
    A.check_laws()
    assert A.radical().order == 2
    with pytest.raises(ValidationFailure):
        FiniteAlgebra.build(ResidueRing(2, 1), 2, {(0, 0): (1, 0), (1, 1): (1, 1), (0, 1): (0, 1), (1, 0): (1, 0)}, (1, 0))


def test_hom_space_examples():
    m, n = FModule.regular(Z4, "Z4"), cyclic(Z4, 2, 4)
    assert HomSpace(m, n).size == 2
    assert HomSpace(m, m).contains(((1,),))
    assert HomSpace(m, FModule.zero(Z4)).size == 1
    with pytest.raises((RingMismatch, AmbientMismatch)):
        HomSpace(m, FModule.regular(Z8))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_space_matches_enumeration(seed):
    rng = random.Random(seed)
    alg = rng.choice([Z4, dual_numbers(2, 2), dual_numbers(3, 1)])
    m, n = random_module(alg, rng, max_order=32), random_module(alg, rng, max_order=32)
    assert HomSpace(m, n).size == len(brute_homs(BruteModule(m), BruteModule(n)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_iso_test_is_consistent(seed):
    rng = random.Random(seed)
    alg = rng.choice([Z4, dual_numbers(2, 2)])
    m, n = random_module(alg, rng, max_order=32), random_module(alg, rng, max_order=32)
    got = iso_test(m, n)
    assert got == is_iso_brute(BruteModule(m), BruteModule(n))
    assert iso_test(m, m)
    if got:
        assert m.invariants() == n.invariants()
        f = find_iso(m, n)
        assert f is not None and f.is_iso()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_endolength_independent_of_search_order(seed):
    rng = random.Random(seed)
    m = random_module(rng.choice([Z8, dual_numbers(2, 2)]), rng, max_order=64)
    base = endolength(m)
    assert endolength(m, seed=seed) == base
    chain = composition_series(m)
    assert len(chain) == base + 1
    assert all(a < b for a, b in zip(chain, chain[1:]))
    assert length(m) >= base


def test_endolength_and_length_examples():
    assert endolength(FModule.regular(Z8)) == 3
    assert endolength(FModule.zero(Z4)) == 0
    m = direct_sum([FModule.regular(Z4), cyclic(Z4, 2, 4)], "Z4+Z2")
    assert endolength(m) == 3  # 0 < <(2,0)> < socle < M
    assert length(m) == 3


def test_indecomposable_and_split_mono():
    m = FModule.regular(Z4)
    assert is_indecomposable(m)
    s = direct_sum([m, m], "Z4^2")
    assert not is_indecomposable(s)
    inc = ModuleMap.build(m, s, [[1, 0]])
    assert is_split_mono(inc)
    two = ModuleMap.build(m, m, [[2]])
    assert not is_split_mono(two)


def test_quotient_simplify_pushout():
    m = FModule.regular(Z4)
    q = quotient(m, Subgroup.span(m.ring, 1, [[2]]))
    assert q.module.order == 2
    s = simplify(direct_sum([cyclic(Z4, 2, 4), cyclic(Z4, 4, 4)]))
    assert s.module.order == 8 and s.module.invariants() == (2, 4)
    two = ModuleMap.build(m, m, [[2]])
    po = pushout(two, two)
    assert po.module.order == 8


def test_lattices_over_e1(e1_lattices):
    L, R1, R2 = e1_lattices["Lambda"], e1_lattices["R1"], e1_lattices["R2"]
    assert LatticeHom(L, L).rank == 2
    assert not lattice_iso(R1, R2)
    assert lattice_iso(R1, R1)
    assert lattice_indecomposable(L) and lattice_indecomposable(R1)
    G = lattice_sum([R1, R2], "Gamma")
    assert not lattice_indecomposable(G)
    with pytest.raises(ValidationFailure):
        LatticeModule.build(L.order, 1, [[[1]], [[Fraction(1, 2)]]], "bad")


def test_ext_groups(e1_lattices):
    L, R1, R2 = e1_lattices["Lambda"], e1_lattices["R1"], e1_lattices["R2"]
    for M in e1_lattices.values():
        assert ext1(L, M).order == 1
    assert annihilator_exponent(L, L) == 0
    assert ext1(R1, R2).order == 2
    assert annihilator_exponent(R1, R2) <= 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduction_cardinality(e1_lattices, k):
    for M in e1_lattices.values():
        assert M.reduce_mod(k).order == 2 ** (k * M.rank)


def test_torsionfree_quotient(e1):
    order = e1.Lambda
    # Lambda with an extra torsion generator killed by 2
    c = FPModule.build(order, 3, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 2, 0], [0, 0, 0]]], [[0, 0, 2]])
    tq = torsionfree_quotient(c)
    assert tq.lattice.rank == 2
    assert lattice_iso(tq.lattice, LatticeModule.regular(order))
    with pytest.raises(InputError):
        LatticeModule.build(order, 1, [[[1]]], "short")
