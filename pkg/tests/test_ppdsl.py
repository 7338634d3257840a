import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dual_numbers, random_module
from oracles import BruteModule, apply_images, brute_homs, pp_solutions
from purity_lab.algcore import FiniteAlgebra, FModule
from purity_lab.exactlin import ResidueRing
from purity_lab.ppdsl import (
    compare_with_invariant,
    PointedModule,
    PpFormula,
    PpPair,
    PpSyntaxError,
    equivalent,
    evaluate,
    free_realization,
    generates,
    leq,
    parse,
    pptype_generator,
    solution_elements,
    to_text,
)
from purity_lab.errors import DimensionError, InputError, RingMismatch

Z4 = FiniteAlgebra.scalars(ResidueRing(2, 2), "Z4")
ALGS = [Z4, FiniteAlgebra.scalars(ResidueRing(3, 2), "Z9"), dual_numbers(2, 2)]


def random_formula(alg, rng, n=None):
    n = n or rng.randint(1, 2)
    k = rng.randint(0, 2)
    cols = [[tuple(rng.randrange(alg.q) for _ in range(alg.dim)) for _ in range(n + k)] for _ in range(rng.randint(1, 3))]
    return PpFormula.make(alg, n, k, cols)


def test_parse_examples():
    phi = parse("E y : x1 = y * 2", Z4)
    assert (phi.n, phi.m) == (1, 1)
    M = FModule.regular(Z4, "M")
    assert solution_elements(phi, M) == [(0,), (2,)]
    a = parse("(2 | x1) & (x1 * 2 = 0)", Z4)
    b = parse("x1 * 2 = 0 & (E y: x1 = y*2)", Z4)
    assert solution_elements(a, M) == solution_elements(b, M)
    assert evaluate(parse("x1 = x1", Z4), M) == M.full()
    assert parse("x = x", Z4).n == 1


def test_parse_errors():
    with pytest.raises(PpSyntaxError) as err:
        parse("x1 = = 2", Z4)
    assert err.value.pos == 5
    with pytest.raises(InputError):
        parse("x1 = y*q", Z4)
    with pytest.raises(PpSyntaxError):
        parse("x1 = 0 )", Z4)
    with pytest.raises(InputError):
        parse("x1 = x2", Z4, n=1)


def test_pair_and_arity_checks():
    a, b = parse("x1 = x1", Z4), parse("x1 = x2", Z4)
    with pytest.raises(DimensionError):
        PpPair(a, b)
    with pytest.raises(RingMismatch):
        leq(a, parse("x1 = x1", ALGS[1]), [FModule.regular(Z4)])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_print_parse_round_trip(seed):
    rng = random.Random(seed)
    alg = rng.choice(ALGS)
    phi = random_formula(alg, rng)
    again = parse(to_text(phi), alg, n=phi.n)
    assert again == phi or all(evaluate(again, m) == evaluate(phi, m) for m in [random_module(alg, rng) for _ in range(3)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_meet_and_join_are_intersection_and_sum(seed):
    rng = random.Random(seed)
    alg = rng.choice(ALGS)
    m = random_module(alg, rng, max_order=27)
    phi = random_formula(alg, rng, n=1)
    psi = random_formula(alg, rng, n=1)
    assert evaluate(phi & psi, m) == evaluate(phi, m) & evaluate(psi, m)
    assert evaluate(phi + psi, m) == evaluate(phi, m) + evaluate(psi, m)
    assert leq(phi & psi, phi, [m]).holds
    assert leq(phi, phi + psi, [m]).holds
    assert equivalent(phi, phi & phi, [m])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_solution_sets_are_functorial(seed):
    rng = random.Random(seed)
    alg = rng.choice(ALGS)
    m, n = random_module(alg, rng, max_order=16), random_module(alg, rng, max_order=16)
    phi = random_formula(alg, rng, n=1)
    bm, bn = BruteModule(m), BruteModule(n)
    target = pp_solutions(phi, bn)
    source = pp_solutions(phi, bm)
    for imgs in brute_homs(bm, bn):
        for (x,) in source:
            assert (apply_images(bm, bn, imgs, x),) in target


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_free_realization_is_universal(seed):
    rng = random.Random(seed)
    alg = rng.choice([Z4, dual_numbers(2, 1)])
    phi = random_formula(alg, rng, n=1)
    pc = free_realization(phi)
    C = pc.module
    if C.order > 64:
        return
    L = random_module(alg, rng, max_order=16)
    bC, bL = BruteModule(C), BruteModule(L)
    reached = {(apply_images(bC, bL, imgs, pc.tuple[0]),) for imgs in brute_homs(bC, bL)}
    assert reached == pp_solutions(phi, bL)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_pptype_generator_defines_orbit(seed):
    rng = random.Random(seed)
    alg = rng.choice([Z4, dual_numbers(2, 1)])
    M = random_module(alg, rng, max_order=16)
    N = random_module(alg, rng, max_order=16)
    bM, bN = BruteModule(M), BruteModule(N)
    x = rng.choice(bM.elements())
    sigma = pptype_generator(PointedModule(M, (x,)))
    orbit = {(apply_images(bM, bN, imgs, x),) for imgs in brute_homs(bM, bN)}
    assert orbit == pp_solutions(sigma, bN)


def test_generates_and_pointed_checks():
    M = FModule.regular(Z4)
    assert generates(M, [(1,)]) and not generates(M, [(2,)])
    with pytest.raises(DimensionError):
        PointedModule(M, ((1, 0),))


def test_lattice_evaluation(e1_lattices):
    L = e1_lattices["Lambda"]
    phi = parse("E y: x1 = y*2", L.order)
    lat = evaluate(phi, L)
    assert lat.rank == 2 and lat.contains([2, 0]) and not lat.contains([1, 0])
    res = leq(parse("x1 * e1 = 0", L.order), parse("x1 = x1", L.order), list(e1_lattices.values()))
    assert res.holds and res.family == ("Lambda", "R1", "R2")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_pp_subgroups_are_end_invariant(seed):
    rng = random.Random(seed)
    alg = rng.choice(ALGS)
    m = random_module(alg, rng)
    c = compare_with_invariant(m, [random_formula(alg, rng, n=1) for _ in range(3)])
    assert c.not_invariant == ()
    assert set(c.generated) <= set(c.invariant)


def test_invariant_comparison_reports_gaps(e1_lattices):
    M = FModule.regular(Z4)
    assert compare_with_invariant(M, [parse("E y: x1 = y*2", Z4)]).agree
    L2 = e1_lattices["Lambda"].reduce_mod(2)
    small = compare_with_invariant(L2, [parse("x1 = x1", L2.algebra)])
    assert not small.agree and small.missing
    with pytest.raises(DimensionError):
        compare_with_invariant(M, [parse("x1 = x2", Z4)])
