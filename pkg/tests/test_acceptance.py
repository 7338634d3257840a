"""The ten acceptance criteria, one test each.

A per-criterion PASS/FAIL line is printed in the terminal summary
(see conftest.py).  Run with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction


from conftest import dual_numbers, random_module
from oracles import BruteModule, apply_images, brute_homs, is_iso_brute, pp_solutions, span_set
from purity_lab.algcore import FiniteAlgebra, FModule, HomSpace, LatticeHom, direct_sum
from purity_lab.exactlin import ResidueRing, ZpLattice
from purity_lab.interp import kernel_member, presentation, presentation_verify, reduction_spec
from purity_lab.latdim import FiniteLattice, MINUS_ONE, UNDEFINED, Ordinal, bounds_eval, breadth, ldim, mdim, TWO_ELEMENT
from purity_lab.maranda import indec_transfer_check, k0_family, maranda_iso_check, pseudoendolength
from purity_lab.ppdsl import PointedModule, PpFormula, chi_alpha, evaluate, solution_elements
from purity_lab.rrfun import (
    F_as_ppspec,
    TripleModule,
    apply_F,
    apply_F_morphism,
    enumerate_D_triples,
    fullness,
    gamma_closure,
    in_D_class,
    realize_triple,
    route_agreement,
    triple_text,
)
from purity_lab.zgtop import cb_ranks, cb_table_mismatches, closure, random_subset, toy_space


# ------------------------------------------------------------------ 1


def test_criterion_1_pp_evaluation_matches_brute_force():
    rng = random.Random(20240601)
    algs = [FiniteAlgebra.scalars(ResidueRing(2, 2), "Z4"), FiniteAlgebra.scalars(ResidueRing(2, 3), "Z8"),
            FiniteAlgebra.scalars(ResidueRing(3, 2), "Z9"), dual_numbers(2, 2), dual_numbers(2, 3),
            dual_numbers(3, 2)]
    start = time.perf_counter()
    checked = nontrivial = 0
    while checked < 500:
        alg = rng.choice(algs)
        m = random_module(alg, rng)
        n, k = rng.randint(1, 2), rng.randint(0, 2)
        if m.order ** (n + k) > 1 << 14:  # well inside the 2^20 ambient bound, keeps the oracle fast
            continue
        cols = [[tuple(rng.randrange(alg.q) for _ in range(alg.dim)) for _ in range(n + k)]
                for _ in range(rng.randint(1, 3))]
        phi = PpFormula.make(alg, n, k, cols)
        bm = BruteModule(m)
        expected = pp_solutions(phi, bm)
        S = evaluate(phi, m)
        for xs in itertools.product(bm.elements(), repeat=n):
            assert S.contains(tuple(x for t in xs for x in t)) == (xs in expected), (phi, m)
        got = {tuple(bm.canon(v[i * m.gens:(i + 1) * m.gens]) for i in range(n)) for v in solution_elements(phi, m)}
        assert got == expected
        checked += 1
        nontrivial += 1 < len(expected) < len(bm.elements()) ** n
    assert nontrivial > 50
    assert time.perf_counter() - start < 60


# ------------------------------------------------------------------ 2


def _pool(e1_lattices, k):
    mods = [l.reduce_mod(k, f"{name}/p^{k}") for name, l in e1_lattices.items()]
    return mods + [direct_sum(mods[1:], f"R1+R2/p^{k}")]


def test_criterion_2_chi_alpha_matches_enumeration(e1_lattices):
    Z4 = FiniteAlgebra.scalars(ResidueRing(2, 2), "Z4")
    pools = [
        [FModule.regular(Z4, "Z4"), FModule.build(Z4, 1, [[[1]]], [[2]], "Z2"),
         FModule.build(Z4, 2, [[[1, 0], [0, 1]]], [[0, 2]], "Z4+Z2")],
        _pool(e1_lattices, 1),
        _pool(e1_lattices, 2),
    ]
    rng = random.Random(7)
    done = nontrivial = 0
    while done < 60:
        pool = rng.choice(pools)
        A, B, L, N = (rng.choice(pool) for _ in range(4))
        if any(HomSpace(x, y).size > 1 << 12 for x, y in [(A, B), (A, L), (L, N), (B, N)]):
            continue
        r = random.Random(rng.random())
        delta, alpha = HomSpace(A, B).random_map(r), HomSpace(A, L).random_map(r)
        pl = PointedModule(L, tuple(L.generators()))
        f = chi_alpha(delta, alpha, pl)
        bA, bB, bL, bN = (BruteModule(x) for x in (A, B, L, N))
        got = {tuple(bN.canon(v[i * N.gens:(i + 1) * N.gens]) for i in range(len(pl.tuple)))
               for v in solution_elements(f, N)}
        betas = brute_homs(bB, bN)
        expected = set()
        for eps in brute_homs(bL, bN):
            lhs = [apply_images(bL, bN, eps, row) for row in alpha.matrix]
            if any(all(apply_images(bB, bN, beta, d) == l for d, l in zip(delta.matrix, lhs)) for beta in betas):
                expected.add(tuple(apply_images(bL, bN, eps, c) for c in pl.tuple))
        assert got == expected
        done += 1
        nontrivial += len(expected) > 1
    assert nontrivial >= 10


# ------------------------------------------------------------------ 3


def test_criterion_3_rr_fullness_exhaustive(D, e1_family):
    assert len(e1_family) == 3
    images = {m.name: apply_F(D, m) for m in e1_family}
    pairs = 0
    for l, m in itertools.product(e1_family, repeat=2):
        fl, fm = images[l.name], images[m.name]
        X, Y = fl.triple.to_D_module(D), fm.triple.to_D_module(D)
        bX, bY = BruteModule(X), BruteModule(Y)
        all_maps = {tuple(bY.canon(w) for w in imgs) for imgs in brute_homs(bX, bY)}
        basis = LatticeHom(l, m).basis()
        q = D.algebra.q
        reached = set()
        for coeffs in itertools.product(range(q), repeat=len(basis)):
            g = [[sum(Fraction(c) * b[i][j] for c, b in zip(coeffs, basis)) for j in range(m.rank)]
                 for i in range(l.rank)]
            Fg = apply_F_morphism(D, fl, fm, g)
            reached.add(tuple(bY.canon(row) for row in Fg.matrix))
        assert reached == all_maps, (l.name, m.name)
        pairs += 1
    assert pairs == 9
    assert fullness(D, e1_family, e1_family).ok


# ------------------------------------------------------------------ 4


def test_criterion_4_realization_round_trip(D):
    triples = enumerate_D_triples(D)
    assert len(triples) == 3
    assert sorted(triple_text(D, T) for T in triples) == ["(1 | 0,1 | [1])", "(1 | 1,0 | [1])", "(1 | 1,1 | [1;1])"]
    for T in triples:
        r = realize_triple(D, T)
        assert r.verified is True
        FM = apply_F(D, r.lattice)
        assert is_iso_brute(BruteModule(FM.triple.to_D_module(D)), BruteModule(T.to_D_module(D)))


# ------------------------------------------------------------------ 5


def test_criterion_5_route_agreement(D, e1_datum, e1_family, e1):
    spec = F_as_ppspec(D)
    family = e1_family + [e1.gamma_lattice()]
    assert route_agreement(D, family, spec).ok
    n, p = e1_datum.n, e1_datum.p
    assert (e1_datum.n, e1_datum.m) == (1, 1)
    for M in family:
        r = M.rank
        closure_ = gamma_closure(e1_datum, M)
        # phi picks out p^n M in the first coordinate and p^n M Gamma in the second
        first = [tuple(Fraction(p**n) * int(i == j) for j in range(r)) + (0,) * r for i in range(r)]
        scale = Fraction(p**n, p**e1_datum.m)
        second = [(0,) * r + tuple(scale * x for x in w) for w in closure_.W.basis]
        assert evaluate(spec.pair.phi, M) == ZpLattice.span(p, 2 * r, first + second), M.name


# ------------------------------------------------------------------ 6


def _brute_endolength(m: FModule) -> int:
    """Longest chain of End(m)-stable subgroups, all found by enumeration."""
    bm = BruteModule(m)
    els = bm.elements()
    ends = brute_homs(bm, bm)
    subs = set()
    for a, b in itertools.combinations_with_replacement(els, 2):
        S = frozenset(bm.canon(v) for v in span_set([a, b] + [r for r in bm.rel], m.q, m.gens))
        if all(apply_images(bm, bm, e, v) in S for e in ends for v in S):
            subs.add(S)
    subs = sorted(subs, key=len)
    depth = {}
    for S in subs:
        depth[S] = max((depth[T] + 1 for T in depth if T < S), default=0)
    return max(depth.values())


def test_criterion_6_maranda_suite(e1_family, e1_lattices):
    k0 = k0_family(e1_family)
    assert k0 <= 1
    for k in (k0 + 1, k0 + 2):
        for a, b in itertools.product(e1_family, repeat=2):
            c = maranda_iso_check(a, b, k, k0)
            assert c.in_range and c.agree
            assert c.reduced_iso == is_iso_brute(BruteModule(a.reduce_mod(k)), BruteModule(b.reduce_mod(k)))
        for m in e1_family:
            t = indec_transfer_check(m, k, k0)
            assert t.applicable and t.reduction_indecomposable
    for m in e1_family:
        pe = pseudoendolength(m, k0 + 1, k0)
        assert pe.integral
        assert pe.endolengths[0] == _brute_endolength(m.reduce_mod(k0 + 1))
    assert pseudoendolength(e1_lattices["R1"], k0 + 1, k0).value == 1


# ------------------------------------------------------------------ 7


def test_criterion_7_presentation_lemma(D, e1):
    family = e1.family()
    assert presentation_verify(presentation(reduction_spec(e1.Lambda)), family).ok
    assert presentation_verify(presentation(F_as_ppspec(D)), family).ok


# ------------------------------------------------------------------ 8


def _lattices_up_to(n_max: int):
    """Every lattice with at most n_max elements (with repeats), from naturally labelled posets."""

    def posets(k):
        if k == 0:
            yield []
            return
        for P in posets(k - 1):
            # new maximal element whose strict down-set is any down-closed subset
            for bits in range(1 << (k - 1)):
                down = {i for i in range(k - 1) if bits >> i & 1}
                if all(j in down for i in down for j in P[i]):
                    yield P + [frozenset(down)]

    for inner in range(0, n_max - 1):
        for P in posets(inner):
            n = inner + 2
            le = [[False] * n for _ in range(n)]
            for i in range(n):
                le[0][i] = le[i][n - 1] = le[i][i] = True
            for i, down in enumerate(P):
                for j in down:
                    le[j + 1][i + 1] = True
            ok = True
            for a, b in itertools.combinations(range(n), 2):
                ubs = [c for c in range(n) if le[a][c] and le[b][c]]
                least = [c for c in ubs if all(le[c][d] for d in ubs)]
                if len(least) != 1:
                    ok = False
                    break
            if ok:
                yield FiniteLattice([str(i) for i in range(n)], le)


def test_criterion_8_lattice_dimensions_and_ordinals():
    assert ldim(FiniteLattice.singleton(), TWO_ELEMENT) == MINUS_ONE
    count = 0
    sizes = set()
    for L in _lattices_up_to(8):
        assert mdim(L) == Ordinal.of(0)
        assert breadth(L) == Ordinal.of(0)
        count += 1
        sizes.add(L.n)
    assert sizes == set(range(2, 9))
    assert count > 222  # at least one labelling of each of the 222 lattices on 8 elements
    assert bounds_eval(2, 0) == (Ordinal.of(2), Ordinal.of(3))
    lo, hi = bounds_eval(UNDEFINED, 0)
    assert lo.is_undefined and hi.is_undefined


# ------------------------------------------------------------------ 9


def test_criterion_9_ziegler_closure_and_cb_ranks():
    start = time.perf_counter()
    rng = random.Random(99)
    shapes = [((1,),), ((2,),), ((3,),), ((1, 2),), ((1,), (2,)), ((1, 1, 1),), ((3,), (2,)), ((1,), (1,), (3,))]
    checked = 0
    for shape in shapes:
        sp = toy_space(shape, exceptional=rng.randint(0, 2), seed=rng.random())
        for _ in range(30):
            A = random_subset(sp, rng)
            B = A | random_subset(sp, rng)
            cA, cB = closure(sp, A), closure(sp, B)
            assert A <= cA  # extensive
            assert cA <= cB  # monotone
            assert closure(sp, cA) == cA  # idempotent
            checked += 1
        assert cb_table_mismatches(sp) == []
        ranks = cb_ranks(sp)
        for key, r in ranks.items():
            kind = key[0]
            if kind == "lat" or kind == "exc":
                assert r == 0
            elif kind in ("prufer", "adic"):
                assert r == 1
            elif kind == "generic":
                assert r == 2
        assert all(ranks[("div", f"Q{i}")] == 3 for i in range(1, len(shape) + 1))
    assert checked >= 200
    assert time.perf_counter() - start < 30


# ------------------------------------------------------------------ 10


def test_criterion_10_negative_controls(D, e1_family, e1):
    A, G = D.lam.algebra, D.gam.algebra
    U = FModule.regular(A, "U")
    S1 = FModule.build(G, 1, [[[1]], [[0]]], name="S1")
    zero_map = TripleModule(U, S1, ((0,),), "not mono")
    zero_map.check(D)
    rep = in_D_class(D, zero_map)
    assert not rep.mono and rep.agree and not rep
    no_gen = TripleModule(FModule.zero(A, "0"), S1, (), "not generating")
    rep = in_D_class(D, no_gen)
    assert rep.mono and not rep.generates and rep.agree and not rep
    both = TripleModule(U, direct_sum([S1, S1], "S1+S1"), ((1, 1),), "one generator for two")
    both.check(D)
    rep = in_D_class(D, both)
    assert rep.mono and not rep.generates and not rep
    spec = F_as_ppspec(D)
    for M in e1_family + [e1.gamma_lattice()]:
        assert M.rank > 0
        assert kernel_member(spec, M) is False
