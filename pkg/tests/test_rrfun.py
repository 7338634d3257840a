import random

import pytest

from purity_lab.algcore import FModule, HomSpace, LatticeModule, direct_sum, iso_test, lattice_iso, lattice_sum
from purity_lab.errors import InputError, LiftFailure
from purity_lab.rrfun import (
    BaeckstroemDatum,
    F_as_ppspec,
    TripleModule,
    apply_F,
    build_D,
    gamma_closure,
    in_D_class,
    module_to_triple,
    realize_triple,
    route_agreement,
    triple_text,
)
from purity_lab.interp import validate


def test_D_dimension(D):
    assert D.algebra.dim == 5 and D.algebra.q == 2
    assert (D.dA, D.dG) == (1, 2)


def test_gamma_closure_examples(e1_datum, e1_lattices, e1):
    L, R1 = e1_lattices["Lambda"], e1_lattices["R1"]
    gc = gamma_closure(e1_datum, L)
    assert gc.lattice.rank == 2
    assert lattice_iso(gc.lattice, LatticeModule.regular(e1.Gamma))
    g1 = gamma_closure(e1_datum, R1)
    assert g1.lattice.rank == 1
    # R1 is already Gamma-stable, so p^m R1 Gamma = p^m R1
    assert g1.W.basis == ((2,),)


def test_apply_F_examples(D, e1_lattices):
    assert triple_text(D, apply_F(D, e1_lattices["Lambda"]).triple) == "(1 | 1,1 | [1;1])"
    assert triple_text(D, apply_F(D, e1_lattices["R1"]).triple) == "(1 | 1,0 | [1])"
    assert triple_text(D, apply_F(D, e1_lattices["R2"]).triple) == "(1 | 0,1 | [1])"


def test_apply_F_additive(D, e1_lattices):
    R1, L = e1_lattices["R1"], e1_lattices["Lambda"]
    s = lattice_sum([R1, L], "R1+L")
    lhs = apply_F(D, s).triple.to_D_module(D)
    rhs = direct_sum([apply_F(D, R1).triple.to_D_module(D), apply_F(D, L).triple.to_D_module(D)])
    assert iso_test(lhs, rhs)


def test_zero_lattice(D, e1):
    Z = LatticeModule.zero(e1.Lambda)
    FZ = apply_F(D, Z).triple
    assert FZ.U.order == 1 and FZ.V.order == 1
    assert realize_triple(D, FZ).lattice.rank == 0


def test_images_are_in_class_and_nonzero(D, e1_family):
    for M in e1_family:
        T = apply_F(D, M).triple
        rep = in_D_class(D, T)
        assert rep and rep.agree
        assert T.to_D_module(D).order > 1


def test_triple_module_round_trip(D):
    rng = random.Random(3)
    X = FModule.regular(D.algebra, "D")
    T = module_to_triple(D, X)
    assert iso_test(T.to_D_module(D), X)
    for _ in range(5):
        sub = HomSpace(X, X).random_map(rng).image()
        from purity_lab.algcore import quotient

        Q = quotient(X, sub).module
        assert iso_test(module_to_triple(D, Q).to_D_module(D), Q)


def test_realize_recovers_lattices(D, e1_family):
    for M in e1_family:
        r = realize_triple(D, apply_F(D, M).triple)
        assert r.verified is True
        assert lattice_iso(r.lattice, M)


def test_realize_rejects_bad_input(D, e1):
    A, G = D.lam.algebra, D.gam.algebra
    S1 = FModule.build(G, 1, [[[1]], [[0]]], name="S1")
    with pytest.raises(InputError):
        realize_triple(D, TripleModule(FModule.regular(A), S1, ((0,),), "bad"))
    b = BaeckstroemDatum.build(e1.Lambda, e1.Gamma, e1.embedding, e1.ideal, 1, 1, baeckstroem=False)
    Db = build_D(b)
    with pytest.raises(LiftFailure):
        realize_triple(Db, apply_F(Db, LatticeModule.regular(e1.Lambda)).triple)


def test_ppspec_is_valid(D, e1_family):
    spec = F_as_ppspec(D)
    assert validate(spec, e1_family).ok
    from purity_lab.ppdsl import leq

    assert leq(spec.pair.psi, spec.pair.phi, e1_family).holds
    assert route_agreement(D, e1_family, spec).ok
