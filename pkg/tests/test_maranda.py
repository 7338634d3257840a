from fractions import Fraction

import pytest

from purity_lab.algcore import LatticeModule, lattice_sum
from purity_lab.errors import InputError
from purity_lab.maranda import (
    indec_transfer_check,
    interval_lattice,
    k0_family,
    maranda_iso_check,
    maranda_report,
    pseudoendolength,
)


def test_k0_on_family(e1_family):
    k = k0_family(e1_family)
    assert 0 <= k <= 1
    assert k0_family([]) == 0


def test_iso_examples(e1_lattices, e1_family):
    k0 = k0_family(e1_family)
    L, R1, R2 = e1_lattices["Lambda"], e1_lattices["R1"], e1_lattices["R2"]
    for k in (k0 + 1, k0 + 2):
        c = maranda_iso_check(R1, R2, k, k0)
        assert (c.reduced_iso, c.lattice_iso) == (False, False)
        c = maranda_iso_check(L, lattice_sum([R1, R2]), k, k0)
        assert (c.reduced_iso, c.lattice_iso) == (False, False)
        assert maranda_iso_check(L, L, k, k0).agree


def test_below_threshold_makes_no_claim(e1_lattices):
    R1 = e1_lattices["R1"]
    c = maranda_iso_check(R1, R1, 1)
    assert not c.in_range and "no claim" in str(c)
    r = indec_transfer_check(R1, 1, 5)
    assert not r.applicable and r.reduction_indecomposable is None
    assert "outside" in r.note


def test_indec_transfer(e1_family):
    k0 = k0_family(e1_family)
    for M in e1_family:
        r = indec_transfer_check(M, k0 + 1, k0)
        assert r.applicable and r.reduction_indecomposable


def test_pseudoendolength_values(e1_lattices):
    assert pseudoendolength(e1_lattices["R1"], 2).value == 1
    assert pseudoendolength(LatticeModule.zero(e1_lattices["R1"].order), 1).value == 0
    with pytest.raises(InputError):
        pseudoendolength(e1_lattices["R1"], 0)


def test_pseudoendolength_not_additive_on_squares(e1_lattices):
    R1 = e1_lattices["R1"]
    a = pseudoendolength(R1, 2).value
    b = pseudoendolength(lattice_sum([R1, R1]), 2).value
    assert isinstance(b, Fraction) and b == a


def test_interval_lattice(e1_lattices):
    I1 = interval_lattice(e1_lattices["R1"], 2)
    assert I1.lattice.n == 2 and I1.lattice.height() == 1
    IL = interval_lattice(e1_lattices["Lambda"], 2)
    assert IL.lattice.n == 3 and IL.lattice.is_modular()
    assert interval_lattice(LatticeModule.zero(e1_lattices["R1"].order), 2).lattice.is_trivial()


def test_report(e1_family):
    rep = maranda_report(e1_family)
    assert rep.ok
    assert len(rep.iso_tables) == 2
    text = str(rep)
    assert "not a global bound" in text
    for name, h, pe in rep.interval_lengths:
        assert h == pe
