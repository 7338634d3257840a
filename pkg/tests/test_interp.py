import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dual_numbers, random_module
from purity_lab.algcore import FiniteAlgebra, FModule, HomSpace, direct_sum, iso_test, lattice_sum
from purity_lab.errors import DimensionError, InputError, ValidationFailure
from purity_lab.exactlin import ResidueRing
from purity_lab.interp import (
    InterpSpec,
    apply_morphism,
    apply_object,
    fullness_check,
    identity_spec,
    kernel_member,
    presentation,
    presentation_verify,
    reduction_spec,
    validate,
)
from purity_lab.ppdsl import parse

Z4 = FiniteAlgebra.scalars(ResidueRing(2, 2), "Z4")
A = dual_numbers(2, 1)


def test_identity_spec_is_valid_everywhere():
    rng = random.Random(5)
    fam = [random_module(A, rng) for _ in range(4)]
    spec = identity_spec(A)
    assert validate(spec, fam).ok
    for m in fam:
        assert iso_test(apply_object(spec, m).module, m)
    assert fullness_check(spec, fam, fam).ok


def test_reduction_spec_on_lattices(e1_family, e1):
    spec = reduction_spec(e1.Lambda)
    rep = validate(spec, e1_family)
    assert rep.ok, str(rep)
    for M in e1_family:
        im = apply_object(spec, M)
        assert iso_test(im.module, M.reduce_mod(1))
        assert not kernel_member(spec, M)


def test_broken_action_is_reported():
    phi, psi = parse("x1 = x1", Z4), parse("x1 = 0", Z4)
    partial = parse("x2 = x1 & x1*2 = 0", Z4)  # only defined on 2M
    spec = InterpSpec.build(Z4, Z4, phi, psi, [partial], "partial")
    rep = validate(spec, [FModule.regular(Z4, "Z4")])
    assert not rep.ok
    assert "Z4" in str(rep)
    with pytest.raises(ValidationFailure):
        apply_object(spec, FModule.regular(Z4, "Z4"))


def test_build_checks():
    phi, psi = parse("x1 = x1", Z4), parse("x1 = 0", Z4)
    with pytest.raises(DimensionError):
        InterpSpec.build(Z4, Z4, phi, psi, [phi])
    with pytest.raises(InputError):
        InterpSpec.build(Z4, Z4, phi, psi, [])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_functoriality_and_kernel(seed):
    rng = random.Random(seed)
    spec = InterpSpec.build(A, A, parse("x1 = x1", A), parse("E y: x1 = y*e1", A),
                            [parse(f"x2 = x1*e{j}", A, n=2) for j in range(2)], "mod t")
    m, n, k = (random_module(A, rng, max_order=16) for _ in range(3))
    im, iN, iK = (apply_object(spec, x) for x in (m, n, k))
    ident = apply_morphism(spec, im, im, HomSpace(m, m).to_matrix(HomSpace(m, m).flatten(
        tuple(tuple(int(i == j) for j in range(m.gens)) for i in range(m.gens)))))
    assert ident.is_iso() and ident.equals(ident.then(ident))
    f = HomSpace(m, n).random_map(rng)
    g = HomSpace(n, k).random_map(rng)
    lhs = apply_morphism(spec, im, iK, f.then(g).matrix)
    rhs = apply_morphism(spec, im, iN, f.matrix).then(apply_morphism(spec, iN, iK, g.matrix))
    assert lhs.equals(rhs)
    assert kernel_member(spec, m) == (im.module.order == 1)
    s = direct_sum([m, n], "m+n")
    assert apply_object(spec, s).module.order == im.module.order * iN.module.order


def test_presentation_of_reduction(e1, e1_family):
    pres = presentation(reduction_spec(e1.Lambda))
    assert presentation_verify(pres, e1_family).ok
    with pytest.raises(InputError):
        presentation(identity_spec(Z4))


def test_additivity_on_lattices(e1, e1_lattices):
    spec = reduction_spec(e1.Lambda)
    R1, R2 = e1_lattices["R1"], e1_lattices["R2"]
    s = lattice_sum([R1, R2], "R1+R2")
    both = direct_sum([apply_object(spec, R1).module, apply_object(spec, R2).module])
    assert iso_test(apply_object(spec, s).module, both)
