import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purity_lab.errors import InputError
from purity_lab.latdim import (
    CHAIN,
    MINUS_ONE,
    OMEGA,
    ONE,
    UNDEFINED,
    ZERO,
    FiniteLattice,
    bounds_eval,
    breadth,
    congruence_quotient,
    congruences,
    custom_class,
    ldim,
    mdim,
    ordinal_sum,
    ordinal_sup,
    parse_ordinal,
)
from purity_lab.latdim.ordinal import Ordinal

SMALL = {
    "singleton": FiniteLattice.singleton(),
    "chain3": FiniteLattice.chain(3),
    "B2": FiniteLattice.boolean(2),
    "B3": FiniteLattice.boolean(3),
    "M3": FiniteLattice.diamond(),
    "N5": FiniteLattice.pentagon(),
}


def test_congruence_counts():
    assert len(congruences(FiniteLattice.boolean(2))) == 4
    assert len(congruences(FiniteLattice.pentagon())) == 5
    # M3 is simple
    assert len(congruences(FiniteLattice.diamond())) == 2
    assert len(congruences(FiniteLattice.chain(2))) == 4


def test_m3_collapses_from_one_pair():
    M = FiniteLattice.diamond()
    a = next(i for i in range(M.n) if i not in (M.bottom, M.top))
    assert congruence_quotient(M, [(M.bottom, a)]).lattice.is_trivial()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_quotient_projection_is_homomorphism(name):
    L = SMALL[name]
    for blocks in congruences(L):
        pairs = [(b[0], x) for b in blocks for x in b[1:]]
        q = congruence_quotient(L, pairs)
        Q, pr = q.lattice, q.projection
        for i, j in itertools.product(range(L.n), repeat=2):
            assert pr[L.join(i, j)] == Q.join(pr[i], pr[j])
            assert pr[L.meet(i, j)] == Q.meet(pr[i], pr[j])


def test_dimension_examples():
    assert ldim(FiniteLattice.singleton(), CHAIN) == MINUS_ONE
    assert mdim(FiniteLattice.chain(5)) == ZERO
    assert breadth(FiniteLattice.boolean(3)) == ZERO
    assert mdim(FiniteLattice.diamond()) == ZERO
    never = custom_class("never", lambda L: False)
    assert ldim(FiniteLattice.chain(2), never) == UNDEFINED


@pytest.mark.parametrize("name", sorted(SMALL))
def test_ldim_monotone_on_intervals(name):
    L = SMALL[name]
    d = mdim(L)
    for a, b in L.intervals():
        assert not d < mdim(L.interval(a, b))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_ldim_monotone_on_quotients(name):
    L = SMALL[name]
    d = breadth(L)
    for blocks in congruences(L):
        pairs = [(b[0], x) for b in blocks for x in b[1:]]
        assert not d < breadth(congruence_quotient(L, pairs).lattice)


# ordinals


def finite_or_small():
    nat = st.integers(0, 5)
    return st.builds(
        lambda a, b, c: parse_ordinal(f"w^2*{a}+w*{b}+{c}" if a else (f"w*{b}+{c}" if b else str(c))),
        nat, nat, nat)


@given(finite_or_small(), finite_or_small(), finite_or_small())
@settings(max_examples=200, deadline=None)
def test_sum_associative(a, b, c):
    assert ordinal_sum(ordinal_sum(a, b), c) == ordinal_sum(a, ordinal_sum(b, c))


@given(finite_or_small(), finite_or_small())
@settings(max_examples=200, deadline=None)
def test_sum_monotone_and_sup(a, b):
    s = ordinal_sum(a, b)
    assert not s < a and not s < b
    m = ordinal_sup([a, b])
    assert m in (a, b) and not m < a and not m < b


@given(finite_or_small())
@settings(max_examples=100, deadline=None)
def test_parse_round_trip(a):
    assert parse_ordinal(str(a)) == a


def test_ordinal_basics():
    assert ordinal_sum(OMEGA, ONE) != ordinal_sum(ONE, OMEGA)
    assert ordinal_sum(ONE, OMEGA) == OMEGA
    assert ordinal_sup([]) == MINUS_ONE
    assert ordinal_sup([1, UNDEFINED]) == UNDEFINED
    assert ordinal_sum(MINUS_ONE, 3) == Ordinal.of(2)
    assert ordinal_sum(MINUS_ONE, OMEGA) == OMEGA
    assert MINUS_ONE < ZERO
    assert str(parse_ordinal("w^(w+1)*2+3")) == "w^(w+1)*2+3"
    with pytest.raises(InputError):
        parse_ordinal("w^")
    with pytest.raises(InputError):
        ordinal_sum(OMEGA, MINUS_ONE)
    with pytest.raises(InputError):
        UNDEFINED < ONE


def test_bounds_eval():
    assert tuple(map(str, bounds_eval(2, 0))) == ("2", "3")
    assert tuple(map(str, bounds_eval(-1, -1))) == ("-1", "-1")
    assert tuple(map(str, bounds_eval("w", 2))) == ("w", "w+3")
    assert bounds_eval("undefined", 1) == (UNDEFINED, UNDEFINED)
