import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purity_lab.errors import InputError, ValidationFailure
from purity_lab.zgtop import (
    Ray,
    TameZgSpace,
    bar_V,
    cb_rank,
    cb_table_mismatches,
    closure,
    is_closed,
    open_basis_decomposition,
    parse_point,
    parse_subset,
    random_subset,
    toy_space,
)

SPACE = toy_space(((1, 2),), exceptional=1)


def test_rays():
    r = Ray.make([1, 3], start=5)
    assert r.infinite and not r.empty
    assert r.complement().samples() and r.union(r.complement()).complement().empty
    assert Ray.make([2]).intersect(Ray.make(start=3)).empty
    assert r.without(6).infinite


def test_closure_examples():
    S = SPACE
    assert closure(S, S.empty()) == S.empty()
    finite = parse_subset(S, ["E100[1]", "E100[4]"])
    assert closure(S, finite) == finite.union(parse_subset(S, ["div:Q1"]))
    c = closure(S, parse_subset(S, ["E100[3..]"]))
    for p in ("E100[inf]", "E100^", "G1", "div:Q1"):
        assert parse_point(p) in c.points
    assert parse_point("E110[inf]") not in c.points
    assert closure(S, parse_subset(S, ["E110[inf]"])).points >= {("generic", 1), ("div", "Q1")}
    assert closure(S, parse_subset(S, ["X0"])) == parse_subset(S, ["X0", "div:Q2"])


def test_closure_without_homs():
    S = toy_space(((1,),), exceptional=0, seed=1, all_homs=False)
    S.hom_to_infinitely_many = {e: False for e in S.quasi_simples}
    S.hom_from_infinitely_many = {e: False for e in S.quasi_simples}
    c = closure(S, parse_subset(S, ["E100[1..]"]))
    assert ("prufer", "E100") not in c.points and ("generic", 1) in c.points


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_closure_operator_laws(seed):
    rng = random.Random(seed)
    S = SPACE
    A, B = random_subset(S, rng), random_subset(S, rng)
    cA, cB = closure(S, A), closure(S, B)
    assert A.issubset(cA) and closure(S, cA) == cA
    assert closure(S, A.union(B)) == cA.union(cB)
    assert is_closed(S, cA.intersect(cB))
    if A.issubset(B):
        assert cA.issubset(cB)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_open_decomposition_reassembles(seed):
    S = SPACE
    U = closure(S, random_subset(S, random.Random(seed))).complement(S)
    dec = open_basis_decomposition(S, U)
    assert dec.reassemble() == U
    for v in dec.neighbourhoods.values():
        assert v.issubset(U)


def test_not_open_rejected():
    with pytest.raises(InputError):
        open_basis_decomposition(SPACE, parse_subset(SPACE, ["div:Q1"]))


def test_bar_V():
    S = SPACE
    V = closure(S, parse_subset(S, ["E100[2]"]), divisible_rule=False)
    W = closure(S, parse_subset(S, ["E100[2]", "X0"]), divisible_rule=False)
    bV, bW = bar_V(S, V), bar_V(S, W)
    assert is_closed(S, bV) and bV.issubset(bW)
    assert ("div", "Q1") in bV.points
    with pytest.raises(InputError):
        bar_V(S, parse_subset(S, ["div:Q1"]))
    with pytest.raises(InputError):
        bar_V(S, parse_subset(S, ["E100[1..]"]))


def test_cb_ranks():
    S = SPACE
    assert cb_table_mismatches(S) == []
    assert cb_rank(S, ("lat", "E100", 7)) == 0
    assert cb_rank(S, ("prufer", "E110")) == 1
    assert cb_rank(S, ("generic", 1)) == 2
    assert cb_rank(S, ("div", "Q1")) == 3
    assert cb_rank(S, ("exc", "X0")) == 0
    assert cb_rank(S, ("div", "Q2")) == 1


def test_finite_type_only():
    S = TameZgSpace.build(0, [], {"X0": 1, "X1": 1}, ["Q"], hull={"X0": ["Q"], "X1": ["Q"]})
    kinds = {p[0] for p in S.universe().sample_points()}
    assert kinds == {"exc", "div"}
    assert cb_table_mismatches(S) == []


def test_parsing():
    assert parse_point("E[3]") == ("lat", "E", 3)
    assert parse_point("E[inf]") == ("prufer", "E")
    assert parse_point("E^") == ("adic", "E")
    assert parse_point("G2") == ("generic", 2)
    assert parse_point("div:S") == ("div", "S")
    assert parse_point("P0") == ("exc", "P0")
    with pytest.raises(InputError):
        parse_point("E[x]")
    with pytest.raises(InputError):
        parse_subset(SPACE, ["Nope[1]"])


def test_build_validation():
    with pytest.raises((InputError, ValidationFailure)):
        TameZgSpace.build(1, [("T", 2, ["E"])])
    with pytest.raises((InputError, ValidationFailure)):
        TameZgSpace.build(1, [("T", 1, ["E"])], {"X": 5})
