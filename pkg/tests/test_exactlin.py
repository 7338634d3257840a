from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import span_set
from purity_lab.errors import AmbientMismatch, ContainmentError, DimensionError, InputError
from purity_lab.exactlin import (
    ResidueRing,
    Subgroup,
    ZpLattice,
    coset_reps,
    group_invariants,
    howell,
    kernel,
    preimage,
    quotient_invariants,
    smith,
    solve,
)
from purity_lab.exactlin.padic import fmatmul, finverse, solve as zp_solve, val

RINGS = [ResidueRing(2, 2), ResidueRing(2, 3), ResidueRing(3, 2), ResidueRing(5, 1)]


@st.composite
def matrices(draw, n=None, max_rows=3):
    ring = draw(st.sampled_from(RINGS))
    n = n or draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(0, ring.q - 1), min_size=n, max_size=n), max_size=max_rows))
    return ring, n, rows


@st.composite
def subgroup_triples(draw):
    ring = draw(st.sampled_from(RINGS[:3]))
    n = draw(st.integers(1, 2))
    row = st.lists(st.integers(0, ring.q - 1), min_size=n, max_size=n)
    return [Subgroup.span(ring, n, draw(st.lists(row, max_size=2))) for _ in range(3)]


def test_residue_ring_checks():
    with pytest.raises(InputError):
        ResidueRing(4, 1)
    with pytest.raises(InputError):
        ResidueRing(2, 0)
    assert ResidueRing(3, 2).q == 9
    assert ResidueRing(2, 3).val(4) == 2


def test_howell_examples():
    z4 = ResidueRing(2, 2)
    assert howell(z4, [[2, 0], [0, 2]]).basis == ((2, 0), (0, 2))
    assert howell(z4, [[1, 1], [1, 3]]) == howell(z4, [[1, 1], [0, 2]])
    assert howell(z4, [], 2).basis == () and howell(z4, [], 2).is_zero()
    with pytest.raises(DimensionError):
        howell(z4, [])


def test_quotient_invariants_example():
    z4 = ResidueRing(2, 2)
    full = Subgroup.full(z4, 1)
    two = Subgroup.span(z4, 1, [[2]])
    assert quotient_invariants(full, two) == (2,)
    assert group_invariants(full) == (4,)
    with pytest.raises(ContainmentError):
        quotient_invariants(two, full)
    assert (full & two) == two and (two + two) == two


def test_ambient_mismatch():
    a = Subgroup.full(ResidueRing(2, 2), 1)
    with pytest.raises((AmbientMismatch, DimensionError)):
        a + Subgroup.full(ResidueRing(2, 2), 2)


@settings(max_examples=150, deadline=None)
@given(matrices(), matrices())
def test_howell_is_canonical(a, b):
    ring, n, rows = a
    _, _, other = b
    other = [[x % ring.q for x in r[:n]] + [0] * (n - len(r[:n])) for r in other]
    sa, sb = Subgroup.span(ring, n, rows), Subgroup.span(ring, n, other)
    same = span_set(rows, ring.q, n) == span_set(other, ring.q, n)
    assert (sa.basis == sb.basis) == same
    assert set(sa.elements()) == span_set(rows, ring.q, n)
    assert all(any(r) for r in sa.basis)
    assert sa.order == len(span_set(rows, ring.q, n))


@settings(max_examples=100, deadline=None)
@given(subgroup_triples())
def test_lattice_laws(t):
    a, b, c = t
    assert a + b == b + a and a & b == b & a
    assert (a + b) + c == a + (b + c) and (a & b) & c == a & (b & c)
    assert a + a == a and a & a == a
    assert a + (a & b) == a and a & (a + b) == a
    c2 = c & a  # c2 <= a
    assert c2 + (a & b) == a & (c2 + b)
    assert set((a & b).elements()) == set(a.elements()) & set(b.elements())


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_and_preimage(m):
    ring, n, rows = m
    if not rows:
        return
    c = n
    z = Subgroup.zero(ring, c)
    k = kernel(ring, rows, c)
    assert preimage(ring, rows, z, c) == k
    r = len(rows)
    import itertools

    brute = set()
    for x in itertools.product(range(ring.q), repeat=r):
        y = [sum(x[i] * rows[i][j] for i in range(r)) % ring.q for j in range(c)]
        if not any(y):
            brute.add(x)
    assert set(k.elements()) == brute


@settings(max_examples=80, deadline=None)
@given(subgroup_triples())
def test_quotient_invariants_order(t):
    a, b, _ = t
    b = a & b
    inv = quotient_invariants(a, b)
    prod = 1
    for x in inv:
        prod *= x
    assert prod == a.order // b.order
    assert len(coset_reps(a, b)) == prod


def test_smith_and_solve():
    m = [[Fraction(2), Fraction(4)], [Fraction(6), Fraction(3)]]
    s = smith(m, 2)
    assert fmatmul(fmatmul(s.U, m), s.V) == s.D
    assert s.valuations == [0, 1]
    x = zp_solve([[1, 0], [0, 2]], [3, 4], 2)
    assert x is not None and fmatmul([x], [[1, 0], [0, 2]])[0] == (3, 4)
    assert zp_solve([[2]], [1], 2) is None
    z4 = ResidueRing(2, 2)
    part, ker = solve(z4, [[1, 0], [0, 2]], [3, 2])
    assert [(part[0] * 1) % 4, (part[1] * 2) % 4] == [3, 2] and ker.order == 2
    assert solve(z4, [[2]], [1]) is None
    assert val(Fraction(12), 2) == 2
    assert fmatmul(finverse([[1, 1], [0, 2]]), [[1, 1], [0, 2]]) == ((1, 0), (0, 1))


def test_zp_lattice_basics():
    L = ZpLattice.span(2, 2, [[1, 1], [0, 2]])
    assert L.rank == 2
    assert L.contains([2, 0]) and not L.contains([1, 0])
    assert ZpLattice.full(2, 2).quotient_invariants(L) == (2,)
    assert L.reduce(1).order == 2
    assert ZpLattice.from_residue(L.reduce(3)) == L
    with pytest.raises(InputError):
        ZpLattice.span(2, 1, [[Fraction(1, 2)]])
