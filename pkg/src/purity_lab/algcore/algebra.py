"""Finite algebras over Z/p^N and p-adic orders given by integral structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import BudgetExceeded, DEFAULT_BUDGET, InputError, ValidationFailure
from ..exactlin import ResidueRing, Subgroup
from ..exactlin.padic import ZpLattice, finverse, frac, fvec, fvecmat, reduce_vec, smith, to_residue


def _table(d: int, mul: dict[tuple[int, int], Sequence]) -> list:
    t = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j), v in mul.items():
        if len(v) != d:
            raise InputError(f"product e{i}*e{j} has {len(v)} coordinates, expected {d}")
        t[i][j] = list(v)
    return t


@dataclass(frozen=True)
class FiniteAlgebra:
    """An associative unital algebra, free of rank ``dim`` over Z/p^N.

    ``table[i][j]`` holds the coordinates of ``e_i * e_j``.
    """

    ring: ResidueRing
    dim: int
    table: tuple
    unit: tuple
    name: str = field(default="A", compare=False)

    @classmethod
    def build(cls, ring: ResidueRing, dim: int, mul: dict, unit: Sequence[int], name: str = "A", check=True):
        t = _table(dim, mul)
        t = tuple(tuple(ring.vec(t[i][j]) for j in range(dim)) for i in range(dim))
        alg = cls(ring, dim, t, ring.vec(unit), name)
        if check:
            alg.check_laws()
        return alg

    @classmethod
    def scalars(cls, ring: ResidueRing, name: str | None = None) -> "FiniteAlgebra":
        return cls(ring, 1, (((1,),),), (1,), name or f"Z{ring.q}")

    @property
    def q(self) -> int:
        return self.ring.q

    def basis_vec(self, i: int) -> tuple:
        return tuple(int(i == j) for j in range(self.dim))

    def scalar(self, c: int) -> tuple:
        return self.ring.vec(c * u for u in self.unit)

    def zero(self) -> tuple:
        return (0,) * self.dim

    def mul(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        q, d = self.q, self.dim
        out = [0] * d
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        row = self.table[i][j]
                        for k in range(d):
                            out[k] += ab * row[k]
        return tuple(v % q for v in out)

    def right_matrix(self, a: Sequence[int]) -> tuple:
        """Matrix of x -> x*a (row convention)."""
        return tuple(self.mul(self.basis_vec(i), a) for i in range(self.dim))

    def check_laws(self):
        d = self.dim
        e = [self.basis_vec(i) for i in range(d)]
        for x in e:
            if self.mul(self.unit, x) != x or self.mul(x, self.unit) != x:
                raise ValidationFailure(f"{self.name}: unit law fails")
        for x, y, z in itertools.product(e, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise ValidationFailure(f"{self.name}: associativity fails on {x},{y},{z}")

    def elements(self, budget: int = DEFAULT_BUDGET):
        size = self.q**self.dim
        if size > budget:
            raise BudgetExceeded(f"|{self.name}| = {size} exceeds budget")
        return itertools.product(range(self.q), repeat=self.dim)

    def is_nilpotent(self, x) -> bool:
        y = tuple(x)
        for _ in range(self.ring.N * self.dim + 1):
            if not any(y):
                return True
            y = self.mul(y, x)
        return not any(y)

    def radical(self, budget: int = DEFAULT_BUDGET) -> Subgroup:
        """Jacobson radical, by brute force: x with x*y nilpotent for every y."""
        elems = [tuple(e) for e in self.elements(budget)]
        if len(elems) ** 2 > budget * 16:
            raise BudgetExceeded("radical search exceeds budget")
        rad = [x for x in elems if all(self.is_nilpotent(self.mul(x, y)) for y in elems)]
        return Subgroup.span(self.ring, self.dim, rad)

    def idempotents(self, budget: int = DEFAULT_BUDGET) -> list[tuple]:
        return [tuple(x) for x in self.elements(budget) if self.mul(x, x) == tuple(x)]

    def is_commutative(self) -> bool:
        e = [self.basis_vec(i) for i in range(self.dim)]
        return all(self.mul(a, b) == self.mul(b, a) for a in e for b in e)

    def primitive_idempotents(self, budget: int = DEFAULT_BUDGET) -> list[tuple]:
        """A complete set of orthogonal primitive idempotents (brute force)."""
        idem = [e for e in self.idempotents(budget) if any(e)]
        prim = []
        for e in idem:
            # e is primitive iff no idempotent f != 0, e with f = e f e = f
            if not any(
                f != e and self.mul(e, f) == f and self.mul(f, e) == f for f in idem
            ):
                prim.append(e)
        chosen: list[tuple] = []
        total = self.zero()
        for e in sorted(prim):
            if all(not any(self.mul(e, c)) and not any(self.mul(c, e)) for c in chosen):
                chosen.append(e)
                total = tuple((a + b) % self.q for a, b in zip(total, e))
        if total != self.unit:
            raise ValidationFailure(f"{self.name}: greedy orthogonal idempotent set incomplete")
        return chosen

    def __repr__(self):
        return f"FiniteAlgebra({self.name}, dim={self.dim} over {self.ring})"


@dataclass(frozen=True)
class OrderDatum:
    """An order over Z_p given by exact structure constants in an integral basis.

    ``idempotents`` optionally lists exact primitive orthogonal idempotents,
    needed for projective lifts in realisation.
    """

    p: int
    dim: int
    table: tuple
    unit: tuple
    name: str = field(default="Lambda", compare=False)
    simple_components: tuple = field(default=(), compare=False)
    idempotents: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, p: int, dim: int, mul: dict, unit: Sequence, name: str = "Lambda",
              simple_components=(), idempotents=(), check=True):
        t = _table(dim, mul)
        t = tuple(tuple(fvec(t[i][j]) for j in range(dim)) for i in range(dim))
        od = cls(p, dim, t, fvec(unit), name, tuple(simple_components), tuple(fvec(e) for e in idempotents))
        ResidueRing(p, 1)  # validates p
        if check:
            od.check_laws()
        return od

    def basis_vec(self, i: int) -> tuple:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def scalar(self, c) -> tuple:
        return tuple(frac(c) * u for u in self.unit)

    def mul(self, x, y) -> tuple:
        d = self.dim
        out = [Fraction(0)] * d
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        row = self.table[i][j]
                        for k in range(d):
                            out[k] += ab * row[k]
        return tuple(out)

    def right_matrix(self, a) -> tuple:
        return tuple(self.mul(self.basis_vec(i), a) for i in range(self.dim))

    def check_laws(self):
        e = [self.basis_vec(i) for i in range(self.dim)]
        for x in e:
            if self.mul(self.unit, x) != x or self.mul(x, self.unit) != x:
                raise ValidationFailure(f"{self.name}: unit law fails")
        for x, y, z in itertools.product(e, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise ValidationFailure(f"{self.name}: associativity fails")
        for i in range(self.dim):
            for j in range(self.dim):
                for c in self.table[i][j]:
                    if frac(c).denominator % self.p == 0:
                        raise ValidationFailure(f"{self.name}: structure constants not p-integral")
        for e_ in self.idempotents:
            if self.mul(e_, e_) != tuple(e_):
                raise ValidationFailure(f"{self.name}: declared idempotent is not idempotent")

    def at(self, k: int) -> FiniteAlgebra:
        """Lambda / p^k Lambda."""
        ring = ResidueRing(self.p, k)
        t = tuple(tuple(reduce_vec(self.table[i][j], self.p, k) for j in range(self.dim)) for i in range(self.dim))
        return FiniteAlgebra(ring, self.dim, t, reduce_vec(self.unit, self.p, k), f"{self.name}/{self.p}^{k}")

    def radical(self, budget: int = DEFAULT_BUDGET) -> ZpLattice:
        """rad(Lambda) = preimage of rad(Lambda / p Lambda)."""
        rbar = self.at(1).radical(budget)
        rows = [tuple(Fraction(x) for x in r) for r in rbar.basis]
        rows += [tuple(Fraction(self.p * int(i == j)) for j in range(self.dim)) for i in range(self.dim)]
        return ZpLattice.span(self.p, self.dim, rows)

    def __repr__(self):
        return f"OrderDatum({self.name}, dim={self.dim}, p={self.p})"


@dataclass(eq=False)
class QuotientAlgebra:
    """An algebra Lambda/J that is free over Z/p^e, with lift/coords maps."""

    algebra: FiniteAlgebra
    lifts: tuple  # exact elements of the order, one per quotient basis vector
    change: tuple  # V from the Smith form: quotient coords are (x @ V)[idx] mod p^e
    idx: tuple
    exponent: int
    order: OrderDatum = field(repr=False)

    def coords(self, x) -> tuple:
        y = fvecmat(x, self.change, self.order.dim)
        return tuple(to_residue(y[i], self.order.p, self.exponent) for i in self.idx)


def quotient_algebra(order: OrderDatum, ideal: ZpLattice, name: str) -> QuotientAlgebra:
    """Lambda/J for a two-sided ideal J with p^e Lambda inside J, free over Z/p^e."""
    p, d = order.p, order.dim
    s = smith(ideal.basis, p, d) if ideal.basis else None
    if s is None or s.rank < d:
        raise InputError(f"{name}: ideal does not contain a power of p")
    vals = s.valuations
    e = max(vals)
    if any(v not in (0, e) for v in vals):
        raise InputError(f"{name}: quotient is not free over Z/{p}^{e} (valuations {vals})")
    Vinv = finverse(s.V)
    idx = tuple(i for i, v in enumerate(vals) if v == e)
    if e == 0:
        ring = ResidueRing(p, 1)
        alg = FiniteAlgebra(ring, 0, (), (), name)
        return QuotientAlgebra(alg, (), s.V, (), 1, order)
    lifts = tuple(Vinv[i] for i in idx)
    ring = ResidueRing(p, e)
    qa = QuotientAlgebra(None, lifts, s.V, idx, e, order)  # type: ignore[arg-type]
    k = len(idx)
    mul = {}
    for i in range(k):
        for j in range(k):
            mul[(i, j)] = qa.coords(order.mul(lifts[i], lifts[j]))
    alg = FiniteAlgebra.build(ring, k, mul, qa.coords(order.unit), name)
    qa.algebra = alg
    return qa


def ideal_lattice(order: OrderDatum, gens: Sequence[Sequence], two_sided=True) -> ZpLattice:
    """Z_(p)-span of the two-sided ideal generated by ``gens``."""
    d = order.dim
    e = [order.basis_vec(i) for i in range(d)]
    rows = []
    for g in gens:
        g = fvec(g)
        for a in e:
            rows.append(order.mul(g, a))
            if two_sided:
                rows.append(order.mul(a, g))
                for b in e:
                    rows.append(order.mul(order.mul(a, g), b))
    return ZpLattice.span(order.p, d, rows)
