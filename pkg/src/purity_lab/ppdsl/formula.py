"""Matrix-form pp-formulas ``E y (x y) A = 0`` with algebra-valued entries.

A formula keeps its columns as elements of ``A^(n+m)``; the conditions they
impose only depend on the right submodule the columns generate, so the
canonical form stores a Howell (or, over an order, Hermite) basis of that
submodule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from ..algcore.algebra import FiniteAlgebra, OrderDatum
from ..errors import DimensionError, InputError, RingMismatch
from ..exactlin import Subgroup
from ..exactlin.padic import ZpLattice, frac

Coefficients = Union[FiniteAlgebra, OrderDatum]


def is_order(alg) -> bool:
    return isinstance(alg, OrderDatum)


def elem(alg: Coefficients, v: Sequence) -> tuple:
    if len(v) != alg.dim:
        raise DimensionError(f"element {tuple(v)} has {len(v)} coordinates, {alg.name} has dimension {alg.dim}")
    if is_order(alg):
        return tuple(frac(x) for x in v)
    return tuple(int(x) % alg.q for x in v)


def scalar(alg: Coefficients, c) -> tuple:
    if is_order(alg):
        return tuple(frac(c) * u for u in alg.unit)
    return tuple((int(c) * u) % alg.q for u in alg.unit)


def zero_elem(alg: Coefficients) -> tuple:
    return scalar(alg, 0)


def add(alg: Coefficients, a, b) -> tuple:
    if is_order(alg):
        return tuple(x + y for x, y in zip(a, b))
    return tuple((x + y) % alg.q for x, y in zip(a, b))


def neg(alg: Coefficients, a) -> tuple:
    if is_order(alg):
        return tuple(-x for x in a)
    return tuple((-x) % alg.q for x in a)


def _canonical_columns(alg: Coefficients, k: int, cols: Sequence[Sequence[tuple]]) -> tuple:
    d = alg.dim
    rows = []
    for col in cols:
        if len(col) != k:
            raise DimensionError(f"column of length {len(col)} for {k} variables")
        for j in range(d):
            e = alg.basis_vec(j)
            rows.append(tuple(x for a in col for x in alg.mul(a, e)))
    if is_order(alg):
        basis = ZpLattice.span(alg.p, k * d, rows).basis
    else:
        basis = Subgroup.span(alg.ring, k * d, rows).basis
    return tuple(tuple(tuple(r[i * d : (i + 1) * d]) for i in range(k)) for r in basis)


@dataclass(frozen=True)
class PpFormula:
    """``E y_1..y_m  sum_i v_i * A[i][c] = 0`` for every column c, v = (x_1..x_n, y_1..y_m)."""

    algebra: Coefficients
    n: int
    m: int
    columns: tuple

    @classmethod
    def make(cls, algebra: Coefficients, n: int, m: int, columns: Sequence[Sequence[Sequence]] = ()) -> "PpFormula":
        if n < 1:
            raise InputError("a pp-formula needs at least one free variable")
        if m < 0:
            raise InputError("negative number of bound variables")
        cols = [tuple(elem(algebra, a) for a in col) for col in columns]
        return cls(algebra, n, m, _canonical_columns(algebra, n + m, cols))

    @classmethod
    def true(cls, algebra: Coefficients, n: int = 1) -> "PpFormula":
        return cls.make(algebra, n, 0)

    @classmethod
    def zero(cls, algebra: Coefficients, n: int = 1) -> "PpFormula":
        one = scalar(algebra, 1)
        z = zero_elem(algebra)
        cols = [[one if i == j else z for i in range(n)] for j in range(n)]
        return cls.make(algebra, n, 0, cols)

    @property
    def arity(self) -> int:
        return self.n

    @property
    def nvars(self) -> int:
        return self.n + self.m

    def _check(self, other: "PpFormula"):
        if self.algebra != other.algebra:
            raise RingMismatch(f"formulas over {self.algebra.name} and {other.algebra.name}")
        if self.n != other.n:
            raise DimensionError(f"arity mismatch: {self.n} vs {other.n}")

    def relabel(self, total: int, where: Sequence[int]) -> list[tuple]:
        """Columns re-indexed so variable i lands at position where[i] among ``total``."""
        z = zero_elem(self.algebra)
        out = []
        for col in self.columns:
            new = [z] * total
            for i, a in enumerate(col):
                new[where[i]] = a
            out.append(tuple(new))
        return out

    def meet(self, other: "PpFormula") -> "PpFormula":
        self._check(other)
        n, m1, m2 = self.n, self.m, other.m
        total = n + m1 + m2
        cols = self.relabel(total, list(range(n + m1)))
        cols += other.relabel(total, list(range(n)) + [n + m1 + j for j in range(m2)])
        return PpFormula.make(self.algebra, n, m1 + m2, cols)

    def join(self, other: "PpFormula") -> "PpFormula":
        """E x' x'': x = x' + x'' & self(x') & other(x'')."""
        self._check(other)
        alg, n, m1, m2 = self.algebra, self.n, self.m, other.m
        # variables: x (n) | x' (n) | self bound (m1) | x'' (n) | other bound (m2)
        total = 3 * n + m1 + m2
        one, mone, z = scalar(alg, 1), scalar(alg, -1), zero_elem(alg)
        cols = []
        for i in range(n):
            col = [z] * total
            col[i] = one
            col[n + i] = mone
            col[2 * n + m1 + i] = mone
            cols.append(tuple(col))
        cols += self.relabel(total, [n + i for i in range(n + m1)])
        cols += other.relabel(total, [2 * n + m1 + i for i in range(n + m2)])
        return PpFormula.make(alg, n, 2 * n + m1 + m2, cols)

    __and__ = meet
    __add__ = join

    def exists_last(self, k: int) -> "PpFormula":
        """Quantify away the last ``k`` free variables (they become the first bound ones)."""
        if k >= self.n:
            raise InputError("cannot quantify every free variable")
        return PpFormula(self.algebra, self.n - k, self.m + k, self.columns)

    def with_arity(self, n: int) -> "PpFormula":
        """Pad with unconstrained free variables up to arity ``n``."""
        if n < self.n:
            raise InputError("cannot shrink arity")
        total = n + self.m
        where = list(range(self.n)) + [n + j for j in range(self.m)]
        return PpFormula.make(self.algebra, n, self.m, self.relabel(total, where))

    def __str__(self):
        from .printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class PpPair:
    phi: PpFormula
    psi: PpFormula

    def __post_init__(self):
        self.phi._check(self.psi)

    def __str__(self):
        return f"{self.phi} / {self.psi}"
