"""Howell-form linear algebra over the residue rings Z/p^N.

Vectors are row vectors and matrices act on the right (``x -> x @ m``),
matching right modules.  All values are plain tuples of Python ints, so the
word-size boundary never shows up in the interface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ..errors import AmbientMismatch, ContainmentError, DimensionError, InputError

Vector = tuple[int, ...]
Rows = tuple[Vector, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class ResidueRing:
    """The ring Z/p^N; ``p`` stands in for the uniformiser."""

    p: int
    N: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"p={self.p} is not prime")
        if self.N < 1:
            raise InputError(f"exponent N={self.N} must be >= 1")

    @property
    def q(self) -> int:
        return self.p**self.N

    def val(self, a: int) -> int:
        """p-adic valuation of ``a`` mod q, with val(0) = N."""
        a %= self.q
        if a == 0:
            return self.N
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def vec(self, v: Iterable[int]) -> Vector:
        q = self.q
        return tuple(int(x) % q for x in v)

    def mat(self, m: Iterable[Iterable[int]]) -> Rows:
        return tuple(self.vec(r) for r in m)

    def with_exponent(self, N: int) -> "ResidueRing":
        return ResidueRing(self.p, N)

    def __str__(self):
        return f"Z/{self.p}^{self.N}"


# ---------------------------------------------------------------- Howell form


def _howell(rows: Iterable[Sequence[int]], ring: ResidueRing, n: int) -> Rows:
    p, N, q = ring.p, ring.N, ring.q
    work = []
    for r in rows:
        if len(r) != n:
            raise DimensionError(f"row of length {len(r)} in ambient of rank {n}")
        r = [int(x) % q for x in r]
        if any(r):
            work.append(r)
    pivots: list[tuple[int, list[int]]] = []
    for c in range(n):
        best, bv = -1, N
        for idx, r in enumerate(work):
            if r[c]:
                v = ring.val(r[c])
                if v < bv:
                    best, bv = idx, v
        if best < 0:
            continue
        piv = work.pop(best)
        pc = p**bv
        inv = pow(piv[c] // pc, -1, q)
        piv = [(x * inv) % q for x in piv]
        nxt = []
        for r in work:
            if r[c]:
                f = r[c] // pc
                r = [(a - f * b) % q for a, b in zip(r, piv)]
            if any(r):
                nxt.append(r)
        if bv:
            # saturation: the multiple of the pivot row that kills the pivot
            s = [(x * p ** (N - bv)) % q for x in piv]
            if any(s):
                nxt.append(s)
        work = nxt
        pivots.append((c, piv))
    for i, (c, piv) in enumerate(pivots):
        pc = piv[c]
        for j in range(i):
            cj, rj = pivots[j]
            f = rj[c] // pc
            if f:
                pivots[j] = (cj, [(a - f * b) % q for a, b in zip(rj, piv)])
    return tuple(tuple(r) for _, r in pivots)


def _leading(row: Sequence[int]) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return len(row)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of (Z/p^N)^n stored by its Howell basis.

    Two instances compare equal exactly when they describe the same subgroup.
    """

    ring: ResidueRing
    n: int
    basis: Rows

    # construction -----------------------------------------------------
    @classmethod
    def span(cls, ring: ResidueRing, n: int, rows: Iterable[Sequence[int]] = ()) -> "Subgroup":
        return cls(ring, n, _howell(rows, ring, n))

    @classmethod
    def zero(cls, ring: ResidueRing, n: int) -> "Subgroup":
        return cls(ring, n, ())

    @classmethod
    def full(cls, ring: ResidueRing, n: int) -> "Subgroup":
        return cls(ring, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def direct_sum(cls, parts: Sequence["Subgroup"]) -> "Subgroup":
        if not parts:
            raise InputError("direct_sum of nothing")
        ring = parts[0].ring
        n = sum(s.n for s in parts)
        rows, off = [], 0
        for s in parts:
            for r in s.basis:
                rows.append((0,) * off + r + (0,) * (n - off - s.n))
            off += s.n
        return cls.span(ring, n, rows)

    # queries ----------------------------------------------------------
    @property
    def pivots(self) -> list[tuple[int, int]]:
        """(column, valuation) for each basis row."""
        out = []
        for r in self.basis:
            c = _leading(r)
            out.append((c, self.ring.val(r[c])))
        return out

    @property
    def order(self) -> int:
        p, N = self.ring.p, self.ring.N
        o = 1
        for _, v in self.pivots:
            o *= p ** (N - v)
        return o

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self == Subgroup.full(self.ring, self.n)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of the coset ``v + self``."""
        if len(v) != self.n:
            raise DimensionError(f"vector of length {len(v)} vs ambient {self.n}")
        q = self.ring.q
        v = [int(x) % q for x in v]
        for r in self.basis:
            c = _leading(r)
            f = v[c] // r[c]
            if f:
                v = [(a - f * b) % q for a, b in zip(v, r)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def elements(self) -> Iterator[Vector]:
        p, N, q = self.ring.p, self.ring.N, self.ring.q
        ranges = [range(p ** (N - v)) for _, v in self.pivots]
        for coeffs in itertools.product(*ranges):
            out = [0] * self.n
            for c, r in zip(coeffs, self.basis):
                if c:
                    out = [(a + c * b) % q for a, b in zip(out, r)]
            yield tuple(out)

    def _check(self, other: "Subgroup"):
        if self.ring != other.ring or self.n != other.n:
            raise AmbientMismatch(f"{self.ring}^{self.n} vs {other.ring}^{other.n}")

    # lattice operations -------------------------------------------------
    def __add__(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup.span(self.ring, self.n, self.basis + other.basis)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        n = self.n
        rows = [a + a for a in self.basis] + [b + (0,) * n for b in other.basis]
        return Subgroup(self.ring, n, _zero_block(rows, self.ring, 2 * n, n))

    def __le__(self, other: "Subgroup") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self != other

    def issubset(self, other: "Subgroup") -> bool:
        return self <= other

    def project(self, start: int, stop: int) -> "Subgroup":
        return Subgroup.span(self.ring, stop - start, (r[start:stop] for r in self.basis))

    def embed(self, n: int, offset: int) -> "Subgroup":
        rows = [(0,) * offset + r + (0,) * (n - offset - self.n) for r in self.basis]
        return Subgroup.span(self.ring, n, rows)

    def map(self, m: Sequence[Sequence[int]], cols: int) -> "Subgroup":
        """Image of the subgroup under ``x -> x @ m``."""
        return Subgroup.span(self.ring, cols, (vecmat(r, m, self.ring.q, cols) for r in self.basis))

    def reduce_exponent(self, k: int) -> "Subgroup":
        """Image in (Z/p^k)^n for k <= N."""
        return Subgroup.span(self.ring.with_exponent(k), self.n, self.basis)

    def __repr__(self):
        return f"Subgroup({self.ring}^{self.n}, basis={list(self.basis)})"


def _zero_block(rows, ring: ResidueRing, width: int, k: int) -> Rows:
    """Howell rows whose first ``k`` entries vanish, truncated to the rest."""
    h = _howell(rows, ring, width)
    return tuple(r[k:] for r in h if not any(r[:k]))


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], q: int, cols: int | None = None) -> Vector:
    if cols is None:
        cols = len(m[0]) if m else 0
    out = [0] * cols
    for a, row in zip(v, m):
        if a:
            for j in range(cols):
                out[j] += a * row[j]
    return tuple(x % q for x in out)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], q: int, cols: int | None = None) -> Rows:
    if cols is None:
        cols = len(b[0]) if b else 0
    return tuple(vecmat(r, b, q, cols) for r in a)


def identity(n: int) -> Rows:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _shape(m: Sequence[Sequence[int]], cols: int | None) -> tuple[int, int]:
    r = len(m)
    if cols is None:
        if not r:
            raise DimensionError("empty matrix needs an explicit column count")
        cols = len(m[0])
    for row in m:
        if len(row) != cols:
            raise DimensionError("ragged matrix")
    return r, cols


# ---------------------------------------------------------------- operations


def howell(ring: ResidueRing, m: Sequence[Sequence[int]], cols: int | None = None) -> Subgroup:
    """Canonical Howell basis of the row span of ``m``."""
    _, c = _shape(m, cols)
    return Subgroup.span(ring, c, m)


def image(ring: ResidueRing, m: Sequence[Sequence[int]], cols: int | None = None) -> Subgroup:
    return howell(ring, m, cols)


def kernel(ring: ResidueRing, m: Sequence[Sequence[int]], cols: int | None = None) -> Subgroup:
    """{x : x @ m = 0} inside (Z/p^N)^rows."""
    r, c = _shape(m, cols)
    rows = [tuple(m[i]) + tuple(int(i == j) for j in range(r)) for i in range(r)]
    return Subgroup(ring, r, _zero_block(rows, ring, c + r, c))


def preimage(ring: ResidueRing, m: Sequence[Sequence[int]], s: Subgroup, cols: int | None = None) -> Subgroup:
    """{x : x @ m in s}."""
    r, c = _shape(m, cols if cols is not None else s.n)
    if c != s.n:
        raise DimensionError(f"matrix has {c} columns, subgroup lives in rank {s.n}")
    if s.ring != ring:
        raise AmbientMismatch("ring mismatch in preimage")
    rows = [tuple(m[i]) + tuple(int(i == j) for j in range(r)) for i in range(r)]
    rows += [b + (0,) * r for b in s.basis]
    return Subgroup(ring, r, _zero_block(rows, ring, c + r, c))


def solve(ring: ResidueRing, m: Sequence[Sequence[int]], target: Sequence[int], cols: int | None = None):
    """One solution of ``x @ m = target`` together with the kernel, or None."""
    r, c = _shape(m, cols if cols is not None else len(target))
    if len(target) != c:
        raise DimensionError("target length does not match column count")
    q = ring.q
    rows = [tuple((-t) % q for t in target)] + [tuple(row) for row in m]
    k = kernel(ring, rows, c)
    part = None
    for b in k.basis:
        if b[0]:
            if b[0] == 1:
                part = b[1:]
            break
    if part is None:
        return None
    return part, kernel(ring, m, c)


def solve_modulo(ring: ResidueRing, m: Sequence[Sequence[int]], target: Sequence[int], s: Subgroup):
    """One ``x`` with ``x @ m - target in s`` (or None)."""
    rows = [tuple(row) for row in m]
    k = len(rows)
    res = solve(ring, rows + list(s.basis), target, s.n)
    if res is None:
        return None
    return res[0][:k]


def sum_(a: Subgroup, b: Subgroup) -> Subgroup:
    return a + b


def intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    return a & b


def contains(a: Subgroup, b: Subgroup) -> bool:
    """True when ``b`` is a subgroup of ``a``."""
    return b <= a


def smith_valuations(ring: ResidueRing, rows: Sequence[Sequence[int]], n: int) -> list[int]:
    """Valuations of the nonzero Smith invariants of the row span."""
    q, p = ring.q, ring.p
    a = [[int(x) % q for x in r] for r in rows]
    a = [r for r in a if any(r)]
    out = []
    while a:
        best, bv = None, ring.N
        for i, r in enumerate(a):
            for j, x in enumerate(r):
                if x:
                    v = ring.val(x)
                    if v < bv:
                        best, bv = (i, j), v
        if best is None:
            break
        i, j = best
        piv = a.pop(i)
        pc = p**bv
        inv = pow(piv[j] // pc, -1, q)
        piv = [(x * inv) % q for x in piv]
        # column operations are implicit: drop column j after clearing it
        nxt = []
        for r in a:
            if r[j]:
                f = r[j] // pc
                r = [(x - f * y) % q for x, y in zip(r, piv)]
            nxt.append(r[:j] + r[j + 1 :])
        # the pivot row's other entries are multiples of pc, cleared by
        # column operations, so they do not affect the remaining block
        a = [r for r in nxt if any(r)]
        out.append(bv)
    return out


def quotient_invariants(a: Subgroup, b: Subgroup) -> tuple[int, ...]:
    """Invariant factors (prime powers > 1, ascending) of a / b."""
    a._check(b)
    if not b <= a:
        raise ContainmentError("quotient_invariants needs b inside a")
    ring = a.ring
    k = len(a.basis)
    if k == 0:
        return ()
    rel = preimage(ring, a.basis, b, a.n)
    vals = smith_valuations(ring, rel.basis, k)
    facs = [ring.p**v for v in vals if v > 0]
    facs += [ring.q] * (k - len(vals))
    return tuple(sorted(f for f in facs if f > 1))


def group_invariants(s: Subgroup) -> tuple[int, ...]:
    """Invariant factors of the subgroup itself."""
    return quotient_invariants(s, Subgroup.zero(s.ring, s.n))


def coset_reps(h: Subgroup, k: Subgroup, budget: int | None = None) -> list[Vector]:
    """Canonical representatives (mod ``k``) of the elements of h/k."""
    h._check(k)
    if budget is not None:
        size = h.order // max(1, (h & k).order)
        if size > budget:
            from ..errors import BudgetExceeded

            raise BudgetExceeded(f"{size} cosets exceed budget {budget}")
    q = h.ring.q
    zero = k.reduce((0,) * h.n)
    seen = {zero}
    order = [zero]
    frontier = [zero]
    gens = [g for g in h.basis if not k.contains(g)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = k.reduce([(a + b) % q for a, b in zip(x, g)])
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(order)
