"""Exact linear algebra over the local ring Z_(p).

Lattice data (orders, lattices, their Hom and Ext) are integral matrices, so
instead of approximating Z_p we compute over Z_(p) = {a/b : p does not divide
b} with ``fractions.Fraction``.  Z_(p) -> Z_p is flat, so kernels, images and
saturations computed here are exactly those over Z_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import DimensionError, InputError
from .residue import ResidueRing, Subgroup

FVec = tuple[Fraction, ...]
FMat = tuple[FVec, ...]

INF = 10**9


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fvec(v: Iterable) -> FVec:
    return tuple(frac(x) for x in v)


def fmat(m: Iterable[Iterable]) -> FMat:
    return tuple(fvec(r) for r in m)


def val(x: Fraction, p: int) -> int:
    if x == 0:
        return INF
    x = frac(x)
    v = 0
    a, b = x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def is_integral(x, p: int) -> bool:
    return val(frac(x), p) >= 0


def to_residue(x, p: int, k: int) -> int:
    x = frac(x)
    q = p**k
    if x.denominator % p == 0:
        raise InputError(f"{x} is not p-integral for p={p}")
    return (x.numerator * pow(x.denominator, -1, q)) % q


def reduce_vec(v: Sequence, p: int, k: int) -> tuple[int, ...]:
    return tuple(to_residue(x, p, k) for x in v)


def reduce_mat(m: Sequence[Sequence], p: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(reduce_vec(r, p, k) for r in m)


def fmatmul(a: Sequence[Sequence], b: Sequence[Sequence], cols: int | None = None) -> FMat:
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for r in a:
        row = [Fraction(0)] * cols
        for x, brow in zip(r, b):
            if x:
                for j in range(cols):
                    row[j] += x * brow[j]
        out.append(tuple(row))
    return tuple(out)


def fvecmat(v: Sequence, m: Sequence[Sequence], cols: int | None = None) -> FVec:
    return fmatmul([v], m, cols)[0]


def fidentity(n: int) -> FMat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def finverse(m: Sequence[Sequence]) -> FMat:
    """Inverse over Q (Gauss-Jordan)."""
    n = len(m)
    a = [list(frac(x) for x in r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise InputError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(r[n:]) for r in a)


@dataclass
class SmithResult:
    U: FMat
    D: FMat
    V: FMat
    rank: int
    valuations: list[int]


def smith(m: Sequence[Sequence], p: int, cols: int | None = None) -> SmithResult:
    """U @ m @ V = D with U, V invertible over Z_(p) and D diagonal p-powers."""
    r = len(m)
    c = cols if cols is not None else (len(m[0]) if r else 0)
    a = [list(frac(x) for x in row) for row in m]
    for row in a:
        if len(row) != c:
            raise DimensionError("ragged matrix")
    U = [list(row) for row in fidentity(r)]
    V = [list(row) for row in fidentity(c)]
    vals = []
    t = 0
    while t < min(r, c):
        best, bv = None, INF
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0:
                    v = val(a[i][j], p)
                    if v < bv:
                        best, bv = (i, j), v
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        U[t], U[i] = U[i], U[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        for row in V:
            row[t], row[j] = row[j], row[t]
        # normalise pivot to p^bv by a unit
        unit = a[t][t] / Fraction(p) ** bv
        a[t] = [x / unit for x in a[t]]
        U[t] = [x / unit for x in U[t]]
        piv = a[t][t]
        for i2 in range(r):
            if i2 != t and a[i2][t] != 0:
                f = a[i2][t] / piv
                a[i2] = [x - f * y for x, y in zip(a[i2], a[t])]
                U[i2] = [x - f * y for x, y in zip(U[i2], U[t])]
        for j2 in range(c):
            if j2 != t and a[t][j2] != 0:
                f = a[t][j2] / piv
                for row in a:
                    row[j2] -= f * row[t]
                for row in V:
                    row[j2] -= f * row[t]
        vals.append(bv)
        t += 1
    return SmithResult(fmat(U), fmat(a), fmat(V), t, vals)


def kernel(m: Sequence[Sequence], p: int, cols: int | None = None) -> "ZpLattice":
    """{x : x @ m = 0} as a saturated Z_(p)-lattice in Z_(p)^rows."""
    r = len(m)
    s = smith(m, p, cols)
    return ZpLattice.span(p, r, s.U[s.rank :])


def _hermite(rows: Iterable[Sequence], p: int, n: int) -> FMat:
    work = []
    for r in rows:
        if len(r) != n:
            raise DimensionError(f"row length {len(r)} vs ambient {n}")
        r = [frac(x) for x in r]
        if any(r):
            work.append(r)
    piv_rows: list[tuple[int, list[Fraction]]] = []
    for c in range(n):
        best, bv = -1, INF
        for idx, r in enumerate(work):
            if r[c] != 0:
                v = val(r[c], p)
                if v < bv:
                    best, bv = idx, v
        if best < 0:
            continue
        piv = work.pop(best)
        unit = piv[c] / Fraction(p) ** bv
        piv = [x / unit for x in piv]
        nxt = []
        for r in work:
            if r[c] != 0:
                f = r[c] / piv[c]
                r = [a - f * b for a, b in zip(r, piv)]
            if any(r):
                nxt.append(r)
        work = nxt
        piv_rows.append((c, piv))
    for i, (c, piv) in enumerate(piv_rows):
        pc = p ** val(piv[c], p)
        for j in range(i):
            cj, rj = piv_rows[j]
            rem = to_residue(rj[c], p, val(piv[c], p)) if pc > 1 else 0
            f = (rj[c] - rem) / piv[c]
            if f != 0:
                piv_rows[j] = (cj, [a - f * b for a, b in zip(rj, piv)])
    return tuple(tuple(r) for _, r in piv_rows)


@dataclass(frozen=True)
class ZpLattice:
    """A Z_(p)-submodule of Z_(p)^n in canonical Hermite form."""

    p: int
    n: int
    basis: FMat

    @classmethod
    def span(cls, p: int, n: int, rows: Iterable[Sequence] = ()) -> "ZpLattice":
        rows = list(rows)
        for r in rows:
            for x in r:
                if not is_integral(x, p):
                    raise InputError(f"non-integral generator entry {x}")
        return cls(p, n, _hermite(rows, p, n))

    @classmethod
    def full(cls, p: int, n: int) -> "ZpLattice":
        return cls(p, n, fidentity(n))

    @classmethod
    def zero(cls, p: int, n: int) -> "ZpLattice":
        return cls(p, n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _check(self, other: "ZpLattice"):
        if self.p != other.p or self.n != other.n:
            raise InputError("lattice ambient mismatch")

    def __add__(self, other: "ZpLattice") -> "ZpLattice":
        self._check(other)
        return ZpLattice.span(self.p, self.n, self.basis + other.basis)

    def __and__(self, other: "ZpLattice") -> "ZpLattice":
        self._check(other)
        rows = list(self.basis) + list(other.basis)
        k = kernel(rows, self.p, self.n)
        a = len(self.basis)
        return ZpLattice.span(self.p, self.n, (fvecmat(v[:a], self.basis, self.n) for v in k.basis))

    def coords(self, v: Sequence) -> FVec | None:
        """Coordinates of ``v`` in the basis, or None if v is not in the lattice."""
        v = [frac(x) for x in v]
        out = []
        for r in self.basis:
            c = next(i for i, x in enumerate(r) if x != 0)
            f = v[c] / r[c]
            if not is_integral(f, self.p):
                return None
            out.append(f)
            if f != 0:
                v = [a - f * b for a, b in zip(v, r)]
        if any(v):
            return None
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def __le__(self, other: "ZpLattice") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self.basis)

    def saturation(self) -> "ZpLattice":
        """(Q-span) intersected with Z_(p)^n."""
        s = smith(self.basis, self.p, self.n) if self.basis else None
        if s is None:
            return self
        Vinv = finverse(s.V)
        return ZpLattice.span(self.p, self.n, Vinv[: s.rank])

    def map(self, m: Sequence[Sequence], cols: int) -> "ZpLattice":
        return ZpLattice.span(self.p, cols, (fvecmat(r, m, cols) for r in self.basis))

    def preimage(self, m: Sequence[Sequence], rows: int) -> "ZpLattice":
        """{x in Z_(p)^rows : x @ m in self}."""
        stacked = [tuple(r) for r in m] + list(self.basis)
        k = kernel(stacked, self.p, self.n)
        return ZpLattice.span(self.p, rows, (v[:rows] for v in k.basis))

    def project(self, start: int, stop: int) -> "ZpLattice":
        return ZpLattice.span(self.p, stop - start, (r[start:stop] for r in self.basis))

    def quotient_invariants(self, sub: "ZpLattice") -> tuple[int | None, ...]:
        """Invariants of self/sub; ``None`` stands for a free Z_p summand."""
        self._check(sub)
        if not sub <= self:
            raise InputError("sub is not contained in lattice")
        k = self.rank
        if k == 0:
            return ()
        coords = [self.coords(r) for r in sub.basis]
        if not coords:
            return (None,) * k
        s = smith(coords, self.p, k)
        facs = [self.p**v for v in s.valuations if v > 0]
        free = k - s.rank
        return tuple(sorted(facs)) + (None,) * free

    def reduce(self, k: int) -> Subgroup:
        """Image in (Z/p^k)^n."""
        ring = ResidueRing(self.p, k)
        return Subgroup.span(ring, self.n, (reduce_vec(r, self.p, k) for r in self.basis))

    @classmethod
    def from_residue(cls, s: Subgroup) -> "ZpLattice":
        """Lift of a subgroup of (Z/p^k)^n: its preimage in Z_(p)^n."""
        p, k, n = s.ring.p, s.ring.N, s.n
        rows = list(s.basis) + [tuple(p**k * int(i == j) for j in range(n)) for i in range(n)]
        return cls.span(p, n, rows)

    def __repr__(self):
        return f"ZpLattice(p={self.p}, n={self.n}, basis={[tuple(str(x) for x in r) for r in self.basis]})"


def solve(m: Sequence[Sequence], target: Sequence, p: int):
    """One x over Z_(p) with ``x @ m = target``, or None."""
    rows = len(m)
    cols = len(target)
    if rows == 0:
        return () if not any(frac(t) for t in target) else None
    s = smith(m, p, cols)
    tv = fvecmat(target, s.V, cols)
    z = [Fraction(0)] * rows
    for i in range(cols):
        if i < s.rank:
            zi = tv[i] / s.D[i][i]
            if not is_integral(zi, p):
                return None
            z[i] = zi
        elif tv[i] != 0:
            return None
    return fvecmat(z, s.U, rows)
