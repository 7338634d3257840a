"""Lattices over orders and finitely presented modules, computed exactly over Z_(p).

Homomorphism groups between lattices are saturated sublattices of matrix
space, so isomorphism and indecomposability reduce to finite searches modulo
p.  Ext^1 comes from a projective presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import AmbientMismatch, BudgetExceeded, DEFAULT_BUDGET, InputError, ValidationFailure
from ..exactlin import Subgroup
from ..exactlin.padic import (
    ZpLattice,
    finverse,
    fidentity,
    fmat,
    fmatmul,
    frac,
    fvecmat,
    is_integral,
    kernel as zp_kernel,
    reduce_mat,
    smith,
    val,
)
from .algebra import OrderDatum
from .modules import FModule


def _flin(mats, coeffs, n):
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        c = frac(c)
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * m[i][j]
    return tuple(tuple(r) for r in out)


def _fsub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def _is_integral_mat(m, p) -> bool:
    return all(is_integral(x, p) for r in m for x in r)


@dataclass(frozen=True, eq=False)
class LatticeModule:
    """A Lambda-lattice: Z_p^rank with one exact action matrix per order basis element."""

    order: OrderDatum
    rank: int
    actions: tuple
    name: str = "M"

    @classmethod
    def build(cls, order: OrderDatum, rank: int, actions, name="M", check=True) -> "LatticeModule":
        if len(actions) != order.dim:
            raise InputError(f"{name}: need {order.dim} action matrices, got {len(actions)}")
        acts = tuple(fmat(a) for a in actions)
        for a in acts:
            if len(a) != rank or any(len(r) != rank for r in a):
                raise InputError(f"{name}: action matrices must be {rank}x{rank}")
        m = cls(order, rank, acts, name)
        if check:
            m.check()
        return m

    @classmethod
    def regular(cls, order: OrderDatum, name=None) -> "LatticeModule":
        acts = tuple(order.right_matrix(order.basis_vec(i)) for i in range(order.dim))
        return cls(order, order.dim, acts, name or order.name)

    @classmethod
    def zero(cls, order: OrderDatum, name="0") -> "LatticeModule":
        return cls(order, 0, tuple(() for _ in range(order.dim)), name)

    @property
    def p(self) -> int:
        return self.order.p

    def action_matrix(self, a):
        return _flin(self.actions, a, self.rank)

    def check(self):
        o, r = self.order, self.rank
        for i, a in enumerate(self.actions):
            if not _is_integral_mat(a, o.p):
                raise ValidationFailure(f"{self.name}: action of e{i} is not integral")
        if self.action_matrix(o.unit) != fidentity(r):
            raise ValidationFailure(f"{self.name}: unit does not act as identity")
        for i, j in itertools.product(range(o.dim), repeat=2):
            if fmatmul(self.actions[i], self.actions[j], r) != self.action_matrix(o.table[i][j]):
                raise ValidationFailure(f"{self.name}: action violates e{i}*e{j}")

    def reduce_mod(self, k: int, name=None) -> FModule:
        """M / M p^k over Lambda / p^k Lambda."""
        if k < 1:
            raise InputError("reduction exponent must be positive")
        alg = self.order.at(k)
        acts = tuple(reduce_mat(a, self.p, k) for a in self.actions)
        return FModule(alg, self.rank, Subgroup.zero(alg.ring, self.rank), acts, name or f"{self.name}/p^{k}")

    def restrict(self, order: OrderDatum, images, name=None) -> "LatticeModule":
        acts = tuple(self.action_matrix(a) for a in images)
        return LatticeModule.build(order, self.rank, acts, name or self.name)

    def __repr__(self):
        return f"LatticeModule({self.name}, rank={self.rank}, over {self.order.name})"


def lattice_sum(parts: Sequence[LatticeModule], name=None) -> LatticeModule:
    if not parts:
        raise InputError("direct sum of nothing")
    o = parts[0].order
    for m in parts:
        if m.order != o:
            raise AmbientMismatch("direct sum over different orders")
    r = sum(m.rank for m in parts)
    acts = []
    for i in range(o.dim):
        big = [[Fraction(0)] * r for _ in range(r)]
        off = 0
        for m in parts:
            for a in range(m.rank):
                for b in range(m.rank):
                    big[off + a][off + b] = m.actions[i][a][b]
            off += m.rank
        acts.append(tuple(tuple(x) for x in big))
    return LatticeModule(o, r, tuple(acts), name or "+".join(m.name for m in parts))


# ------------------------------------------------------------------ Hom


class LatticeHom:
    """Hom(M, N) as a saturated lattice of rank(M) x rank(N) matrices."""

    def __init__(self, m: LatticeModule, n: LatticeModule):
        if m.order != n.order:
            raise AmbientMismatch(f"Hom between lattices over {m.order.name} and {n.order.name}")
        self.source, self.target = m, n
        p, r, s = m.p, m.rank, n.rank
        dim = r * s
        self.dim = dim
        if dim == 0:
            self.lattice = ZpLattice.zero(p, 0)
            return
        cols = []
        for X, Y in zip(m.actions, n.actions):
            # entry (a, b) of X F - F Y as a linear form in F
            for a in range(r):
                for b in range(s):
                    col = [Fraction(0)] * dim
                    for c in range(r):
                        col[c * s + b] += X[a][c]
                    for c in range(s):
                        col[a * s + c] -= Y[c][b]
                    cols.append(col)
        T = tuple(tuple(col[i] for col in cols) for i in range(dim))
        self.lattice = zp_kernel(T, p, len(cols)) if cols else ZpLattice.full(p, dim)

    def to_matrix(self, flat) -> tuple:
        s = self.target.rank
        return tuple(tuple(flat[a * s : (a + 1) * s]) for a in range(self.source.rank))

    def flatten(self, f) -> tuple:
        return tuple(frac(x) for r in f for x in r)

    def basis(self) -> list[tuple]:
        return [self.to_matrix(b) for b in self.lattice.basis]

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def contains(self, f) -> bool:
        return self.lattice.contains(self.flatten(f))

    def mod_p_maps(self, budget: int = DEFAULT_BUDGET):
        """All elements of Hom / p Hom, as integer matrices modulo p."""
        p = self.source.p
        if p**self.rank > budget:
            raise BudgetExceeded(f"|Hom/pHom| = {p}^{self.rank} exceeds budget")
        bas = [reduce_mat(b, p, 1) for b in self.basis()]
        r, s = self.source.rank, self.target.rank
        for coeffs in itertools.product(range(p), repeat=len(bas)):
            f = [[0] * s for _ in range(r)]
            for c, b in zip(coeffs, bas):
                if c:
                    for i in range(r):
                        for j in range(s):
                            f[i][j] = (f[i][j] + c * b[i][j]) % p
            yield tuple(tuple(row) for row in f)


def lattice_hom(m: LatticeModule, n: LatticeModule) -> LatticeHom:
    return LatticeHom(m, n)


def _det_mod(m, p: int) -> int:
    a = [list(r) for r in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def lattice_iso(m: LatticeModule, n: LatticeModule, budget: int = DEFAULT_BUDGET):
    """Exact isomorphism test: some homomorphism has unit determinant."""
    if m.rank != n.rank:
        return False
    if m.rank == 0:
        return True
    hom = LatticeHom(m, n)
    return any(_det_mod(f, m.p) for f in hom.mod_p_maps(budget))


def lattice_indecomposable(m: LatticeModule, budget: int = DEFAULT_BUDGET) -> bool:
    """End(M) is saturated, so its idempotents lift from End(M)/p End(M)."""
    if m.rank == 0:
        return False
    p, r = m.p, m.rank
    end = LatticeHom(m, m)
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    zero = tuple((0,) * r for _ in range(r))
    for f in end.mod_p_maps(budget):
        if f in (zero, ident):
            continue
        sq = tuple(tuple(sum(f[i][k] * f[k][j] for k in range(r)) % p for j in range(r)) for i in range(r))
        if sq == f:
            return False
    return True


# ------------------------------------------------------------------ Ext


def presentation(m: LatticeModule):
    """Free cover Lambda^r -> M sending the j-th unit to the j-th basis vector.

    Returns (matrix of the cover in Z_p-coordinates, syzygy lattice as a
    sublattice of Lambda^r, syzygy as a LatticeModule).
    """
    o, r, d = m.order, m.rank, m.order.dim
    rows = []
    for j in range(r):
        for i in range(d):
            rows.append(m.actions[i][j])
    cover = tuple(rows)
    omega = zp_kernel(cover, o.p, r)
    free = lattice_sum([LatticeModule.regular(o)] * r) if r else LatticeModule.zero(o)
    acts = []
    for i in range(d):
        mat = []
        for w in omega.basis:
            img = fvecmat(w, free.actions[i], r * d)
            c = omega.coords(img)
            if c is None:
                raise ValidationFailure("syzygy is not a submodule")
            mat.append(c)
        acts.append(tuple(mat))
    syz = LatticeModule(o, omega.rank, tuple(acts), f"Omega({m.name})")
    return cover, omega, syz


@dataclass(frozen=True)
class ExtGroup:
    invariants: tuple

    @property
    def order(self) -> int:
        out = 1
        for x in self.invariants:
            out *= x
        return out

    def annihilator_exponent(self, p: int) -> int:
        return max((val(Fraction(x), p) for x in self.invariants), default=0)

    def __str__(self):
        if not self.invariants:
            return "0"
        return " + ".join(f"Z/{x}" for x in self.invariants)


def ext1(l: LatticeModule, m: LatticeModule) -> ExtGroup:
    """Ext^1(L, M) = Hom(Omega, M) / (restrictions of Hom(Lambda^r, M))."""
    if l.order != m.order:
        raise AmbientMismatch("Ext between lattices over different orders")
    o, p = l.order, l.p
    if l.rank == 0 or m.rank == 0:
        return ExtGroup(())
    cover, omega, syz = presentation(l)
    if syz.rank == 0:
        return ExtGroup(())
    hom = LatticeHom(syz, m)
    d, r, s = o.dim, l.rank, m.rank
    images = []
    for j in range(r):
        for t in range(s):
            # the map Lambda^r -> M sending unit j to basis vector t of M
            phi = [[Fraction(0)] * s for _ in range(r * d)]
            for i in range(d):
                phi[j * d + i] = list(m.actions[i][t])
            restricted = fmatmul(omega.basis, phi, s)
            images.append(hom.flatten(restricted))
    sub = ZpLattice.span(p, hom.dim, images)
    if not sub <= hom.lattice:
        raise ValidationFailure("restricted maps are not homomorphisms")
    inv = hom.lattice.quotient_invariants(sub)
    if any(x is None for x in inv):
        raise ValidationFailure("Ext^1 between lattices came out infinite")
    return ExtGroup(tuple(inv))


def annihilator_exponent(l: LatticeModule, m: LatticeModule) -> int:
    return ext1(l, m).annihilator_exponent(l.p)


# ------------------------------------------------------------------ fp modules


@dataclass(frozen=True, eq=False)
class FPModule:
    """Z_(p)^gens / relations with an exact action; torsion is allowed."""

    order: OrderDatum
    gens: int
    relations: ZpLattice
    actions: tuple
    name: str = "C"

    @classmethod
    def build(cls, order: OrderDatum, gens: int, actions, relations=(), name="C", check=True):
        acts = tuple(fmat(a) for a in actions)
        rel = relations if isinstance(relations, ZpLattice) else ZpLattice.span(order.p, gens, relations)
        m = cls(order, gens, rel, acts, name)
        if check:
            m.check()
        return m

    @classmethod
    def from_lattice(cls, m: LatticeModule) -> "FPModule":
        return cls(m.order, m.rank, ZpLattice.zero(m.p, m.rank), m.actions, m.name)

    def check(self):
        for i, a in enumerate(self.actions):
            for r in self.relations.basis:
                if not self.relations.contains(fvecmat(r, a, self.gens)):
                    raise ValidationFailure(f"{self.name}: action e{i} does not preserve relations")

    def action_matrix(self, a):
        return _flin(self.actions, a, self.gens)

    def torsion(self) -> ZpLattice:
        return self.relations.saturation()


@dataclass(eq=False)
class TorsionfreeQuotient:
    lattice: LatticeModule
    projection: tuple  # gens x rank, x -> x @ projection
    lift: tuple  # rank x gens, a section of the projection on coordinates


def torsionfree_quotient(c: FPModule, name=None) -> TorsionfreeQuotient:
    """C / tor(C), the universal map from C to a lattice."""
    p, g = c.order.p, c.gens
    if c.relations.rank == 0:
        ident = fidentity(g)
        return TorsionfreeQuotient(LatticeModule(c.order, g, c.actions, name or c.name), ident, ident)
    s = smith(c.relations.basis, p, g)
    r = s.rank
    V = s.V
    Vinv = finverse(V)
    proj = tuple(tuple(row[r:]) for row in V)
    lift = Vinv[r:]
    acts = []
    for X in c.actions:
        full = fmatmul(fmatmul(Vinv, X, g), V, g)
        acts.append(tuple(tuple(row[r:]) for row in full[r:]))
    lat = LatticeModule(c.order, g - r, tuple(acts), name or f"{c.name}/tor")
    lat.check()
    return TorsionfreeQuotient(lat, proj, lift)


@dataclass(eq=False)
class FPPushout:
    module: FPModule
    from_b: tuple
    from_c: tuple


def fp_pushout(b: FPModule, c: FPModule, f, g, name="P") -> FPPushout:
    """Pushout of f: A -> B and g: A -> C given by their matrices (A's generators as rows)."""
    if b.order != c.order:
        raise AmbientMismatch("pushout over different orders")
    p = b.order.p
    n = b.gens + c.gens
    rows = [tuple(r) + (Fraction(0),) * c.gens for r in b.relations.basis]
    rows += [(Fraction(0),) * b.gens + tuple(r) for r in c.relations.basis]
    rows += [tuple(frac(x) for x in fr) + tuple(-frac(x) for x in gr) for fr, gr in zip(f, g)]
    acts = []
    for X, Y in zip(b.actions, c.actions):
        big = [[Fraction(0)] * n for _ in range(n)]
        for i in range(b.gens):
            for j in range(b.gens):
                big[i][j] = X[i][j]
        for i in range(c.gens):
            for j in range(c.gens):
                big[b.gens + i][b.gens + j] = Y[i][j]
        acts.append(tuple(tuple(r) for r in big))
    pm = FPModule(b.order, n, ZpLattice.span(p, n, rows), tuple(acts), name)
    ib = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(b.gens))
    ic = tuple(tuple(Fraction(int(i + b.gens == j)) for j in range(n)) for i in range(c.gens))
    return FPPushout(pm, ib, ic)


def fp_hom_to_lattice(c: FPModule, l: LatticeModule) -> ZpLattice:
    """Hom(C, L) as a lattice of gens x rank matrices."""
    src = LatticeModule(c.order, c.gens, c.actions, c.name)
    hom = LatticeHom(src, l)
    # additionally the relations must map to zero
    cols = []
    s = l.rank
    for r in c.relations.basis:
        for b in range(s):
            col = [Fraction(0)] * hom.dim
            for a in range(c.gens):
                col[a * s + b] = r[a]
            cols.append(col)
    if not cols or hom.lattice.rank == 0:
        return hom.lattice
    coeff = [[sum(v[i] * col[i] for i in range(hom.dim)) for col in cols] for v in hom.lattice.basis]
    k = zp_kernel(coeff, c.order.p, len(cols))
    return ZpLattice.span(c.order.p, hom.dim, (fvecmat(x, hom.lattice.basis, hom.dim) for x in k.basis))
