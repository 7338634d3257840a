"""Finite modules over finite algebras and their homomorphisms.

A module is a quotient of ``(Z/q)^gens`` by a subgroup of relations, with the
algebra acting on the right through one matrix per basis element.  Elements
are canonical coset representatives, so equality of elements is equality of
tuples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from ..errors import AmbientMismatch, BudgetExceeded, DEFAULT_BUDGET, InputError, ValidationFailure
from ..exactlin import ResidueRing, Subgroup, coset_reps, identity, matmul, preimage, quotient_invariants, solve_modulo, vecmat
from ..exactlin.padic import finverse, smith, to_residue
from .algebra import FiniteAlgebra


def _lin(mats: Sequence[Sequence[Sequence[int]]], coeffs: Sequence[int], n: int, q: int):
    out = [[0] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(n):
                row, mrow = out[i], m[i]
                for j in range(n):
                    row[j] += c * mrow[j]
    return tuple(tuple(x % q for x in r) for r in out)


@dataclass(frozen=True, eq=False)
class FModule:
    algebra: FiniteAlgebra
    gens: int
    relations: Subgroup
    actions: tuple
    name: str = "M"

    @classmethod
    def build(cls, algebra: FiniteAlgebra, gens: int, actions, relations=(), name="M", check=True):
        ring = algebra.ring
        if len(actions) != algebra.dim:
            raise InputError(f"{name}: need {algebra.dim} action matrices, got {len(actions)}")
        acts = tuple(ring.mat(a) for a in actions)
        for a in acts:
            if len(a) != gens or any(len(r) != gens for r in a):
                raise InputError(f"{name}: action matrices must be {gens}x{gens}")
        rel = relations if isinstance(relations, Subgroup) else Subgroup.span(ring, gens, relations)
        m = cls(algebra, gens, rel, acts, name)
        if check:
            m.check()
        return m

    @classmethod
    def zero(cls, algebra: FiniteAlgebra, name="0") -> "FModule":
        return cls(algebra, 0, Subgroup.zero(algebra.ring, 0), tuple(() for _ in range(algebra.dim)), name)

    @classmethod
    def regular(cls, algebra: FiniteAlgebra, name=None) -> "FModule":
        acts = tuple(algebra.right_matrix(algebra.basis_vec(i)) for i in range(algebra.dim))
        return cls(algebra, algebra.dim, Subgroup.zero(algebra.ring, algebra.dim), acts, name or algebra.name)

    @classmethod
    def free(cls, algebra: FiniteAlgebra, r: int, name=None) -> "FModule":
        return direct_sum([cls.regular(algebra)] * r, name or f"{algebra.name}^{r}")

    # basic data -------------------------------------------------------
    @property
    def ring(self) -> ResidueRing:
        return self.algebra.ring

    @property
    def q(self) -> int:
        return self.algebra.q

    @property
    def order(self) -> int:
        return Subgroup.full(self.ring, self.gens).order // self.relations.order

    def is_zero(self) -> bool:
        return self.order == 1

    def action_matrix(self, a: Sequence[int]):
        return _lin(self.actions, a, self.gens, self.q)

    def act(self, x: Sequence[int], a: Sequence[int]) -> tuple:
        return self.reduce(vecmat(x, self.action_matrix(a), self.q, self.gens))

    def reduce(self, x: Sequence[int]) -> tuple:
        return self.relations.reduce(x)

    def full(self) -> Subgroup:
        return Subgroup.full(self.ring, self.gens)

    def elements(self, budget: int = DEFAULT_BUDGET) -> list[tuple]:
        return coset_reps(self.full(), self.relations, budget)

    def invariants(self) -> tuple[int, ...]:
        return quotient_invariants(self.full(), self.relations)

    def generators(self) -> list[tuple]:
        return [tuple(int(i == j) for j in range(self.gens)) for i in range(self.gens)]

    def check(self):
        alg, q, g = self.algebra, self.q, self.gens
        for x in self.relations.basis:
            for i, a in enumerate(self.actions):
                if not self.relations.contains(vecmat(x, a, q, g)):
                    raise ValidationFailure(f"{self.name}: action e{i} does not preserve relations")
        if not self._rows_in_rel(_sub(self.action_matrix(alg.unit), identity(g), q)):
            raise ValidationFailure(f"{self.name}: unit does not act as identity")
        for i, j in itertools.product(range(alg.dim), repeat=2):
            lhs = matmul(self.actions[i], self.actions[j], q, g)
            rhs = self.action_matrix(alg.table[i][j])
            if not self._rows_in_rel(_sub(lhs, rhs, q)):
                raise ValidationFailure(f"{self.name}: action violates e{i}*e{j}")

    def _rows_in_rel(self, m) -> bool:
        return all(self.relations.contains(r) for r in m)

    def submodule(self, rows: Sequence[Sequence[int]]) -> Subgroup:
        """Submodule generated by ``rows``, as a subgroup containing the relations."""
        s = Subgroup.span(self.ring, self.gens, list(rows) + list(self.relations.basis))
        return close_under(s, self.actions)

    def restrict(self, algebra: FiniteAlgebra, images: Sequence[Sequence[int]], name=None) -> "FModule":
        """Restriction of scalars along the algebra map sending basis ``i`` to ``images[i]``."""
        acts = tuple(self.action_matrix(a) for a in images)
        return FModule.build(algebra, self.gens, acts, self.relations, name or self.name)

    def __repr__(self):
        return f"FModule({self.name}, order={self.order}, over {self.algebra.name})"


def _sub(a, b, q):
    return tuple(tuple((x - y) % q for x, y in zip(r, s)) for r, s in zip(a, b))


def close_under(s: Subgroup, mats: Sequence) -> Subgroup:
    """Smallest subgroup containing ``s`` and stable under every matrix."""
    q, n = s.ring.q, s.n
    while True:
        rows = list(s.basis)
        for m in mats:
            rows += [vecmat(r, m, q, n) for r in s.basis]
        t = Subgroup.span(s.ring, n, rows)
        if t == s:
            return s
        s = t


def direct_sum(parts: Sequence[FModule], name: str | None = None) -> FModule:
    if not parts:
        raise InputError("direct sum of nothing")
    alg = parts[0].algebra
    for m in parts:
        if m.algebra != alg:
            raise AmbientMismatch("direct sum over different algebras")
    g = sum(m.gens for m in parts)
    acts = []
    for i in range(alg.dim):
        big = [[0] * g for _ in range(g)]
        off = 0
        for m in parts:
            for r in range(m.gens):
                for c in range(m.gens):
                    big[off + r][off + c] = m.actions[i][r][c]
            off += m.gens
        acts.append(tuple(tuple(r) for r in big))
    if g:
        rel = Subgroup.direct_sum([m.relations for m in parts])
    else:
        rel = Subgroup.zero(alg.ring, 0)
    return FModule(alg, g, rel, tuple(acts), name or "+".join(m.name for m in parts))


@dataclass(eq=False)
class Subquotient:
    """top/bottom for subgroups of an ambient group carrying an action.

    ``module`` has one generator per Howell row of ``top``; ``chart`` sends an
    ambient vector in ``top`` to generator coordinates.
    """

    module: FModule
    top: Subgroup
    bottom: Subgroup

    def chart(self, v: Sequence[int]) -> tuple:
        rows = self.top.basis
        if not rows:
            return ()
        c = solve_modulo(self.top.ring, rows, v, self.bottom)
        if c is None:
            raise InputError(f"{v} is not in the subquotient's top")
        return self.module.reduce(c)

    def lift(self, c: Sequence[int]) -> tuple:
        return vecmat(c, self.top.basis, self.top.ring.q, self.top.n)


def subquotient(algebra: FiniteAlgebra, top: Subgroup, bottom: Subgroup,
                actions: Sequence | None, name="M", action_fn: Callable | None = None) -> Subquotient:
    """Build top/bottom as a module; ``actions`` are ambient matrices, one per algebra basis element.

    ``action_fn(i, v)`` may be given instead, returning the image of ambient
    vector ``v`` under basis element ``i`` (it need only be defined on ``top``).
    """
    if not bottom <= top:
        raise InputError("subquotient needs bottom inside top")
    ring = top.ring
    if ring != algebra.ring:
        raise AmbientMismatch(f"subquotient over {ring} for algebra over {algebra.ring}")
    k = len(top.basis)
    rel = preimage(ring, top.basis, bottom, top.n) if k else Subgroup.zero(ring, 0)
    sq = Subquotient(FModule(algebra, k, rel, tuple(() for _ in range(algebra.dim)), name), top, bottom)
    acts = []
    for i in range(algebra.dim):
        rows = []
        for b in top.basis:
            img = action_fn(i, b) if action_fn else vecmat(b, actions[i], ring.q, top.n)
            rows.append(sq.chart(img))
        acts.append(tuple(rows))
    sq.module = FModule(algebra, k, rel, tuple(acts), name)
    sq.module.check()
    return sq


def quotient(m: FModule, sub: Subgroup, name=None) -> Subquotient:
    """M / sub for a submodule ``sub`` (a subgroup of the ambient containing the relations)."""
    return subquotient(m.algebra, m.full(), sub + m.relations, m.actions, name or f"{m.name}/S")


def submodule_object(m: FModule, sub: Subgroup, name=None) -> Subquotient:
    return subquotient(m.algebra, sub + m.relations, m.relations, m.actions, name or f"S<{m.name}")


# ------------------------------------------------------------------ maps


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FModule
    target: FModule
    matrix: tuple

    @classmethod
    def build(cls, source: FModule, target: FModule, matrix, check=True) -> "ModuleMap":
        mat = tuple(tuple(int(x) % source.q for x in r) for r in matrix)
        if len(mat) != source.gens or any(len(r) != target.gens for r in mat):
            raise InputError(f"map matrix must be {source.gens}x{target.gens}")
        f = cls(source, target, mat)
        if check:
            f.check()
        return f

    @classmethod
    def identity(cls, m: FModule) -> "ModuleMap":
        return cls(m, m, identity(m.gens))

    @classmethod
    def zero(cls, a: FModule, b: FModule) -> "ModuleMap":
        return cls(a, b, tuple((0,) * b.gens for _ in range(a.gens)))

    def __call__(self, x: Sequence[int]) -> tuple:
        return self.target.reduce(vecmat(x, self.matrix, self.source.q, self.target.gens))

    def check(self):
        if not is_hom(self.source, self.target, self.matrix):
            raise ValidationFailure("matrix does not define a module homomorphism")

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        return ModuleMap(self.source, other.target, matmul(self.matrix, other.matrix, self.source.q, other.target.gens))

    def kernel(self) -> Subgroup:
        return preimage(self.source.ring, self.matrix, self.target.relations, self.target.gens) if self.source.gens else self.source.relations

    def image(self) -> Subgroup:
        return self.source.full().map(self.matrix, self.target.gens) + self.target.relations

    def is_injective(self) -> bool:
        return self.kernel() == self.source.relations

    def is_surjective(self) -> bool:
        return self.image() == self.target.full()

    def is_iso(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def is_zero(self) -> bool:
        return all(self.target.relations.contains(r) for r in self.matrix)

    def equals(self, other: "ModuleMap") -> bool:
        return all(self.target.relations.contains([(a - b) % self.source.q for a, b in zip(r, s)])
                   for r, s in zip(self.matrix, other.matrix))


def is_hom(src: FModule, tgt: FModule, f) -> bool:
    q, h = src.q, tgt.gens
    for r in src.relations.basis:
        if not tgt.relations.contains(vecmat(r, f, q, h)):
            return False
    for a, b in zip(src.actions, tgt.actions):
        lhs = matmul(a, f, q, h)
        rhs = matmul(f, b, q, h)
        if any(not tgt.relations.contains([(x - y) % q for x, y in zip(u, v)]) for u, v in zip(lhs, rhs)):
            return False
    return True


class HomSpace:
    """Hom(M, N) as H/K: H the matrices defining homomorphisms, K those inducing zero."""

    def __init__(self, m: FModule, n: FModule):
        if m.algebra != n.algebra:
            raise AmbientMismatch(f"Hom between modules over {m.algebra.name} and {n.algebra.name}")
        self.source, self.target = m, n
        ring, g, h = m.ring, m.gens, n.gens
        self.ring = ring
        dim = g * h
        if dim == 0:
            self.H = self.K = Subgroup.zero(ring, 0)
            return
        blocks: list[list[list[int]]] = []  # each block: dim rows x h cols
        for r in m.relations.basis:
            blk = [[0] * h for _ in range(dim)]
            for a in range(g):
                if r[a]:
                    for b in range(h):
                        blk[a * h + b][b] = r[a]
            blocks.append(blk)
        for X, Y in zip(m.actions, n.actions):
            for a in range(g):
                blk = [[0] * h for _ in range(dim)]
                for c in range(g):
                    if X[a][c]:
                        for b in range(h):
                            blk[c * h + b][b] += X[a][c]
                for c in range(h):
                    for b2 in range(h):
                        if Y[c][b2]:
                            blk[a * h + c][b2] -= Y[c][b2]
                blocks.append(blk)
        T = [tuple(x for blk in blocks for x in blk[i]) for i in range(dim)]
        target = Subgroup.direct_sum([n.relations] * len(blocks)) if blocks else Subgroup.zero(ring, 0)
        self.K = Subgroup.direct_sum([n.relations] * g)
        self.H = preimage(ring, T, target, len(T[0])) if blocks else Subgroup.full(ring, dim)

    @property
    def size(self) -> int:
        return self.H.order // self.K.order

    def to_matrix(self, flat: Sequence[int]) -> tuple:
        h = self.target.gens
        return tuple(tuple(flat[a * h : (a + 1) * h]) for a in range(self.source.gens))

    def flatten(self, f) -> tuple:
        return tuple(x for r in f for x in r)

    def basis(self) -> list[tuple]:
        """Matrices generating Hom as a group (modulo zero maps)."""
        return [self.to_matrix(r) for r in self.H.basis if not self.K.contains(r)]

    def maps(self, budget: int = DEFAULT_BUDGET) -> Iterator[ModuleMap]:
        for r in coset_reps(self.H, self.K, budget):
            yield ModuleMap(self.source, self.target, self.to_matrix(r))

    def contains(self, f) -> bool:
        return self.H.contains(self.flatten(f))

    def is_zero_map(self, f) -> bool:
        return self.K.contains(self.flatten(f))

    def random_map(self, rng: random.Random) -> ModuleMap:
        q = self.ring.q
        flat = [0] * self.H.n
        for r in self.H.basis:
            c = rng.randrange(q)
            flat = [(a + c * b) % q for a, b in zip(flat, r)]
        return ModuleMap(self.source, self.target, self.to_matrix(flat))

    def subgroup_of(self, mats: Sequence) -> Subgroup:
        """Subgroup of H/K spanned by the given matrices, plus K."""
        return Subgroup.span(self.ring, self.H.n, [self.flatten(f) for f in mats]) + self.K


def hom_space(m: FModule, n: FModule) -> HomSpace:
    return HomSpace(m, n)


class EndomorphismRing:
    """End(M).  Maps act on row vectors, so ``mul(f, g)`` means f followed by g."""

    def __init__(self, m: FModule):
        self.module = m
        self.space = HomSpace(m, m)

    def mul(self, f, g):
        return matmul(f, g, self.module.q, self.module.gens)

    def identity(self):
        return identity(self.module.gens)

    def generators(self) -> list[tuple]:
        return self.space.basis()

    def elements(self, budget=DEFAULT_BUDGET):
        return [f.matrix for f in self.space.maps(budget)]

    def is_idempotent(self, f) -> bool:
        return self.space.is_zero_map(_sub(self.mul(f, f), f, self.module.q))

    @property
    def size(self) -> int:
        return self.space.size


def end_ring(m: FModule) -> EndomorphismRing:
    return EndomorphismRing(m)


# ------------------------------------------------------------------ structure


def composition_series(m: FModule, gens: Sequence | None = None, seed: int | None = None) -> list[Subgroup]:
    """A maximal chain of subgroups of M stable under ``gens`` (default: End(M)).

    Each step adds a minimal stable subgroup over the current one, found by
    closing cyclic subgroups.  ``seed`` shuffles the candidate order.
    """
    if gens is None:
        gens = EndomorphismRing(m).generators()
    ring, p = m.ring, m.ring.p
    rng = random.Random(seed) if seed is not None else None
    s = m.relations
    chain = [s]
    full = m.full()
    times_p = tuple(tuple(p * int(i == j) for j in range(m.gens)) for i in range(m.gens))
    while s != full:
        socle = preimage(ring, times_p, s, m.gens)
        cands = [x for x in coset_reps(socle, s) if any(x)]
        if rng is not None:
            rng.shuffle(cands)
        best = None
        for x in cands:
            c = close_under(s + Subgroup.span(ring, m.gens, [x]), gens)
            if best is None or c.order < best.order:
                best = c
                if c.order == s.order * p:
                    break
        s = best
        chain.append(s)
    return chain


def endolength(m: FModule, seed: int | None = None) -> int:
    """Composition length of M as a module over End(M)."""
    if m.is_zero():
        return 0
    return len(composition_series(m, seed=seed)) - 1


def length(m: FModule) -> int:
    """Composition length over the algebra itself."""
    if m.is_zero():
        return 0
    return len(composition_series(m, gens=m.actions)) - 1


def invariant_subgroups(m: FModule, gens: Sequence, bottom: Subgroup | None = None,
                        budget: int = 1 << 16) -> list[Subgroup]:
    """Every subgroup containing ``bottom`` that is stable under ``gens``."""
    if m.order > budget:
        raise BudgetExceeded(f"|M| = {m.order} exceeds subgroup budget {budget}")
    start = close_under((bottom or m.relations) + m.relations, gens)
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for x in coset_reps(m.full(), s):
                if any(x):
                    c = close_under(s + Subgroup.span(m.ring, m.gens, [x]), gens)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda s: (s.order, s.basis))


def _iso_witness(hs: HomSpace, f) -> bool:
    return ModuleMap(hs.source, hs.target, f).is_iso()


def iso_test(m: FModule, n: FModule, budget: int = DEFAULT_BUDGET, samples: int = 10_000, seed: int = 0):
    """True/False, or None when the search exceeded the budget without a witness."""
    if m.order != n.order or m.invariants() != n.invariants():
        return False
    if m.is_zero():
        return True
    hs = HomSpace(m, n)
    if hs.size <= budget:
        return any(f.is_iso() for f in hs.maps(budget))
    rng = random.Random(seed)
    for _ in range(samples):
        if hs.random_map(rng).is_iso():
            return True
    return None


def find_iso(m: FModule, n: FModule, budget: int = DEFAULT_BUDGET) -> ModuleMap | None:
    if m.order != n.order:
        return None
    hs = HomSpace(m, n)
    for f in hs.maps(budget):
        if f.is_iso():
            return f
    return None


def is_indecomposable(m: FModule, budget: int = DEFAULT_BUDGET) -> bool:
    if m.is_zero():
        return False
    end = EndomorphismRing(m)
    ident = end.identity()
    q = m.q
    for f in end.space.maps(budget):
        mat = f.matrix
        if end.space.is_zero_map(mat) or end.space.is_zero_map(_sub(mat, ident, q)):
            continue
        if end.is_idempotent(mat):
            return False
    return True


def is_split_mono(f: ModuleMap) -> bool:
    a, b = f.source, f.target
    if a.is_zero():
        return True
    if not f.is_injective():
        return False
    hs = HomSpace(b, a)
    rows = [hs.flatten(matmul(f.matrix, r, a.q, a.gens)) for r in hs.basis()]
    target = hs.flatten(identity(a.gens))
    kA = Subgroup.direct_sum([a.relations] * a.gens)
    if not rows:
        return kA.contains(target)
    return solve_modulo(a.ring, rows, target, kA) is not None


def retraction(f: ModuleMap) -> ModuleMap | None:
    a, b = f.source, f.target
    hs = HomSpace(b, a)
    bas = hs.basis()
    rows = [hs.flatten(matmul(f.matrix, r, a.q, a.gens)) for r in bas]
    kA = Subgroup.direct_sum([a.relations] * a.gens)
    if not rows:
        return ModuleMap.zero(b, a) if kA.contains(hs.flatten(identity(a.gens))) else None
    c = solve_modulo(a.ring, rows, hs.flatten(identity(a.gens)), kA)
    if c is None:
        return None
    flat = [0] * (b.gens * a.gens)
    for ci, r in zip(c, bas):
        flat = [(x + ci * y) % a.q for x, y in zip(flat, hs.flatten(r))]
    return ModuleMap(b, a, hs.to_matrix(flat))


@dataclass(eq=False)
class Simplified:
    """An isomorphic copy of a module on a minimal generating set."""

    module: FModule
    to_new: tuple  # old generators x new generators
    to_old: tuple  # new generators x old generators

    def forward(self, x: Sequence[int]) -> tuple:
        return self.module.reduce(vecmat(x, self.to_new, self.module.q, self.module.gens))

    def back(self, y: Sequence[int]) -> tuple:
        return vecmat(y, self.to_old, self.module.q, len(self.to_new))


def simplify(m: FModule, name=None) -> Simplified:
    """Re-present M on generators of a cyclic decomposition of its group (Smith form)."""
    ring, g, q, p = m.ring, m.gens, m.q, m.ring.p
    if g == 0:
        return Simplified(m, (), ())
    rows = list(m.relations.basis) + [tuple(q * int(i == j) for j in range(g)) for i in range(g)]
    s = smith(rows, p, g)
    keep = [i for i in range(g) if s.valuations[i] > 0]
    V, Vinv = s.V, finverse(s.V)
    to_new = tuple(tuple(to_residue(V[r][c], p, ring.N) for c in keep) for r in range(g))
    to_old = tuple(tuple(to_residue(Vinv[a][c], p, ring.N) for c in range(g)) for a in keep)
    k = len(keep)
    rel = Subgroup.span(ring, k, [tuple((p ** s.valuations[i]) * int(i == j) for j in keep) for i in keep])
    acts = tuple(matmul(matmul(to_old, X, q, g), to_new, q, k) for X in m.actions)
    out = FModule(m.algebra, k, rel, acts, name or m.name)
    return Simplified(out, to_new, to_old)


@dataclass(eq=False)
class Pushout:
    module: FModule
    from_b: ModuleMap
    from_c: ModuleMap


def pushout(f: ModuleMap, g: ModuleMap, name="P") -> Pushout:
    """P = (B + C) / {(a f, -a g)} with its two structure maps."""
    if f.source is not g.source and f.source.algebra != g.source.algebra:
        raise AmbientMismatch("pushout maps must share a source")
    a, b, c = f.source, f.target, g.target
    s = direct_sum([b, c])
    q = a.q
    rows = [tuple(fr) + tuple((-x) % q for x in gr) for fr, gr in zip(f.matrix, g.matrix)]
    sq = quotient(s, Subgroup.span(s.ring, s.gens, rows), name)
    pm = sq.module
    ib = [sq.chart(tuple(r) + (0,) * c.gens) for r in identity(b.gens)]
    ic = [sq.chart((0,) * b.gens + tuple(r)) for r in identity(c.gens)]
    return Pushout(pm, ModuleMap(b, pm, tuple(ib)), ModuleMap(c, pm, tuple(ic)))
