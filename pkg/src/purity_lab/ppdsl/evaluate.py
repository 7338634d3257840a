"""Solution sets, family-relative comparison, free realisations and pp-types."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ..algcore.lattices import FPModule, LatticeModule
from ..algcore.modules import EndomorphismRing, FModule, ModuleMap, invariant_subgroups
from ..errors import DimensionError, InputError, RingMismatch
from ..exactlin import Subgroup, preimage, solve_modulo, vecmat
from ..exactlin.padic import ZpLattice, kernel as zp_kernel, reduce_vec
from .formula import PpFormula, is_order, scalar, zero_elem

Module = Union[FModule, LatticeModule]


def _coefficient(phi: PpFormula, m: Module, a) -> tuple:
    """Translate a formula coefficient into the module's algebra."""
    alg = phi.algebra
    if isinstance(m, LatticeModule):
        if alg != m.order:
            raise RingMismatch(f"formula over {alg.name}, lattice over {m.order.name}")
        return a
    if is_order(alg):
        target = m.algebra
        if alg.at(target.ring.N) != target:
            raise RingMismatch(f"formula over {alg.name}, module over {target.name}")
        return reduce_vec(a, alg.p, target.ring.N)
    if alg != m.algebra:
        raise RingMismatch(f"formula over {alg.name}, module over {m.algebra.name}")
    return a


def _system(phi: PpFormula, m: Module):
    g = m.gens if isinstance(m, FModule) else m.rank
    k, l = phi.nvars, len(phi.columns)
    zero = 0 if isinstance(m, FModule) else Fraction(0)
    T = [[zero] * (l * g) for _ in range(k * g)]
    for c, col in enumerate(phi.columns):
        for i, a in enumerate(col):
            if not any(a):
                continue
            X = m.action_matrix(_coefficient(phi, m, a))
            for r in range(g):
                row = T[i * g + r]
                for s in range(g):
                    row[c * g + s] = X[r][s]
    return T, g


def evaluate(phi: PpFormula, m: Module):
    """phi(M) inside M^n.

    For a finite module this is a Subgroup of (Z/q)^(n*gens) containing the
    relations of M^n; for a lattice it is an exact ZpLattice.
    """
    T, g = _system(phi, m)
    n, k, l = phi.n, phi.nvars, len(phi.columns)
    if isinstance(m, FModule):
        ring = m.ring
        if g == 0:
            return Subgroup.zero(ring, 0)
        if l == 0:
            sol = Subgroup.full(ring, k * g)
        else:
            rel = Subgroup.direct_sum([m.relations] * l)
            sol = preimage(ring, T, rel, l * g)
        return sol.project(0, n * g) + Subgroup.direct_sum([m.relations] * n)
    p = m.p
    if g == 0:
        return ZpLattice.zero(p, 0)
    if l == 0:
        return ZpLattice.full(p, n * g)
    sol = zp_kernel(T, p, l * g)
    return sol.project(0, n * g)


def solution_elements(phi: PpFormula, m: FModule, budget: int | None = None) -> list[tuple]:
    from ..exactlin import coset_reps

    s = evaluate(phi, m)
    rel = Subgroup.direct_sum([m.relations] * phi.n) if m.gens else s
    return coset_reps(s, rel, budget)


@dataclass(frozen=True)
class FamilyOrder:
    """Outcome of comparing two formulas on a finite family only."""

    holds: bool
    family: tuple
    witness: str | None = None

    def __bool__(self):
        return self.holds

    def __str__(self):
        scope = ", ".join(self.family) or "empty family"
        if self.holds:
            return f"holds on {{{scope}}}"
        return f"fails on {self.witness} (family {{{scope}}})"


def leq(phi: PpFormula, psi: PpFormula, family: Sequence[Module]) -> FamilyOrder:
    """phi <= psi relative to the family: phi(M) inside psi(M) for each member."""
    phi._check(psi)
    names = tuple(m.name for m in family)
    for m in family:
        if not evaluate(phi, m) <= evaluate(psi, m):
            return FamilyOrder(False, names, m.name)
    return FamilyOrder(True, names)


def equivalent(phi: PpFormula, psi: PpFormula, family: Sequence[Module]) -> bool:
    return bool(leq(phi, psi, family)) and bool(leq(psi, phi, family))


# ------------------------------------------------------------------ realisations


@dataclass(eq=False)
class PointedModule:
    module: object
    tuple: tuple

    def __post_init__(self):
        g = self.module.gens if hasattr(self.module, "gens") else self.module.rank
        for v in self.tuple:
            if len(v) != g:
                raise DimensionError(f"tuple entry {v} does not live in {self.module.name}")


def free_realization(phi: PpFormula, name: str | None = None) -> PointedModule:
    """(C, c) with Hom(C, L) -> phi(L), f -> f(c), surjective for every L."""
    alg, k, d = phi.algebra, phi.nvars, phi.algebra.dim
    g = k * d
    acts = []
    for j in range(d):
        R = alg.right_matrix(alg.basis_vec(j))
        big = [[0] * g for _ in range(g)]
        for i in range(k):
            for a in range(d):
                for b in range(d):
                    big[i * d + a][i * d + b] = R[a][b]
        acts.append(tuple(tuple(r) for r in big))
    rows = []
    for col in phi.columns:
        rows.append(tuple(x for a in col for x in a))
    unit = tuple(alg.unit)
    zero = tuple(zero_elem(alg))
    tup = tuple(tuple(x for j in range(k) for x in (unit if j == i else zero)) for i in range(phi.n))
    nm = name or "C"
    if is_order(alg):
        c = FPModule.build(alg, g, acts, rows, nm)
        return PointedModule(c, tup)
    c = FModule.build(alg, g, acts, rows, nm)
    return PointedModule(c, tuple(c.reduce(t) for t in tup))


def pptype_generator(pm: PointedModule) -> PpFormula:
    """A formula whose solutions in L are exactly the images of the tuple under Hom(M, L)."""
    m, tup = pm.module, pm.tuple
    if isinstance(m, FModule):
        alg, g = m.algebra, m.gens
        relrows = list(m.relations.basis)
    elif isinstance(m, LatticeModule):
        alg, g = m.order, m.rank
        relrows = []
    else:
        raise InputError("pptype_generator needs a finite module or a lattice")
    n = len(tup)
    if n == 0:
        raise InputError("empty tuple")
    k = n + g
    z = zero_elem(alg)
    cols = []
    # relations among the group generators u_1..u_g (bound variables)
    for r in relrows:
        col = [z] * k
        for a in range(g):
            col[n + a] = scalar(alg, r[a])
        cols.append(col)
    # u_a * e_j = sum_b X_j[a][b] u_b
    for j in range(alg.dim):
        X = m.actions[j]
        e = alg.basis_vec(j)
        for a in range(g):
            col = [z] * k
            col[n + a] = tuple(e)
            for b in range(g):
                if X[a][b]:
                    col[n + b] = _sub_elem(alg, col[n + b], scalar(alg, X[a][b]))
            cols.append(col)
    # x_i = sum_a t_ia u_a
    for i, t in enumerate(tup):
        col = [z] * k
        col[i] = scalar(alg, 1)
        for a in range(g):
            if t[a]:
                col[n + a] = _sub_elem(alg, col[n + a], scalar(alg, t[a]))
        cols.append(col)
    return PpFormula.make(alg, n, g, cols)


def _sub_elem(alg, a, b):
    if is_order(alg):
        return tuple(x - y for x, y in zip(a, b))
    return tuple((x - y) % alg.q for x, y in zip(a, b))


def generates(m: FModule, tup: Sequence[Sequence[int]]) -> bool:
    return m.submodule(tup) == m.full()


def chi_alpha(delta: ModuleMap, alpha: ModuleMap, pl: PointedModule) -> PpFormula:
    """Formula for {eps(c) : eps in Hom(L, N), eps alpha = beta delta for some beta in Hom(B, N)}.

    Variables: x (images of c), then the generator images of L's
    pp-type witness, then images of B's group generators.
    """
    a_mod, b_mod, l_mod = delta.source, delta.target, pl.module
    if alpha.source.algebra != a_mod.algebra or alpha.source.gens != a_mod.gens:
        raise InputError("alpha and delta need a common source")
    if alpha.target.gens != l_mod.gens:
        raise InputError("alpha must land in the pointed module")
    alg = a_mod.algebra
    c = pl.tuple
    if not generates(l_mod, c):
        raise InputError("the tuple does not generate L")
    n, d, q = len(c), alg.dim, alg.q
    sigma = pptype_generator(pl)
    gB = b_mod.gens
    # variables: x (n) | sigma bound | y = images of B's generators (gB) | tau bound
    ybase = n + sigma.m
    cols = []
    if gB:
        tau = pptype_generator(PointedModule(b_mod, tuple(b_mod.generators())))
        total = ybase + gB + tau.m
        cols += tau.relabel(total, [ybase + i for i in range(gB)] + [ybase + gB + j for j in range(tau.m)])
    else:
        total = ybase
    cols = sigma.relabel(total, list(range(ybase))) + cols
    # s_ik with alpha(a_k) = sum_i c_i s_ik
    gen_rows = [vecmat(ci, l_mod.actions[j], q, l_mod.gens) for ci in c for j in range(d)]
    z = zero_elem(alg)
    for row_a, row_d in zip(alpha.matrix, delta.matrix):
        s = solve_modulo(alg.ring, gen_rows, row_a, l_mod.relations)
        if s is None:
            raise InputError("the tuple does not generate L")
        col = [z] * total
        for i in range(n):
            col[i] = tuple(s[i * d : (i + 1) * d])
        for b in range(gB):
            if row_d[b]:
                col[ybase + b] = scalar(alg, -row_d[b])
        cols.append(tuple(col))
    return PpFormula.make(alg, n, total - n, cols)


@dataclass(frozen=True)
class InvariantComparison:
    """pp-definable subgroups from a formula family against End-invariant subgroups."""

    module: str
    generated: tuple  # sublattice generated by the formulas, 0 and M
    invariant: tuple  # every End(M)-submodule
    not_invariant: tuple  # generated subgroups that fail End-invariance (should be empty)

    @property
    def missing(self) -> tuple:
        return tuple(s for s in self.invariant if s not in self.generated)

    @property
    def agree(self) -> bool:
        return not self.missing and not self.not_invariant

    def __str__(self):
        return (f"{self.module}: {len(self.generated)} subgroups from the formulas, "
                f"{len(self.invariant)} End-invariant; {len(self.missing)} invariant ones not reached, "
                f"{len(self.not_invariant)} reached ones not invariant")


def compare_with_invariant(m: FModule, formulas: Sequence[PpFormula], budget: int = 1 << 16) -> InvariantComparison:
    """Close {phi(M)} together with 0 and M under sum and intersection and set it beside
    the End(M)-invariant subgroups.  Only a report: no agreement is presumed."""
    for phi in formulas:
        if phi.n != 1:
            raise DimensionError("only one-variable formulas define subgroups of M")
    invariant = invariant_subgroups(m, EndomorphismRing(m).generators(), None, budget)
    found = {m.relations, m.full()} | {evaluate(phi, m) for phi in formulas}
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(found):
                for c in (a + b, a & b):
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    key = lambda s: (s.order, s.basis)
    generated = tuple(sorted(found, key=key))
    inv = set(invariant)
    return InvariantComparison(m.name, generated, tuple(invariant), tuple(s for s in generated if s not in inv))
