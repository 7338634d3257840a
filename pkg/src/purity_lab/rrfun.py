"""The Ringel-Roggenkamp functor for an order inside a hereditary overorder.

Given Lambda inside Gamma and an ideal I of Gamma inside rad(Lambda), a
Lambda-lattice M goes to the triple (M/MI, M Gamma/MI, inclusion), a module
over the triangular algebra D = [[Lambda/I, Gamma/I], [0, Gamma/I]].  Gamma
elements are carried in Gamma coordinates; ``embedding`` lists the Lambda
basis in those coordinates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algcore.algebra import FiniteAlgebra, OrderDatum, QuotientAlgebra, ideal_lattice, quotient_algebra
from .algcore.lattices import LatticeHom, LatticeModule
from .algcore.modules import (
    FModule,
    HomSpace,
    ModuleMap,
    close_under,
    direct_sum,
    is_indecomposable,
    iso_test,
    simplify,
    submodule_object,
    subquotient,
)
from .errors import InputError, LiftFailure, ValidationFailure
from .exactlin import Subgroup, coset_reps, matmul, preimage, solve_modulo, vecmat
from .exactlin.padic import ZpLattice, finverse, fvec, fvecmat, reduce_mat, reduce_vec
from .interp import FullnessEntry, FullnessReport, InterpSpec, Interpreted, Report, MemberReport, apply_morphism, apply_object
from .ppdsl import PpFormula, evaluate


@dataclass(frozen=True, eq=False)
class BaeckstroemDatum:
    Lambda: OrderDatum
    Gamma: OrderDatum
    embedding: tuple
    ideal: tuple  # generators of I, Lambda coordinates
    n: int  # p^n lies in I
    m: int  # p^m Gamma lies in Lambda
    baeckstroem: bool = True

    @classmethod
    def build(cls, Lambda, Gamma, embedding, ideal=None, n=1, m=1, baeckstroem=True, check=True):
        emb = tuple(fvec(r) for r in embedding)
        if ideal is None:
            if not baeckstroem:
                raise InputError("an ideal is required outside the Baeckstroem case")
            ideal = Lambda.radical().basis
        b = cls(Lambda, Gamma, emb, tuple(fvec(r) for r in ideal), n, m, baeckstroem)
        if check:
            b.check()
        return b

    @property
    def p(self) -> int:
        return self.Lambda.p

    def to_gamma(self, x) -> tuple:
        return fvecmat(x, self.embedding, self.Gamma.dim)

    def to_lambda(self, y) -> tuple:
        """Gamma element in Lambda coordinates (may have p-power denominators)."""
        return fvecmat(y, finverse(self.embedding), self.Lambda.dim)

    def ideal_lambda(self) -> ZpLattice:
        return ideal_lattice(self.Lambda, self.ideal)

    def ideal_gamma(self) -> ZpLattice:
        lam = self.ideal_lambda()
        return ZpLattice.span(self.p, self.Gamma.dim, (self.to_gamma(r) for r in lam.basis))

    def check(self):
        L, G, p = self.Lambda, self.Gamma, self.p
        if L.p != G.p:
            raise ValidationFailure("orders over different primes")
        if len(self.embedding) != L.dim or any(len(r) != G.dim for r in self.embedding):
            raise ValidationFailure("embedding has the wrong shape")
        if L.dim != G.dim:
            raise ValidationFailure("Lambda and Gamma must have the same rank")
        for i in range(L.dim):
            for j in range(L.dim):
                lhs = self.to_gamma(L.mul(L.basis_vec(i), L.basis_vec(j)))
                rhs = G.mul(self.embedding[i], self.embedding[j])
                if lhs != rhs:
                    raise ValidationFailure(f"embedding is not multiplicative on e{i}*e{j}")
        if self.to_gamma(L.unit) != tuple(G.unit):
            raise ValidationFailure("embedding does not preserve the unit")
        il, ig = self.ideal_lambda(), self.ideal_gamma()
        if not il <= L.radical():
            raise ValidationFailure("I is not inside rad(Lambda)")
        for r in ig.basis:
            for j in range(G.dim):
                g = G.basis_vec(j)
                if not ig.contains(G.mul(r, g)) or not ig.contains(G.mul(g, r)):
                    raise ValidationFailure("I is not an ideal of Gamma")
        if not il.contains(L.scalar(p**self.n)):
            raise ValidationFailure(f"p^{self.n} does not lie in I")
        image = ZpLattice.span(p, G.dim, self.embedding)
        for j in range(G.dim):
            if not image.contains([x * p**self.m for x in G.basis_vec(j)]):
                raise ValidationFailure(f"p^{self.m} Gamma is not inside Lambda")
        if self.baeckstroem:
            if image == ZpLattice.full(p, G.dim):
                raise ValidationFailure("Gamma equals Lambda")
            if il != L.radical():
                raise ValidationFailure("I differs from rad(Lambda)")
            if ig != G.radical():
                raise ValidationFailure("I differs from rad(Gamma)")


# ------------------------------------------------------------------ D and triples


@dataclass(eq=False)
class DAlgebra:
    """D with basis [Lambda/I | Gamma/I (corner) | Gamma/I]."""

    datum: BaeckstroemDatum
    algebra: FiniteAlgebra
    lam: QuotientAlgebra
    gam: QuotientAlgebra
    iota: tuple  # Lambda/I basis -> Gamma/I coordinates

    @property
    def dA(self) -> int:
        return self.lam.algebra.dim

    @property
    def dG(self) -> int:
        return self.gam.algebra.dim

    def element(self, a=None, b=None, c=None) -> tuple:
        z = lambda k: (0,) * k
        return tuple(a or z(self.dA)) + tuple(b or z(self.dG)) + tuple(c or z(self.dG))

    @property
    def e_U(self) -> tuple:
        return self.element(a=self.lam.algebra.unit)

    @property
    def e_V(self) -> tuple:
        return self.element(c=self.gam.algebra.unit)

    def corner(self, j: int) -> tuple:
        return self.element(b=self.gam.algebra.basis_vec(j))


def build_D(b: BaeckstroemDatum) -> DAlgebra:
    lam = quotient_algebra(b.Lambda, b.ideal_lambda(), "Lambda/I")
    gam = quotient_algebra(b.Gamma, b.ideal_gamma(), "Gamma/I")
    if lam.exponent != gam.exponent:
        raise InputError("Lambda/I and Gamma/I live over different residue rings")
    A, G = lam.algebra, gam.algebra
    iota = tuple(gam.coords(b.to_gamma(x)) for x in lam.lifts)
    dA, dG = A.dim, G.dim
    dim = dA + 2 * dG
    mul = {}
    z = (0,) * dim

    def put(i, j, block, vec):
        out = list(z)
        off = {"a": 0, "b": dA, "c": dA + dG}[block]
        for k, v in enumerate(vec):
            out[off + k] = v
        mul[(i, j)] = tuple(out)

    for i in range(dA):
        for j in range(dA):
            put(i, j, "a", A.table[i][j])
        for j in range(dG):
            put(i, dA + j, "b", G.mul(iota[i], G.basis_vec(j)))
    for i in range(dG):
        for j in range(dG):
            put(dA + i, dA + dG + j, "b", G.table[i][j])
            put(dA + dG + i, dA + dG + j, "c", G.table[i][j])
    unit = tuple(A.unit) + (0,) * dG + tuple(G.unit)
    D = FiniteAlgebra.build(A.ring, dim, mul, unit, "D")
    return DAlgebra(b, D, lam, gam, iota)


@dataclass(eq=False)
class TripleModule:
    """(U, V, f) with U over Lambda/I, V over Gamma/I and f given on U's generators."""

    U: FModule
    V: FModule
    f: tuple
    name: str = "T"

    def image(self) -> Subgroup:
        return self.U.full().map(self.f, self.V.gens) + self.V.relations if self.U.gens else self.V.relations

    def check(self, D: DAlgebra):
        q, h = self.V.q, self.V.gens
        for r in self.U.relations.basis:
            if not self.V.relations.contains(vecmat(r, self.f, q, h)):
                raise ValidationFailure(f"{self.name}: f does not respect the relations of U")
        for i in range(D.dA):
            lhs = matmul(self.U.actions[i], self.f, q, h)
            rhs = matmul(self.f, self.V.action_matrix(D.iota[i]), q, h)
            for u, v in zip(lhs, rhs):
                if not self.V.relations.contains([(x - y) % q for x, y in zip(u, v)]):
                    raise ValidationFailure(f"{self.name}: f is not Lambda/I-linear")

    def to_D_module(self, D: DAlgebra, name=None) -> FModule:
        u, v = self.U.gens, self.V.gens
        g = u + v
        acts = []
        zero = lambda: [[0] * g for _ in range(g)]
        for i in range(D.dA):
            X = zero()
            for r in range(u):
                for s in range(u):
                    X[r][s] = self.U.actions[i][r][s]
            acts.append(X)
        q = D.algebra.q
        for j in range(D.dG):
            X = zero()
            fb = matmul(self.f, self.V.actions[j], q, v) if u else ()
            for r in range(u):
                for s in range(v):
                    X[r][u + s] = fb[r][s]
            acts.append(X)
        for j in range(D.dG):
            X = zero()
            for r in range(v):
                for s in range(v):
                    X[u + r][u + s] = self.V.actions[j][r][s]
            acts.append(X)
        rel = Subgroup.direct_sum([self.U.relations, self.V.relations]) if g else Subgroup.zero(D.algebra.ring, 0)
        return FModule.build(D.algebra, g, acts, rel, name or self.name)


def module_to_triple(D: DAlgebra, X: FModule, name=None) -> TripleModule:
    ring = X.ring
    eU, eV = X.action_matrix(D.e_U), X.action_matrix(D.e_V)
    top_u = X.full().map(eU, X.gens) + X.relations
    top_v = X.full().map(eV, X.gens) + X.relations
    ua = [X.action_matrix(D.element(a=D.lam.algebra.basis_vec(i))) for i in range(D.dA)]
    va = [X.action_matrix(D.element(c=D.gam.algebra.basis_vec(j))) for j in range(D.dG)]
    su = subquotient(D.lam.algebra, top_u, X.relations, ua, "U")
    sv = subquotient(D.gam.algebra, top_v, X.relations, va, "V")
    one_b = X.action_matrix(D.element(b=D.gam.algebra.unit))
    f = tuple(sv.chart(vecmat(b, one_b, ring.q, X.gens)) for b in top_u.basis)
    return TripleModule(su.module, sv.module, f, name or X.name)


# ------------------------------------------------------------------ the functor


@dataclass(eq=False)
class GammaClosure:
    """M Gamma, stored through W = p^m M Gamma, a sublattice of M."""

    lattice: LatticeModule
    W: ZpLattice
    m: int

    def coords(self, x) -> tuple:
        """Coordinates in M Gamma of an element x of M (M coordinates)."""
        c = self.W.coords([v * self.lattice.p**self.m for v in x])
        if c is None:
            raise ValidationFailure("element of M outside its Gamma-closure")
        return c


def _action(m: LatticeModule, a) -> tuple:
    return m.action_matrix(a)


def gamma_closure(b: BaeckstroemDatum, M: LatticeModule, name=None) -> GammaClosure:
    if M.order != b.Lambda:
        raise InputError(f"{M.name} is not a lattice over {b.Lambda.name}")
    G, p, pm = b.Gamma, b.p, b.p**b.m
    r = M.rank
    gam = [b.to_lambda(G.basis_vec(j)) for j in range(G.dim)]
    mats = [_action(M, [x * pm for x in g]) for g in gam]
    if r == 0:
        W = ZpLattice.zero(p, 0)
        return GammaClosure(LatticeModule.zero(G, name or f"{M.name}Gamma"), W, b.m)
    W = ZpLattice.span(p, r, (row for X in mats for row in X))
    acts = []
    for j, g in enumerate(gam):
        Xg = _action(M, g)
        rows = []
        for w in W.basis:
            c = W.coords(fvecmat(w, Xg, r))
            if c is None:
                raise ValidationFailure("Gamma-span is not Gamma-stable")
            rows.append(c)
        acts.append(tuple(rows))
    lat = LatticeModule.build(G, W.rank, acts, name or f"{M.name}Gamma")
    return GammaClosure(lat, W, b.m)


@dataclass(eq=False)
class FImage:
    """F(M) with the data tying it back to M."""

    source: LatticeModule
    triple: TripleModule
    closure: GammaClosure

    def chart_U(self, x) -> tuple:
        return self.triple.U.reduce(reduce_vec(x, self.source.p, self.triple.U.ring.N))

    def chart_V(self, y) -> tuple:
        """V-coordinates of an element y of M Gamma given in M Gamma coordinates."""
        return self.triple.V.reduce(reduce_vec(y, self.source.p, self.triple.V.ring.N))


def apply_F(D: DAlgebra, M: LatticeModule) -> FImage:
    b = D.datum
    e = D.lam.exponent
    gc = gamma_closure(b, M)
    r, s = M.rank, gc.lattice.rank
    il = b.ideal_lambda()
    MI = ZpLattice.span(b.p, r, (row for x in il.basis for row in _action(M, x))) if r else ZpLattice.zero(b.p, 0)
    A, G = D.lam.algebra, D.gam.algebra
    urel = MI.reduce(e) if r else Subgroup.zero(A.ring, 0)
    for i in range(r):
        if not urel.contains([b.p**e * int(i == j) for j in range(r)]):
            raise ValidationFailure("p^e M is not inside MI")
    uacts = tuple(reduce_mat(_action(M, x), b.p, e) for x in D.lam.lifts)
    U = FModule.build(A, r, uacts, urel, f"U({M.name})")
    mi_w = [gc.coords(x) for x in MI.basis]
    vlat = ZpLattice.span(b.p, s, mi_w)
    for i in range(s):
        if not vlat.contains([b.p**e * int(i == j) for j in range(s)]):
            raise ValidationFailure("M Gamma I is not inside MI")
    vacts = tuple(reduce_mat(gc.lattice.action_matrix(y), b.p, e) for y in D.gam.lifts)
    V = FModule.build(G, s, vacts, vlat.reduce(e) if s else Subgroup.zero(G.ring, 0), f"V({M.name})")
    f = tuple(V.reduce(reduce_vec(gc.coords(row), b.p, e)) for row in _identity(r))
    T = TripleModule(U, V, f, f"F({M.name})")
    T.check(D)
    return FImage(M, T, gc)


def _identity(n: int):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def apply_F_morphism(D: DAlgebra, FM: FImage, FN: FImage, g) -> ModuleMap:
    """F(g) as a map of D-modules, for g : M -> N given by its matrix."""
    p, e = FM.source.p, D.lam.exponent
    X, Y = FM.triple.to_D_module(D), FN.triple.to_D_module(D)
    alpha = reduce_mat(g, p, e) if FM.source.rank else ()
    beta = []
    rN = FN.source.rank
    for w in FM.closure.W.basis:
        c = FN.closure.W.coords(fvecmat(w, g, rN))
        if c is None:
            raise ValidationFailure("map does not extend to the Gamma-closures")
        beta.append(reduce_vec(c, p, e))
    rows = [tuple(a) + (0,) * FN.triple.V.gens for a in alpha]
    rows += [(0,) * FN.triple.U.gens + tuple(bv) for bv in beta]
    return ModuleMap.build(X, Y, rows)


def _log(order: int, p: int) -> int:
    k = 0
    while order > 1:
        order //= p
        k += 1
    return k


def central_blocks(alg: FiniteAlgebra) -> list[tuple]:
    """Central primitive idempotents, ordered by their first nonzero coordinate."""
    basis = [alg.basis_vec(i) for i in range(alg.dim)]
    central = [e for e in alg.idempotents() if any(e)
               and all(alg.mul(e, x) == alg.mul(x, e) for x in basis)]
    prim = [e for e in central
            if not any(f != e and alg.mul(e, f) == f for f in central)]
    return sorted(prim, key=lambda e: (next(i for i, x in enumerate(e) if x), e))


def triple_text(D: DAlgebra, T: TripleModule) -> str:
    """(length of U | lengths of the Gamma-blocks of V | matrix of f, column per U generator)."""
    p = D.algebra.ring.p
    su = simplify(T.U)
    V = T.V
    basis, dims = [], []
    for eps in central_blocks(D.gam.algebra):
        blk = V.full().map(V.action_matrix(eps), V.gens) + V.relations
        sub = submodule_object(V, blk)
        ss = simplify(sub.module)
        dims.append(_log(ss.module.order, p))
        basis += [sub.lift(ss.back(y)) for y in ss.module.generators()]
    cols = []
    for y in su.module.generators():
        u = su.back(y)
        fu = vecmat(u, T.f, V.q, V.gens) if T.U.gens else (0,) * V.gens
        c = solve_modulo(V.ring, basis, fu, V.relations) if basis else ()
        if c is None:
            raise ValidationFailure("Gamma-blocks do not exhaust V")
        cols.append(c)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(basis))]
    mat = ";".join(",".join(str(x) for x in r) for r in rows) if cols else ""
    du = _log(su.module.order, p)
    return f"({du} | {','.join(map(str, dims))} | [{mat}])"


# ------------------------------------------------------------------ membership in the image class


@dataclass
class DClassReport:
    mono: bool
    generates: bool
    pp_mono: bool
    pp_generates: bool

    @property
    def agree(self) -> bool:
        return self.mono == self.pp_mono and self.generates == self.pp_generates

    def __bool__(self):
        return self.mono and self.generates

    def __str__(self):
        verdict = "in class" if self else "not in class"
        extra = "" if self.agree else " (pp cross-check DISAGREES)"
        return f"{verdict}: mono={self.mono} generates={self.generates}{extra}"


def class_formulas(D: DAlgebra):
    """Formulas whose solution sets are ker f, the V-part, and im(f) times Gamma/I."""
    alg = D.algebra
    one, z = alg.unit, alg.zero()
    neg = lambda a: tuple((-x) % alg.q for x in a)
    ker_f = PpFormula.make(alg, 1, 1, [[one, neg(D.e_U)], [D.element(b=D.gam.algebra.unit), z]])
    v_part = PpFormula.make(alg, 1, 0, [[tuple((a - b) % alg.q for a, b in zip(one, D.e_V))]])
    gen = PpFormula.make(alg, 1, D.dG, [[one] + [neg(D.corner(j)) for j in range(D.dG)]])
    return ker_f, v_part, gen


def in_D_class(D: DAlgebra, T: TripleModule, crosscheck: bool = True) -> DClassReport:
    U, V = T.U, T.V
    ring = V.ring
    if U.gens:
        ker = preimage(ring, T.f, V.relations, V.gens)
        mono = ker == U.relations
    else:
        mono = True
    span = close_under(T.image(), V.actions)
    generates = span == V.full()
    if not crosscheck:
        return DClassReport(mono, generates, mono, generates)
    X = T.to_D_module(D)
    ker_f, v_part, gen = class_formulas(D)
    pp_mono = evaluate(ker_f, X) == X.relations if X.gens else True
    pp_gen = evaluate(v_part, X) <= evaluate(gen, X) if X.gens else True
    return DClassReport(mono, generates, pp_mono, pp_gen)


# ------------------------------------------------------------------ realisation


@dataclass(eq=False)
class Realization:
    lattice: LatticeModule
    verified: object  # True / False / None (search budget exceeded)


def _right_ideal(G: OrderDatum, e) -> ZpLattice:
    return ZpLattice.span(G.p, G.dim, (G.mul(e, G.basis_vec(j)) for j in range(G.dim)))


def realize_triple(D: DAlgebra, T: TripleModule, name="M'") -> Realization:
    """A lattice M' with F(M') isomorphic to T, built inside a projective Gamma-lattice."""
    b = D.datum
    G, L = b.Gamma, b.Lambda
    if not b.baeckstroem:
        raise LiftFailure("realisation is only supported for Baeckstroem data")
    if not G.idempotents:
        raise LiftFailure("Gamma needs declared primitive idempotents for realisation")
    rep = in_D_class(D, T)
    if not rep:
        raise InputError(f"{T.name} is not in the image class: {rep}")
    V = T.V
    ring = V.ring
    idem = [D.gam.coords(e) for e in G.idempotents]
    pieces = [V.full().map(V.action_matrix(ebar), V.gens) + V.relations for ebar in idem]
    chosen = []
    S = V.relations
    while S != V.full():
        for s, part in enumerate(pieces):
            pick = next((x for x in coset_reps(part, V.relations) if not S.contains(x)), None)
            if pick is not None:
                chosen.append((s, pick))
                S = close_under(S + Subgroup.span(ring, V.gens, [pick]), V.actions)
                break
        else:
            raise LiftFailure("V does not split into summands e Gamma/I")
    blocks = []
    for s, v in chosen:
        lat = _right_ideal(G, G.idempotents[s])
        blocks.append((s, v, lat))
    R = sum(lat.rank for _, _, lat in blocks)
    if R == 0:
        return Realization(LatticeModule.zero(L, name), True)
    # Lambda action and the projection P -> V in the block basis
    lam_acts = [[[Fraction(0)] * R for _ in range(R)] for _ in range(L.dim)]
    Pi = []
    off = 0
    for s, v, lat in blocks:
        for bvec in lat.basis:
            Pi.append(vecmat(v, V.action_matrix(D.gam.coords(bvec)), V.q, V.gens))
            for i in range(L.dim):
                img = G.mul(bvec, b.embedding[i])
                c = lat.coords(img)
                if c is None:
                    raise LiftFailure("e Gamma is not Lambda-stable")
                row = lam_acts[i][off + lat.basis.index(bvec)]
                for k, x in enumerate(c):
                    row[off + k] = x
        off += lat.rank
    pre = preimage(ring, Pi, T.image(), V.gens)
    Mp = ZpLattice.from_residue(pre)
    acts = []
    for X in lam_acts:
        rows = []
        for w in Mp.basis:
            c = Mp.coords(fvecmat(w, X, R))
            if c is None:
                raise LiftFailure("preimage is not a Lambda-submodule")
            rows.append(c)
        acts.append(rows)
    M = LatticeModule.build(L, Mp.rank, acts, name)
    FM = apply_F(D, M)
    verified = iso_test(FM.triple.to_D_module(D), T.to_D_module(D))
    return Realization(M, verified)


# ------------------------------------------------------------------ enumeration and checks


def _simples(alg: FiniteAlgebra, ids=None) -> list[FModule]:
    reg = FModule.regular(alg)
    out = []
    for e in ids if ids is not None else alg.primitive_idempotents():
        top = Subgroup.span(alg.ring, alg.dim, (alg.mul(e, alg.basis_vec(j)) for j in range(alg.dim)))
        s = simplify(submodule_object(reg, top).module, f"S{len(out)}").module
        if not any(iso_test(s, t) for t in out):
            out.append(s)
    return out


def _multisets(dims: Sequence[int], bound: int):
    for mult in itertools.product(*(range(bound // d + 1) for d in dims)):
        if sum(m * d for m, d in zip(mult, dims)) <= bound:
            yield mult


def _sum_of(alg: FiniteAlgebra, simples, mult) -> FModule:
    parts = [s for s, k in zip(simples, mult) for _ in range(k)]
    return direct_sum(parts) if parts else FModule.zero(alg)


def _fingerprint(D: DAlgebra, X: FModule) -> tuple:
    """Isomorphism invariants: sizes of images and kernels of a few elements of D."""
    elems = [D.e_U, D.e_V] + [D.algebra.basis_vec(i) for i in range(D.algebra.dim)]
    out = [X.order]
    for a in elems:
        A = X.action_matrix(a)
        img = X.full().map(A, X.gens) + X.relations
        ker = preimage(X.ring, A, X.relations, X.gens) if X.gens else X.relations
        out += [img.order, ker.order]
    return tuple(out)


def _quick_iso(X: FModule, Y: FModule, tries: int = 64) -> bool:
    hs = HomSpace(X, Y)
    rng = random.Random(0)
    return any(hs.random_map(rng).is_iso() for _ in range(tries))


def enumerate_D_triples(D: DAlgebra, max_u: int = 3, max_v: int = 3, budget: int = 1 << 16) -> list[TripleModule]:
    """Indecomposable triples in the image class with bounded lengths, up to isomorphism.

    Both Lambda/I and Gamma/I must be semisimple, as they are for
    Baeckstroem data.
    """
    A, G = D.lam.algebra, D.gam.algebra
    p = A.ring.p
    su = _simples(A)
    gids = [D.gam.coords(e) for e in D.datum.Gamma.idempotents] or None
    sv = _simples(G, gids)
    du = [_log(s.order, p) for s in su]
    dv = [_log(s.order, p) for s in sv]
    found: list[TripleModule] = []
    seen: dict[tuple, list[FModule]] = {}  # isomorphism classes met so far, by fingerprint
    for mu in _multisets(du, max_u):
        U = _sum_of(A, su, mu)
        for mv in _multisets(dv, max_v):
            V = _sum_of(G, sv, mv)
            if U.is_zero() and V.is_zero():
                continue
            Vr = V.restrict(A, D.iota)
            for fmap in HomSpace(U, Vr).maps(budget):
                T = TripleModule(U, V, fmap.matrix)
                if not in_D_class(D, T, crosscheck=False):
                    continue
                X = T.to_D_module(D)
                bucket = seen.setdefault(_fingerprint(D, X), [])
                if any(_quick_iso(X, Y) or iso_test(X, Y, budget) for Y in bucket):
                    continue
                bucket.append(X)
                if is_indecomposable(X, budget):
                    found.append(T)
    out = sorted(found, key=lambda t: triple_text(D, t))
    for i, t in enumerate(out):
        t.name = f"T{i + 1}"
    return out


def fullness(D: DAlgebra, sources: Sequence[LatticeModule], targets: Sequence[LatticeModule]) -> FullnessReport:
    """Is Hom(L, M) -> Hom_D(FL, FM) onto?  Decided by comparing subgroups of Hom_D."""
    images = {}

    def get(m):
        if id(m) not in images:
            images[id(m)] = apply_F(D, m)
        return images[id(m)]

    entries = []
    for l in sources:
        for m in targets:
            fl, fm = get(l), get(m)
            hs = HomSpace(fl.triple.to_D_module(D), fm.triple.to_D_module(D))
            imgs = [apply_F_morphism(D, fl, fm, g).matrix for g in LatticeHom(l, m).basis()]
            sub = hs.subgroup_of(imgs) & hs.H
            entries.append(FullnessEntry(l.name, m.name, hs.size, sub.order // hs.K.order))
    return FullnessReport(entries)


# ------------------------------------------------------------------ the functor as pp data


def _scale(v, c) -> tuple:
    return tuple(Fraction(x) * c for x in v)


def F_as_ppspec(D: DAlgebra) -> InterpSpec:
    """F as (phi/psi; rho): phi = p^m Lambda-multiples x p^m Gamma-multiples, psi = p^m I on both."""
    b = D.datum
    L, G = b.Lambda, b.Gamma
    pm = b.p**b.m
    one, zero = L.unit, L.scalar(0)
    neg = lambda v: tuple(-x for x in v)
    gam = [_scale(b.to_lambda(G.basis_vec(j)), pm) for j in range(G.dim)]  # p^m Gamma basis
    ideal = [_scale(x, pm) for x in b.ideal_lambda().basis]
    k, t = len(gam), len(ideal)

    # phi: x1 = y p^m, x2 = sum w_j (p^m gamma_j)
    cols = [[one, zero, neg(L.scalar(pm))] + [zero] * k,
            [zero, one, zero] + [neg(g) for g in gam]]
    phi = PpFormula.make(L, 2, 1 + k, cols)
    cols = [[one, zero] + [neg(a) for a in ideal] + [zero] * t,
            [zero, one] + [zero] * t + [neg(a) for a in ideal]]
    psi = PpFormula.make(L, 2, 2 * t, cols)

    rho = []
    for a in D.lam.lifts:  # y1 = x1 a, y2 = 0
        rho.append(PpFormula.make(L, 4, 0, [[a, zero, neg(one), zero], [zero, zero, zero, one]]))
    lifts_g = [b.to_lambda(y) for y in D.gam.lifts]
    for bl in lifts_g:  # y1 = 0, x1 = z p^m, y2 = z (p^m b)
        rho.append(PpFormula.make(L, 4, 1, [
            [zero, zero, one, zero, zero],
            [one, zero, zero, zero, neg(L.scalar(pm))],
            [zero, zero, zero, neg(one), _scale(bl, pm)],
        ]))
    for cg in D.gam.lifts:  # y1 = 0, x2 = sum w_j (p^m gamma_j), y2 = sum w_j (p^m gamma_j c)
        prods = [_scale(b.to_lambda(G.mul(G.basis_vec(j), cg)), pm) for j in range(G.dim)]
        rho.append(PpFormula.make(L, 4, k, [
            [zero, zero, one, zero] + [zero] * k,
            [zero, one, zero, zero] + [neg(g) for g in gam],
            [zero, zero, zero, neg(one)] + prods,
        ]))
    return InterpSpec.build(L, D.algebra, phi, psi, rho, "F")


def route_comparison(D: DAlgebra, spec: InterpSpec, M: LatticeModule, im: Interpreted | None = None,
                     fm: FImage | None = None) -> ModuleMap:
    """The map I(M) -> F(M) dividing both coordinates by p^m."""
    im = im or apply_object(spec, M)
    fm = fm or apply_F(D, M)
    pm, r = M.p ** D.datum.m, M.rank
    X = fm.triple.to_D_module(D)
    rows = []
    for v in im.basis:
        x1 = [Fraction(x) / pm for x in v[:r]]
        y = fm.closure.W.coords(v[r:])
        if y is None:
            raise ValidationFailure("second coordinate outside p^m M Gamma")
        rows.append(fm.chart_U(x1) + fm.chart_V(y))
    return ModuleMap.build(im.module, X, rows)


def route_agreement(D: DAlgebra, family: Sequence[LatticeModule], spec: InterpSpec | None = None) -> Report:
    """Check that the comparison maps are isomorphisms, natural along maps within the family."""
    spec = spec or F_as_ppspec(D)
    ims = {m.name: apply_object(spec, m) for m in family}
    fms = {m.name: apply_F(D, m) for m in family}
    comps = {m.name: route_comparison(D, spec, m, ims[m.name], fms[m.name]) for m in family}
    members = []
    for m in family:
        problems = []
        c = comps[m.name]
        if not c.is_iso():
            problems.append("comparison map is not an isomorphism")
        for n in family:
            for g in LatticeHom(m, n).basis():
                left = apply_morphism(spec, ims[m.name], ims[n.name], g).then(comps[n.name])
                right = c.then(apply_F_morphism(D, fms[m.name], fms[n.name], g))
                if not left.equals(right):
                    problems.append(f"not natural along a map {m.name} -> {n.name}")
                    break
        members.append(MemberReport(m.name, not problems, problems))
    return Report("route agreement", members)
