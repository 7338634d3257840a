"""Interpretation functors given by a pp-pair and pp-defined actions.

A spec sends a module M to phi(M)/psi(M), with each basis element s of the
target algebra acting through the subgroup rho_s(M) of M^n x M^n.  Sources
are finite modules or lattices; in the lattice case every computation is
exact over Z_(p), so the quotient is well defined as long as it is killed by
the modulus of the target algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .algcore.algebra import FiniteAlgebra, OrderDatum
from .algcore.lattices import FPModule, LatticeHom, LatticeModule, fp_pushout, torsionfree_quotient
from .algcore.modules import FModule, HomSpace, ModuleMap
from .errors import DimensionError, InputError, RingMismatch, ValidationFailure
from .exactlin import Subgroup, preimage, solve_modulo, vecmat
from .exactlin.padic import ZpLattice, fmatmul, fvecmat, reduce_vec, solve as zp_solve
from .ppdsl import PpFormula, PpPair, evaluate, free_realization

Source = Union[FModule, LatticeModule]


@dataclass(frozen=True)
class InterpSpec:
    """(phi/psi; rho_s) with one 2n-ary formula per basis element of ``target``."""

    source: object
    target: FiniteAlgebra
    pair: PpPair
    rho: tuple
    name: str = field(default="I", compare=False)

    @classmethod
    def build(cls, source, target: FiniteAlgebra, phi: PpFormula, psi: PpFormula,
              rho: Mapping[int, PpFormula] | Sequence[PpFormula], name="I") -> "InterpSpec":
        pair = PpPair(phi, psi)
        if phi.algebra != source:
            raise RingMismatch(f"{name}: pair is not over {source.name}")
        if isinstance(rho, Mapping):
            missing = [j for j in range(target.dim) if j not in rho]
            if missing:
                raise InputError(f"{name}: no action formula for basis element(s) {missing} of {target.name}")
            rho = [rho[j] for j in range(target.dim)]
        rho = tuple(rho)
        if len(rho) != target.dim:
            raise InputError(f"{name}: need {target.dim} action formulas, got {len(rho)}")
        for j, r in enumerate(rho):
            if r.algebra != source:
                raise RingMismatch(f"{name}: action formula {j} is over another ring")
            if r.n != 2 * phi.n:
                raise DimensionError(f"{name}: action formula {j} has arity {r.n}, expected {2 * phi.n}")
        if target.ring.p != getattr(source, "p", getattr(getattr(source, "ring", None), "p", None)):
            raise RingMismatch(f"{name}: source and target live over different primes")
        return cls(source, target, pair, rho, name)

    @property
    def n(self) -> int:
        return self.pair.phi.n


# ------------------------------------------------------------------ solution-set backends


def _gens(m: Source) -> int:
    return m.gens if isinstance(m, FModule) else m.rank


def _product(a, b):
    """a x b inside the concatenated ambient."""
    if isinstance(a, Subgroup):
        return Subgroup.direct_sum([a, b])
    n = a.n + b.n
    rows = [tuple(r) + (Fraction(0),) * b.n for r in a.basis]
    rows += [(Fraction(0),) * a.n + tuple(r) for r in b.basis]
    return ZpLattice.span(a.p, n, rows)


def _full_like(a, n: int):
    return Subgroup.full(a.ring, n) if isinstance(a, Subgroup) else ZpLattice.full(a.p, n)


def _solve_mod(space, rows, target, modulo):
    """Coefficients c with c @ rows - target in ``modulo``, or None."""
    if isinstance(modulo, Subgroup):
        if not rows:
            return () if modulo.contains(target) else None
        return solve_modulo(modulo.ring, rows, target, modulo)
    k = len(rows)
    stacked = [tuple(r) for r in rows] + list(modulo.basis)
    if not stacked:
        return () if not any(target) else None
    x = zp_solve(stacked, target, modulo.p)
    return None if x is None else tuple(x[:k])


def _combine(coeffs, rows, width, q=None):
    if q is not None:
        return vecmat(coeffs, rows, q, width) if rows else (0,) * width
    return fvecmat(coeffs, rows, width) if rows else (Fraction(0),) * width


# ------------------------------------------------------------------ applied objects


@dataclass(eq=False)
class Interpreted:
    """I(M) together with its chart from phi(M) to generator coordinates."""

    spec: InterpSpec
    source: Source
    module: FModule
    phi: object
    psi: object
    graphs: tuple

    @property
    def basis(self):
        return self.phi.basis

    def chart(self, v: Sequence) -> tuple:
        """Coordinates in I(M) of an ambient tuple lying in phi(M)."""
        q = self.spec.target.q
        if isinstance(self.phi, Subgroup):
            c = solve_modulo(self.phi.ring, self.phi.basis, v, self.psi) if self.phi.basis else ()
            if c is None:
                raise InputError(f"{tuple(v)} is not a solution of the pair's top formula")
            return self.module.reduce([x % q for x in c])
        c = self.phi.coords(v)
        if c is None:
            raise InputError(f"{tuple(v)} is not a solution of the pair's top formula")
        return self.module.reduce(reduce_vec(c, self.phi.p, self.spec.target.ring.N))


@dataclass
class MemberReport:
    name: str
    ok: bool
    problems: list

    def __str__(self):
        if self.ok:
            return f"{self.name}: ok"
        return f"{self.name}: " + "; ".join(self.problems)


@dataclass
class Report:
    title: str
    members: list

    @property
    def ok(self) -> bool:
        return all(m.ok for m in self.members)

    def __bool__(self):
        return self.ok

    def __str__(self):
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        lines += ["  " + str(m) for m in self.members]
        return "\n".join(lines)


def _sets(spec: InterpSpec, m: Source):
    phi, psi = evaluate(spec.pair.phi, m), evaluate(spec.pair.psi, m)
    both = _product(phi, phi)
    graphs = tuple(evaluate(r, m) & both for r in spec.rho)
    return phi, psi, graphs


def _check_graphs(spec: InterpSpec, m: Source, phi, psi, graphs) -> list[str]:
    problems = []
    width = spec.n * _gens(m)
    if not psi <= phi:
        bad = next(r for r in psi.basis if not phi.contains(r))
        problems.append(f"bottom formula not below top formula, witness {_fmt(bad)}")
        return problems
    for j, g in enumerate(graphs):
        dom = g.project(0, width) + psi
        if dom != phi:
            bad = next(r for r in phi.basis if not dom.contains(r))
            problems.append(f"action {j} is not total, no image for {_fmt(bad)}")
        over_psi = g & _product(psi, _full_like(psi, width))
        for r in over_psi.basis:
            y = r[width:]
            if not psi.contains(y):
                problems.append(f"action {j} is not single valued: {_fmt(r[:width])} -> {_fmt(y)}")
                break
    return problems


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _quotient_relations(spec: InterpSpec, phi, psi) -> Subgroup:
    """Relations of phi/psi on the generators phi.basis, over the target ring."""
    ring_s = spec.target.ring
    k = len(phi.basis)
    e = ring_s.N
    if isinstance(phi, Subgroup):
        rel = preimage(phi.ring, phi.basis, psi, phi.n) if k else Subgroup.zero(phi.ring, 0)
        N = phi.ring.N
        if e <= N:
            killed = all(rel.contains([phi.ring.p**e * int(i == j) for j in range(k)]) for i in range(k))
            if not killed:
                raise InputError(f"{spec.name}: quotient is not killed by {ring_s.q}")
            return Subgroup.span(ring_s, k, rel.basis)
        rows = list(rel.basis) + [tuple(phi.ring.q * int(i == j) for j in range(k)) for i in range(k)]
        return Subgroup.span(ring_s, k, rows)
    coords = [phi.coords(r) for r in psi.basis]
    lat = ZpLattice.span(phi.p, k, coords)
    for i in range(k):
        if not lat.contains([Fraction(ring_s.q * int(i == j)) for j in range(k)]):
            raise InputError(f"{spec.name}: quotient is not killed by {ring_s.q}")
    return lat.reduce(e) if k else Subgroup.zero(ring_s, 0)


def _build(spec: InterpSpec, m: Source, phi, psi, graphs, name=None) -> Interpreted:
    S = spec.target
    rel = _quotient_relations(spec, phi, psi)
    k = len(phi.basis)
    shell = FModule(S, k, rel, tuple(() for _ in range(S.dim)), name or f"{spec.name}({m.name})")
    im = Interpreted(spec, m, shell, phi, psi, graphs)
    width = spec.n * _gens(m)
    q = phi.ring.q if isinstance(phi, Subgroup) else None
    acts = []
    for j, g in enumerate(graphs):
        first = [r[:width] for r in g.basis]
        second = [r[width:] for r in g.basis]
        rows = []
        for b in phi.basis:
            c = _solve_mod(phi, first, b, psi)
            if c is None:
                raise ValidationFailure(f"{spec.name}: action {j} has no value on {_fmt(b)} in {m.name}")
            y = _combine(c, second, width, q)
            rows.append(im.chart(y))
        acts.append(tuple(rows))
    im.module = FModule(S, k, rel, tuple(acts), shell.name)
    return im


def validate(spec: InterpSpec, family: Sequence[Source]) -> Report:
    """Totality, single-valuedness and the target algebra's laws on each member.

    Additivity of each action is automatic: the graphs are subgroups.
    """
    out = []
    for m in family:
        try:
            phi, psi, graphs = _sets(spec, m)
            problems = _check_graphs(spec, m, phi, psi, graphs)
            if not problems:
                im = _build(spec, m, phi, psi, graphs)
                try:
                    im.module.check()
                except ValidationFailure as exc:
                    problems.append(f"induced actions violate {spec.target.name}: {exc}")
        except InputError as exc:
            problems = [str(exc)]
        out.append(MemberReport(m.name, not problems, problems))
    return Report(f"validate {spec.name}", out)


def apply_object(spec: InterpSpec, m: Source, name=None) -> Interpreted:
    phi, psi, graphs = _sets(spec, m)
    problems = _check_graphs(spec, m, phi, psi, graphs)
    if problems:
        raise ValidationFailure(f"{spec.name} is not defined on {m.name}: {problems[0]}")
    im = _build(spec, m, phi, psi, graphs, name)
    im.module.check()
    return im


def _block_apply(v, f, n: int, g: int, h: int, q=None):
    out = []
    for i in range(n):
        part = v[i * g : (i + 1) * g]
        out.extend(_combine(part, f, h, q))
    return tuple(out)


def apply_morphism(spec: InterpSpec, im: Interpreted, iN: Interpreted, f) -> ModuleMap:
    """I(f) for f given by its matrix from im.source to iN.source."""
    g, h = _gens(im.source), _gens(iN.source)
    q = im.phi.ring.q if isinstance(im.phi, Subgroup) else None
    rows = []
    for b in im.basis:
        rows.append(iN.chart(_block_apply(b, f, spec.n, g, h, q)))
    return ModuleMap.build(im.module, iN.module, rows)


def kernel_member(spec: InterpSpec, m: Source) -> bool:
    """M lies in the kernel of I exactly when phi(M) = psi(M)."""
    return evaluate(spec.pair.phi, m) == evaluate(spec.pair.psi, m)


def _hom_basis(a: Source, b: Source) -> list:
    if isinstance(a, FModule):
        return HomSpace(a, b).basis()
    return LatticeHom(a, b).basis()


@dataclass
class FullnessEntry:
    source: str
    target: str
    hom_size: int
    image_size: int

    @property
    def surjective(self) -> bool:
        return self.hom_size == self.image_size

    def __str__(self):
        verdict = "surjective" if self.surjective else "NOT surjective"
        return f"{self.source} -> {self.target}: |Hom_S| = {self.hom_size}, image {self.image_size}, {verdict}"


@dataclass
class FullnessReport:
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.surjective for e in self.entries)

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "\n".join(str(e) for e in self.entries)


def fullness_check(spec: InterpSpec, sources: Sequence[Source], targets: Sequence[Source]) -> FullnessReport:
    """Is Hom_R(L, N) -> Hom_S(IL, IN) onto, for every L in sources and N in targets?

    The image is the subgroup spanned by the images of a generating set of
    Hom_R, compared with the whole of Hom_S.
    """
    applied = {}

    def get(m):
        if id(m) not in applied:
            applied[id(m)] = apply_object(spec, m)
        return applied[id(m)]

    entries = []
    for l in sources:
        for n in targets:
            il, iN = get(l), get(n)
            hs = HomSpace(il.module, iN.module)
            imgs = [apply_morphism(spec, il, iN, f).matrix for f in _hom_basis(l, n)]
            sub = hs.subgroup_of(imgs) & hs.H
            entries.append(FullnessEntry(l.name, n.name, hs.size, sub.order // hs.K.order))
    return FullnessReport(entries)


# ------------------------------------------------------------------ presentation


@dataclass(eq=False)
class FunctorPresentation:
    """delta: A -> B between lattices with coker Hom(delta, -) naturally isomorphic to I.

    ``point`` lists the images in A of the distinguished tuple of the free
    realisation of the top formula.
    """

    A: LatticeModule
    B: LatticeModule
    delta: tuple
    point: tuple
    spec: InterpSpec


def presentation(spec: InterpSpec) -> FunctorPresentation:
    order = spec.source
    if not isinstance(order, OrderDatum):
        raise InputError("presentations are built for specs over an order")
    phi, psi = spec.pair.phi, spec.pair.psi
    cp = free_realization(phi, "C")
    dp = free_realization(phi & psi, "D")
    C, D = cp.module, dp.module
    eps = tuple(tuple(Fraction(int(i == j)) for j in range(D.gens)) for i in range(C.gens))
    tc = torsionfree_quotient(C, "A")
    A = tc.lattice
    po = fp_pushout(FPModule.from_lattice(A), D, tc.projection, eps, "P")
    tp = torsionfree_quotient(po.module, "B")
    delta = fmatmul(po.from_b, tp.projection, tp.lattice.rank)
    point = tuple(fvecmat(c, tc.projection, A.rank) for c in cp.tuple)
    return FunctorPresentation(A, tp.lattice, delta, point, spec)


def _eta(pres: FunctorPresentation, g, width: int) -> tuple:
    out = []
    for a in pres.point:
        out.extend(fvecmat(a, g, width) if pres.A.rank else (Fraction(0),) * width)
    return tuple(out)


def presentation_verify(pres: FunctorPresentation, family: Sequence[LatticeModule]) -> Report:
    """Check Hom(A, M)/Hom(B, M)delta = I(M) through g -> g(point), naturally in M."""
    spec = pres.spec
    applied = {m.name: apply_object(spec, m) for m in family}
    members = []
    for m in family:
        problems = []
        im = applied[m.name]
        r = m.rank
        ha = LatticeHom(pres.A, m)
        basis = ha.basis()
        etas = [_eta(pres, g, r) for g in basis]
        for g, v in zip(basis, etas):
            if not im.phi.contains(v):
                problems.append(f"g(point) outside the top formula for g = {g}")
                break
        if not problems:
            S = spec.target
            imgs = Subgroup.span(S.ring, im.module.gens, (im.chart(v) for v in etas)) + im.module.relations
            if imgs != im.module.full():
                problems.append("comparison map Hom(A, M) -> I(M) is not onto")
            k = len(basis)
            ker = im.psi.preimage(etas, k) if k else ZpLattice.zero(m.p, 0)
            hb = LatticeHom(pres.B, m)
            rows = []
            for h in hb.basis():
                comp = fmatmul(pres.delta, h, r)
                c = ha.lattice.coords(ha.flatten(comp))
                if c is None:
                    problems.append("a composite through delta is not a homomorphism")
                    break
                rows.append(c)
            if k and ZpLattice.span(m.p, k, rows) != ker:
                problems.append("kernel of the comparison map differs from the image of Hom(delta, M)")
            # naturality against maps inside the family
            for n in family:
                iN = applied[n.name]
                for f in LatticeHom(m, n).basis():
                    If = apply_morphism(spec, im, iN, f)
                    for g, v in zip(basis, etas):
                        lhs = If(im.chart(v))
                        rhs = iN.chart(_eta(pres, fmatmul(g, f, n.rank), n.rank))
                        if lhs != rhs:
                            problems.append(f"naturality fails along a map {m.name} -> {n.name}")
                            break
                    else:
                        continue
                    break
        members.append(MemberReport(m.name, not problems, problems))
    return Report(f"presentation of {spec.name}", members)


# ------------------------------------------------------------------ stock specs


def identity_spec(algebra: FiniteAlgebra) -> InterpSpec:
    """x = x / x = 0 with each basis element acting by right multiplication."""
    from .ppdsl import parse

    rho = [parse(f"x2 = x1*e{j}", algebra) for j in range(algebra.dim)]
    return InterpSpec.build(algebra, algebra, parse("x1 = x1", algebra), parse("x1 = 0", algebra), rho, "id")


def reduction_spec(order: OrderDatum) -> InterpSpec:
    """M -> M/Mp as x = x / p | x over Lambda/p Lambda."""
    from .ppdsl import parse

    target = order.at(1)
    phi = parse("x1 = x1", order)
    psi = parse(f"{order.p} | x1", order)
    rho = [parse(f"x2 = x1*e{j}", order) for j in range(order.dim)]
    return InterpSpec.build(order, target, phi, psi, rho, "mod p")
