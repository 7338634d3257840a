"""Command implementations.  Each returns a Result with text and JSON-ready data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..algcore.algebra import OrderDatum
from ..algcore.lattices import LatticeHom, LatticeModule, ext1, lattice_indecomposable, lattice_iso
from ..algcore.modules import EndomorphismRing, FModule, HomSpace, endolength, is_indecomposable, iso_test
from ..errors import BudgetExceeded, InputError, PrecisionError
from ..interp import apply_object, fullness_check, presentation, presentation_verify, validate
from ..latdim import CHAIN, TWO_ELEMENT, FiniteLattice, bounds_eval, custom_class, ldim, parse_ordinal
from ..maranda import indec_transfer_check, interval_lattice, k0_family, maranda_iso_check, pseudoendolength
from ..ppdsl import PpFormula, chi_alpha, compare_with_invariant, evaluate, leq, parse, pptype_generator, solution_elements, to_text
from ..rrfun import (
    F_as_ppspec,
    apply_F,
    enumerate_D_triples,
    fullness as rr_fullness,
    in_D_class,
    realize_triple,
    route_agreement,
    triple_text,
)
from ..zgtop import bar_V, cb_rank, cb_ranks, closure, is_closed, open_basis_decomposition, parse_point, parse_subset
from .fixtures import FIXTURES
from .session import Session, parse_rows, space


@dataclass
class Result:
    text: str
    data: object = None
    ok: bool = True  # False: a checked property failed (exit 1)


@dataclass
class Context:
    args: list
    load: Callable[[], Session]
    _session: Session | None = None
    kv: dict = field(default_factory=dict)
    pos: list = field(default_factory=list)

    def __post_init__(self):
        for a in self.args:
            if "=" in a and not a.startswith("=") and a.split("=", 1)[0].isidentifier():
                k, v = a.split("=", 1)
                self.kv[k] = v
            else:
                self.pos.append(a)

    @property
    def s(self) -> Session:
        if self._session is None:
            self._session = self.load()
        return self._session

    def need(self, i: int, what: str) -> str:
        if len(self.pos) <= i:
            raise InputError(f"missing argument: {what}")
        return self.pos[i]

    def opt(self, key: str, i: int | None = None, what: str = "") -> str | None:
        if key in self.kv:
            return self.kv[key]
        if i is not None and len(self.pos) > i:
            return self.pos[i]
        return None

    def req(self, key: str, i: int, what: str) -> str:
        v = self.opt(key, i)
        if v is None:
            raise InputError(f"missing argument: {what}")
        return v


# ------------------------------------------------------------------ formatting


def fmt_vec(v) -> str:
    return ",".join(str(x) for x in v)


def fmt_mat(m) -> str:
    return "[" + ";".join(fmt_vec(r) for r in m) + "]" if m else "[]"


def fmt_element(v) -> str:
    return str(v[0]) if len(v) == 1 else "(" + ",".join(str(x) for x in v) + ")"


def fmt_tuple(v, n: int, g: int) -> str:
    if n == 1:
        return fmt_element(v)
    return "(" + ", ".join(fmt_element(v[i * g:(i + 1) * g]) for i in range(n)) + ")"


def summary(m) -> str:
    if isinstance(m, LatticeModule):
        return f"{m.name}: lattice of rank {m.rank} over {m.order.name}"
    inv = " + ".join(f"Z/{x}" for x in m.invariants()) or "0"
    return f"{m.name}: module over {m.algebra.name}, order {m.order}, group {inv}"


def _bool(x) -> str:
    return "unknown" if x is None else str(bool(x)).lower()


def _precision(s: Session, k: int):
    if k < 1:
        raise InputError("k must be positive")
    if k > s.precision:
        raise PrecisionError(f"k = {k} exceeds the session precision {s.precision}")


# ------------------------------------------------------------------ pp commands


def _formula(ctx: Context, ref: str, alg, n: int | None = None) -> PpFormula:
    kind, f = ctx.s.find(ref, "formula")
    if kind:
        return f
    return parse(ref, alg, ctx.s.objects.get("const", {}), n=n)


def _alg_of(m):
    return m.order if isinstance(m, LatticeModule) else m.algebra


def cmd_eval_pp(ctx: Context) -> Result:
    m = ctx.s.module(ctx.need(1, "module"))
    phi = _formula(ctx, ctx.need(0, "formula"), _alg_of(m))
    if isinstance(m, LatticeModule):
        lat = evaluate(phi, m)
        rows = [fmt_vec(r) for r in lat.basis]
        return Result("lattice spanned by {" + "; ".join(rows) + "}", {"basis": [[str(x) for x in r] for r in lat.basis]})
    els = sorted(solution_elements(phi, m, ctx.s.budget))
    text = "{" + ", ".join(fmt_tuple(v, phi.n, m.gens) for v in els) + "}"
    return Result(text, {"elements": [list(v) for v in els], "size": len(els)})


def cmd_pp_leq(ctx: Context) -> Result:
    fam = ctx.s.members(ctx.pos[2:])
    if not fam:
        raise InputError("pp-leq needs at least one module or family")
    alg = _alg_of(fam[0])
    phi = _formula(ctx, ctx.need(0, "first formula"), alg)
    psi = _formula(ctx, ctx.need(1, "second formula"), alg, n=phi.n)
    res = leq(phi, psi, fam)
    return Result(str(res), {"holds": res.holds, "family": list(res.family), "witness": res.witness})


def cmd_pptype_gen(ctx: Context) -> Result:
    ref = ctx.need(0, "pointed module or module")
    kind, pm = ctx.s.find(ref, "pointed")
    if not kind:
        from ..ppdsl import PointedModule

        m = ctx.s.module(ref)
        rows = parse_rows(ctx.need(1, "tuple"))
        if isinstance(m, FModule):
            rows = [m.reduce([int(x) % m.q for x in r]) for r in rows]
        pm = PointedModule(m, tuple(tuple(r) for r in rows))
    f = pptype_generator(pm)
    return Result(to_text(f), {"formula": to_text(f)})


def cmd_chi_alpha(ctx: Context) -> Result:
    delta = ctx.s.get(ctx.need(0, "delta map"), "map")
    alpha = ctx.s.get(ctx.need(1, "alpha map"), "map")
    pl = ctx.s.get(ctx.need(2, "pointed module"), "pointed")
    f = chi_alpha(delta, alpha, pl)
    lines = [to_text(f)]
    data = {"formula": to_text(f)}
    if len(ctx.pos) > 3:
        n = ctx.s.module(ctx.pos[3])
        els = sorted(solution_elements(f, n, ctx.s.budget))
        lines.append(f"on {n.name}: {{" + ", ".join(fmt_tuple(v, f.n, n.gens) for v in els) + "}")
        data["elements"] = [list(v) for v in els]
    return Result("\n".join(lines), data)


# ------------------------------------------------------------------ module commands


def cmd_hom(ctx: Context) -> Result:
    m, n = ctx.s.module(ctx.need(0, "source")), ctx.s.module(ctx.need(1, "target"))
    if isinstance(m, LatticeModule):
        h = LatticeHom(m, n)
        lines = [f"Hom({m.name}, {n.name}): free of rank {h.rank}"]
        lines += [f"  {fmt_mat(b)}" for b in h.basis()]
        return Result("\n".join(lines), {"rank": h.rank, "basis": [[[str(x) for x in r] for r in b] for b in h.basis()]})
    hs = HomSpace(m, n)
    lines = [f"|Hom({m.name}, {n.name})| = {hs.size}"]
    lines += [f"  {fmt_mat(b)}" for b in hs.basis()]
    return Result("\n".join(lines), {"size": hs.size, "generators": [list(map(list, b)) for b in hs.basis()]})


def cmd_end(ctx: Context) -> Result:
    m = ctx.s.module(ctx.need(0, "module"))
    if isinstance(m, LatticeModule):
        h = LatticeHom(m, m)
        local = lattice_indecomposable(m, ctx.s.budget)
        return Result(f"End({m.name}): free of rank {h.rank}, local={_bool(local)}", {"rank": h.rank, "local": local})
    e = EndomorphismRing(m)
    local = is_indecomposable(m, ctx.s.budget)
    return Result(f"|End({m.name})| = {e.size}, local={_bool(local)}", {"size": e.size, "local": local})


def cmd_endolength(ctx: Context) -> Result:
    m = ctx.s.get(ctx.need(0, "module"), "module")
    n = endolength(m)
    return Result(f"endolength({m.name}) = {n}", {"endolength": n})


def cmd_pp_vs_end(ctx: Context) -> Result:
    m = ctx.s.get(ctx.need(0, "module"), "module")
    refs = ctx.pos[1:]
    if not refs:
        raise InputError("pp-vs-end needs at least one formula")
    c = compare_with_invariant(m, [_formula(ctx, r, m.algebra, n=1) for r in refs], ctx.s.budget)
    lines = [str(c), f"agree: {_bool(c.agree)}"]
    lines += [f"  not reached: {fmt_mat(s.basis)}" for s in c.missing]
    lines += [f"  not invariant: {fmt_mat(s.basis)}" for s in c.not_invariant]
    return Result("\n".join(lines), {"agree": c.agree, "generated": len(c.generated), "invariant": len(c.invariant),
                                     "missing": [s.basis for s in c.missing]})


def cmd_ext1(ctx: Context) -> Result:
    l, m = ctx.s.get(ctx.need(0, "lattice"), "lattice"), ctx.s.get(ctx.need(1, "lattice"), "lattice")
    g = ext1(l, m)
    return Result(f"Ext^1({l.name}, {m.name}) = {g}", {"invariants": list(g.invariants), "order": g.order})


def cmd_iso(ctx: Context) -> Result:
    m, n = ctx.s.module(ctx.need(0, "module")), ctx.s.module(ctx.need(1, "module"))
    if isinstance(m, LatticeModule):
        r = lattice_iso(m, n, ctx.s.budget)
    else:
        r = iso_test(m, n, ctx.s.budget)
        if r is None:
            raise BudgetExceeded(f"isomorphism search for {m.name}, {n.name} exceeded the budget")
    return Result(_bool(r), {"iso": r})


def cmd_indec(ctx: Context) -> Result:
    m = ctx.s.module(ctx.need(0, "module"))
    r = lattice_indecomposable(m, ctx.s.budget) if isinstance(m, LatticeModule) else is_indecomposable(m, ctx.s.budget)
    return Result(_bool(r), {"indecomposable": r})


def cmd_reduce(ctx: Context) -> Result:
    l = ctx.s.get(ctx.need(0, "lattice"), "lattice")
    k = int(ctx.need(1, "k"))
    _precision(ctx.s, k)
    m = l.reduce_mod(k)
    acts = [fmt_mat(a) for a in m.actions]
    lines = [summary(m)] + [f"  e{i} acts by {a}" for i, a in enumerate(acts)]
    return Result("\n".join(lines), {"order": m.order, "invariants": list(m.invariants()), "actions": [list(map(list, a)) for a in m.actions]})


# ------------------------------------------------------------------ maranda


def _family(ctx: Context, default):
    ref = ctx.kv.get("family")
    return ctx.s.lattices(ref.split(",")) if ref else default


def cmd_k0(ctx: Context) -> Result:
    fam = ctx.s.lattices(ctx.pos) if ctx.pos else ctx.s.lattices(ctx.s.names("lattice"))
    k0 = k0_family(fam)
    names = ", ".join(m.name for m in fam)
    return Result(f"k0 = {k0} (relative to the family {{{names}}})", {"k0": k0, "family": [m.name for m in fam]})


def cmd_maranda_check(ctx: Context) -> Result:
    m, n = ctx.s.get(ctx.need(0, "lattice"), "lattice"), ctx.s.get(ctx.need(1, "lattice"), "lattice")
    k = int(ctx.need(2, "k"))
    _precision(ctx.s, k)
    k0 = k0_family(_family(ctx, [m, n]))
    r = maranda_iso_check(m, n, k, k0, ctx.s.budget)
    t = indec_transfer_check(m, k, k0, ctx.s.budget)
    text = f"{r}\n{t}"
    return Result(text, {"reduced_iso": r.reduced_iso, "lattice_iso": r.lattice_iso, "k0": k0,
                         "in_range": r.in_range, "indecomposable_transfer": t.reduction_indecomposable})


def cmd_psel(ctx: Context) -> Result:
    m = ctx.s.get(ctx.need(0, "lattice"), "lattice")
    k = int(ctx.need(1, "k"))
    _precision(ctx.s, k + 1)
    k0 = k0_family(_family(ctx, [m]))
    r = pseudoendolength(m, k, k0)
    return Result(str(r), {"value": str(r.value), "integral": r.integral, "endolengths": list(r.endolengths)})


def cmd_interval_lattice(ctx: Context) -> Result:
    m = ctx.s.get(ctx.need(0, "lattice"), "lattice")
    k = int(ctx.need(1, "k"))
    _precision(ctx.s, k)
    il = interval_lattice(m, k)
    L = il.lattice
    text = f"{L.to_text()}\nsize {L.n}, length {L.height()}, modular={_bool(L.is_modular())}"
    return Result(text, {"elements": list(L.labels), "covers": [[L.labels[a], L.labels[b]] for a, b in L.covers()],
                         "length": L.height(), "modular": L.is_modular()})


# ------------------------------------------------------------------ interpretations


def _spec(ctx: Context, i: int = 0):
    return ctx.s.get(ctx.need(i, "interpretation"), "interp")


def _spec_family(ctx: Context, spec, start: int):
    names = ctx.pos[start:]
    if names:
        return ctx.s.members(names)
    kind = "lattice" if isinstance(spec.source, OrderDatum) else "module"
    return [m for n in ctx.s.names(kind) for m in [ctx.s.get(n, kind)] if _alg_of(m) == spec.source]


def cmd_interp_validate(ctx: Context) -> Result:
    spec = _spec(ctx)
    rep = validate(spec, _spec_family(ctx, spec, 1))
    return Result(str(rep), {"ok": rep.ok, "members": {m.name: m.problems for m in rep.members}}, rep.ok)


def cmd_interp_apply(ctx: Context) -> Result:
    spec = _spec(ctx)
    m = ctx.s.module(ctx.need(1, "module"))
    im = apply_object(spec, m)
    lines = [summary(im.module)] + [f"  e{i} acts by {fmt_mat(a)}" for i, a in enumerate(im.module.actions)]
    return Result("\n".join(lines), {"order": im.module.order, "invariants": list(im.module.invariants())})


def cmd_interp_full(ctx: Context) -> Result:
    spec = _spec(ctx)
    fam = _spec_family(ctx, spec, 1)
    rep = fullness_check(spec, fam, fam)
    return Result(str(rep), {"full": rep.ok, "pairs": [[e.source, e.target, e.hom_size, e.image_size] for e in rep.entries]}, rep.ok)


def cmd_interp_present(ctx: Context) -> Result:
    spec = _spec(ctx)
    pres = presentation(spec)
    fam = _spec_family(ctx, spec, 1)
    rep = presentation_verify(pres, fam)
    head = [f"A = {pres.A.name} (rank {pres.A.rank}), B = {pres.B.name} (rank {pres.B.rank})",
            f"delta = {fmt_mat(pres.delta)}", f"point = {fmt_mat(pres.point)}"]
    return Result("\n".join(head + [str(rep)]), {"ok": rep.ok, "rank_A": pres.A.rank, "rank_B": pres.B.rank}, rep.ok)


# ------------------------------------------------------------------ rrfun


def _D(ctx: Context):
    return ctx.s.default("dalgebra", ctx.kv.get("datum"))


def cmd_rr_build_d(ctx: Context) -> Result:
    D = ctx.s.default("dalgebra", ctx.opt("datum", 0))
    A, G = D.lam.algebra, D.gam.algebra
    labels = [f"a{i}" for i in range(D.dA)] + [f"b{j}" for j in range(D.dG)] + [f"c{j}" for j in range(D.dG)]
    lines = [f"D = [[Lambda/I, Gamma/I], [0, Gamma/I]] over Z/{D.algebra.q}: dimension {D.algebra.dim}",
             f"  Lambda/I: dimension {A.dim}; Gamma/I: dimension {G.dim}",
             f"  basis: {', '.join(labels)}",
             f"  Lambda/I -> Gamma/I: {fmt_mat(D.iota)}"]
    return Result("\n".join(lines), {"dim": D.algebra.dim, "lambda_dim": A.dim, "gamma_dim": G.dim})


def cmd_rr_apply(ctx: Context) -> Result:
    D = _D(ctx)
    m = ctx.s.get(ctx.req("L", 0, "lattice (L=NAME)"), "lattice")
    t = triple_text(D, apply_F(D, m).triple)
    return Result(t, {"triple": t})


def cmd_rr_ppspec(ctx: Context) -> Result:
    D = _D(ctx)
    spec = F_as_ppspec(D)
    order = D.datum.Lambda
    fam = ctx.s.lattices(ctx.pos) if ctx.pos else [
        ctx.s.get(n, "lattice") for n in ctx.s.names("lattice") if ctx.s.get(n, "lattice").order == order]
    lines = [f"phi: {to_text(spec.pair.phi)}", f"psi: {to_text(spec.pair.psi)}"]
    lines += [f"rho{j}: {to_text(r)}" for j, r in enumerate(spec.rho)]
    val = validate(spec, fam)
    agree = route_agreement(D, fam, spec)
    lines += [str(val), str(agree)]
    ok = val.ok and agree.ok
    return Result("\n".join(lines), {"valid": val.ok, "routes_agree": agree.ok}, ok)


def _triple(ctx: Context):
    if "triple" in ctx.kv:
        return ctx.s.get(ctx.kv["triple"], "triple")
    if "L" in ctx.kv:
        D = _D(ctx)
        return D, apply_F(D, ctx.s.get(ctx.kv["L"], "lattice")).triple
    raise InputError("name a triple (triple=NAME) or a lattice (L=NAME)")


def cmd_rr_indclass(ctx: Context) -> Result:
    D, T = _triple(ctx)
    rep = in_D_class(D, T)
    return Result(str(rep), {"in_class": bool(rep), "mono": rep.mono, "generates": rep.generates,
                             "crosscheck_agrees": rep.agree}, rep.agree)


def _realize_text(D, T, r) -> str:
    M = r.lattice
    acts = "  ".join(f"e{i}={fmt_mat(a)}" for i, a in enumerate(M.actions))
    return f"{triple_text(D, T)} <- rank {M.rank} lattice {acts}; F(M) matches: {_bool(r.verified)}"


def cmd_rr_realize(ctx: Context) -> Result:
    if ctx.pos and ctx.pos[0] == "all":
        D = _D(ctx)
        lines, ok, data = [], True, []
        for T in enumerate_D_triples(D, int(ctx.kv.get("max_u", 3)), int(ctx.kv.get("max_v", 3))):
            r = realize_triple(D, T, f"M({T.name})")
            ok = ok and r.verified is True
            lines.append(_realize_text(D, T, r))
            data.append({"triple": triple_text(D, T), "rank": r.lattice.rank, "verified": r.verified})
        lines.insert(0, f"{len(data)} indecomposable triples")
        return Result("\n".join(lines), data, ok)
    D, T = _triple(ctx)
    r = realize_triple(D, T)
    return Result(_realize_text(D, T, r), {"rank": r.lattice.rank, "verified": r.verified,
                                            "actions": [[[str(x) for x in row] for row in a] for a in r.lattice.actions]},
                  r.verified is True)


def cmd_rr_full(ctx: Context) -> Result:
    D = _D(ctx)
    fam = ctx.s.lattices(ctx.pos) if ctx.pos else [
        ctx.s.get(n, "lattice") for n in ctx.s.names("lattice") if ctx.s.get(n, "lattice").order == D.datum.Lambda]
    rep = rr_fullness(D, fam, fam)
    return Result(str(rep), {"full": rep.ok}, rep.ok)


# ------------------------------------------------------------------ lattices and ordinals


def _poset(ctx: Context, ref: str) -> FiniteLattice:
    parts = ref.split(":")
    if parts[0] == "chain" and len(parts) == 2:
        return FiniteLattice.chain(int(parts[1]))
    if parts[0] == "boolean" and len(parts) == 2:
        return FiniteLattice.boolean(int(parts[1]))
    if ref == "diamond":
        return FiniteLattice.diamond()
    if ref == "pentagon":
        return FiniteLattice.pentagon()
    if ref == "singleton":
        return FiniteLattice.singleton()
    if parts[0] == "interval" and len(parts) == 3:
        k = int(parts[2])
        _precision(ctx.s, k)
        return interval_lattice(ctx.s.get(parts[1], "lattice"), k).lattice
    return ctx.s.get(ref, "poset")


def _ldim(ctx: Context, cls) -> Result:
    L = _poset(ctx, ctx.need(0, "lattice"))
    d = ldim(L, cls)
    return Result(str(d), {"value": str(d), "class": cls.name})


def cmd_ldim(ctx: Context) -> Result:
    name = ctx.kv.get("class", "two_element")
    table = {"two_element": TWO_ELEMENT, "chain": CHAIN,
             "distributive": custom_class("distributive", lambda L: L.is_distributive())}
    if name not in table:
        raise InputError(f"unknown interval class {name!r} (choose from {', '.join(table)})")
    return _ldim(ctx, table[name])


def cmd_mdim(ctx: Context) -> Result:
    return _ldim(ctx, TWO_ELEMENT)


def cmd_breadth(ctx: Context) -> Result:
    return _ldim(ctx, CHAIN)


def cmd_ord_bounds(ctx: Context) -> Result:
    a = parse_ordinal(ctx.need(0, "dimension of the image side"))
    b = parse_ordinal(ctx.need(1, "dimension of the kernel side"))
    lo, hi = bounds_eval(a, b)
    return Result(f"lower={lo} upper={hi}", {"lower": str(lo), "upper": str(hi)})


# ------------------------------------------------------------------ zgtop


def _zg_args(ctx: Context):
    sp = space(ctx.s, ctx.kv.get("space"))
    items = []
    for a in ctx.pos:
        kind, C = ctx.s.find(a, "zgset")
        items.append(C if kind else parse_subset(sp, [a]))
    C = sp.empty()
    for x in items:
        C = C | x
    return sp, C


def cmd_zg_closure(ctx: Context) -> Result:
    sp, C = _zg_args(ctx)
    c = closure(sp, C)
    return Result(str(c), {"closure": str(c)})


def cmd_zg_closed(ctx: Context) -> Result:
    sp, C = _zg_args(ctx)
    r = is_closed(sp, C)
    lines = [_bool(r)]
    if not r:
        lines.append(f"closure: {closure(sp, C)}")
    else:
        dec = open_basis_decomposition(sp, C.complement(sp))
        lines.append(f"complement: reduced part {dec.reduced_part}; divisibles {sorted(dec.neighbourhoods) or '[]'}")
    return Result("\n".join(lines), {"closed": r})


def cmd_zg_barv(ctx: Context) -> Result:
    sp, C = _zg_args(ctx)
    v = bar_V(sp, C)
    return Result(str(v), {"bar_V": str(v), "closed": is_closed(sp, v)})


def cmd_zg_cbrank(ctx: Context) -> Result:
    sp = space(ctx.s, ctx.kv.get("space"))
    target = ctx.pos[0] if ctx.pos else "all"
    if target != "all":
        r = cb_rank(sp, parse_point(target))
        return Result(str(r), {"rank": r})
    from ..zgtop import _fmt_point, cb_table_mismatches

    ranks = cb_ranks(sp)
    lines = []
    for key, r in ranks.items():
        p = ("lat", key[1], 1) if key[0] == "lat" else key
        label = f"{key[1]}[*]" if key[0] == "lat" else _fmt_point(p)
        lines.append(f"{label}: {r}")
    bad = cb_table_mismatches(sp)
    lines += [f"MISMATCH {b}" for b in bad]
    return Result("\n".join(lines), {"ranks": {l.split(": ")[0]: l.split(": ")[1] for l in lines if not l.startswith("MISMATCH")},
                                     "mismatches": bad}, not bad)


def cmd_fixtures(ctx: Context) -> Result:
    name = ctx.need(0, "fixture name")
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r} (available: {', '.join(sorted(FIXTURES))})")
    return Result(FIXTURES[name].rstrip("\n"), {"session": FIXTURES[name]})


COMMANDS: dict[str, tuple[Callable[[Context], Result], bool, str]] = {
    # name: (handler, needs a session, usage)
    "eval-pp": (cmd_eval_pp, True, "FORMULA MODULE"),
    "pp-leq": (cmd_pp_leq, True, "FORMULA FORMULA MODULE|FAMILY ..."),
    "pptype-gen": (cmd_pptype_gen, True, "POINTED | MODULE ROWS"),
    "chi-alpha": (cmd_chi_alpha, True, "DELTA ALPHA POINTED [MODULE]"),
    "hom": (cmd_hom, True, "M N"),
    "end": (cmd_end, True, "M"),
    "endolength": (cmd_endolength, True, "M"),
    "pp-vs-end": (cmd_pp_vs_end, True, "M FORMULA ..."),
    "ext1": (cmd_ext1, True, "L M"),
    "iso": (cmd_iso, True, "M N"),
    "indec": (cmd_indec, True, "M"),
    "reduce": (cmd_reduce, True, "L K"),
    "k0": (cmd_k0, True, "[LATTICE|FAMILY ...]"),
    "maranda-check": (cmd_maranda_check, True, "M N K [family=F]"),
    "psel": (cmd_psel, True, "M K [family=F]"),
    "interval-lattice": (cmd_interval_lattice, True, "M K"),
    "interp-validate": (cmd_interp_validate, True, "SPEC [MODULE|FAMILY ...]"),
    "interp-apply": (cmd_interp_apply, True, "SPEC M"),
    "interp-full": (cmd_interp_full, True, "SPEC [MODULE|FAMILY ...]"),
    "interp-present": (cmd_interp_present, True, "SPEC [LATTICE|FAMILY ...]"),
    "rr-build-d": (cmd_rr_build_d, True, "[DATUM]"),
    "rr-apply": (cmd_rr_apply, True, "L=LATTICE [datum=D]"),
    "rr-ppspec": (cmd_rr_ppspec, True, "[LATTICE|FAMILY ...] [datum=D]"),
    "rr-indclass": (cmd_rr_indclass, True, "triple=T | L=LATTICE [datum=D]"),
    "rr-realize": (cmd_rr_realize, True, "triple=T | L=LATTICE | all [datum=D]"),
    "rr-full": (cmd_rr_full, True, "[LATTICE|FAMILY ...] [datum=D]"),
    "ldim": (cmd_ldim, False, "LATTICE [class=two_element|chain|distributive]"),
    "mdim": (cmd_mdim, False, "LATTICE"),
    "breadth": (cmd_breadth, False, "LATTICE"),
    "ord-bounds": (cmd_ord_bounds, False, "A B"),
    "zg-closure": (cmd_zg_closure, True, "[space=S] ITEM ..."),
    "zg-closed": (cmd_zg_closed, True, "[space=S] ITEM ..."),
    "zg-barv": (cmd_zg_barv, True, "[space=S] ITEM ..."),
    "zg-cbrank": (cmd_zg_cbrank, True, "[space=S] POINT|all"),
    "fixtures": (cmd_fixtures, False, "e1|e2"),
}
