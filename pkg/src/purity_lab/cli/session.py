"""Session files: a versioned, line-oriented list of declarations.

The first non-blank line must be ``purity-lab/1``.  Each further line is
split shell-style; ``#`` starts a comment.  Matrices are written row by row,
rows separated by ``;`` and entries by ``,`` (``1,0;0,1``).  Entries over an
order may be fractions with denominators prime to p.

Declarations::

    precision K                        budget N
    ring NAME p N
    algebra NAME p N DIM unit=V  i,j=V ...
    order NAME p DIM unit=V [idempotents=ROWS]  i,j=V ...
    const NAME ALG V
    module NAME ALG regular | free=R | gens=G [rel=ROWS] act0=MAT act1=MAT ...
    module NAME = reduce LATTICE K      module NAME = sum A B ...
    lattice NAME ORDER regular | rank=R act0=MAT ...      lattice NAME = sum A B ...
    map NAME SOURCE TARGET MAT
    pointed NAME MODULE ROWS
    formula NAME ALG TEXT
    family NAME MEMBER ...
    datum NAME LAMBDA GAMMA embedding=ROWS [ideal=ROWS] n=N m=M [baeckstroem]
    triple NAME DATUM U=MODULE V=MODULE f=MAT
    interp NAME reduction ORDER | identity ALG | rr DATUM
    interp NAME custom SOURCE TARGET phi=TEXT psi=TEXT rho0=TEXT rho1=TEXT ...
    poset NAME elements=a,b,c covers=a<b,b<c
    zgspace NAME types=N [divisibles=Q1,Q2]
    tube SPACE NAME type=I qs=E1,E2 [to=E1,..] [from=E1,..]
    exceptional SPACE NAME component=C
    hull SPACE KEY Q1,Q2               (KEY: quasi-simple, exceptional name or G<i>)
    zgset NAME SPACE ITEM ...

Algebras may be written ``ORDER@K`` for ORDER / p^K ORDER.  A declared datum
NAME also provides the algebras ``NAME.D``, ``NAME.lam`` and ``NAME.gam``.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction

from ..algcore.algebra import FiniteAlgebra, OrderDatum
from ..algcore.lattices import LatticeModule, lattice_sum
from ..algcore.modules import FModule, ModuleMap, direct_sum
from ..errors import InputError, PurityLabError, ValidationFailure
from ..exactlin import ResidueRing
from ..interp import InterpSpec, identity_spec, reduction_spec
from ..latdim import FiniteLattice
from ..ppdsl import PointedModule, parse
from ..rrfun import BaeckstroemDatum, TripleModule, F_as_ppspec, build_D
from ..zgtop import TameZgSpace, Tube, parse_subset

HEADER = "purity-lab/1"
DEFAULT_BUDGET = 1 << 20


class SessionError(InputError):
    pass


def _num(s: str):
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SessionError(f"not a number: {s!r}") from None
    return int(x) if x.denominator == 1 else x


def parse_vec(s: str) -> list:
    return [_num(x) for x in s.split(",") if x.strip() != ""]


def parse_rows(s: str) -> list[list]:
    s = s.strip()
    if s in ("", "-"):
        return []
    return [parse_vec(r) for r in s.split(";")]


def _kv(tokens):
    pos, kv = [], {}
    for t in tokens:
        if "=" in t and not t.startswith("="):
            k, v = t.split("=", 1)
            kv[k] = v
        else:
            pos.append(t)
    return pos, kv


@dataclass
class Session:
    precision: int = 8
    budget: int = DEFAULT_BUDGET
    objects: dict = field(default_factory=dict)  # kind -> name -> object
    _zg: dict = field(default_factory=dict)  # space name -> builder data

    # registry ---------------------------------------------------------
    def put(self, kind: str, name: str, obj):
        table = self.objects.setdefault(kind, {})
        if name in table:
            raise SessionError(f"{kind} {name!r} declared twice")
        table[name] = obj

    def get(self, name: str, *kinds: str):
        for k in kinds:
            if name in self.objects.get(k, {}):
                return self.objects[k][name]
        raise SessionError(f"no {' or '.join(kinds)} named {name!r}")

    def find(self, name: str, *kinds: str):
        for k in kinds:
            if name in self.objects.get(k, {}):
                return k, self.objects[k][name]
        return None, None

    def names(self, kind: str) -> list[str]:
        return sorted(self.objects.get(kind, {}))

    def algebra(self, ref: str):
        """A finite algebra or an order; ``ORDER@K`` reduces an order."""
        if "@" in ref:
            base, k = ref.split("@", 1)
            o = self.get(base, "order")
            return o.at(int(k))
        if "." in ref:
            base, part = ref.split(".", 1)
            D = self.get(base, "dalgebra")
            table = {"D": D.algebra, "lam": D.lam.algebra, "gam": D.gam.algebra}
            if part not in table:
                raise SessionError(f"unknown part {part!r} of datum {base}")
            return table[part]
        return self.get(ref, "algebra", "order")

    def module(self, name: str):
        return self.get(name, "module", "lattice")

    def lattices(self, names) -> list[LatticeModule]:
        out = []
        for n in names:
            kind, obj = self.find(n, "family")
            if kind:
                out += obj
            else:
                out.append(self.get(n, "lattice"))
        return out

    def members(self, names) -> list:
        out = []
        for n in names:
            kind, obj = self.find(n, "family")
            if kind:
                out += obj
            else:
                out.append(self.module(n))
        return out

    def default(self, kind: str, name: str | None = None):
        if name:
            return self.get(name, kind)
        names = self.names(kind)
        if len(names) != 1:
            raise SessionError(f"name a {kind}: the session declares {len(names)}")
        return self.objects[kind][names[0]]


# ------------------------------------------------------------------ declarations


def _algebra_decl(s: Session, pos, kv, order: bool):
    if order:
        name, p, dim = pos[0], int(pos[1]), int(pos[2])
        products = pos[3:]
    else:
        name, p, N, dim = pos[0], int(pos[1]), int(pos[2]), int(pos[3])
        products = pos[4:]
    mul = {}
    for k, v in kv.items():
        if "," in k:
            i, j = (int(x) for x in k.split(","))
            mul[(i, j)] = parse_vec(v)
    if products:
        raise SessionError(f"unexpected tokens {products}")
    if "unit" not in kv:
        raise SessionError(f"{name}: unit=... is required")
    unit = parse_vec(kv["unit"])
    if order:
        ids = parse_rows(kv.get("idempotents", ""))
        s.put("order", name, OrderDatum.build(p, dim, mul, unit, name, idempotents=ids))
    else:
        s.put("algebra", name, FiniteAlgebra.build(ResidueRing(p, N), dim, mul, unit, name))


def _actions(kv, dim):
    acts = []
    for i in range(dim):
        key = f"act{i}"
        if key not in kv:
            raise SessionError(f"missing {key}=...")
        acts.append(parse_rows(kv[key]))
    return acts


def _module_decl(s: Session, pos, kv, lattice: bool):
    name = pos[0]
    kind = "lattice" if lattice else "module"
    if len(pos) > 1 and pos[1] == "=":
        op, args = pos[2], pos[3:]
        if op == "sum":
            parts = [s.get(a, kind) for a in args]
            obj = lattice_sum(parts, name) if lattice else direct_sum(parts, name)
        elif op == "reduce" and not lattice:
            obj = s.get(args[0], "lattice").reduce_mod(int(args[1]), name)
        else:
            raise SessionError(f"unknown construction {op!r}")
        s.put(kind, name, obj)
        return
    alg = s.algebra(pos[1])
    mode = pos[2] if len(pos) > 2 else None
    if lattice:
        if not isinstance(alg, OrderDatum):
            raise SessionError(f"lattice {name} needs an order")
        if mode == "regular":
            obj = LatticeModule.regular(alg, name)
        else:
            obj = LatticeModule.build(alg, int(kv["rank"]), _actions(kv, alg.dim), name)
    else:
        if not isinstance(alg, FiniteAlgebra):
            raise SessionError(f"module {name} needs a finite algebra (use ORDER@K)")
        if mode == "regular":
            obj = FModule.regular(alg, name)
        elif "free" in kv:
            obj = FModule.free(alg, int(kv["free"]), name)
        else:
            g = int(kv["gens"])
            obj = FModule.build(alg, g, _actions(kv, alg.dim), parse_rows(kv.get("rel", "")), name)
    s.put(kind, name, obj)


def _interp_decl(s: Session, pos, kv):
    name, mode = pos[0], pos[1]
    if mode == "reduction":
        spec = reduction_spec(s.get(pos[2], "order"))
    elif mode == "identity":
        spec = identity_spec(s.algebra(pos[2]))
    elif mode == "rr":
        spec = F_as_ppspec(s.get(pos[2], "dalgebra"))
    elif mode == "custom":
        src, tgt = s.algebra(pos[2]), s.algebra(pos[3])
        phi = parse(kv["phi"], src)
        psi = parse(kv["psi"], src, n=phi.n)
        rho = {}
        for k, v in kv.items():
            if k.startswith("rho"):
                rho[int(k[3:])] = parse(v, src, n=2 * phi.n)
        spec = InterpSpec.build(src, tgt, phi, psi, rho, name)
    else:
        raise SessionError(f"unknown interpretation kind {mode!r}")
    spec = InterpSpec(spec.source, spec.target, spec.pair, spec.rho, name)
    s.put("interp", name, spec)


def _zg_decl(s: Session, kw, pos, kv):
    if kw == "zgspace":
        name = pos[0]
        if name in s._zg:
            raise SessionError(f"zgspace {name!r} declared twice")
        divs = [d for d in kv.get("divisibles", "").split(",") if d]
        s._zg[name] = {"types": int(kv.get("types", 0)), "tubes": [], "exc": {}, "divs": divs,
                       "to": set(), "from": set(), "hull": {}}
        return
    if kw == "zgset":
        space = _space(s, pos[1])
        s.put("zgset", pos[0], parse_subset(space, pos[2:]))
        return
    data = s._zg.get(pos[0])
    if data is None:
        raise SessionError(f"no zgspace named {pos[0]!r}")
    if "space" in data:
        raise SessionError(f"zgspace {pos[0]} is already in use; declare its parts first")
    if kw == "tube":
        qs = [q for q in kv.get("qs", "").split(",") if q]
        data["tubes"].append(Tube(pos[1], int(kv["type"]), tuple(qs)))
        data["to"] |= {q for q in kv.get("to", "").split(",") if q}
        data["from"] |= {q for q in kv.get("from", "").split(",") if q}
    elif kw == "exceptional":
        data["exc"][pos[1]] = int(kv["component"])
    elif kw == "hull":
        key = pos[1]
        if key.startswith("G") and key[1:].isdigit():
            key = ("generic", int(key[1:]))
        data["hull"][key] = [q for q in pos[2].split(",") if q]


def _space(s: Session, name: str) -> TameZgSpace:
    data = s._zg.get(name)
    if data is None:
        raise SessionError(f"no zgspace named {name!r}")
    if "space" not in data:
        data["space"] = TameZgSpace.build(data["types"], data["tubes"], data["exc"], data["divs"],
                                          data["to"], data["from"], data["hull"], name)
    return data["space"]


def space(s: Session, name: str | None = None) -> TameZgSpace:
    if name is None:
        if len(s._zg) != 1:
            raise SessionError(f"name a zgspace: the session declares {len(s._zg)}")
        name = next(iter(s._zg))
    return _space(s, name)


def _declare(s: Session, kw: str, toks: list[str]):
    pos, kv = _kv(toks)
    if kw == "precision":
        s.precision = int(pos[0])
        if s.precision < 4:
            raise SessionError("precision must be at least 4")
    elif kw == "budget":
        s.budget = int(pos[0])
    elif kw == "ring":
        s.put("algebra", pos[0], FiniteAlgebra.scalars(ResidueRing(int(pos[1]), int(pos[2])), pos[0]))
    elif kw in ("algebra", "order"):
        _algebra_decl(s, pos, kv, kw == "order")
    elif kw == "const":
        alg = s.algebra(pos[1])
        v = parse_vec(pos[2])
        if len(v) != alg.dim:
            raise SessionError(f"constant {pos[0]} has {len(v)} coordinates, {alg.name} has {alg.dim}")
        s.put("const", pos[0], tuple(v))
    elif kw in ("module", "lattice"):
        _module_decl(s, pos, kv, kw == "lattice")
    elif kw == "map":
        src, tgt = s.get(pos[1], "module"), s.get(pos[2], "module")
        s.put("map", pos[0], ModuleMap.build(src, tgt, parse_rows(pos[3])))
    elif kw == "pointed":
        m = s.module(pos[1])
        rows = parse_rows(pos[2])
        if isinstance(m, FModule):
            rows = [m.reduce([int(x) % m.q for x in r]) for r in rows]
        s.put("pointed", pos[0], PointedModule(m, tuple(tuple(r) for r in rows)))
    elif kw == "formula":
        alg = s.algebra(pos[1])
        s.put("formula", pos[0], parse(" ".join(pos[2:]), alg, s.objects.get("const", {})))
    elif kw == "family":
        s.put("family", pos[0], [s.module(n) for n in pos[1:]])
    elif kw == "datum":
        lam, gam = s.get(pos[1], "order"), s.get(pos[2], "order")
        ideal = parse_rows(kv["ideal"]) if "ideal" in kv else None
        b = BaeckstroemDatum.build(lam, gam, parse_rows(kv["embedding"]), ideal, int(kv.get("n", 1)),
                                   int(kv.get("m", 1)), "baeckstroem" in pos[3:])
        s.put("datum", pos[0], b)
        s.put("dalgebra", pos[0], build_D(b))
    elif kw == "triple":
        D = s.get(pos[1], "dalgebra")
        U, V = s.get(kv["U"], "module"), s.get(kv["V"], "module")
        if U.algebra != D.lam.algebra or V.algebra != D.gam.algebra:
            raise SessionError(f"triple {pos[0]}: U must live over {pos[1]}.lam and V over {pos[1]}.gam")
        T = TripleModule(U, V, tuple(tuple(int(x) % V.q for x in r) for r in parse_rows(kv["f"])), pos[0])
        T.check(D)
        s.put("triple", pos[0], (D, T))
    elif kw == "interp":
        _interp_decl(s, pos, kv)
    elif kw == "poset":
        els = [e for e in kv.get("elements", "").split(",") if e]
        covers = [tuple(c.split("<", 1)) for c in kv.get("covers", "").split(",") if c]
        s.put("poset", pos[0], FiniteLattice.from_covers(els, covers))
    elif kw in ("zgspace", "tube", "exceptional", "hull", "zgset"):
        _zg_decl(s, kw, pos, kv)
    else:
        raise SessionError(f"unknown declaration {kw!r}")


def parse_session(text: str) -> Session:
    s = Session()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header:
            if line != HEADER:
                raise SessionError(f"line {lineno}: expected header {HEADER!r}")
            seen_header = True
            continue
        try:
            toks = shlex.split(line, comments=True)
        except ValueError as e:
            raise SessionError(f"line {lineno}: {e}") from None
        if not toks:
            continue
        try:
            _declare(s, toks[0], toks[1:])
        except (IndexError, KeyError) as e:
            raise SessionError(f"line {lineno}: incomplete declaration ({e})") from None
        except (InputError, ValidationFailure) as e:
            raise SessionError(f"line {lineno}: {e}") from None
        except PurityLabError as e:
            e.args = (f"line {lineno}: {e}",)
            raise
        except ValueError as e:
            raise SessionError(f"line {lineno}: {e}") from None
    if not seen_header:
        raise SessionError(f"empty session: expected header {HEADER!r}")
    return s
