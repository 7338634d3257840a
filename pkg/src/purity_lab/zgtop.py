"""A combinatorial model of the torsion-free part of the Ziegler spectrum of a tame order.

Points are symbolic:

* ``("lat", E, l)``   the lattice at level l >= 1 on the ray of quasi-simple E
* ``("exc", name)``   an exceptional lattice (outside the tubes)
* ``("prufer", E)``   the Pruefer-like point attached to E
* ``("adic", E)``     the adic-like point attached to E.  Whether the module it
  stands for is indecomposable is not settled; it is carried as an opaque label.
* ``("generic", i)``  the generic point of infinite-type component i
* ``("div", S)``      a divisible point, one per simple rational module S

A subset stores finitely many points plus, per ray, either a finite set of
levels or "every level from l on".  The closure rules only ask whether a
tube carries infinitely many lattice points, which is what a cofinite ray
records; this reading of "infinitely many" is a modelling choice.

Hom predicates, tube data and rational hulls are input data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ValidationFailure


# ------------------------------------------------------------------ rays


@dataclass(frozen=True)
class Ray:
    """Levels l >= 1: those in ``levels`` together with every l >= ``start`` (if set)."""

    levels: frozenset = frozenset()
    start: int | None = None

    @classmethod
    def make(cls, levels: Iterable[int] = (), start: int | None = None) -> "Ray":
        lv = set(levels)
        if any(l < 1 for l in lv) or (start is not None and start < 1):
            raise InputError("levels start at 1")
        if start is not None:
            while start - 1 in lv:
                start -= 1
            lv = {l for l in lv if l < start}
        return cls(frozenset(lv), start)

    @property
    def infinite(self) -> bool:
        return self.start is not None

    @property
    def empty(self) -> bool:
        return not self.levels and self.start is None

    def __contains__(self, l: int) -> bool:
        return l in self.levels or (self.start is not None and l >= self.start)

    def union(self, o: "Ray") -> "Ray":
        starts = [s for s in (self.start, o.start) if s is not None]
        return Ray.make(self.levels | o.levels, min(starts) if starts else None)

    def intersect(self, o: "Ray") -> "Ray":
        top = max([*self.levels, *o.levels, self.start or 0, o.start or 0]) + 1
        lv = {l for l in range(1, top) if l in self and l in o}
        start = max(self.start, o.start) if self.infinite and o.infinite else None
        return Ray.make(lv, start)

    def complement(self) -> "Ray":
        if self.start is not None:
            return Ray.make(l for l in range(1, self.start) if l not in self.levels)
        top = max(self.levels, default=0) + 1
        return Ray.make((l for l in range(1, top) if l not in self.levels), top)

    def without(self, l: int) -> "Ray":
        if l not in self:
            return self
        if l in self.levels:
            return Ray.make(self.levels - {l}, self.start)
        return Ray.make(self.levels | set(range(self.start, l)), l + 1)

    def samples(self) -> list[int]:
        """Explicit levels plus one representative of the cofinite part."""
        return sorted(self.levels) + ([self.start] if self.start is not None else [])

    def __str__(self):
        parts = [str(l) for l in sorted(self.levels)]
        if self.start is not None:
            parts.append(f"{self.start}..")
        return "{" + ",".join(parts) + "}"


# ------------------------------------------------------------------ the space


@dataclass(frozen=True)
class Tube:
    name: str
    type: int
    quasi_simples: tuple

    @property
    def rank(self) -> int:
        return len(self.quasi_simples)


@dataclass(eq=False)
class TameZgSpace:
    n_types: int
    tubes: tuple
    exceptional: dict  # name -> component (1..n, or n + 1 for the finite-type part)
    divisibles: tuple
    hom_to_infinitely_many: dict  # quasi-simple -> bool
    hom_from_infinitely_many: dict
    rational_hull: dict  # quasi-simple / ("exc", name) / point -> frozenset of divisible labels
    name: str = "Z"

    @classmethod
    def build(cls, n_types: int, tubes: Sequence, exceptional: Mapping[str, int] | None = None,
              divisibles: Sequence[str] = (), hom_to=None, hom_from=None, hull: Mapping | None = None,
              name: str = "Z") -> "TameZgSpace":
        """``tubes``: Tube objects or (name, type, quasi-simples) triples.

        ``hom_to`` / ``hom_from`` are sets of quasi-simples (or dicts to bool).
        ``hull`` maps quasi-simples, exceptional names and point tuples to
        lists of divisible labels.
        """
        ts = tuple(t if isinstance(t, Tube) else Tube(t[0], int(t[1]), tuple(t[2])) for t in tubes)
        qs = [e for t in ts for e in t.quasi_simples]
        exc = dict(exceptional or {})

        def pred(x):
            if x is None:
                return {e: False for e in qs}
            if isinstance(x, Mapping):
                return {e: bool(x.get(e, False)) for e in qs}
            x = set(x)
            return {e: e in x for e in qs}

        h = {}
        for k, v in (hull or {}).items():
            h[k] = frozenset(v)
        sp = cls(n_types, ts, exc, tuple(divisibles), pred(hom_to), pred(hom_from), h, name)
        sp.check()
        return sp

    # lookups --------------------------------------------------------
    @property
    def quasi_simples(self) -> list[str]:
        return [e for t in self.tubes for e in t.quasi_simples]

    def tube_of(self, e: str) -> Tube:
        for t in self.tubes:
            if e in t.quasi_simples:
                return t
        raise InputError(f"unknown quasi-simple {e!r}")

    def type_of(self, point) -> int | None:
        kind = point[0]
        if kind in ("lat", "prufer", "adic"):
            return self.tube_of(point[1]).type
        if kind == "exc":
            return self.exceptional[point[1]]
        if kind == "generic":
            return point[1]
        return None

    def hull(self, point) -> frozenset:
        kind = point[0]
        if kind == "div":
            return frozenset([point[1]])
        if point in self.rational_hull:
            return self.rational_hull[point]
        if kind in ("lat", "prufer", "adic"):
            return self.rational_hull.get(point[1], frozenset())
        if kind == "exc":
            return self.rational_hull.get(point[1], frozenset())
        if kind == "generic":
            return self.rational_hull.get(("generic", point[1]), frozenset())
        return frozenset()

    def check(self):
        names = set()
        for t in self.tubes:
            if not 1 <= t.type <= self.n_types:
                raise ValidationFailure(f"tube {t.name} has type {t.type} outside 1..{self.n_types}")
            if t.rank < 1:
                raise ValidationFailure(f"tube {t.name} has no quasi-simples")
            for e in t.quasi_simples:
                if e in names:
                    raise ValidationFailure(f"quasi-simple {e} appears twice")
                names.add(e)
        for x, c in self.exceptional.items():
            if not 1 <= c <= self.n_types + 1:
                raise ValidationFailure(f"exceptional lattice {x} lies in component {c} outside 1..{self.n_types + 1}")
        divs = set(self.divisibles)
        for k, v in self.rational_hull.items():
            if not v <= divs:
                raise ValidationFailure(f"hull of {k} mentions unknown divisibles {sorted(v - divs)}")
        for e in self.quasi_simples:
            if not self.hull(("lat", e, 1)):
                raise ValidationFailure(f"lattices on the ray of {e} have empty rational hull")
        for x in self.exceptional:
            if not self.hull(("exc", x)):
                raise ValidationFailure(f"exceptional lattice {x} has empty rational hull")

    # universe -------------------------------------------------------
    def finite_points(self) -> list[tuple]:
        pts = [("exc", x) for x in sorted(self.exceptional)]
        for e in self.quasi_simples:
            pts += [("prufer", e), ("adic", e)]
        pts += [("generic", i) for i in range(1, self.n_types + 1) if self.has_tubes(i)]
        pts += [("div", s) for s in self.divisibles]
        return pts

    def has_tubes(self, i: int) -> bool:
        return any(t.type == i for t in self.tubes)

    def universe(self) -> "ZgSubset":
        return ZgSubset(frozenset(self.finite_points()), {e: Ray.make(start=1) for e in self.quasi_simples})

    def empty(self) -> "ZgSubset":
        return ZgSubset(frozenset(), {})

    def contains_point(self, point) -> bool:
        kind = point[0]
        if kind == "lat":
            return point[1] in self.quasi_simples and isinstance(point[2], int) and point[2] >= 1
        return point in set(self.finite_points())

    def to_text(self) -> str:
        lines = [f"space {self.name}: {self.n_types} infinite-type component(s)"]
        for t in self.tubes:
            lines.append(f"  tube {t.name} type {t.type} rank {t.rank}: {', '.join(t.quasi_simples)}")
        for x, c in sorted(self.exceptional.items()):
            lines.append(f"  exceptional {x} component {c}")
        lines.append(f"  divisibles: {', '.join(self.divisibles) or '(none)'}")
        return "\n".join(lines)


# ------------------------------------------------------------------ subsets


@dataclass(frozen=True)
class ZgSubset:
    points: frozenset  # non-ray points
    rays: Mapping  # quasi-simple -> Ray

    def __post_init__(self):
        clean = {e: r for e, r in self.rays.items() if not r.empty}
        object.__setattr__(self, "rays", dict(sorted(clean.items())))

    @classmethod
    def of(cls, points: Iterable = (), rays: Mapping | None = None) -> "ZgSubset":
        pts, rs = set(), {e: r for e, r in (rays or {}).items()}
        for p in points:
            p = tuple(p)
            if p[0] == "lat":
                rs[p[1]] = rs.get(p[1], Ray()).union(Ray.make([p[2]]))
            else:
                pts.add(p)
        return cls(frozenset(pts), rs)

    def ray(self, e: str) -> Ray:
        return self.rays.get(e, Ray())

    def __contains__(self, point) -> bool:
        if point[0] == "lat":
            return point[2] in self.ray(point[1])
        return point in self.points

    def _key(self):
        return (self.points, tuple(self.rays.items()))

    def __eq__(self, o):
        return isinstance(o, ZgSubset) and self._key() == o._key()

    def __hash__(self):
        return hash(self._key())

    def union(self, o: "ZgSubset") -> "ZgSubset":
        keys = set(self.rays) | set(o.rays)
        return ZgSubset(self.points | o.points, {e: self.ray(e).union(o.ray(e)) for e in keys})

    __or__ = union

    def intersect(self, o: "ZgSubset") -> "ZgSubset":
        keys = set(self.rays) & set(o.rays)
        return ZgSubset(self.points & o.points, {e: self.ray(e).intersect(o.ray(e)) for e in keys})

    __and__ = intersect

    def complement(self, space: TameZgSpace) -> "ZgSubset":
        pts = frozenset(p for p in space.finite_points() if p not in self.points)
        return ZgSubset(pts, {e: self.ray(e).complement() for e in space.quasi_simples})

    def minus(self, o: "ZgSubset", space: TameZgSpace) -> "ZgSubset":
        return self.intersect(o.complement(space))

    def without(self, point) -> "ZgSubset":
        if point[0] == "lat":
            rs = dict(self.rays)
            rs[point[1]] = self.ray(point[1]).without(point[2])
            return ZgSubset(self.points, rs)
        return ZgSubset(self.points - {point}, self.rays)

    def issubset(self, o: "ZgSubset") -> bool:
        return self.intersect(o) == self

    __le__ = issubset

    def is_empty(self) -> bool:
        return not self.points and not self.rays

    def sample_points(self) -> list[tuple]:
        """Every non-ray point and, per ray, its explicit levels plus one cofinite representative."""
        out = sorted(self.points, key=_point_key)
        for e, r in self.rays.items():
            out += [("lat", e, l) for l in r.samples()]
        return out

    def divisible_part(self) -> set:
        return {p[1] for p in self.points if p[0] == "div"}

    def reduced(self) -> "ZgSubset":
        return ZgSubset(frozenset(p for p in self.points if p[0] != "div"), self.rays)

    def __str__(self):
        parts = [_fmt_point(p) for p in sorted(self.points, key=_point_key)]
        for e, r in self.rays.items():
            parts += [f"{e}[{l}]" for l in sorted(r.levels)]
            if r.start is not None:
                parts.append(f"{e}[{r.start}..]")
        return "{" + ", ".join(parts) + "}"


_ORDER = {"lat": 0, "exc": 1, "prufer": 2, "adic": 3, "generic": 4, "div": 5}


def _point_key(p):
    return (_ORDER[p[0]],) + tuple(str(x) for x in p[1:])


def _fmt_point(p) -> str:
    kind = p[0]
    if kind == "lat":
        return f"{p[1]}[{p[2]}]"
    if kind == "exc":
        return p[1]
    if kind == "prufer":
        return f"{p[1]}[inf]"
    if kind == "adic":
        return f"{p[1]}^"
    if kind == "generic":
        return f"G{p[1]}"
    return f"div:{p[1]}"


def parse_point(text: str) -> tuple:
    """Inverse of the printed form: ``E[3]``, ``E[inf]``, ``E^``, ``G1``, ``div:S``, or an exceptional name."""
    t = text.strip()
    if t.startswith("div:"):
        return ("div", t[4:])
    if t.endswith("^"):
        return ("adic", t[:-1])
    if t.endswith("[inf]"):
        return ("prufer", t[:-5])
    if t.endswith("]") and "[" in t:
        e, lvl = t[:-1].split("[", 1)
        if not lvl.isdigit():
            raise InputError(f"bad level in {text!r}")
        return ("lat", e, int(lvl))
    if t.startswith("G") and t[1:].isdigit():
        return ("generic", int(t[1:]))
    return ("exc", t)


def parse_subset(space: TameZgSpace, items: Iterable[str]) -> ZgSubset:
    """Items as in ``parse_point``; ``E[n..]`` stands for every level from n on."""
    pts, rays = [], {}
    for it in items:
        it = it.strip()
        if not it:
            continue
        if it.endswith("..]") and "[" in it:
            e, lvl = it[:-3].split("[", 1)
            rays[e] = rays.get(e, Ray()).union(Ray.make(start=int(lvl)))
            p = ("lat", e, int(lvl))
        else:
            p = parse_point(it)
            pts.append(p)
        if not space.contains_point(p):
            raise InputError(f"{it!r} is not a point of {space.name}")
    return ZgSubset.of(pts, rays)


# ------------------------------------------------------------------ closure


def _fire(space: TameZgSpace, C: ZgSubset, divisible_rule: bool = True) -> set:
    """Points forced into C by one application of the four rules."""
    new = set()
    infinite_tubes = {space.tube_of(e).name for e, r in C.rays.items() if r.infinite}
    for t in space.tubes:
        if t.name not in infinite_tubes:
            continue
        for s in t.quasi_simples:
            if space.hom_to_infinitely_many[s]:
                new.add(("prufer", s))
            if space.hom_from_infinitely_many[s]:
                new.add(("adic", s))
    for i in range(1, space.n_types + 1):
        if not space.has_tubes(i):
            continue
        if any(space.tube_of(e).type == i for e, r in C.rays.items() if r.infinite) or any(
            p[0] in ("prufer", "adic") and space.type_of(p) == i for p in C.points | new
        ):
            new.add(("generic", i))
    if divisible_rule:
        for p in list(C.sample_points()) + list(new):
            for s in space.hull(p):
                new.add(("div", s))
    return {p for p in new if p not in C.points}


def closure(space: TameZgSpace, C: ZgSubset, divisible_rule: bool = True) -> ZgSubset:
    """Least superset of C stable under the closure rules (fixpoint iteration)."""
    for p in C.sample_points():
        if not space.contains_point(p):
            raise InputError(f"{_fmt_point(p)} is not a point of {space.name}")
    while True:
        new = _fire(space, C, divisible_rule)
        if not new:
            return C
        C = ZgSubset(C.points | frozenset(new), C.rays)


def is_closed(space: TameZgSpace, C: ZgSubset) -> bool:
    return closure(space, C) == C


@dataclass
class OpenDecomposition:
    reduced_part: ZgSubset
    neighbourhoods: dict  # divisible label -> V(S)

    def reassemble(self) -> ZgSubset:
        out = self.reduced_part
        for v in self.neighbourhoods.values():
            out = out | v
        return out


def neighbourhood(space: TameZgSpace, s: str) -> ZgSubset:
    """V(S): S together with every point N having S as a summand of its rational hull."""
    pts = {("div", s)}
    rays = {}
    for p in space.finite_points():
        if p[0] != "div" and s in space.hull(p):
            pts.add(p)
    for e in space.quasi_simples:
        if s in space.hull(("lat", e, 1)):
            rays[e] = Ray.make(start=1)
    return ZgSubset(frozenset(pts), rays)


def open_basis_decomposition(space: TameZgSpace, U: ZgSubset) -> OpenDecomposition:
    """U as its reduced part together with V(S) for the divisible S in U."""
    if not is_closed(space, U.complement(space)):
        raise InputError("the set is not open")
    return OpenDecomposition(U.reduced(), {s: neighbourhood(space, s) for s in sorted(U.divisible_part())})


def bar_V(space: TameZgSpace, V: ZgSubset) -> ZgSubset:
    """V together with every divisible summand of the rational hulls of its points."""
    if V.divisible_part():
        raise InputError("V must consist of non-divisible points")
    if closure(space, V, divisible_rule=False) != V:
        raise InputError("V is not closed on the reduced side")
    extra = {("div", s) for p in V.sample_points() for s in space.hull(p)}
    return ZgSubset(V.points | frozenset(extra), V.rays)


# ------------------------------------------------------------------ Cantor-Bendixson


def isolated_points(space: TameZgSpace, X: ZgSubset) -> list[tuple]:
    """Sample points x of X with x outside the closure of X minus x."""
    out = []
    for x in X.sample_points():
        if x not in closure(space, X.without(x)):
            out.append(x)
    return out


def derivative(space: TameZgSpace, X: ZgSubset) -> ZgSubset:
    """X minus its isolated points.

    A ray's cofinite part is removed when its representative is isolated;
    the rules never distinguish two levels of the same cofinite part.
    """
    out = X
    for x in isolated_points(space, X):
        if x[0] == "lat" and x[1] in X.rays and X.ray(x[1]).start == x[2]:
            rs = dict(out.rays)
            rs[x[1]] = Ray.make(out.ray(x[1]).levels)
            out = ZgSubset(out.points, rs)
        else:
            out = out.without(x)
    return out


def cb_ranks(space: TameZgSpace, limit: int = 64) -> dict:
    """Rank of every sample point of the space; points in the perfect kernel get None."""
    X = space.universe()
    ranks = {}
    for alpha in range(limit):
        Y = derivative(space, X)
        for p in X.sample_points():
            if p not in Y:
                key = ("lat", p[1]) if p[0] == "lat" else p
                ranks.setdefault(key, alpha)
        if Y == X:
            break
        X = Y
    for p in X.sample_points():
        ranks.setdefault(("lat", p[1]) if p[0] == "lat" else p, None)
    return ranks


def cb_rank(space: TameZgSpace, point) -> int | None:
    if not space.contains_point(point):
        raise InputError(f"{_fmt_point(point)} is not a point of {space.name}")
    key = ("lat", point[1]) if point[0] == "lat" else point
    return cb_ranks(space)[key]


def attached_to_infinite_type(space: TameZgSpace, s: str) -> bool:
    return any(s in space.hull(("generic", i)) for i in range(1, space.n_types + 1) if space.has_tubes(i))


def expected_cb_rank(space: TameZgSpace, point) -> int | None:
    """The rank predicted by point kind; None where no prediction is made."""
    kind = point[0]
    if kind in ("lat", "exc"):
        return 0
    if kind in ("prufer", "adic"):
        return 1
    if kind == "generic":
        return 2
    if kind == "div" and attached_to_infinite_type(space, point[1]):
        return 3
    return None


def cb_table_mismatches(space: TameZgSpace) -> list[str]:
    ranks = cb_ranks(space)
    out = []
    for key, r in sorted(ranks.items(), key=lambda kv: _point_key(kv[0]) if kv[0][0] != "lat" else (0, kv[0][1])):
        p = ("lat", key[1], 1) if key[0] == "lat" else key
        want = expected_cb_rank(space, p)
        if want is not None and want != r:
            out.append(f"{_fmt_point(p)}: computed {r}, predicted {want}")
    return out


# ------------------------------------------------------------------ toy spaces


def toy_space(ranks: Sequence[Sequence[int]] = ((1,),), exceptional: int = 1, seed: int | None = None,
              all_homs: bool = True) -> TameZgSpace:
    """Tubes of the given ranks per infinite-type component, each with its own divisible.

    ``ranks[i]`` lists the tube ranks of component i + 1.  The finite-type
    component gets ``exceptional`` lattices over one more divisible.
    """
    rng = random.Random(seed)
    n = len(ranks)
    tubes, hull, divs = [], {}, []
    hom_to, hom_from = set(), set()
    for i, rs in enumerate(ranks, start=1):
        d = f"Q{i}"
        divs.append(d)
        hull[("generic", i)] = [d]
        for j, r in enumerate(rs):
            qs = [f"E{i}{j}{k}" for k in range(r)]
            tubes.append((f"T{i}{j}", i, qs))
            for e in qs:
                hull[e] = [d]
                if all_homs or rng.random() < 0.7:
                    hom_to.add(e)
                if all_homs or rng.random() < 0.7:
                    hom_from.add(e)
    exc = {}
    if exceptional:
        d = f"Q{n + 1}"
        divs.append(d)
        for k in range(exceptional):
            exc[f"X{k}"] = n + 1
            hull[f"X{k}"] = [d]
    return TameZgSpace.build(n, tubes, exc, divs, hom_to, hom_from, hull, "toy")


def random_subset(space: TameZgSpace, rng: random.Random, max_level: int = 4) -> ZgSubset:
    pts = [p for p in space.finite_points() if rng.random() < 0.3]
    rays = {}
    for e in space.quasi_simples:
        lv = [l for l in range(1, max_level + 1) if rng.random() < 0.3]
        start = rng.randint(1, max_level + 1) if rng.random() < 0.3 else None
        rays[e] = Ray.make(lv, start)
    return ZgSubset.of(pts, rays)
