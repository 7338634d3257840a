"""Reduction of lattices modulo p^k and what survives it.

For k past the exponent k0 that kills every Ext^1 inside a family, two
lattices are isomorphic exactly when their reductions are, and
indecomposables reduce to indecomposables.  k0 here is always relative to
the family handed in; nothing global is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algcore.lattices import LatticeModule, annihilator_exponent, lattice_indecomposable, lattice_iso, lattice_sum
from .algcore.modules import EndomorphismRing, FModule, endolength, invariant_subgroups, is_indecomposable, iso_test
from .errors import BudgetExceeded, InputError, SoundnessAlarm
from .exactlin import Subgroup
from .latdim import FiniteLattice, lattice_of_subgroups

SUBGROUP_BUDGET = 1 << 16


def _same_order(family: Sequence[LatticeModule]):
    if family and any(m.order != family[0].order for m in family):
        raise InputError("family mixes lattices over different orders")


def k0_family(family: Sequence[LatticeModule]) -> int:
    """Least k with p^k Ext^1(L, M) = 0 for all L, M in the family."""
    _same_order(family)
    return max((annihilator_exponent(l, m) for l in family for m in family), default=0)


def _decided(x, what: str) -> bool:
    if x is None:
        raise BudgetExceeded(f"{what}: isomorphism search exceeded its budget")
    return bool(x)


@dataclass(frozen=True)
class IsoCheck:
    first: str
    second: str
    k: int
    reduced_iso: bool
    lattice_iso: bool
    in_range: bool  # k >= k0 + 1, where the two must agree

    @property
    def agree(self) -> bool:
        return self.reduced_iso == self.lattice_iso

    def __str__(self):
        tail = "" if self.in_range else " (k below the family threshold: no claim)"
        return (f"{self.first} vs {self.second} at k={self.k}: reduced_iso={str(self.reduced_iso).lower()} "
                f"lattice_iso={str(self.lattice_iso).lower()}{tail}")


def maranda_iso_check(M: LatticeModule, N: LatticeModule, k: int, k0: int | None = None,
                      budget: int = 1 << 20) -> IsoCheck:
    """Compare iso of M/Mp^k with N/Np^k against iso of M with N.

    With ``k0`` given and k >= k0 + 1 a disagreement raises SoundnessAlarm.
    """
    if M.order != N.order:
        raise InputError("lattices over different orders")
    red = _decided(iso_test(M.reduce_mod(k), N.reduce_mod(k), budget), "reductions")
    lat = bool(lattice_iso(M, N, budget))
    res = IsoCheck(M.name, N.name, k, red, lat, k0 is not None and k >= k0 + 1)
    if res.in_range and not res.agree:
        raise SoundnessAlarm(f"reductions disagree with lattices: {res}")
    return res


@dataclass(frozen=True)
class IndecCheck:
    name: str
    k: int
    applicable: bool
    lattice_indecomposable: bool
    reduction_indecomposable: bool | None
    note: str

    def __str__(self):
        red = "n/a" if self.reduction_indecomposable is None else str(self.reduction_indecomposable).lower()
        return f"{self.name} at k={self.k}: lattice indecomposable={str(self.lattice_indecomposable).lower()}, reduction indecomposable={red} ({self.note})"


def indec_transfer_check(M: LatticeModule, k: int, k0: int, budget: int = 1 << 20) -> IndecCheck:
    lat = lattice_indecomposable(M, budget)
    if k < k0 + 1:
        return IndecCheck(M.name, k, False, lat, None, "outside theorem hypotheses")
    if not lat:
        return IndecCheck(M.name, k, False, lat, None, "decomposable lattice: no claim")
    red = is_indecomposable(M.reduce_mod(k), budget)
    if not red:
        raise SoundnessAlarm(f"{M.name} is indecomposable but its reduction mod p^{k} splits")
    return IndecCheck(M.name, k, True, lat, red, "transfer holds")


@dataclass(frozen=True)
class PseudoEndolength:
    name: str
    k: int
    value: Fraction
    next_value: Fraction
    endolengths: tuple  # at k and k + 1

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1 and self.value == self.next_value

    def __str__(self):
        flag = "integral, stable" if self.integral else "NOT integral/stable"
        return f"pseudoendolength({self.name}) = {self.value} (k={self.k}: {self.endolengths[0]}, k={self.k + 1}: {self.endolengths[1]}; {flag})"


def pseudoendolength(M: LatticeModule, k: int, k0: int | None = None) -> PseudoEndolength:
    """endolength(M/Mp^k) / k, cross-checked at k + 1.

    When k >= k0 + 1 a non-integral or unstable value raises SoundnessAlarm.
    """
    if k < 1:
        raise InputError("k must be positive")
    a = endolength(M.reduce_mod(k)) if M.rank else 0
    b = endolength(M.reduce_mod(k + 1)) if M.rank else 0
    res = PseudoEndolength(M.name, k, Fraction(a, k), Fraction(b, k + 1), (a, b))
    if k0 is not None and k >= k0 + 1 and not res.integral:
        raise SoundnessAlarm(str(res))
    return res


@dataclass
class IntervalLattice:
    lattice: FiniteLattice
    subgroups: list
    module: FModule


def interval_lattice(M: LatticeModule, k: int, budget: int = SUBGROUP_BUDGET) -> IntervalLattice:
    """End(M/Mp^k)-invariant subgroups of M/Mp^k containing (M/Mp^k)p, ordered by inclusion."""
    if M.rank == 0:
        R = M.reduce_mod(k) if k >= 1 else None
        return IntervalLattice(FiniteLattice.singleton(), [], R)
    R = M.reduce_mod(k)
    if R.order > budget:
        raise BudgetExceeded(f"|M/Mp^k| = {R.order} exceeds the subgroup budget {budget}")
    gens = EndomorphismRing(R).generators()
    p = R.ring.p
    bottom = Subgroup.span(R.ring, R.gens, [[p * int(i == j) for j in range(R.gens)] for i in range(R.gens)])
    subs = invariant_subgroups(R, gens, bottom, budget)
    labels = [_label(s) for s in subs]
    return IntervalLattice(lattice_of_subgroups(subs, labels), subs, R)


def _label(s: Subgroup) -> str:
    if not s.basis:
        return "<0>"
    return "<" + ";".join(",".join(map(str, r)) for r in s.basis) + ">"


@dataclass
class MarandaReport:
    family: tuple
    k0_family: int
    iso_tables: dict  # k -> {(a, b): IsoCheck}
    indec: list
    pseudo: list
    additivity: list = field(default_factory=list)
    interval_lengths: list = field(default_factory=list)  # (name, length of the interval lattice, pseudoendolength)

    @property
    def ok(self) -> bool:
        isos = all(c.agree for t in self.iso_tables.values() for c in t.values())
        return isos and all(c.reduction_indecomposable is not False for c in self.indec) and all(
            p.integral for p in self.pseudo)

    def __str__(self):
        lines = [f"family: {', '.join(self.family)}",
                 f"k0 (family-relative, not a global bound) = {self.k0_family}"]
        for k, table in sorted(self.iso_tables.items()):
            lines.append(f"isomorphism table at k={k}:")
            lines += [f"  {c}" for _, c in sorted(table.items())]
        lines.append("indecomposability transfer:")
        lines += [f"  {c}" for c in self.indec]
        lines.append("pseudoendolength:")
        lines += [f"  {c}" for c in self.pseudo]
        if self.additivity:
            lines.append("additivity:")
            lines += [f"  {a}" for a in self.additivity]
        if self.interval_lengths:
            lines.append("interval lattice length against pseudoendolength:")
            for name, h, pe in self.interval_lengths:
                verdict = "agree" if h == pe else "DIFFER"
                lines.append(f"  {name}: {h} vs {pe} ({verdict})")
        return "\n".join(lines)


def maranda_report(family: Sequence[LatticeModule], extra_levels: int = 2, budget: int = 1 << 20) -> MarandaReport:
    """Run every check at k = k0 + 1, ..., k0 + extra_levels."""
    _same_order(family)
    k0 = k0_family(family)
    tables = {}
    for k in range(k0 + 1, k0 + 1 + extra_levels):
        tables[k] = {(a.name, b.name): maranda_iso_check(a, b, k, k0, budget) for a in family for b in family}
    indec = [indec_transfer_check(m, k, k0, budget) for k in tables for m in family]
    pseudo = [pseudoendolength(m, k0 + 1, k0) for m in family]
    additivity = []
    for i, a in enumerate(family):
        for b in family[i:]:
            s = lattice_sum([a, b], f"{a.name}+{b.name}")
            ps = pseudoendolength(s, k0 + 1).value
            pa, pb = pseudoendolength(a, k0 + 1).value, pseudoendolength(b, k0 + 1).value
            verdict = "additive" if ps == pa + pb else "NOT additive"
            additivity.append(f"{s.name}: {ps} vs {pa} + {pb} ({verdict})")
    lengths = [(m.name, interval_lattice(m, k0 + 1).lattice.height(), pe.value) for m, pe in zip(family, pseudo)]
    return MarandaReport(tuple(m.name for m in family), k0, tables, indec, pseudo, additivity, lengths)
