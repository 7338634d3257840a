"""Finite bounded lattices, congruence collapse, and the dimension it induces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from ..errors import InputError, ValidationFailure
from .ordinal import MINUS_ONE, UNDEFINED, Ordinal


class FiniteLattice:
    """A finite lattice on elements 0..n-1 with labels; ``le[i][j]`` means i <= j."""

    def __init__(self, labels: Sequence[Hashable], le: Sequence[Sequence[bool]], check: bool = True):
        n = len(labels)
        if n == 0:
            raise InputError("a lattice needs at least one element")
        self.labels = tuple(labels)
        self.le = tuple(tuple(bool(x) for x in row) for row in le)
        self.n = n
        if check:
            self._check_order()
        self._join = [[self._bound(i, j, up=True) for j in range(n)] for i in range(n)]
        self._meet = [[self._bound(i, j, up=False) for j in range(n)] for i in range(n)]
        self.bottom = next(i for i in range(n) if all(self.le[i][j] for j in range(n)))
        self.top = next(i for i in range(n) if all(self.le[j][i] for j in range(n)))

    # construction ---------------------------------------------------
    @classmethod
    def from_order(cls, items: Sequence, leq: Callable[[object, object], bool], labels=None) -> "FiniteLattice":
        le = [[leq(a, b) for b in items] for a in items]
        return cls(labels or [str(i) for i in range(len(items))], le)

    @classmethod
    def from_covers(cls, labels: Sequence, covers: Iterable[tuple]) -> "FiniteLattice":
        """``covers`` lists pairs (lower, upper) of labels or indices."""
        idx = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in covers:
            a, b = idx.get(a, a), idx.get(b, b)
            if not (isinstance(a, int) and isinstance(b, int) and 0 <= a < n and 0 <= b < n):
                raise InputError(f"unknown element in cover ({a}, {b})")
            le[a][b] = True
        for k in range(n):  # transitive closure
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        return cls(labels, le)

    @classmethod
    def chain(cls, length: int) -> "FiniteLattice":
        return cls([str(i) for i in range(length + 1)], [[i <= j for j in range(length + 1)] for i in range(length + 1)])

    @classmethod
    def singleton(cls) -> "FiniteLattice":
        return cls.chain(0)

    @classmethod
    def diamond(cls, atoms: int = 3) -> "FiniteLattice":
        labels = ["0"] + [f"a{i}" for i in range(atoms)] + ["1"]
        return cls.from_covers(labels, [("0", f"a{i}") for i in range(atoms)] + [(f"a{i}", "1") for i in range(atoms)])

    @classmethod
    def pentagon(cls) -> "FiniteLattice":
        return cls.from_covers(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])

    @classmethod
    def boolean(cls, k: int) -> "FiniteLattice":
        items = list(range(1 << k))
        return cls.from_order(items, lambda a, b: a & b == a, [format(x, f"0{k}b") if k else "0" for x in items])

    # structure ------------------------------------------------------
    def _check_order(self):
        n, le = self.n, self.le
        for i in range(n):
            if not le[i][i]:
                raise ValidationFailure("order is not reflexive")
            for j in range(n):
                if i != j and le[i][j] and le[j][i]:
                    raise ValidationFailure(f"{self.labels[i]} and {self.labels[j]} are identified by the order")
                if le[i][j]:
                    for k in range(n):
                        if le[j][k] and not le[i][k]:
                            raise ValidationFailure("order is not transitive")

    def _bound(self, i: int, j: int, up: bool) -> int:
        n, le = self.n, self.le
        if up:
            cands = [k for k in range(n) if le[i][k] and le[j][k]]
            best = [k for k in cands if all(le[k][c] for c in cands)]
        else:
            cands = [k for k in range(n) if le[k][i] and le[k][j]]
            best = [k for k in cands if all(le[c][k] for c in cands)]
        if len(best) != 1:
            kind = "join" if up else "meet"
            raise ValidationFailure(f"no {kind} of {self.labels[i]} and {self.labels[j]}")
        return best[0]

    def join(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def __len__(self):
        return self.n

    @property
    def size(self) -> int:
        return self.n

    def is_trivial(self) -> bool:
        return self.n == 1

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"no element {label!r}") from None

    def covers(self) -> list[tuple[int, int]]:
        n, le = self.n, self.le
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and le[i][j] and not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(n)):
                    out.append((i, j))
        return out

    def height(self) -> int:
        """Length of the longest chain."""
        order = sorted(range(self.n), key=lambda i: sum(self.le[j][i] for j in range(self.n)))
        h = {i: 0 for i in range(self.n)}
        for j in order:
            for i in range(self.n):
                if i != j and self.le[i][j]:
                    h[j] = max(h[j], h[i] + 1)
        return h[self.top]

    def is_chain(self) -> bool:
        return all(self.le[i][j] or self.le[j][i] for i in range(self.n) for j in range(self.n))

    def is_modular(self) -> bool:
        r = range(self.n)
        for a, b, c in itertools.product(r, r, r):
            if self.le[a][c] and self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c):
                return False
        return True

    def is_distributive(self) -> bool:
        r = range(self.n)
        return all(self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                   for a, b, c in itertools.product(r, r, r))

    def sublattice(self, idx: Sequence[int]) -> "FiniteLattice":
        idx = sorted(set(idx))
        return FiniteLattice([self.labels[i] for i in idx], [[self.le[i][j] for j in idx] for i in idx])

    def interval(self, a: int, b: int) -> "FiniteLattice":
        if not self.le[a][b]:
            raise InputError(f"{self.labels[a]} is not below {self.labels[b]}")
        return self.sublattice([k for k in range(self.n) if self.le[a][k] and self.le[k][b]])

    def intervals(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in range(self.n) if self.le[a][b]]

    def to_text(self) -> str:
        cov = ", ".join(f"{self.labels[i]}<{self.labels[j]}" for i, j in self.covers())
        return f"elements: {', '.join(map(str, self.labels))}\ncovers: {cov or '(none)'}"

    def __repr__(self):
        return f"FiniteLattice({self.n} elements)"


# ------------------------------------------------------------------ congruences


@dataclass
class CongruenceQuotient:
    lattice: FiniteLattice
    projection: tuple  # element index -> class index
    classes: tuple


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def congruence_classes(L: FiniteLattice, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Blocks of the least congruence identifying each given pair."""
    n = L.n
    parent = list(range(n))

    def union(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        return True

    work = []
    for a, b in pairs:
        if union(a, b):
            work.append((a, b))
    while work:
        a, b = work.pop()
        for c in range(n):
            for x, y in ((L.join(a, c), L.join(b, c)), (L.meet(a, c), L.meet(b, c))):
                if union(x, y):
                    work.append((x, y))
        # a == b also forces the interval between their meet and join together
        lo, hi = L.meet(a, b), L.join(a, b)
        if union(lo, hi):
            work.append((lo, hi))
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(_find(parent, i), []).append(i)
    return sorted(blocks.values())


def congruence_quotient(L: FiniteLattice, pairs: Iterable[tuple[int, int]] = ()) -> CongruenceQuotient:
    classes = congruence_classes(L, pairs)
    proj = [0] * L.n
    for k, blk in enumerate(classes):
        for i in blk:
            proj[i] = k
    m = len(classes)
    reps = [blk[0] for blk in classes]
    le = [[proj[L.join(reps[a], reps[b])] == b for b in range(m)] for a in range(m)]
    Q = FiniteLattice([L.labels[r] for r in reps], le)
    return CongruenceQuotient(Q, tuple(proj), tuple(tuple(b) for b in classes))


def congruences(L: FiniteLattice) -> list[tuple]:
    """Every congruence, as a tuple of blocks (brute force over generated ones)."""
    found = {tuple(tuple(b) for b in congruence_classes(L, []))}
    frontier = list(found)
    while frontier:
        nxt = []
        for blocks in frontier:
            base = [(b[0], x) for b in blocks for x in b[1:]]
            for i, j in L.intervals():
                if i != j:
                    c = tuple(tuple(b) for b in congruence_classes(L, base + [(i, j)]))
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda c: (-len(c), c))


# ------------------------------------------------------------------ interval classes and dimension


@dataclass(frozen=True)
class IntervalClass:
    name: str
    member: Callable[[FiniteLattice], bool] = field(compare=False)

    def __call__(self, L: FiniteLattice) -> bool:
        return self.member(L)


TWO_ELEMENT = IntervalClass("two_element", lambda L: L.n == 2)
CHAIN = IntervalClass("chain", lambda L: L.is_chain())


def custom_class(name: str, predicate: Callable[[FiniteLattice], bool]) -> IntervalClass:
    return IntervalClass(name, predicate)


def collapse_step(L: FiniteLattice, c: IntervalClass) -> CongruenceQuotient:
    """Identify the endpoints of every interval of L lying in ``c``."""
    pairs = [(a, b) for a, b in L.intervals() if a != b and c(L.interval(a, b))]
    return congruence_quotient(L, pairs)


def ldim(L: FiniteLattice, c: IntervalClass) -> Ordinal:
    """Dimension of L with respect to the class c of intervals.

    The one-element lattice has dimension -1.  Otherwise the answer is the
    number of collapse steps before the quotient becomes trivial, minus one;
    if a step stops making progress the dimension is undefined.
    """
    if L.is_trivial():
        return MINUS_ONE
    alpha = 0
    while True:
        Q = collapse_step(L, c).lattice
        if Q.is_trivial():
            return Ordinal.of(alpha)
        if Q.n == L.n:
            return UNDEFINED
        L = Q
        alpha += 1


def mdim(L: FiniteLattice) -> Ordinal:
    return ldim(L, TWO_ELEMENT)


def breadth(L: FiniteLattice) -> Ordinal:
    return ldim(L, CHAIN)


def lattice_of_subgroups(subs: Sequence, labels=None) -> FiniteLattice:
    """Inclusion lattice on a list of subgroups closed under sum and intersection."""
    subs = list(subs)
    return FiniteLattice.from_order(subs, lambda a, b: a <= b, labels or [f"S{i}" for i in range(len(subs))])
