"""Brute-force reference computations.

Everything here works from raw matrices by exhaustive enumeration and uses
none of the package's linear algebra, so agreement is meaningful.
"""

from __future__ import annotations

import itertools


def span_set(rows, q, n):
    """All Z/q-combinations of ``rows`` in (Z/q)^n."""
    out = {tuple([0] * n)}
    frontier = list(out)
    rows = [tuple(x % q for x in r) for r in rows]
    while frontier:
        nxt = []
        for v in frontier:
            for r in rows:
                w = tuple((a + b) % q for a, b in zip(v, r))
                if w not in out:
                    out.add(w)
                    nxt.append(w)
        frontier = nxt
    return out


class BruteModule:
    """A finite module given by generators, relations and action matrices."""

    def __init__(self, m):
        self.q, self.g = m.q, m.gens
        self.dim = m.algebra.dim
        self.actions = [[list(r) for r in X] for X in m.actions]
        self.rel = span_set(m.relations.basis, self.q, self.g)
        self._canon = {}

    def canon(self, v):
        v = tuple(x % self.q for x in v)
        c = self._canon.get(v)
        if c is None:
            c = min(tuple((a + b) % self.q for a, b in zip(v, r)) for r in self.rel)
            self._canon[v] = c
        return c

    def elements(self):
        return sorted({self.canon(v) for v in itertools.product(range(self.q), repeat=self.g)})

    def act(self, v, a):
        """v * a for an algebra element a given in basis coordinates."""
        out = [0] * self.g
        for j, aj in enumerate(a):
            if aj % self.q == 0:
                continue
            X = self.actions[j]
            for r, vr in enumerate(v):
                if vr:
                    for s in range(self.g):
                        out[s] += aj * vr * X[r][s]
        return tuple(x % self.q for x in out)

    def is_zero(self, v):
        return tuple(x % self.q for x in v) in self.rel


def _add(u, v, q):
    return tuple((a + b) % q for a, b in zip(u, v))


def pp_solutions(phi, m: BruteModule):
    """{x in M^n : exists y in M^m with every column vanishing}, as canonical tuples."""
    els = m.elements()
    zero = tuple([0] * m.g)
    out = set()
    for xs in itertools.product(els, repeat=phi.n):
        for ys in itertools.product(els, repeat=phi.m):
            vs = xs + ys
            ok = True
            for col in phi.columns:
                acc = zero
                for v, a in zip(vs, col):
                    if any(v) and any(a):
                        acc = _add(acc, m.act(v, a), m.q)
                if not m.is_zero(acc):
                    ok = False
                    break
            if ok:
                out.add(xs)
                break
    return out


def brute_homs(a: BruteModule, b: BruteModule):
    """All homomorphisms a -> b as tuples of canonical generator images."""
    els = b.elements()
    out = []
    basis = [tuple(int(i == j) for j in range(a.dim)) for i in range(a.dim)]
    rel_rows = [r for r in a.rel if any(r)]
    for imgs in itertools.product(els, repeat=a.g):

        def apply(v):
            acc = tuple([0] * b.g)
            for c, w in zip(v, imgs):
                if c:
                    acc = _add(acc, tuple(c * x for x in w), b.q)
            return acc

        if any(not b.is_zero(apply(r)) for r in rel_rows):
            continue
        ok = True
        for e in basis:
            for i in range(a.g):
                gen = tuple(int(i == j) for j in range(a.g))
                if b.canon(apply(a.act(gen, e))) != b.canon(b.act(imgs[i], e)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(imgs)
    return out


def apply_images(a: BruteModule, b: BruteModule, imgs, v):
    acc = tuple([0] * b.g)
    for c, w in zip(v, imgs):
        if c:
            acc = _add(acc, tuple(c * x for x in w), b.q)
    return b.canon(acc)


def is_iso_brute(a: BruteModule, b: BruteModule) -> bool:
    if len(a.elements()) != len(b.elements()):
        return False
    n = len(a.elements())
    for imgs in brute_homs(a, b):
        image = {apply_images(a, b, imgs, v) for v in a.elements()}
        if len(image) == n:
            return True
    return False
