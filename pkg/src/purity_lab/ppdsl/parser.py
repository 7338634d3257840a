"""Recursive-descent parser for the pp-formula syntax.

    formula := 'E' ylist ':' conj | conj
    conj    := atom ('&' atom)*
    atom    := '(' formula ')' | term '=' term | elem '|' var
    term    := ['-'] mono (('+' | '-') mono)*  |  '0'
    mono    := var ['*' elem]
    elem    := integer | name | '[' number (',' number)* ']'

Free variables are x1, x2, ... (``x`` alone is x1); variables starting with
``y`` are bound, whether or not they appear after ``E``.  Nested quantifiers
are renamed apart.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import InputError
from .formula import Coefficients, PpFormula, add, elem, neg, scalar, zero_elem


class PpSyntaxError(InputError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<!>{text[pos:]}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[\[\]\(\),*+\-=|&:]))"
)
_FREE = re.compile(r"^x(\d*)$")
_BOUND = re.compile(r"^y(\d*)$")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PpSyntaxError("unexpected character", pos, text)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


@dataclass
class _Scope:
    free: set = field(default_factory=set)
    bound: list = field(default_factory=list)  # internal names in order of first appearance


class _Parser:
    def __init__(self, text: str, alg: Coefficients, consts: Mapping[str, Sequence]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.alg = alg
        self.consts = consts
        self.scope = _Scope()
        self.renames: list[dict] = []
        self.fresh = 0

    # token helpers ----------------------------------------------------
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text or kind
            raise PpSyntaxError(f"expected {want!r}, found {t.text or 'end of input'!r}", t.pos, self.text)
        self.i += 1
        return t

    def error(self, msg: str):
        raise PpSyntaxError(msg, self.peek().pos, self.text)

    # variables --------------------------------------------------------
    def is_var(self, name: str) -> bool:
        return bool(_FREE.match(name) or _BOUND.match(name)) or any(name in r for r in self.renames)

    def var(self, name: str):
        for r in reversed(self.renames):
            if name in r:
                return r[name]
        m = _FREE.match(name)
        if m:
            idx = int(m.group(1) or 1)
            if idx < 1:
                self.error("free variables are numbered from 1")
            self.scope.free.add(idx)
            return ("x", idx)
        m = _BOUND.match(name)
        if m:
            key = ("y", int(m.group(1) or 1))
            if key not in self.scope.bound:
                self.scope.bound.append(key)
            return key
        self.error(f"unknown variable {name!r}")

    def new_bound(self):
        self.fresh += 1
        key = ("z", self.fresh)
        self.scope.bound.append(key)
        return key

    # grammar ----------------------------------------------------------
    def formula(self) -> list[dict]:
        t = self.peek()
        if t.kind == "name" and t.text == "E" and self._quantifier_ahead():
            self.take("E")
            names = []
            while self.peek().kind == "name":
                names.append(self.take(kind="name").text)
            if not names:
                self.error("empty quantifier list")
            self.take(":")
            mapping = {}
            for nm in names:
                if _FREE.match(nm):
                    self.error(f"cannot quantify free variable {nm}")
                m = _BOUND.match(nm)
                key = ("y", int(m.group(1) or 1)) if m else None
                if key is None or self.renames or nm in mapping or key in self.scope.bound:
                    mapping[nm] = self.new_bound()
                else:
                    mapping[nm] = self.var(nm)
            self.renames.append(mapping)
            body = self.conj()
            self.renames.pop()
            return body
        return self.conj()

    def _quantifier_ahead(self) -> bool:
        k = 1
        while self.peek(k).kind == "name":
            k += 1
        return k > 1 and self.peek(k).text == ":"

    def conj(self) -> list[dict]:
        eqs = self.atom()
        while self.peek().text == "&":
            self.take("&")
            eqs += self.atom()
        return eqs

    def atom(self) -> list[dict]:
        t = self.peek()
        if t.text == "(":
            self.take("(")
            eqs = self.formula()
            self.take(")")
            return eqs
        # divisibility: elem '|' var
        save = self.i
        if not (t.kind == "name" and self.is_var(t.text)):
            try:
                r = self.element()
            except PpSyntaxError:
                self.i = save
                r = None
            if r is not None and self.peek().text == "|":
                self.take("|")
                v = self.var(self.take(kind="name").text)
                z = self.new_bound()
                return [{v: scalar(self.alg, 1), z: neg(self.alg, r)}]
            self.i = save
        lhs = self.term()
        self.take("=")
        rhs = self.term()
        for k, a in rhs.items():
            lhs[k] = add(self.alg, lhs.get(k, zero_elem(self.alg)), neg(self.alg, a))
        return [lhs]

    def term(self) -> dict:
        out: dict = {}
        if self.peek().kind == "num" and self.peek().text == "0" and self.peek(1).text in ("=", "&", ")", ""):
            self.take()
            return out
        sign = 1
        if self.peek().text == "-":
            self.take("-")
            sign = -1
        while True:
            v, a = self.mono()
            if sign < 0:
                a = neg(self.alg, a)
            out[v] = add(self.alg, out.get(v, zero_elem(self.alg)), a)
            if self.peek().text == "+":
                self.take("+")
                sign = 1
            elif self.peek().text == "-":
                self.take("-")
                sign = -1
            else:
                return out

    def mono(self):
        t = self.take(kind="name")
        if not self.is_var(t.text):
            raise PpSyntaxError(f"expected a variable, found {t.text!r}", t.pos, self.text)
        v = self.var(t.text)
        a = scalar(self.alg, 1)
        while self.peek().text == "*":
            self.take("*")
            a = self.alg.mul(a, self.element())
        return v, a

    def element(self) -> tuple:
        t = self.peek()
        if t.text == "[":
            self.take("[")
            coords = [self.number()]
            while self.peek().text == ",":
                self.take(",")
                coords.append(self.number())
            self.take("]")
            try:
                return elem(self.alg, coords)
            except InputError as e:
                raise PpSyntaxError(str(e), t.pos, self.text) from None
        if t.text == "-":
            self.take("-")
            return neg(self.alg, self.element())
        if t.kind == "num":
            self.take()
            return scalar(self.alg, self._frac(t.text))
        if t.kind == "name" and t.text in self.consts:
            self.take()
            return elem(self.alg, self.consts[t.text])
        raise PpSyntaxError(f"expected a ring element, found {t.text or 'end of input'!r}", t.pos, self.text)

    def number(self):
        neg_ = False
        if self.peek().text == "-":
            self.take("-")
            neg_ = True
        t = self.take(kind="num")
        x = self._frac(t.text)
        return -x if neg_ else x

    def _frac(self, s: str):
        x = Fraction(s)
        if x.denominator != 1 and not hasattr(self.alg, "p"):
            self.error("fractions need an order as coefficient ring")
        if x.denominator == 1:
            return int(x)
        if x.denominator % self.alg.p == 0:
            self.error(f"{s} is not p-integral")
        return x


def parse(text: str, algebra: Coefficients, consts: Mapping[str, Sequence] | None = None,
          n: int | None = None) -> PpFormula:
    """Parse ``text`` into a normal-form formula; ``n`` forces the free arity."""
    consts = dict(consts or {})
    for j in range(algebra.dim):
        consts.setdefault(f"e{j}", tuple(int(i == j) for i in range(algebra.dim)))
    p = _Parser(text, algebra, consts)
    eqs = p.formula()
    if p.peek().kind != "end":
        p.error("trailing input")
    arity = max(p.scope.free, default=1)
    if n is not None:
        if n < arity:
            raise InputError(f"formula mentions x{arity} but arity {n} was requested")
        arity = n
    bound = p.scope.bound
    index = {("x", i + 1): i for i in range(arity)}
    for j, key in enumerate(bound):
        index[key] = arity + j
    total = arity + len(bound)
    z = zero_elem(algebra)
    cols = []
    for eq in eqs:
        col = [z] * total
        for k, a in eq.items():
            col[index[k]] = add(algebra, col[index[k]], a)
        cols.append(col)
    return PpFormula.make(algebra, arity, len(bound), cols)
