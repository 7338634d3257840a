"""Ordinals below epsilon_0 in Cantor normal form, plus -1 and an undefined value.

-1 sits just below 0 (the dimension of a one-element lattice); addition
treats it as a shift by one, so (-1) + n = n - 1 for finite n >= 1 and
(-1) + x = x for infinite x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

from ..errors import InputError


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()  # ((exponent: Ordinal, coefficient: int), ...) with strictly decreasing exponents
    special: str | None = None  # None, "minus_one" or "undefined"

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if not isinstance(e, Ordinal) or e.special is not None:
                raise InputError("exponents must be genuine ordinals")
            if not isinstance(c, int) or c < 1:
                raise InputError("coefficients must be positive integers")
            if prev is not None and not e < prev:
                raise InputError("exponents must strictly decrease")
            prev = e
        if self.special is not None and self.terms:
            raise InputError("special values carry no terms")

    # constructors ---------------------------------------------------
    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < -1:
            raise InputError("ordinals are at least -1")
        if n == -1:
            return MINUS_ONE
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_power(cls, e: "Ordinal | int", c: int = 1) -> "Ordinal":
        e = e if isinstance(e, Ordinal) else cls.of(e)
        return cls(((e, c),))

    # predicates -----------------------------------------------------
    @property
    def is_undefined(self) -> bool:
        return self.special == "undefined"

    @property
    def is_minus_one(self) -> bool:
        return self.special == "minus_one"

    @property
    def is_finite(self) -> bool:
        return self.special is None and all(e == ZERO for e, _ in self.terms)

    @property
    def is_successor(self) -> bool:
        return self.special is None and bool(self.terms) and self.terms[-1][0] == ZERO

    def finite_value(self) -> int:
        if self.is_minus_one:
            return -1
        if not self.is_finite:
            raise InputError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    # order ----------------------------------------------------------
    def _key(self):
        if self.is_undefined:
            raise InputError("undefined is not comparable")
        return self

    def __lt__(self, other: "Ordinal") -> bool:
        self._key(), other._key()
        if self.is_minus_one or other.is_minus_one:
            return self.is_minus_one and not other.is_minus_one
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1 < e2
            if c1 != c2:
                return c1 < c2
        return len(self.terms) < len(other.terms)

    # arithmetic -----------------------------------------------------
    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return ordinal_sum(self, other)

    def __radd__(self, other: int) -> "Ordinal":
        return ordinal_sum(Ordinal.of(other), self)

    def __str__(self):
        if self.is_undefined:
            return "undefined"
        if self.is_minus_one:
            return "-1"
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == ZERO:
                parts.append(str(c))
                continue
            base = "w" if e == ONE else (f"w^{e}" if e.is_finite else f"w^({e})")
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    def __repr__(self):
        return f"Ordinal({self})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))
MINUS_ONE = Ordinal(special="minus_one")
UNDEFINED = Ordinal(special="undefined")


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise InputError(f"cannot read {x!r} as an ordinal")


def ordinal_sum(a, b) -> Ordinal:
    a, b = _coerce(a), _coerce(b)
    if a.is_undefined or b.is_undefined:
        return UNDEFINED
    if a.is_minus_one:
        if b.is_minus_one or b == ZERO:
            return MINUS_ONE
        if b.is_finite:
            return Ordinal.of(b.finite_value() - 1)
        return b
    if b.is_minus_one:
        if a == ZERO:
            return MINUS_ONE
        if not a.is_successor:
            raise InputError(f"{a} + (-1) is not defined for a limit ordinal")
        terms = list(a.terms)
        e, c = terms[-1]
        terms[-1:] = [(e, c - 1)] if c > 1 else []
        return Ordinal(tuple(terms))
    if not b.terms:
        return a
    lead = b.terms[0][0]
    keep = [(e, c) for e, c in a.terms if lead < e]
    same = [c for e, c in a.terms if e == lead]
    first = (lead, b.terms[0][1] + (same[0] if same else 0))
    return Ordinal(tuple(keep) + (first,) + tuple(b.terms[1:]))


def ordinal_sup(xs: Iterable) -> Ordinal:
    """Largest element; the empty supremum is -1 and undefined propagates."""
    best = MINUS_ONE
    for x in xs:
        x = _coerce(x)
        if x.is_undefined:
            return UNDEFINED
        if best < x:
            best = x
    return best


def bounds_eval(dim_d, dim_ker) -> tuple[Ordinal, Ordinal]:
    """(sup{a, b}, a + 1 + b) for the dimensions a of the image side and b of the kernel."""
    a, b = _coerce(dim_d), _coerce(dim_ker)
    if a.is_undefined or b.is_undefined:
        return UNDEFINED, UNDEFINED
    return ordinal_sup([a, b]), ordinal_sum(ordinal_sum(a, ONE), b)


_TERM = re.compile(r"^(?:(?P<n>\d+)|w(?:\^(?:(?P<fe>\d+)|\((?P<pe>.+)\)))?(?:\*(?P<c>\d+))?)$")


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def parse_ordinal(text: str) -> Ordinal:
    """Read ``3``, ``w``, ``w^2*3+w+1``, ``w^(w+1)``, ``-1`` or ``undefined``."""
    s = text.strip().replace(" ", "").replace("omega", "w")
    if s in ("undefined", "undef", "?"):
        return UNDEFINED
    if s == "-1":
        return MINUS_ONE
    if not s:
        raise InputError("empty ordinal")
    total = ZERO
    for part in _split_top(s):
        m = _TERM.match(part)
        if not m:
            raise InputError(f"cannot parse ordinal term {part!r}")
        if m.group("n") is not None:
            term = Ordinal.of(int(m.group("n")))
        else:
            if m.group("fe") is not None:
                e = Ordinal.of(int(m.group("fe")))
            elif m.group("pe") is not None:
                e = parse_ordinal(m.group("pe"))
            else:
                e = ONE
            c = int(m.group("c") or 1)
            term = Ordinal(((e, c),)) if c else ZERO
        total = ordinal_sum(total, term)
    return total
