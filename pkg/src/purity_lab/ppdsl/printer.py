"""Text rendering of normal forms in the input syntax."""

from __future__ import annotations

from fractions import Fraction

from .formula import PpFormula


def _num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def elem_text(alg, a) -> str:
    if alg.dim == 1 and tuple(alg.unit) == (1,):
        return _num(a[0])
    return "[" + ",".join(_num(x) for x in a) + "]"


def _is_one(alg, a) -> bool:
    return tuple(Fraction(x) for x in a) == tuple(Fraction(u) for u in alg.unit)


def var_name(f: PpFormula, i: int) -> str:
    return f"x{i + 1}" if i < f.n else f"y{i - f.n + 1}"


def to_text(f: PpFormula) -> str:
    alg = f.algebra
    atoms = []
    seen = set()
    for col in f.columns:
        terms = []
        for i, a in enumerate(col):
            if any(a):
                seen.add(i)
                v = var_name(f, i)
                terms.append(v if _is_one(alg, a) else f"{v}*{elem_text(alg, a)}")
        atoms.append(" + ".join(terms) + " = 0")
    for i in range(f.n):
        if i not in seen:
            atoms.append(f"x{i + 1} = x{i + 1}")
    body = " & ".join(atoms)
    if f.m:
        return "E " + " ".join(f"y{j + 1}" for j in range(f.m)) + " : " + body
    return body
