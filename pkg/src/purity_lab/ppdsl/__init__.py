"""pp-formulas: syntax, normal form, evaluation and derived constructions."""

from .evaluate import (
    FamilyOrder,
    InvariantComparison,
    PointedModule,
    chi_alpha,
    compare_with_invariant,
    equivalent,
    evaluate,
    free_realization,
    generates,
    leq,
    pptype_generator,
    solution_elements,
)
from .formula import PpFormula, PpPair
from .parser import PpSyntaxError, parse
from .printer import to_text

__all__ = [
    "FamilyOrder",
    "InvariantComparison",
    "PointedModule",
    "PpFormula",
    "PpPair",
    "PpSyntaxError",
    "chi_alpha",
    "compare_with_invariant",
    "equivalent",
    "evaluate",
    "free_realization",
    "generates",
    "leq",
    "parse",
    "pptype_generator",
    "solution_elements",
    "to_text",
]
