"""Finite lattices, interval-collapse dimensions and ordinal bound arithmetic.

Only finite lattices are handled.  Dimension values of the infinite
lattices of pp-formulas enter solely as ordinal inputs to ``bounds_eval``.
"""

from .lattice import (
    CHAIN,
    TWO_ELEMENT,
    CongruenceQuotient,
    FiniteLattice,
    IntervalClass,
    breadth,
    collapse_step,
    congruence_classes,
    congruence_quotient,
    congruences,
    custom_class,
    lattice_of_subgroups,
    ldim,
    mdim,
)
from .ordinal import (
    MINUS_ONE,
    OMEGA,
    ONE,
    UNDEFINED,
    ZERO,
    Ordinal,
    bounds_eval,
    ordinal_sum,
    ordinal_sup,
    parse_ordinal,
)

__all__ = [n for n in dir() if not n.startswith("_")]
