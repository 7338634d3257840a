"""Finite algebras, orders, their modules and homological primitives."""

from .algebra import FiniteAlgebra, OrderDatum, QuotientAlgebra, ideal_lattice, quotient_algebra
from .lattices import (
    ExtGroup,
    FPModule,
    LatticeHom,
    LatticeModule,
    annihilator_exponent,
    ext1,
    fp_pushout,
    lattice_hom,
    lattice_indecomposable,
    lattice_iso,
    lattice_sum,
    presentation,
    torsionfree_quotient,
)
from .modules import (
    EndomorphismRing,
    FModule,
    HomSpace,
    ModuleMap,
    Simplified,
    Subquotient,
    composition_series,
    direct_sum,
    end_ring,
    endolength,
    find_iso,
    hom_space,
    invariant_subgroups,
    is_indecomposable,
    is_split_mono,
    iso_test,
    length,
    pushout,
    quotient,
    retraction,
    simplify,
    submodule_object,
    subquotient,
)

__all__ = [name for name in dir() if not name.startswith("_")]
