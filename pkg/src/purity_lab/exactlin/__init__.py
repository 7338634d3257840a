"""Exact linear algebra: Howell forms over Z/p^N and Hermite forms over Z_(p)."""

from .padic import ZpLattice, smith
from .residue import (
    ResidueRing,
    Subgroup,
    contains,
    coset_reps,
    group_invariants,
    howell,
    identity,
    image,
    intersect,
    kernel,
    matmul,
    preimage,
    quotient_invariants,
    solve,
    solve_modulo,
    sum_,
    vecmat,
)

__all__ = [
    "ResidueRing",
    "Subgroup",
    "ZpLattice",
    "contains",
    "coset_reps",
    "group_invariants",
    "howell",
    "identity",
    "image",
    "intersect",
    "kernel",
    "matmul",
    "preimage",
    "quotient_invariants",
    "smith",
    "solve",
    "solve_modulo",
    "sum_",
    "vecmat",
]
