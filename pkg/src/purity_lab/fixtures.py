"""Built-in example data.

``e1`` is the order Lambda = {(a, b) in R x R : a = b mod 2} over the 2-adic
integers, inside Gamma = R x R, with I = rad Lambda = 2R x 2R.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algcore.algebra import OrderDatum
from .algcore.lattices import LatticeModule, lattice_sum


@dataclass(frozen=True, eq=False)
class E1:
    Lambda: OrderDatum
    Gamma: OrderDatum
    embedding: tuple
    ideal: tuple
    n: int
    m: int

    def lattices(self) -> dict[str, LatticeModule]:
        lam = LatticeModule.regular(self.Lambda, "Lambda")
        r1 = LatticeModule.build(self.Lambda, 1, [[[1]], [[0]]], "R1")
        r2 = LatticeModule.build(self.Lambda, 1, [[[1]], [[2]]], "R2")
        return {"Lambda": lam, "R1": r1, "R2": r2}

    def family(self) -> list[LatticeModule]:
        return list(self.lattices().values())

    def gamma_lattice(self) -> LatticeModule:
        ls = self.lattices()
        return lattice_sum([ls["R1"], ls["R2"]], "Gamma")


def e1() -> E1:
    lam = OrderDatum.build(2, 2, {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1), (1, 1): (0, 2)}, (1, 0), "Lambda")
    gam = OrderDatum.build(
        2, 2, {(0, 0): (1, 0), (1, 1): (0, 1)}, (1, 1), "Gamma", simple_components=(("Q1", 1), ("Q2", 1)),
        idempotents=((1, 0), (0, 1)),
    )
    return E1(lam, gam, ((1, 1), (0, 2)), ((2, 0), (0, 1)), 1, 1)
