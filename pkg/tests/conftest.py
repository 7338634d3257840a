import random

import pytest

from purity_lab.algcore import FiniteAlgebra, FModule
from purity_lab.exactlin import ResidueRing
from purity_lab.fixtures import e1 as make_e1
from purity_lab.rrfun import BaeckstroemDatum, build_D


def dual_numbers(p: int, N: int) -> FiniteAlgebra:
    """Z/p^N[t]/(t^2) with basis 1, t."""
    mul = {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1), (1, 1): (0, 0)}
    return FiniteAlgebra.build(ResidueRing(p, N), 2, mul, (1, 0), f"Z/{p**N}[t]")


def random_module(alg: FiniteAlgebra, rng: random.Random, max_gens: int = 2, max_order: int = 81) -> FModule:
    """A random cyclic-ish module: random relations, closed under the action of t when present."""
    q = alg.q
    while True:
        g = rng.randint(1, max_gens)
        if alg.dim == 1:
            acts = [[[int(i == j) for j in range(g)] for i in range(g)]]
        else:
            T = [[rng.randrange(q) if j > i else 0 for j in range(g)] for i in range(g)]
            acts = [[[int(i == j) for j in range(g)] for i in range(g)], T]
        rows = [[rng.randrange(q) for _ in range(g)] for _ in range(rng.randint(0, 2))]
        if alg.dim == 2:
            rows += [[sum(r[a] * acts[1][a][b] for a in range(g)) % q for b in range(g)] for r in rows]
        m = FModule.build(alg, g, acts, rows, "M")
        if 1 < m.order <= max_order:
            return m


@pytest.fixture(scope="session")
def e1():
    return make_e1()


@pytest.fixture(scope="session")
def e1_lattices(e1):
    return e1.lattices()


@pytest.fixture(scope="session")
def e1_family(e1):
    return e1.family()


@pytest.fixture(scope="session")
def e1_datum(e1):
    return BaeckstroemDatum.build(e1.Lambda, e1.Gamma, e1.embedding, e1.ideal, e1.n, e1.m, True)


@pytest.fixture(scope="session")
def D(e1_datum):
    return build_D(e1_datum)


# ------------------------------------------------------------------ acceptance summary

ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker in report.nodeid:
        num = int(report.nodeid.split(marker, 1)[1].split("_", 1)[0])
        ACCEPTANCE[num] = (report.outcome, report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        outcome, name = ACCEPTANCE[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {name}")
