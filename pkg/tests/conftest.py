import random
import sys
from fractions import Fraction

import pytest

from mslaw.catalog import WITT, complex_block, default_entries
from mslaw.cochain import MorphismOfPairs, check_morphism, sigma
from mslaw.lie import LieAlgebra, PairLDA
from mslaw.linalg import Matrix


def r3_pair(Dl, a_gram=None, Da=None) -> PairLDA:
    a_gram = Matrix.zeros(0) if a_gram is None else a_gram
    Da = Matrix.zeros(a_gram.rows) if Da is None else Da
    return PairLDA(LieAlgebra.abelian(3), Matrix(Dl) if isinstance(Dl, list) else Dl, a_gram, Da)


def make_pairs() -> dict[str, PairLDA]:
    """Three structurally different pairs used by the cochain identity suites."""
    h3 = LieAlgebra.heisenberg()
    return {
        "r3-witt": r3_pair(Matrix.diag(1, 2, -1), WITT, Matrix.diag(-1, 1)),
        "r3-rot": r3_pair(Matrix.diag(1, 2, -3), Matrix.identity(2), complex_block(0, 1)),
        "h3-trivial": PairLDA(h3, Matrix.diag(1, -1, 0), Matrix.identity(1), Matrix.zeros(1)),
        # nontrivial rho: e1 of h3 acts on R^{1,1} by a boost
        "h3-rho": PairLDA(h3, Matrix.diag(0, 1, 1), WITT, Matrix.zeros(2),
                          (Matrix.diag(1, -1), Matrix.zeros(2), Matrix.zeros(2))),
    }


@pytest.fixture(scope="session")
def pairs():
    return make_pairs()


@pytest.fixture(scope="session")
def catalog():
    return default_entries()


@pytest.fixture
def rng():
    return random.Random(20261016)


def frac(a, b=1):
    return Fraction(a, b)


DIM6_GAMMA = sigma(3, 1, 2, 3)


def automorphism(rng, name, pair=None) -> MorphismOfPairs:
    """Random automorphism (S, U) of one of the shared test pairs."""
    p = make_pairs()[name] if pair is None else pair
    nz = lambda: Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2]))  # noqa: E731
    if name == "r3-witt":
        u = nz()
        S, U = Matrix.diag(nz(), nz(), nz()), Matrix.diag(u, 1 / u)
    elif name == "r3-rot":
        c, s = rng.choice([(frac(3, 5), frac(4, 5)), (frac(5, 13), frac(12, 13)), (frac(0), frac(1))])
        S, U = Matrix.diag(nz(), nz(), nz()), Matrix([[c, -s], [s, c]])
    elif name == "h3-trivial":
        x, y = nz(), nz()
        S, U = Matrix.diag(x, y, x * y), Matrix.diag(rng.choice([1, -1]))
    else:  # h3-rho: e1 must stay fixed so that rho(S e1) = rho(e1)
        y = nz()
        u = nz()
        S, U = Matrix.diag(1, y, y), Matrix.diag(u, 1 / u)
    m = MorphismOfPairs(S, U, p, p)
    assert check_morphism(m), name
    return m


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
