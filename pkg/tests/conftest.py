import random

import pytest

from tautilt.formats import bundled
from tautilt.linalg import Matrix, is_invertible
from tautilt.modules import Representation, direct_sum, generated_submodule, projective, quotient

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def algebras():
    return {name: bundled(name) for name in ("3d", "3e", "36", "61", "kronecker", "a2", "semisimple2", "rad2zero")}


def random_invertible(rng, F, n):
    while True:
        g = Matrix(F, [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)], n)
        if is_invertible(g):
            return g


def base_change(M, rng):
    """An isomorphic copy of ``M`` with arrow matrices conjugated by random invertibles."""
    F = M.field
    Q = M.algebra.quiver
    gs = [random_invertible(rng, F, d) for d in M.dims]
    from tautilt.linalg import inverse
    maps = [gs[Q.tgt[a]] @ X @ inverse(gs[Q.src[a]]) for a, X in enumerate(M.maps)]
    return Representation(M.algebra, M.dims, maps)


def random_local_quotient(A, rng, vertex=None):
    """``P(i)`` modulo a submodule generated by one random radical vector."""
    i = rng.randrange(len(A.quiver)) if vertex is None else vertex
    P = projective(A, i)
    F = A.field
    gens = []
    for j in range(len(A.quiver)):
        if P.dims[j] == 0:
            continue
        vec = [F(rng.randint(-1, 1)) for _ in range(P.dims[j])]
        if j == i:
            vec[0] = F(0)  # keep the top generator out of the relations
        if rng.random() < 0.5 and any(vec):
            gens.append((j, vec))
    return quotient(P, generated_submodule(P, gens))[0]


def random_module(A, rng, parts=2):
    mods = [random_local_quotient(A, rng) for _ in range(rng.randint(1, parts))]
    return direct_sum(*mods, algebra=A)


@pytest.fixture
def rng():
    return random.Random(20261019)
