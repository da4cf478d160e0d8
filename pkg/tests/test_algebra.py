import itertools
import random

import pytest
import sympy

from tautilt.algebra import AlgebraError, BoundQuiverAlgebra, Quiver, Relation
from tautilt.formats import AlgebraParseError, bundled, format_algebra, load_algebra, parse_algebra
from tautilt.linalg import PrimeField

EXPECTED_DIMS = {"3d": 7, "3e": 6, "36": 10, "61": 10, "kronecker": 4, "a2": 3, "semisimple2": 2, "rad2zero": 6}


def graded_dimension(A, max_len=12):
    """Independent count: paths of each length minus the rank of the ideal in that degree."""
    Q = A.quiver
    arrows = [(a.label, a.source, a.target) for a in Q.arrows]
    total = len(Q.vertices)
    for d in range(1, max_len + 1):
        paths = [p for p in itertools.product(arrows, repeat=d)
                 if all(x[2] == y[1] for x, y in zip(p, p[1:]))]
        index = {tuple(x[0] for x in p): k for k, p in enumerate(paths)}
        rows = []
        for r in A.relations:
            L = len(r.terms[0][1])
            for k in range(d - L + 1):
                for u in (p for p in itertools.product(arrows, repeat=k)):
                    for v in itertools.product(arrows, repeat=d - L - k):
                        row = [0] * len(paths)
                        for c, p in r.terms:
                            w = tuple(x[0] for x in u) + tuple(p) + tuple(x[0] for x in v)
                            if w in index:
                                row[index[w]] += sympy.Rational(c.numerator, c.denominator)
                        if any(row):
                            rows.append(row)
        rk = sympy.Matrix(rows).rank() if rows else 0
        layer = len(paths) - rk
        total += layer
        if layer == 0:
            return total
    raise AssertionError("not admissible within %d" % max_len)


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_dimension_matches_graded_oracle(name):
    A = bundled(name)
    assert A.dimension == EXPECTED_DIMS[name] == graded_dimension(A)


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_relations_vanish_and_associativity(name):
    A = bundled(name)
    for r in A.relations:
        assert not any(A.relation_element(r))
    rng = random.Random(1)
    F = A.field
    for _ in range(40):
        x, y, z = ([F(rng.randint(-2, 2)) for _ in range(A.dimension)] for _ in range(3))
        assert A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z))
    one = [F(0)] * A.dimension
    for v in range(len(A.quiver)):
        one = [a + b for a, b in zip(one, A.idempotent(v))]
    x = tuple(F(rng.randint(-2, 2)) for _ in range(A.dimension))
    assert A.multiply(tuple(one), x) == x == A.multiply(x, tuple(one))


def test_opposite_is_involutive(algebras):
    rng = random.Random(4)
    for A in algebras.values():
        Aop = A.opposite()
        assert Aop.dimension == A.dimension
        assert Aop.opposite() is A
        T = A.to_opposite_matrix()
        F = A.field
        for _ in range(10):
            x, y = (tuple(F(rng.randint(-2, 2)) for _ in range(A.dimension)) for _ in range(2))
            # (xy)^op = y^op x^op
            assert tuple(T.apply(A.multiply(x, y))) == Aop.multiply(tuple(T.apply(y)), tuple(T.apply(x)))


def test_left_to_right_composition():
    A = bundled("a2")
    a = A.path_element("a")
    e1, e2 = A.idempotent(0), A.idempotent(1)
    assert A.multiply(e1, a) == a == A.multiply(a, e2)
    assert not any(A.multiply(a, e1))


def test_quotients(algebras):
    A = algebras["3e"]
    B = A.quotient_by_idempotent(["1"])
    assert B.quiver.vertices == ("2", "3") and B.dimension == 3
    C = algebras["3d"].quotient_by_ideal(["b2"])
    assert C.dimension == graded_dimension(C)
    with pytest.raises(AlgebraError):
        A.quotient_by_ideal(["nope"])


def test_format_round_trip(algebras):
    for A in algebras.values():
        B = parse_algebra(format_algebra(A))
        assert B.dimension == A.dimension and B.key == A.key
    A = bundled("36", field=PrimeField(3))
    assert parse_algebra(format_algebra(A)).field == PrimeField(3)


def test_prime_field_changes_nothing_for_integral_relations():
    for name in EXPECTED_DIMS:
        assert bundled(name, field=PrimeField(5)).dimension == EXPECTED_DIMS[name]


@pytest.mark.parametrize("text, line", [
    ("vertices: 1 2\narrow a: 1 -> 3\n", 2),
    ("vertices: 1 2\narrow a: 1 -> 2\nrelation: a*a\n", 3),
    ("vertices: 1\nbogus line\n", 2),
    ("field: R\nvertices: 1\n", 1),
    ("vertices: 1 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n", 3),
    ("arrow a: 1 -> 2\n", 1),
    ("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation: a*b - a\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(AlgebraParseError) as e:
        parse_algebra(text)
    assert e.value.line == line
    assert "line %d" % line in str(e.value)


def test_non_admissible_hits_length_cap():
    with pytest.raises(AlgebraError):
        parse_algebra("vertices: 1\narrow x: 1 -> 1\n", length_cap=5)


def test_load_by_name_and_path(tmp_path):
    assert load_algebra("examples/61.alg").dimension == 10
    p = tmp_path / "k.alg"
    p.write_text("vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n")
    assert load_algebra(str(p)).dimension == 4
    with pytest.raises(FileNotFoundError):
        load_algebra("no-such-algebra")


def test_quiver_validation():
    with pytest.raises(AlgebraError):
        Quiver(["1", "1"], [])
    with pytest.raises(AlgebraError):
        Quiver(["1"], [("a", "1", "2")])
    with pytest.raises(AlgebraError):
        BoundQuiverAlgebra(Quiver(["1", "2"], [("a", "1", "2")]), [Relation.of(("a", "a"))])
