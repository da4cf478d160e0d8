import itertools
import json
from math import comb

import pytest

from tautilt.algebra import BoundQuiverAlgebra, Quiver, Relation
from tautilt.formats import bundled
from tautilt.homology import tau
from tautilt.modules import direct_sum, hom, local_module, projective, radical_layer_quotient, simple
from tautilt.tilting import (
    PairError,
    bottom_pair,
    check_pair,
    check_support_tau_tilting,
    dagger,
    enumerate_exchange_graph,
    fac_contained,
    gp_filter,
    in_fac,
    mutate,
    same_pair,
    same_pair_unordered,
    top_pair,
)

COMPLETE = ("3d", "3e", "36", "61", "a2", "semisimple2", "rad2zero")
COUNTS = {"36": (24, 36), "3e": (14, 21), "3d": (18, 27), "61": (50, 100), "a2": (5, 5),
          "semisimple2": (4, 4), "rad2zero": (16, 24)}


def linear_a(n):
    Q = Quiver([str(i) for i in range(1, n + 1)], [("a%d" % i, str(i), str(i + 1)) for i in range(1, n)])
    return BoundQuiverAlgebra(Q, name="A%d" % n)


def cyclic_nakayama(n, length):
    Q = Quiver([str(i) for i in range(1, n + 1)], [("c%d" % i, str(i), str(i % n + 1)) for i in range(1, n + 1)])
    rels = []
    for i in range(1, n + 1):
        rels.append(Relation.of(tuple("c%d" % ((i - 1 + k) % n + 1) for k in range(length))))
    return BoundQuiverAlgebra(Q, rels, name="N(%d,%d)" % (n, length))


def uniserials(A):
    """All indecomposables of a Nakayama algebra: P(i) / rad^k P(i)."""
    out = []
    for i in range(len(A.quiver)):
        P = projective(A, i)
        for k in range(1, len(P.loewy_layers()) + 1):
            out.append(radical_layer_quotient(P, k))
    return out


def brute_force_count(A):
    """Count support tau-tilting pairs straight from the definition."""
    mods = uniserials(A)
    n = len(A.quiver)
    rigid_pairs = {(a, b) for a in range(len(mods)) for b in range(len(mods))
                   if hom(mods[a], tau(mods[b])).dim == 0}
    total = 0
    for m in range(n + 1):
        for S in itertools.combinations(range(len(mods)), m):
            if not all((a, b) in rigid_pairs for a in S for b in S):
                continue
            support = {v for a in S for v, d in enumerate(mods[a].dims) if d}
            free = [v for v in range(n) if v not in support]
            total += comb(len(free), n - m)
    return total


@pytest.mark.parametrize("A, expected", [
    (linear_a(2), 5), (linear_a(3), 14), (cyclic_nakayama(3, 2), None), (cyclic_nakayama(2, 3), None),
    (cyclic_nakayama(3, 3), None),
])
def test_counts_against_brute_force(A, expected):
    G = enumerate_exchange_graph(A)
    assert G.complete
    assert len(G.nodes) == brute_force_count(A)
    if expected is not None:
        assert len(G.nodes) == expected  # Catalan numbers for linear A_n


def test_self_injective_nakayama_binomial():
    # with Loewy length at least the number of vertices the count is binom(2n, n)
    for n in (2, 3):
        assert len(enumerate_exchange_graph(cyclic_nakayama(n, n)).nodes) == comb(2 * n, n)


@pytest.mark.parametrize("name", COMPLETE)
def test_bundled_counts_and_regularity(name):
    A = bundled(name)
    G = enumerate_exchange_graph(A)
    assert G.complete
    assert (len(G.nodes), len(G.edges)) == COUNTS[name]
    n = len(A.quiver)
    assert all(G.degree(k) == n for k in range(len(G.nodes)))
    # every edge goes from a larger torsion class to a smaller one
    for s, t, pos in G.edges:
        big, small = G.nodes[s], G.nodes[t]
        assert fac_contained(small.summands, big.summands)
        assert not fac_contained(big.summands, small.summands)


def test_semisimple_cube():
    Q = Quiver(["1", "2", "3"], [])
    G = enumerate_exchange_graph(BoundQuiverAlgebra(Q))
    assert len(G.nodes) == 8 and len(G.edges) == 12


def test_kronecker_is_incomplete():
    G = enumerate_exchange_graph(bundled("kronecker"), max_nodes=50)
    assert not G.complete and G.stop_reason


def test_budget_stops_enumeration():
    G = enumerate_exchange_graph(bundled("61"), max_nodes=10)
    assert not G.complete and len(G.nodes) <= 10


@pytest.mark.parametrize("name", COMPLETE)
def test_mutation_is_an_involution(name):
    A = bundled(name)
    G = enumerate_exchange_graph(A)
    for p in G.nodes[:8]:
        for k in range(len(p.items)):
            q = mutate(p, k)
            assert q.is_support_tau_tilting
            assert not same_pair_unordered(p, q)
            assert same_pair(mutate(q, k), p)


@pytest.mark.parametrize("name", COMPLETE)
def test_dagger_involution(name):
    G = enumerate_exchange_graph(bundled(name))
    for p in G.nodes:
        d = dagger(p)
        assert d.algebra is p.algebra.opposite()
        assert d.is_support_tau_tilting
        assert same_pair(dagger(d), p)


def test_top_and_bottom(algebras):
    for A in algebras.values():
        top, bot = top_pair(A), bottom_pair(A)
        assert top.is_tau_tilting and bot.is_support_tau_tilting and not bot.is_tau_tilting
        assert same_pair_unordered(dagger(top), bottom_pair(A.opposite()))


def test_check_pair_errors(algebras):
    A = algebras["3e"]
    S2 = simple(A, "2")
    with pytest.raises(PairError):
        check_pair(direct_sum(S2, S2), [], A)
    with pytest.raises(PairError):
        check_pair(None, ["1", "1"], A)
    with pytest.raises(PairError):
        check_support_tau_tilting(S2, [], A)
    p = check_pair(simple(A, "1"), ["1"], A)
    assert not p.pair_condition


def test_not_tau_rigid_detected():
    A = bundled("kronecker")
    # a regular module of dimension (1,1) has Hom(M, tau M) != 0
    M = local_module(A, "1", ["b"])
    assert not check_pair(M, [], A).tau_rigid


def test_fac_membership_helper():
    A = bundled("a2")
    assert in_fac(simple(A, 0), [projective(A, 0)])
    assert not in_fac(simple(A, 1), [projective(A, 0)])


def test_graph_serializations():
    G = enumerate_exchange_graph(bundled("a2"))
    data = json.loads(G.dumps())
    assert data["complete"] and len(data["nodes"]) == 5 and len(data["edges"]) == 5
    assert G.dumps() == enumerate_exchange_graph(bundled("a2")).dumps()
    assert G.to_dot().startswith("digraph") and G.to_dot().count("->") == 5
    assert G.to_text().splitlines()[0] == "5 nodes, 5 edges, complete=True"


def test_gp_filter_over_self_injective():
    G = enumerate_exchange_graph(bundled("3e"))
    f = gp_filter(G)
    assert len(f.all) == len(G.nodes) and not f.undecided
    # finite global dimension: GP means projective, and two of the five nodes contain S1
    assert len(gp_filter(enumerate_exchange_graph(bundled("a2"))).all) == 3
